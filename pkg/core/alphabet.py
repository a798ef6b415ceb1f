# ==================== ALPHABET AND WORDS ====================
# File: core/alphabet.py

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, Sequence, Tuple, Union

from core.errors import InputError

Word = Tuple[str, ...]
WordLike = Union[str, Sequence[str]]


@dataclass(frozen=True)
class Alphabet:
    """Ordered letter names; a letter's index is its position."""

    letters: Tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InputError("alphabet must contain at least one letter")
        for name in letters:
            if not isinstance(name, str) or not name or name != name.strip():
                raise InputError(f"invalid letter name {name!r}")
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {list(letters)}")

    @classmethod
    def of(cls, letters: Union[str, Iterable[str]]) -> "Alphabet":
        """``Alphabet.of("abc")`` or ``Alphabet.of(["a1", "a2"])``."""
        if isinstance(letters, str):
            return cls(tuple(letters))
        return cls(tuple(letters))

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.letters)}

    @cached_property
    def single_char(self) -> bool:
        return all(len(name) == 1 for name in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, name: object) -> bool:
        return name in self._positions

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise InputError(f"unknown letter {name!r} (alphabet {list(self.letters)})") from None

    def word(self, word: WordLike) -> Word:
        """Normalise a word given as text or as a letter sequence."""
        if isinstance(word, str):
            return self.parse_word(word)
        letters = tuple(word)
        for name in letters:
            self.index(name)
        return letters

    def indices(self, word: WordLike) -> Tuple[int, ...]:
        return tuple(self.index(name) for name in self.word(word))

    def letters_of(self, indices: Iterable[int]) -> Word:
        return tuple(self.letters[i] for i in indices)

    def parse_word(self, text: str) -> Word:
        """Tokenise text: whitespace separated if it has spaces, else greedy longest match."""
        text = text.strip()
        if not text:
            return ()
        if any(ch.isspace() for ch in text):
            return self.word(text.split())
        if self.single_char:
            return self.word(tuple(text))
        longest_first = sorted(self.letters, key=len, reverse=True)
        tokens = []
        pos = 0
        while pos < len(text):
            for name in longest_first:
                if text.startswith(name, pos):
                    tokens.append(name)
                    pos += len(name)
                    break
            else:
                raise InputError(f"cannot tokenise {text!r} over {list(self.letters)}")
        return tuple(tokens)

    def format_word(self, word: Sequence[str]) -> str:
        if self.single_char:
            return "".join(word)
        return " ".join(word)

    def words_of_length(self, length: int) -> Iterator[Word]:
        """All words of a given length in lexicographic (index) order."""
        if length == 0:
            yield ()
            return
        for prefix in self.words_of_length(length - 1):
            for name in self.letters:
                yield prefix + (name,)
