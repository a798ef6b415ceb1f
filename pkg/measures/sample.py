# ==================== SAMPLES ====================
# File: measures/sample.py

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from core.alphabet import Alphabet, Word, WordLike
from core.errors import InputError
from core.lasso import Lasso, canonical_lasso


class SampleKind(str, Enum):
    U = "U"
    E = "E"
    EN = "En"


@dataclass(frozen=True)
class LabeledExample:
    """``(u, v, value)`` for U-samples, ``(u, value)`` otherwise."""

    u: Word
    v: Optional[Word]
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        if self.v is not None:
            object.__setattr__(self, "v", tuple(self.v))
            if not self.v:
                raise InputError("U-example period must be non-empty")
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def lasso(self) -> Lasso:
        return Lasso(self.u, self.v)

    @property
    def length(self) -> int:
        return len(self.u) + (len(self.v) if self.v is not None else 0)

    def key(self):
        """Identity of the example's word: canonical lasso or the finite word."""
        if self.v is None:
            return self.u
        return canonical_lasso(self.lasso)


@dataclass(frozen=True)
class Sample:
    kind: SampleKind
    alphabet: Alphabet
    examples: Tuple[LabeledExample, ...] = ()
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", SampleKind(self.kind))
        object.__setattr__(self, "examples", tuple(self.examples))
        if self.kind is SampleKind.EN and (self.n is None or self.n < 0):
            raise InputError("En-samples need a non-negative word length n")
        for example in self.examples:
            if (example.v is not None) != (self.kind is SampleKind.U):
                raise InputError(f"example {example} does not match sample kind {self.kind.value}")
            if self.kind is SampleKind.EN and len(example.u) != self.n:
                raise InputError(f"En-sample word of length {len(example.u)}, expected {self.n}")
            self.alphabet.word(example.u)
            if example.v is not None:
                self.alphabet.word(example.v)

    # ----- constructors -----

    @classmethod
    def u_sample(cls, alphabet: Alphabet, rows: Iterable[Tuple[WordLike, WordLike, object]]) -> "Sample":
        return cls(SampleKind.U, alphabet, tuple(LabeledExample(alphabet.word(u), alphabet.word(v), x) for u, v, x in rows))

    @classmethod
    def e_sample(cls, alphabet: Alphabet, rows: Iterable[Tuple[WordLike, object]]) -> "Sample":
        return cls(SampleKind.E, alphabet, tuple(LabeledExample(alphabet.word(u), None, x) for u, x in rows))

    @classmethod
    def en_sample(cls, alphabet: Alphabet, n: int, rows: Iterable[Tuple[WordLike, object]]) -> "Sample":
        return cls(SampleKind.EN, alphabet, tuple(LabeledExample(alphabet.word(u), None, x) for u, x in rows), n)

    # ----- derived -----

    @property
    def is_expectation(self) -> bool:
        return self.kind is not SampleKind.U

    @property
    def total_length(self) -> int:
        return sum(example.length for example in self.examples)

    def __len__(self) -> int:
        return len(self.examples)

    def words(self) -> List[Word]:
        return [example.u if example.v is None else example.u + example.v for example in self.examples]

    def deduplicated(self) -> "Sample":
        """Keep the first example of every word (canonical lasso for U-samples)."""
        seen = set()
        kept = []
        for example in self.examples:
            key = example.key()
            if key not in seen:
                seen.add(key)
                kept.append(example)
        return Sample(self.kind, self.alphabet, tuple(kept), self.n)
