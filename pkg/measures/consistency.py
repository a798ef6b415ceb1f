# ==================== SAMPLE CONSISTENCY ====================
# File: measures/consistency.py

from fractions import Fraction
from typing import Dict, List, Optional

from core.alphabet import Alphabet, Word
from core.errors import InputError
from measures.sample import Sample


def check_sample_consistency(sample: Sample, alphabet: Optional[Alphabet] = None) -> List[str]:
    """Conflicts found in the sample; an empty list means consistent."""
    alphabet = alphabet or sample.alphabet
    if alphabet != sample.alphabet:
        raise InputError("sample alphabet differs from the requested alphabet")
    if sample.is_expectation:
        return _expectation_conflicts(sample, alphabet)
    return _lasso_conflicts(sample)


def require_consistent(sample: Sample) -> None:
    conflicts = check_sample_consistency(sample)
    if conflicts:
        raise InputError("inconsistent sample: " + "; ".join(conflicts))


def _lasso_conflicts(sample: Sample) -> List[str]:
    conflicts = []
    values: Dict[object, Fraction] = {}
    alphabet = sample.alphabet
    for example in sample.examples:
        key = example.key()
        if key in values and values[key] != example.value:
            conflicts.append(
                f"({alphabet.format_word(example.u)}, {alphabet.format_word(example.v)}) has value {example.value}"
                f" but the same word was labelled {values[key]}"
            )
        values.setdefault(key, example.value)
    return conflicts


def _expectation_conflicts(sample: Sample, alphabet: Alphabet) -> List[str]:
    conflicts: List[str] = []
    known: Dict[Word, Fraction] = {}
    for example in sample.examples:
        if example.u in known and known[example.u] != example.value:
            conflicts.append(f"{_show(alphabet, example.u)} labelled both {known[example.u]} and {example.value}")
        known.setdefault(example.u, example.value)

    sigma = len(alphabet)
    # only values of proper prefixes of labelled words can expose a conflict
    prefixes = {word[:k] for word in known for k in range(len(word))}
    changed = True
    while changed:
        changed = False
        parents = {word[:k] for word in known for k in range(len(word))} | set(known)
        for parent in sorted(parents, key=lambda w: (len(w), w)):
            children = [parent + (letter,) for letter in alphabet.letters]
            missing = [child for child in children if child not in known]
            if not missing:
                average = sum((known[child] for child in children), Fraction(0)) / sigma
                if parent in known:
                    if known[parent] != average:
                        message = f"{_show(alphabet, parent)} has value {known[parent]} but its extensions average {average}"
                        if message not in conflicts:
                            conflicts.append(message)
                else:
                    known[parent] = average
                    changed = True
            elif len(missing) == 1 and parent in known and missing[0] in prefixes:
                rest = sum((known[child] for child in children if child in known), Fraction(0))
                known[missing[0]] = sigma * known[parent] - rest
                changed = True
    return conflicts


def _show(alphabet: Alphabet, word: Word) -> str:
    return repr(alphabet.format_word(word)) if word else "ε"
