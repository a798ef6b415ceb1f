"""
File formats: versioned pydantic documents for automata, chains, samples,
vector instances and command reports.

Every document carries ``"format": "limavg/1"``; rationals travel as
``"p/q"`` strings in lowest terms.
"""

import dataclasses
import enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator, ValidationError, model_serializer, model_validator
from pydantic_core import to_json
from typing_extensions import Annotated

from core.alphabet import Alphabet
from core.automaton import Automaton, require_valid
from core.errors import InputError
from core.rational import format_rational, parse_rational
from gadgets.vectors import VectorInstance
from measures.markov_chain import MarkovChain
from measures.sample import LabeledExample, Sample, SampleKind

FORMAT = "limavg/1"

Rational = Annotated[Fraction, PlainValidator(parse_rational), PlainSerializer(format_rational, return_type=str)]

DocumentT = TypeVar("DocumentT", bound=BaseModel)


class Document(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["limavg/1"] = FORMAT


class Row(BaseModel):
    """A table row, written positionally as `[0, "a", 1, "1/2"]`; objects keyed by field are also read."""

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="before")
    @classmethod
    def positional(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            names = list(cls.model_fields)
            if len(data) != len(names):
                raise ValueError(f"expected {len(names)} entries: {names}")
            return dict(zip(names, data))
        return data

    @model_serializer(mode="wrap")
    def as_list(self, handler) -> List[Any]:
        fields = handler(self)
        return [fields[name] for name in type(self).model_fields]


# ==================== AUTOMATA ====================

class TransitionRow(Row):
    source: int
    letter: str
    target: int
    weight: Rational


class AutomatonDocument(Document):
    alphabet: List[str]
    states: int
    initial: int = 0
    transitions: List[TransitionRow]

    @classmethod
    def from_automaton(cls, automaton: Automaton) -> "AutomatonDocument":
        return cls(
            alphabet=list(automaton.alphabet),
            states=automaton.state_count,
            initial=automaton.initial,
            transitions=[TransitionRow(source=q, letter=x, target=t, weight=w) for q, x, t, w in automaton.transitions()],
        )

    def to_automaton(self) -> Automaton:
        alphabet = Alphabet.of(self.alphabet)
        seen = {(row.source, row.letter) for row in self.transitions}
        if len(seen) != len(self.transitions):
            raise InputError("duplicate transition rows")
        rows = [(row.source, row.letter, row.target, row.weight) for row in self.transitions]
        return require_valid(Automaton.build(alphabet, self.states, rows, self.initial))


# ==================== MARKOV CHAINS ====================

class ChainEdgeRow(Row):
    source: int
    letter: str
    target: int
    probability: Rational


class ChainDocument(Document):
    alphabet: List[str]
    states: int
    initial: int = 0
    edges: List[ChainEdgeRow]

    @classmethod
    def from_chain(cls, chain: MarkovChain) -> "ChainDocument":
        letters = chain.alphabet.letters
        return cls(
            alphabet=list(letters),
            states=chain.state_count,
            initial=chain.initial,
            edges=[ChainEdgeRow(source=s, letter=letters[i], target=t, probability=p) for s, i, t, p in chain.edges],
        )

    def to_chain(self) -> MarkovChain:
        alphabet = Alphabet.of(self.alphabet)
        rows = [(e.source, e.letter, e.target, e.probability) for e in self.edges]
        return MarkovChain.build(alphabet, self.states, rows, self.initial)


# ==================== SAMPLES ====================

class ExampleRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    u: str
    v: Optional[str] = None
    value: Rational


class SampleDocument(Document):
    kind: Literal["U", "E", "En"]
    alphabet: List[str]
    n: Optional[int] = None
    examples: List[ExampleRow]

    @classmethod
    def from_sample(cls, sample: Sample) -> "SampleDocument":
        show = sample.alphabet.format_word
        return cls(
            kind=sample.kind.value,
            alphabet=list(sample.alphabet),
            n=sample.n,
            examples=[
                ExampleRow(u=show(e.u), v=None if e.v is None else show(e.v), value=e.value)
                for e in sample.examples
            ],
        )

    def to_sample(self) -> Sample:
        alphabet = Alphabet.of(self.alphabet)
        examples = tuple(
            LabeledExample(alphabet.word(row.u), None if row.v is None else alphabet.word(row.v), row.value)
            for row in self.examples
        )
        return Sample(SampleKind(self.kind), alphabet, examples, self.n)


# ==================== VECTOR INSTANCES ====================

class VectorsDocument(Document):
    vectors: List[List[Rational]]
    k: int = 0
    t: Optional[int] = None
    padding: Optional[int] = None

    @model_validator(mode="before")
    @classmethod
    def bare_array(cls, data: Any) -> Any:
        # a plain array of vectors is accepted as an instance with k = 0
        return {"vectors": data} if isinstance(data, list) else data

    @classmethod
    def from_instance(cls, instance: VectorInstance) -> "VectorsDocument":
        return cls(vectors=[list(v) for v in instance.vectors], k=instance.k, t=instance.t, padding=instance.padding)

    def to_instance(self) -> VectorInstance:
        return VectorInstance(tuple(tuple(v) for v in self.vectors), self.k, self.t, self.padding)


# ==================== REPORTS ====================

class ReportDocument(Document):
    """Machine output of one CLI command."""

    command: str
    seed: Optional[int] = None
    result: Dict[str, Any]


def jsonable(value: Any) -> Any:
    """Plain JSON data: rationals become "p/q", dataclasses and tuples become dicts and lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, enum.Enum):
        return jsonable(value.value)
    if isinstance(value, Automaton):
        return AutomatonDocument.from_automaton(value).model_dump(mode="json")
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    raise InputError(f"cannot serialise {type(value).__name__}")


def report(command: str, result: Dict[str, Any], seed: Optional[int] = None) -> ReportDocument:
    return ReportDocument(command=command, seed=seed, result=jsonable(result))


def dump_document(document: BaseModel) -> str:
    return document.model_dump_json(indent=2)


def json_line(value: Any) -> str:
    return to_json(jsonable(value)).decode()


# ==================== FILE ACCESS ====================

def parse_document(text: str, model: Type[DocumentT], origin: str = "<input>") -> DocumentT:
    try:
        return model.model_validate_json(text)
    except ValidationError as exc:
        raise InputError(f"{origin}: not a valid {model.__name__}: {exc.error_count()} error(s); {exc.errors()[0]['msg']}") from exc


def read_document(path: str, model: Type[DocumentT]) -> DocumentT:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_document(text, model, path)


def load_automaton(path: str) -> Automaton:
    return read_document(path, AutomatonDocument).to_automaton()


def load_chain(path: str) -> MarkovChain:
    return read_document(path, ChainDocument).to_chain()


def load_sample(path: str) -> Sample:
    return read_document(path, SampleDocument).to_sample()


def load_vectors(path: str) -> VectorInstance:
    return read_document(path, VectorsDocument).to_instance()
