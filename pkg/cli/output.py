# ==================== CLI OUTPUT ====================
# File: cli/output.py

import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from pydantic import BaseModel

from config.settings import settings
from core.automaton import Automaton
from core.errors import InputError
from core.rational import format_decimal, format_rational
from utils.documents import dump_document, report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 3


@dataclass
class Outcome:
    """What one command produced: JSON result, human lines, exit code and an optional document."""

    command: str
    result: Dict[str, Any]
    lines: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    seed: Optional[int] = None
    document: Optional[BaseModel] = None
    # side information kept off stdout
    notes: List[str] = field(default_factory=list)


class Renderer:
    def __init__(self, decimal: Optional[int] = None):
        self.decimal = decimal

    def value(self, value: Fraction) -> str:
        """Exact "p/q", followed by a lossy decimal when requested."""
        exact = format_rational(value)
        if self.decimal is None:
            return exact
        return f"{exact} (~{format_decimal(value, self.decimal)})"

    def automaton(self, automaton: Automaton) -> List[str]:
        show = automaton.alphabet.format_word
        lines = [f"states: {automaton.state_count}, initial: {automaton.initial}, alphabet: {show(automaton.alphabet.letters)}"]
        for q, letter, target, weight in automaton.transitions():
            lines.append(f"  {q} --{letter}:{self.value(weight)}--> {target}")
        return lines


def configure_logging() -> None:
    if settings.ENABLE_LOGGING:
        logging.basicConfig(
            stream=sys.stderr,
            level=getattr(logging, settings.LOG_LEVEL, logging.WARNING),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


def write_document(document: BaseModel, path: str) -> None:
    try:
        Path(path).write_text(dump_document(document) + "\n", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc


def emit(outcome: Outcome, as_json: bool, output_path: Optional[str], stream: TextIO = sys.stdout, notes: TextIO = sys.stderr) -> int:
    if output_path is not None and outcome.document is not None:
        write_document(outcome.document, output_path)
    if as_json:
        stream.write(dump_document(report(outcome.command, outcome.result, outcome.seed)) + "\n")
    else:
        for line in outcome.lines:
            stream.write(line + "\n")
    for line in outcome.notes:
        notes.write(line + "\n")
    return outcome.exit_code
