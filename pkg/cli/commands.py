# ==================== CLI COMMANDS ====================
# File: cli/commands.py

"""``python main.py <command> ...``: one subcommand per toolkit operation.

Exit codes: 0 success, 1 usage, 2 bad input, 3 checked negative answer,
4 budget exhausted, 5 internal error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import networkx as nx
import numpy as np

from analysis.contraction import contract_bottom_sccs
from analysis.distance import Equivalent, almost_equivalent, distance, separating_word
from analysis.estimator import automaton_blackbox, estimate_conditional_expectation
from analysis.expectation import conditional_expectation
from analysis.minimize import minimize_almost_exact
from analysis.rigid import rigid_check
from cli.output import EXIT_NEGATIVE, EXIT_USAGE, Outcome, Renderer, configure_logging, emit
from config.settings import settings
from core.automaton import Automaton
from core.errors import BudgetExhausted, InputError, LimAvgError
from core.lasso import Lasso, eval_lasso
from core.rational import parse_rational
from fit.approximate import approximate_bounded
from fit.check import check_fit
from fit.search import FitProblem, fit_bounded
from fit.tree import fit_tree
from gadgets.characterization import gadget_characterization
from gadgets.experiment import experiment_distinguish
from gadgets.figures import FIGURES, gadget_figures
from gadgets.sample_chain import gadget_sample_chain
from gadgets.sample_size import estimate_sample_size
from gadgets.sat0 import (
    Variant,
    gadget_canonical_automaton,
    gadget_sat0_to_esample,
    gadget_sat0_to_usample,
    parse_dimacs,
    satisfying_valuation,
)
from gadgets.vectors import (
    BkmpVariant,
    dominating_set_to_vectors,
    gadget_bkmp,
    modified_bkmp_conditions,
    modify_bkmp,
)
from learning.learner import learn
from learning.teacher import Teacher
from measures.markov_chain import MarkovChain
from measures.sample import SampleKind
from measures.sampling import draw_sample
from utils.documents import (
    AutomatonDocument,
    ChainDocument,
    SampleDocument,
    VectorsDocument,
    dump_document,
    json_line,
    load_automaton,
    load_chain,
    load_sample,
    load_vectors,
)
from utils.visualization_utils import WorkflowVisualizer

logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _measure(args) -> Optional[MarkovChain]:
    return load_chain(args.measure) if getattr(args, "measure", None) else None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _automaton_outcome(command: str, automaton: Automaton, render: Renderer, extra: Optional[Dict] = None) -> Outcome:
    result = {"automaton": automaton, "states": automaton.state_count, "encoding_size": automaton.encoding_size()}
    result.update(extra or {})
    return Outcome(command, result, render.automaton(automaton), document=AutomatonDocument.from_automaton(automaton))


def _budget(command: str, exhausted: BudgetExhausted) -> Outcome:
    return Outcome(
        command,
        {"outcome": "budget_exhausted", "budget": exhausted.budget, "explored": exhausted.explored},
        [f"budget exhausted after {exhausted.explored} nodes"],
        exhausted.exit_code,
    )


# ==================== ANALYSIS ====================

def cmd_eval(args, render: Renderer) -> Outcome:
    automaton = load_automaton(args.automaton)
    lasso = Lasso.parse(automaton.alphabet, args.prefix, args.period)
    value = eval_lasso(automaton, lasso)
    return Outcome("eval", {"value": value}, [f"value = {render.value(value)}"])


def cmd_expect(args, render: Renderer) -> Outcome:
    automaton = load_automaton(args.automaton)
    word = automaton.alphabet.word(args.word)
    shown = automaton.alphabet.format_word(word)
    if args.estimate is not None:
        seed = settings.DEFAULT_SEED if args.seed is None else args.seed
        rng = np.random.default_rng(seed)
        value = estimate_conditional_expectation(automaton_blackbox(automaton), automaton.alphabet, word, args.estimate, rng)
        return Outcome("expect", {"word": shown, "estimate": value, "k": args.estimate}, [f"estimate = {render.value(value)} (seed {seed})"], seed=seed)
    value = conditional_expectation(automaton, word, _measure(args))
    return Outcome("expect", {"word": shown, "value": value}, [f"E(A | {shown or 'ε'}) = {render.value(value)}"])


def cmd_distance(args, render: Renderer) -> Outcome:
    a, b = load_automaton(args.a), load_automaton(args.b)
    result = distance(a, b, _measure(args))
    lines = [
        f"P(A in {p.left}, B in {p.right}) = {render.value(p.probability)}: |{render.value(p.left_value)} - {render.value(p.right_value)}|"
        for p in result.pairs
    ]
    lines.append(f"total = {render.value(result.total)}")
    return Outcome("distance", {"pairs": result.pairs, "total": result.total}, lines)


def cmd_equiv(args, render: Renderer) -> Outcome:
    a, b = load_automaton(args.a), load_automaton(args.b)
    measure = _measure(args)
    if args.epsilon:
        total = distance(a, b, measure).total
        if total <= args.epsilon:
            return Outcome("equiv", {"verdict": "approximates", "distance": total}, [f"within {render.value(args.epsilon)} (distance {render.value(total)})"])
        witness = separating_word(a, b, args.epsilon, measure)
        result = {"verdict": "not_approximates", "distance": total}
        lines = [f"not within {render.value(args.epsilon)} (distance {render.value(total)})"]
        if witness is not None:
            result["word"] = a.alphabet.format_word(witness.word)
            lines.append(f"separating word: {result['word'] or 'ε'}")
        return Outcome("equiv", result, lines, EXIT_NEGATIVE)
    answer = almost_equivalent(a, b, measure)
    if isinstance(answer, Equivalent):
        return Outcome("equiv", {"verdict": "equivalent"}, ["equivalent"])
    shown = a.alphabet.format_word(answer.word)
    result = {"verdict": "not_equivalent", "word": shown, "left_value": answer.left_value, "right_value": answer.right_value}
    lines = [
        "not equivalent",
        f"counterexample: {shown or 'ε'} (E(A | u) = {render.value(answer.left_value)}, E(B | u) = {render.value(answer.right_value)})",
    ]
    return Outcome("equiv", result, lines, EXIT_NEGATIVE)


def cmd_rigid(args, render: Renderer) -> Outcome:
    a, b = load_automaton(args.a), load_automaton(args.b)
    checked = rigid_check(a, b, args.epsilon)
    worst = max(checked.pairs, key=lambda p: p.distance)
    result = {
        "verdict": checked.verdict,
        "max_distance": checked.max_distance,
        "epsilon": checked.epsilon,
        "pairs": checked.pairs,
    }
    lines = [
        f"rigid {render.value(checked.epsilon)}-approximation: {'yes' if checked.verdict else 'no'}",
        f"max conditional distance = {render.value(checked.max_distance)} at {a.alphabet.format_word(worst.witness) or 'ε'}",
    ]
    return Outcome("rigid", result, lines, 0 if checked.verdict else EXIT_NEGATIVE)


def cmd_minimize(args, render: Renderer) -> Outcome:
    automaton = load_automaton(args.automaton)
    if args.max_states is None:
        if args.contract_only:
            return _automaton_outcome("minimize", contract_bottom_sccs(automaton), render)
        return _automaton_outcome("minimize", minimize_almost_exact(automaton), render)
    found = approximate_bounded(automaton, args.max_states, args.epsilon, args.rigid, args.budget)
    if isinstance(found, BudgetExhausted):
        return _budget("minimize", found)
    if found is None:
        return Outcome("minimize", {"outcome": "none"}, ["none"], EXIT_NEGATIVE)
    return _automaton_outcome("minimize", found, render, {"outcome": "found"})


# ==================== LEARNING ====================

def cmd_learn(args, render: Renderer) -> Outcome:
    if args.graph:
        code = WorkflowVisualizer().workflow_mermaid_code()
        return Outcome("learn", {"mermaid": code}, code.splitlines())
    if not args.automaton:
        raise UsageError("learn: --automaton is required unless --graph is given")
    teacher = Teacher(load_automaton(args.automaton), record_trace=bool(args.trace))
    learned = learn(teacher)
    if args.trace:
        try:
            with open(args.trace, "w", encoding="utf-8") as handle:
                for entry in teacher.trace:
                    handle.write(json_line(entry) + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.trace}: {exc.strerror}") from exc
    stats = learned.stats()
    outcome = _automaton_outcome("learn", learned.automaton, render, {"stats": stats})
    # stdout carries the learned document, ready for the other commands
    outcome.lines = dump_document(outcome.document).splitlines()
    if args.stats:
        outcome.notes = [f"{key}: {value}" for key, value in stats.items()]
    return outcome


# ==================== SAMPLES AND FITTING ====================

def cmd_fit(args, render: Renderer) -> Outcome:
    sample = load_sample(args.sample)
    measure = _measure(args)
    if args.check:
        automaton = load_automaton(args.check)
        checked = check_fit(automaton, sample, measure)
        show = sample.alphabet.format_word
        lines = ["fits" if checked.fits else f"{len(checked.violations)} violation(s)"]
        for violation in checked.violations:
            example = violation.example
            word = show(example.u) if example.v is None else f"{show(example.u)} ({show(example.v)})^ω"
            lines.append(f"  {word or 'ε'}: expected {render.value(example.value)}, got {render.value(violation.actual)}")
        return Outcome("fit", {"fits": checked.fits, "violations": checked.violations}, lines, 0 if checked.fits else EXIT_NEGATIVE)
    if args.tree or args.max_states is None:
        return _automaton_outcome("fit", fit_tree(sample), render)
    found = fit_bounded(FitProblem(sample, args.max_states, measure, args.slack, args.budget), args.jobs)
    if isinstance(found, BudgetExhausted):
        return _budget("fit", found)
    if found is None:
        return Outcome("fit", {"outcome": "none"}, ["none"], EXIT_NEGATIVE)
    return _automaton_outcome("fit", found, render, {"outcome": "found"})


def cmd_sample(args, render: Renderer) -> Outcome:
    hidden = load_automaton(args.automaton)
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    rng = np.random.default_rng(seed)
    sample = draw_sample(SampleKind(args.kind), hidden, args.count, rng, args.lam, args.lam2, args.n)
    document = SampleDocument.from_sample(sample)
    lines = [f"{len(sample)} distinct {sample.kind.value}-examples, total length {sample.total_length}, seed {seed}"]
    return Outcome("sample", {"sample": document, "total_length": sample.total_length}, lines, seed=seed, document=document)


# ==================== GADGETS ====================

def _gadget_automaton(args, render: Renderer) -> Outcome:
    if args.kind == "an":
        plain, swapped = gadget_characterization(args.n)
        return _automaton_outcome("gadget", swapped if args.bar else plain, render)
    if args.kind in ("fig3", "fig4"):
        name = args.name or ("A1" if args.kind == "fig3" else "Fig4A")
        return _automaton_outcome("gadget", gadget_figures(name, args.n), render)
    if args.kind == "canonical":
        formula = parse_dimacs(_read_text(_required(args.cnf, "--cnf")))
        valuation = satisfying_valuation(formula)
        if valuation is None:
            return Outcome("gadget", {"outcome": "unsatisfiable"}, ["unsatisfiable"], EXIT_NEGATIVE)
        automaton = gadget_canonical_automaton(formula, valuation, Variant(args.variant or "U"))
        return _automaton_outcome("gadget", automaton, render, {"valuation": list(valuation)})
    instance = load_vectors(_required(args.vectors, "--vectors"))
    if args.kind == "bkmp":
        if args.modify:
            padded = modify_bkmp(instance)
            document = VectorsDocument.from_instance(padded)
            conditions = modified_bkmp_conditions(padded)
            lines = [f"{len(padded.vectors)} vectors of length {padded.dimension}, k = {padded.k}, t = {padded.t}"]
            lines += [f"{name}: {held}" for name, held in conditions.items()]
            return Outcome("gadget", {"vectors": document, "conditions": conditions}, lines, document=document)
        return _automaton_outcome("gadget", gadget_bkmp(instance, BkmpVariant(args.variant or "appendixA")), render)
    return _automaton_outcome("gadget", gadget_bkmp(instance, BkmpVariant.APPENDIX_B), render)


def _required(value: Optional[str], flag: str) -> str:
    if not value:
        raise UsageError(f"gadget: {flag} is required for this gadget")
    return value


def cmd_gadget(args, render: Renderer) -> Outcome:
    if args.kind in ("sat0-u", "sat0-e"):
        formula = parse_dimacs(_read_text(_required(args.cnf, "--cnf")))
        sample = gadget_sat0_to_usample(formula) if args.kind == "sat0-u" else gadget_sat0_to_esample(formula)
        document = SampleDocument.from_sample(sample)
        bound = formula.n if args.kind == "sat0-u" else formula.n + 2
        lines = [f"{len(sample)} examples over {len(sample.alphabet)} letters; fit bound {bound} states"]
        return Outcome("gadget", {"sample": document, "max_states": bound}, lines, document=document)
    if args.kind == "chain":
        chain = gadget_sample_chain(load_sample(_required(args.sample, "--sample")))
        document = ChainDocument.from_chain(chain)
        return Outcome("gadget", {"chain": document}, [f"chain with {chain.state_count} states"], document=document)
    if args.kind == "vcover":
        try:
            graph = nx.parse_edgelist(_read_text(_required(args.graph, "--graph")).splitlines(), nodetype=int)
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed edge list: {exc}") from exc
        instance = dominating_set_to_vectors(graph, args.k, args.subdivide)
        document = VectorsDocument.from_instance(instance)
        return Outcome("gadget", {"vectors": document}, [f"{len(instance.vectors)} vectors, k = {instance.k}"], document=document)
    return _gadget_automaton(args, render)


def cmd_estimate(args, render: Renderer) -> Outcome:
    size = estimate_sample_size(args.sigma, args.length, args.lam, args.epsilon)
    return Outcome("estimate", {"sample_size": size}, [f"sample size = {size}"])


def cmd_experiment(args, render: Renderer) -> Outcome:
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    outcome = experiment_distinguish(args.n, SampleKind(args.kind), args.target, args.trials, seed, args.lam, args.jobs, args.progress)
    lines = [
        f"distinguishing frequency = {render.value(outcome.frequency)} ({outcome.distinguishing}/{len(outcome.trials)})",
        f"infix frequency = {render.value(outcome.infix_frequency)}",
        f"bound = {render.value(outcome.bound)} (mean total length {render.value(outcome.mean_total_length)})",
        f"seed = {seed}",
    ]
    result = outcome.as_dict()
    if not args.per_trial:
        result.pop("per_trial")
    return Outcome("experiment", result, lines, seed=seed)


# ==================== PARSER ====================

COMMANDS: Dict[str, Callable[..., Outcome]] = {
    "eval": cmd_eval,
    "expect": cmd_expect,
    "distance": cmd_distance,
    "equiv": cmd_equiv,
    "rigid": cmd_rigid,
    "minimize": cmd_minimize,
    "learn": cmd_learn,
    "fit": cmd_fit,
    "sample": cmd_sample,
    "gadget": cmd_gadget,
    "estimate": cmd_estimate,
    "experiment": cmd_experiment,
}


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON report document")
    common.add_argument("--decimal", type=int, nargs="?", const=settings.DECIMAL_DIGITS, default=None, metavar="K", help="also show K decimal digits (lossy)")
    common.add_argument("-o", "--output", help="write the produced document to a file")

    parser = Parser(prog="limavg", description="LimAvg automata: analysis, learning, fitting and gadgets")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("eval", parents=[common], help="value of an ultimately periodic word")
    p.add_argument("-a", "--automaton", required=True)
    p.add_argument("--prefix", default="")
    p.add_argument("--period", required=True)

    p = sub.add_parser("expect", parents=[common], help="conditional expectation of a prefix")
    p.add_argument("-a", "--automaton", required=True)
    p.add_argument("--word", default="")
    p.add_argument("--measure", help="Markov chain document")
    p.add_argument("--estimate", type=int, metavar="K", help="Monte-Carlo estimate from K suffixes of length K")
    p.add_argument("--seed", type=int)

    for name, text in (("distance", "expected distance E(|A - B|)"), ("equiv", "almost equivalence or ε-approximation")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("-a", required=True)
        p.add_argument("-b", required=True)
        p.add_argument("--measure", help="Markov chain document")
        if name == "equiv":
            p.add_argument("--epsilon", type=_rational, default=Fraction(0))

    p = sub.add_parser("rigid", parents=[common], help="rigid ε-approximation check")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("--epsilon", type=_rational, required=True)

    p = sub.add_parser("minimize", parents=[common], help="almost-exact or bounded approximate minimization")
    p.add_argument("-a", "--automaton", required=True)
    p.add_argument("--contract-only", action="store_true", help="only contract bottom SCCs")
    p.add_argument("--max-states", type=int, help="search approximations with at most this many states")
    p.add_argument("--epsilon", type=_rational, default=Fraction(0))
    p.add_argument("--rigid", action="store_true")
    p.add_argument("--budget", type=int)

    p = sub.add_parser("learn", parents=[common], help="learn a hidden automaton from queries")
    p.add_argument("-a", "--automaton", "--hidden", dest="automaton", help="hidden automaton")
    p.add_argument("--trace", help="write the query trace as JSON lines")
    p.add_argument("--graph", action="store_true", help="print the learner graph as Mermaid")
    p.add_argument("--stats", action="store_true", help="report query counts and rounds on stderr")

    p = sub.add_parser("fit", parents=[common], help="fit an automaton to a sample")
    p.add_argument("-s", "--sample", required=True)
    p.add_argument("--max-states", type=int)
    p.add_argument("--tree", action="store_true", help="prefix-tree fitting (the default without --max-states)")
    p.add_argument("--measure", help="Markov chain document (E-samples)")
    p.add_argument("--slack", type=_rational)
    p.add_argument("--budget", type=int)
    p.add_argument("--check", metavar="AUTOMATON", help="only check whether an automaton fits")
    p.add_argument("--jobs", type=int, help="workers for the bounded search")

    p = sub.add_parser("sample", parents=[common], help="draw a labeled sample from a hidden automaton")
    p.add_argument("-a", "--automaton", required=True)
    p.add_argument("--kind", choices=[k.value for k in SampleKind], default="U")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--lam", type=_rational)
    p.add_argument("--lam2", type=_rational)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("gadget", parents=[common], help="generate reduction gadgets and example automata")
    p.add_argument("kind", choices=["an", "sat0-u", "sat0-e", "canonical", "fig3", "fig4", "bkmp", "vcover", "chain"])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--bar", action="store_true", help="the swapped automaton of the an gadget")
    p.add_argument("--name", choices=sorted(FIGURES))
    p.add_argument("--cnf", help="DIMACS CNF file")
    p.add_argument("--variant", help="U|E for canonical, appendixA|appendixB for bkmp")
    p.add_argument("--vectors", help="vector instance document")
    p.add_argument("--modify", action="store_true", help="pad a k-median instance instead")
    p.add_argument("--graph", help="edge list file")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--subdivide", action="store_true")
    p.add_argument("--sample", help="E-sample document")

    p = sub.add_parser("estimate", parents=[common], help="sample size estimate")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--lam", type=_rational, required=True)
    p.add_argument("--epsilon", type=_rational, required=True)

    p = sub.add_parser("experiment", parents=[common], help="distinguishing experiment for Aₙ and Āₙ")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=[k.value for k in SampleKind], default="U")
    p.add_argument("--target", type=int, required=True, help="total sample length per trial")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--lam", type=_rational)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--progress", action="store_true")
    p.add_argument("--per-trial", action="store_true", help="include every trial in the JSON report")
    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    configure_logging()
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)

    render = Renderer(args.decimal)
    try:
        outcome = COMMANDS[args.command](args, render)
        return emit(outcome, args.json, args.output, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except LimAvgError as exc:
        logger.debug("command %s failed", args.command, exc_info=True)
        stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except Exception as exc:
        logger.exception("unexpected failure in %s", args.command)
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 5


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
