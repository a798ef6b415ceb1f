# ==================== DISTINGUISHING EXPERIMENT ====================
# File: gadgets/experiment.py

"""Monte-Carlo estimate of how often a random sample tells Aₙ from Āₙ.

Each trial draws examples one at a time, labeled by Aₙ, until the sample's
total length reaches the target. The sample distinguishes the pair when Āₙ
does not fit it.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from config.settings import settings
from core.errors import InputError
from fit.check import check_fit
from gadgets.characterization import contains_decided_infix, distinguishing_bound, example_word, gadget_characterization
from measures.sample import Sample, SampleKind
from measures.sampling import draw_sample

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    examples: int
    total_length: int
    distinguishes: bool
    contains_infix: bool


@dataclass(frozen=True)
class ExperimentReport:
    n: int
    kind: str
    target: int
    seed: int
    trials: List[TrialOutcome]

    @property
    def distinguishing(self) -> int:
        return sum(trial.distinguishes for trial in self.trials)

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.distinguishing, len(self.trials))

    @property
    def infix_frequency(self) -> Fraction:
        return Fraction(sum(trial.contains_infix for trial in self.trials), len(self.trials))

    @property
    def mean_total_length(self) -> Fraction:
        return Fraction(sum(trial.total_length for trial in self.trials), len(self.trials))

    @property
    def bound(self) -> Fraction:
        """‖S‖ / 2ⁿ at the mean sample length, capped at 1."""
        mean = self.mean_total_length
        return min(Fraction(1), mean / 2 ** self.n)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "kind": self.kind,
            "target": self.target,
            "seed": self.seed,
            "trials": len(self.trials),
            "distinguishing": self.distinguishing,
            "frequency": self.frequency,
            "infix_frequency": self.infix_frequency,
            "mean_total_length": self.mean_total_length,
            "bound": self.bound,
            "target_bound": distinguishing_bound(self.target, self.n),
            "per_trial": [asdict(trial) for trial in self.trials],
        }


def _trial(
    index: int,
    n: int,
    kind: SampleKind,
    target: int,
    seed: np.random.SeedSequence,
    lam: Fraction,
) -> TrialOutcome:
    hidden, swapped = gadget_characterization(n)
    rng = np.random.default_rng(seed)
    examples = []
    total = 0
    while total < target:
        drawn = draw_sample(kind, hidden, 1, rng, lam=lam, n=n + 2 if kind is SampleKind.EN else None)
        examples.extend(drawn.examples)
        total += drawn.total_length
    sample = Sample(kind, hidden.alphabet, tuple(examples), n + 2 if kind is SampleKind.EN else None).deduplicated()
    return TrialOutcome(
        index=index,
        examples=len(sample),
        total_length=total,
        distinguishes=not check_fit(swapped, sample).fits,
        contains_infix=any(contains_decided_infix(example_word(e, n), n) for e in sample.examples),
    )


def experiment_distinguish(
    n: int,
    sample_kind: SampleKind,
    sample_size_target: int,
    trials: int,
    seed: Optional[int] = None,
    lam: Optional[Fraction] = None,
    jobs: Optional[int] = None,
    progress: bool = False,
) -> ExperimentReport:
    """Run independent trials on per-trial generators spawned from one seed.

    Results are ordered by trial index, so the report only depends on the
    arguments and not on ``jobs``.
    """
    if n < 1 or trials < 1:
        raise InputError("n and trials must be at least 1")
    if sample_size_target < 1:
        raise InputError("the sample size target must be positive")
    kind = SampleKind(sample_kind)
    seed = settings.DEFAULT_SEED if seed is None else seed
    lam = Fraction(settings.DEFAULT_LAMBDA if lam is None else lam)
    jobs = max(1, settings.EXPERIMENT_JOBS if jobs is None else jobs)
    streams = np.random.SeedSequence(seed).spawn(trials)

    logger.info("distinguishing experiment: n=%d kind=%s target=%d trials=%d jobs=%d", n, kind.value, sample_size_target, trials, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_trial, i, n, kind, sample_size_target, stream, lam) for i, stream in enumerate(streams)]
        outcomes = [future.result() for future in tqdm(futures, desc="trials", disable=not progress)]
    report = ExperimentReport(n, kind.value, sample_size_target, seed, outcomes)
    logger.info("distinguishing frequency %s (bound %s)", report.frequency, report.bound)
    return report
