"""Monte Carlo trial engines: singlet, hidden-vector LHV, strategy enumeration, envelopes.

Every bulk routine reads a fixed number of uniforms per trial from a
counter-addressed :class:`~spinframe.rng.RngStream`, so trial ``t`` always sees
the same random numbers no matter how the run is split into chunks. Chunks
return integer tallies, which are summed; the result is bit-identical for
any chunk count.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from . import correlation as corr
from .rng import RngStream
from .su2_core import DomainError, Direction

# memory bound per vectorised block, independent of the parallel chunking
BLOCK_TRIALS = 1 << 20

SINGLET_DRAWS = 2
LHV_DRAWS = 2

LABELS = ("a", "b", "c")


@dataclass(frozen=True)
class TrialOutcome:
    lambda1: int
    lambda2: int

    def __post_init__(self):
        if self.lambda1 not in (1, -1) or self.lambda2 not in (1, -1):
            raise DomainError(f"outcomes must be +1 or -1, got {self}")

    @property
    def product(self) -> int:
        return self.lambda1 * self.lambda2


@dataclass(frozen=True)
class MeasurementSettings:
    dir1: Direction
    dir2: Direction

    @classmethod
    def from_angles(cls, alpha1: float, alpha2: float) -> "MeasurementSettings":
        return cls(Direction.planar(alpha1), Direction.planar(alpha2))

    @classmethod
    def from_theta(cls, theta: float) -> "MeasurementSettings":
        """Analyser 1 on the reference axis, analyser 2 rotated by ``theta``."""
        return cls.from_angles(0.0, theta)

    @property
    def theta(self) -> float:
        return self.dir1.angle_to(self.dir2)

    @property
    def p_opposite(self) -> float:
        # cos^2(theta/2) = (1 + cos theta)/2; exact 0 and 1 at the degenerate angles
        return min(1.0, max(0.0, 0.5 * (1.0 + self.dir1.dot(self.dir2))))


@dataclass(frozen=True)
class Counts:
    """Tally of outcome pairs keyed (lambda_1, lambda_2)."""

    pp: int = 0
    pm: int = 0
    mp: int = 0
    mm: int = 0

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(self.pp + other.pp, self.pm + other.pm, self.mp + other.mp, self.mm + other.mm)

    @property
    def total(self) -> int:
        return self.pp + self.pm + self.mp + self.mm

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return {(1, 1): self.pp, (1, -1): self.pm, (-1, 1): self.mp, (-1, -1): self.mm}

    @classmethod
    def from_outcomes(cls, lam1: np.ndarray, lam2: np.ndarray) -> "Counts":
        up1, up2 = lam1 > 0, lam2 > 0
        return cls(
            int(np.count_nonzero(up1 & up2)),
            int(np.count_nonzero(up1 & ~up2)),
            int(np.count_nonzero(~up1 & up2)),
            int(np.count_nonzero(~up1 & ~up2)),
        )


@dataclass(frozen=True)
class CorrelationEstimate:
    mean: float
    std_error: float
    n_trials: int
    counts: Counts

    @classmethod
    def from_counts(cls, counts: Counts) -> "CorrelationEstimate":
        n = counts.total
        if n < 1:
            raise DomainError("an estimate needs at least one trial")
        # integer numerator: no accumulation drift
        mean = (counts.pp + counts.mm - counts.pm - counts.mp) / n
        return cls(mean, math.sqrt(max(0.0, 1.0 - mean * mean) / n), n, counts)

    def frequency(self, lam1: int, lam2: int) -> float:
        return self.counts.as_dict()[lam1, lam2] / self.n_trials


def _check_trials(n: int) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"number of trials must be a positive integer, got {n!r}")
    return int(n)


def chunk_bounds(n: int, chunks: int) -> List[Tuple[int, int]]:
    """Split ``range(n)`` into ``chunks`` contiguous, near-equal pieces."""
    if chunks < 1:
        raise DomainError(f"chunk count must be >= 1, got {chunks!r}")
    edges = [n * k // chunks for k in range(chunks + 1)]
    return [(lo, hi) for lo, hi in zip(edges, edges[1:]) if hi > lo]


def _run_chunked(work: Callable[[int, int], object], n: int, chunks: int) -> list:
    bounds = chunk_bounds(n, chunks)
    if len(bounds) == 1:
        return [work(*bounds[0])]
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        return list(pool.map(lambda b: work(*b), bounds))


def _blocks(start: int, stop: int):
    for lo in range(start, stop, BLOCK_TRIALS):
        yield lo, min(stop, lo + BLOCK_TRIALS)


# --- singlet (conditional-probability) model -------------------------------------


def _singlet_from_uniforms(u: np.ndarray, p_opposite: float):
    lam1 = np.where(u[:, 0] < 0.5, 1, -1).astype(np.int8)
    lam2 = np.where(u[:, 1] < p_opposite, -lam1, lam1).astype(np.int8)
    return lam1, lam2


def sample_singlet_pair(settings: MeasurementSettings, rng: RngStream) -> TrialOutcome:
    """One trial: lambda_1 uniform, then lambda_2 from P(lambda_2 | lambda_1)."""
    u = rng.random(SINGLET_DRAWS).reshape(1, SINGLET_DRAWS)
    lam1, lam2 = _singlet_from_uniforms(u, settings.p_opposite)
    return TrialOutcome(int(lam1[0]), int(lam2[0]))


def singlet_counts(settings: MeasurementSettings, rng: RngStream, start: int, stop: int) -> Counts:
    """Tally trials ``start .. stop-1`` of the singlet model on ``rng``."""
    p = settings.p_opposite
    total = Counts()
    for lo, hi in _blocks(start, stop):
        u = rng.at(lo * SINGLET_DRAWS).random((hi - lo, SINGLET_DRAWS))
        total = total + Counts.from_outcomes(*_singlet_from_uniforms(u, p))
    return total


def estimate_correlation(
    settings: MeasurementSettings, n: int, rng: RngStream, chunks: int = 1
) -> CorrelationEstimate:
    n = _check_trials(n)
    parts = _run_chunked(lambda lo, hi: singlet_counts(settings, rng, lo, hi), n, chunks)
    return CorrelationEstimate.from_counts(sum(parts, Counts()))


# --- naive-realist hidden-vector model ---------------------------------------------


def _hidden_vectors(u: np.ndarray) -> np.ndarray:
    """Uniform points on the unit sphere from pairs of uniforms (z, azimuth)."""
    z = 2.0 * u[:, 0] - 1.0
    phi = 2.0 * np.pi * u[:, 1]
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack((r * np.cos(phi), r * np.sin(phi), z))


def _lhv_signs(
    dirs: np.ndarray, rng: RngStream, start: int, stop: int
) -> np.ndarray:
    """sign(lambda . d) for trials ``start .. stop-1`` and every row of ``dirs``."""
    lam = _hidden_vectors(rng.at(start * LHV_DRAWS).random((stop - start, LHV_DRAWS)))
    dots = lam @ dirs.T
    for i in np.flatnonzero(np.any(dots == 0.0, axis=1)):
        # exact tie: redraw from a substream owned by this trial, so chunking stays irrelevant
        tie_rng = rng.substream(start + int(i))
        while np.any(dots[i] == 0.0):
            lam_i = _hidden_vectors(tie_rng.random((1, LHV_DRAWS)))
            dots[i] = (lam_i @ dirs.T)[0]
    return np.sign(dots).astype(np.int8)


def _dir_matrix(dirs: Sequence[Direction]) -> np.ndarray:
    return np.array([d.vector for d in dirs])


def sample_lhv_vector_model(settings: MeasurementSettings, rng: RngStream) -> TrialOutcome:
    """One trial of A = sign(lambda . n1), B = -sign(lambda . n2), lambda uniform on S^2."""
    dirs = _dir_matrix((settings.dir1, settings.dir2))
    while True:
        lam = _hidden_vectors(rng.random((1, LHV_DRAWS)))
        dots = (lam @ dirs.T)[0]
        if np.all(dots != 0.0):
            break
    return TrialOutcome(int(np.sign(dots[0])), -int(np.sign(dots[1])))


def lhv_counts(settings: MeasurementSettings, rng: RngStream, start: int, stop: int) -> Counts:
    dirs = _dir_matrix((settings.dir1, settings.dir2))
    total = Counts()
    for lo, hi in _blocks(start, stop):
        s = _lhv_signs(dirs, rng, lo, hi)
        total = total + Counts.from_outcomes(s[:, 0], -s[:, 1])
    return total


def estimate_lhv_correlation(
    settings: MeasurementSettings, n: int, rng: RngStream, chunks: int = 1
) -> CorrelationEstimate:
    n = _check_trials(n)
    parts = _run_chunked(lambda lo, hi: lhv_counts(settings, rng, lo, hi), n, chunks)
    return CorrelationEstimate.from_counts(sum(parts, Counts()))


def lhv_expected_correlation(theta: float) -> float:
    """Closed form for the hidden-vector model: -1 + 2 theta / pi on [0, pi]."""
    return -1.0 + 2.0 * theta / math.pi


# --- deterministic strategies --------------------------------------------------


@dataclass(frozen=True, order=True)
class LhvStrategy:
    """Preassigned particle-1 outcomes on directions a, b, c; particle 2 gets the opposite."""

    signs: Tuple[int, int, int]

    def __post_init__(self):
        if len(self.signs) != 3 or any(s not in (1, -1) for s in self.signs):
            raise DomainError(f"a strategy assigns +1/-1 to each of 3 directions, got {self.signs}")

    @property
    def assignment(self) -> Dict[str, int]:
        return dict(zip(LABELS, self.signs))

    def outcome1(self, label: str) -> int:
        return self.signs[LABELS.index(label)]

    def outcome2(self, label: str) -> int:
        return -self.outcome1(label)

    def correlation(self, x: str, y: str) -> int:
        """lambda_1(x) * lambda_2(y) for particle 1 at ``x`` and particle 2 at ``y``."""
        return self.outcome1(x) * self.outcome2(y)

    def plus_plus(self, x: str, y: str) -> int:
        return int(self.outcome1(x) == 1 and self.outcome2(y) == 1)


class StrategyRow(NamedTuple):
    strategy: LhvStrategy
    e_ab: int
    e_ac: int
    e_bc: int


def all_strategies() -> List[LhvStrategy]:
    return [LhvStrategy(s) for s in product((1, -1), repeat=3)]


def _check_distinct(dirs: Sequence[Direction]) -> None:
    if len(dirs) != 3:
        raise DomainError(f"need exactly three directions, got {len(dirs)}")
    for i in range(3):
        for j in range(i + 1, 3):
            if dirs[i].dot(dirs[j]) >= 1.0 - 1e-12:
                raise DomainError("the three directions must be distinct")


def enumerate_lhv_strategies(dirs: Sequence[Direction]) -> List[StrategyRow]:
    """All 2**3 deterministic strategies with their exact correlation products.

    A deterministic strategy ignores the geometry of the directions; they are
    only checked for distinctness.
    """
    _check_distinct(dirs)
    return [
        StrategyRow(s, s.correlation("a", "b"), s.correlation("a", "c"), s.correlation("b", "c"))
        for s in all_strategies()
    ]


def mixture_correlations(weights: Dict[LhvStrategy, float]) -> Tuple[float, float, float]:
    """(E_ab, E_ac, E_bc) of a probability mixture of deterministic strategies."""
    total = sum(weights.values())
    if total <= 0:
        raise DomainError("mixture weights must have positive total")
    return tuple(
        sum(w * s.correlation(x, y) for s, w in weights.items()) / total
        for x, y in (("a", "b"), ("a", "c"), ("b", "c"))
    )


def in_lhv_polytope(e_ab: float, e_ac: float, e_bc: float, tol: float = 1e-9) -> bool:
    """Whether a correlation triple is a convex mixture of the 8 deterministic strategies."""
    vertices = np.array(
        [[s.correlation("a", "b"), s.correlation("a", "c"), s.correlation("b", "c")] for s in all_strategies()],
        dtype=float,
    ).T
    a_eq = np.vstack([vertices, np.ones(vertices.shape[1])])
    b_eq = np.array([e_ab, e_ac, e_bc, 1.0])
    # feasibility LP with slack: minimise total |residual|
    k, m = a_eq.shape
    c = np.concatenate([np.zeros(m), np.ones(2 * k)])
    a_full = np.hstack([a_eq, np.eye(k), -np.eye(k)])
    res = linprog(c, A_eq=a_full, b_eq=b_eq, bounds=[(0, None)] * (m + 2 * k), method="highs")
    return bool(res.status == 0 and res.fun <= tol)


def lhv_strategy_counts(
    dirs: Sequence[Direction], n: int, rng: RngStream, chunks: int = 1
) -> Dict[LhvStrategy, int]:
    """Histogram of the deterministic strategies the hidden-vector model induces.

    Every hidden vector fixes sign(lambda . a), sign(lambda . b), sign(lambda . c)
    at once, so a sampled run is an empirical mixture of strategies and all of
    its correlations are exact integer combinations of this histogram.
    """
    n = _check_trials(n)
    _check_distinct(dirs)
    dm = _dir_matrix(dirs)
    weights = np.array([4, 2, 1])

    def work(start, stop):
        hist = np.zeros(8, dtype=np.int64)
        for lo, hi in _blocks(start, stop):
            s = _lhv_signs(dm, rng, lo, hi)
            idx = ((s < 0).astype(np.int64) * weights).sum(axis=1)
            hist += np.bincount(idx, minlength=8)
        return hist

    hist = sum(_run_chunked(work, n, chunks))
    # all_strategies() enumerates (+,+,+), (+,+,-), ... matching the -1 -> bit encoding
    return {s: int(c) for s, c in zip(all_strategies(), hist)}


# --- theta sweep -----------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    theta: float
    analytic: float
    mc_mean: float
    mc_std_error: float
    lhv_mean: float
    lhv_std_error: float
    n: int


def sweep_theta(
    theta_grid: Sequence[float], n_per_point: int, master_seed: int, chunks: int = 1
) -> List[SweepRow]:
    """Analytic, singlet-MC and hidden-vector-MC correlation at each grid angle.

    Grid point ``i`` uses stream ``2i`` for the singlet model and ``2i + 1``
    for the hidden-vector model.
    """
    if len(theta_grid) == 0:
        raise DomainError("theta grid must be non-empty")
    n = _check_trials(n_per_point)
    rows = []
    for i, theta in enumerate(theta_grid):
        settings = MeasurementSettings.from_theta(theta)
        mc = estimate_correlation(settings, n, RngStream(master_seed, 2 * i), chunks)
        lhv = estimate_lhv_correlation(settings, n, RngStream(master_seed, 2 * i + 1), chunks)
        rows.append(
            SweepRow(
                float(theta),
                corr.expected_correlation(theta).value,
                mc.mean,
                mc.std_error,
                lhv.mean,
                lhv.std_error,
                n,
            )
        )
    return rows


# --- Bell / Wigner experiment ---------------------------------------------------


MODELS = ("quantum", "lhv-vector", "lhv-enumerate")


@dataclass(frozen=True)
class BellExperiment:
    model: str
    n_trials: int
    e_ab: float
    e_ac: float
    e_bc: float
    p_ab: float
    p_ac: float
    p_cb: float
    bell: corr.InequalityReport
    wigner: corr.InequalityReport
    strategies: Optional[List[StrategyRow]] = None


def bell_experiment(
    angles: Sequence[float],
    n: int,
    model: str,
    master_seed: int,
    chunks: int = 1,
) -> BellExperiment:
    """Evaluate both three-setting inequalities at planar angles (a, b, c).

    ``quantum`` samples each analyser pair on its own stream (0: a-b, 1: a-c,
    2: b-c, 3: c-b). ``lhv-vector`` shares one stream of hidden vectors
    across all settings. ``lhv-enumerate`` is exact: the reported values
    are those of the uniform mixture and every strategy is listed.
    """
    if model not in MODELS:
        raise DomainError(f"unknown model {model!r}; choose from {MODELS}")
    dirs = [Direction.planar(a) for a in angles]
    _check_distinct(dirs)
    a, b, c = dirs

    if model == "quantum":
        n = _check_trials(n)
        pairs = [(a, b), (a, c), (b, c), (c, b)]
        est = [
            estimate_correlation(MeasurementSettings(x, y), n, RngStream(master_seed, k), chunks)
            for k, (x, y) in enumerate(pairs)
        ]
        e_ab, e_ac, e_bc = (e.mean for e in est[:3])
        p_ab, p_ac, p_cb = (est[k].frequency(1, 1) for k in (0, 1, 3))
        strategies = None
    else:
        if model == "lhv-vector":
            n = _check_trials(n)
            hist = lhv_strategy_counts(dirs, n, RngStream(master_seed, 0), chunks)
            strategies = None
        else:
            hist = {s: 1 for s in all_strategies()}
            n = len(hist)
            strategies = enumerate_lhv_strategies(dirs)

        def mean_of(f):
            return sum(c * f(s) for s, c in hist.items()) / n

        e_ab = mean_of(lambda s: s.correlation("a", "b"))
        e_ac = mean_of(lambda s: s.correlation("a", "c"))
        e_bc = mean_of(lambda s: s.correlation("b", "c"))
        p_ab = mean_of(lambda s: s.plus_plus("a", "b"))
        p_ac = mean_of(lambda s: s.plus_plus("a", "c"))
        p_cb = mean_of(lambda s: s.plus_plus("c", "b"))

    return BellExperiment(
        model,
        n,
        e_ab,
        e_ac,
        e_bc,
        p_ab,
        p_ac,
        p_cb,
        corr.bell_original(e_ab, e_ac, e_bc),
        corr.wigner_from_probabilities(p_ab, p_ac, p_cb),
        strategies,
    )


# --- sealed envelopes --------------------------------------------------------


class Card(enum.Enum):
    ACE_OF_HEARTS = "A_h"
    ACE_OF_SPADES = "A_s"

    @property
    def other(self) -> "Card":
        return Card.ACE_OF_SPADES if self is Card.ACE_OF_HEARTS else Card.ACE_OF_HEARTS


@dataclass(frozen=True)
class EnvelopeState:
    alice_card: Card
    bob_card: Card
    alice_opened: bool = False

    def __post_init__(self):
        if self.alice_card == self.bob_card:
            raise DomainError("Alice and Bob always hold different cards")


# the unopened pair: equal weight on (A_h, A_s) and (A_s, A_h)
ENVELOPE_PRIOR = (
    (EnvelopeState(Card.ACE_OF_HEARTS, Card.ACE_OF_SPADES), 0.5),
    (EnvelopeState(Card.ACE_OF_SPADES, Card.ACE_OF_HEARTS), 0.5),
)


def bob_hearts_probability(alice_observed: Optional[Card] = None) -> float:
    """P(Bob holds A_h), optionally conditioned on the card Alice saw."""
    support = [
        (st, w) for st, w in ENVELOPE_PRIOR if alice_observed is None or st.alice_card == alice_observed
    ]
    norm = sum(w for _, w in support)
    return sum(w for st, w in support if st.bob_card == Card.ACE_OF_HEARTS) / norm


@dataclass(frozen=True)
class EnvelopeTranscript:
    prior_prob: float
    observed_card: Card
    posterior_prob: float
    state: EnvelopeState


def envelope_demo(rng: RngStream) -> EnvelopeTranscript:
    """Deal, let Alice open her envelope, and update P(Bob has A_h) by conditioning."""
    prior = bob_hearts_probability()
    u = rng.random()
    dealt = ENVELOPE_PRIOR[0][0] if u < ENVELOPE_PRIOR[0][1] else ENVELOPE_PRIOR[1][0]
    opened = EnvelopeState(dealt.alice_card, dealt.bob_card, alice_opened=True)
    return EnvelopeTranscript(
        prior, opened.alice_card, bob_hearts_probability(opened.alice_card), opened
    )


@dataclass(frozen=True)
class EnvelopeSummary:
    runs: int
    bob_hearts_frequency: float
    posterior_hits: int
    transcripts: List[EnvelopeTranscript]


def run_envelopes(runs: int, rng: RngStream) -> EnvelopeSummary:
    runs = _check_trials(runs)
    ts = [envelope_demo(rng) for _ in range(runs)]
    hearts = sum(t.state.bob_card == Card.ACE_OF_HEARTS for t in ts)
    hits = sum((t.posterior_prob == 1.0) == (t.state.bob_card == Card.ACE_OF_HEARTS) for t in ts)
    return EnvelopeSummary(runs, hearts / runs, hits, ts)
