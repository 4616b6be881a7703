"""Field-insensitivity and coverage-sensitivity analysis.

Two stability notions for per-article indicators, which provably cannot
hold together:

* field insensitivity: with two fields that leak at most a fraction delta
  of their citations to each other, each field's article-weighted mean
  score stays within (1 +/- delta) of the overall mean;
* insignificant-journal insensitivity: removing a rarely cited journal
  barely moves the surviving journals' scores.

The audience factor has the first property (when later-period article
counts are proportional to earlier-period ones) and the recursive
per-article influence has the second; the damping parameter of the
stationary family trades one off against the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, indicators, spectral
from .errors import NotIrreducible, PreconditionViolated, ZeroOutgoing

_BOUND_SLACK = 1e-12
_ETA_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FieldPartition:
    """Assignment of every journal to field 1 or field 2."""

    field_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "field_of", tuple(int(f) for f in self.field_of))
        if any(f not in (1, 2) for f in self.field_of):
            raise ValueError("fields must be labelled 1 or 2")
        if not self.j1.size or not self.j2.size:
            raise ValueError("both fields must be non-empty")

    @property
    def n(self) -> int:
        return len(self.field_of)

    @property
    def j1(self) -> np.ndarray:
        return np.flatnonzero(np.array(self.field_of) == 1)

    @property
    def j2(self) -> np.ndarray:
        return np.flatnonzero(np.array(self.field_of) == 2)

    def is_balanced(self, journals: core.JournalSet) -> bool:
        """True when both fields published the same number of earlier-period articles."""
        a1 = journals.articles_t1
        return float(a1[self.j1].sum()) == float(a1[self.j2].sum())


@dataclass(frozen=True)
class FieldInsensitivityReport:
    """Outcome of the two-field mean-score comparison.

    delta is the tight leakage bound; bounds_hold says, per field, whether
    the article-weighted field mean stays within (1 +/- delta) of the
    overall mean. eta is the constant later/earlier article ratio when one
    exists, else None. balanced records the equal-field-size assumption;
    when False the bounds are still reported but are informational only.
    """

    delta: float
    field_means: tuple[float, float]
    overall_mean: float
    bounds_hold: tuple[bool, bool]
    balanced: bool
    eta: float | None


@dataclass(frozen=True)
class LeaveOneOutReport:
    """Indicator values before/after removing one journal, aligned on survivors.

    relative_change is NaN where the before value is zero; those positions
    are listed in zero_before and excluded from max_relative_change.
    """

    dropped: int
    before: np.ndarray
    after: np.ndarray
    relative_change: np.ndarray
    max_relative_change: float
    zero_before: tuple[int, ...]


@dataclass(frozen=True)
class ProportionalityReport:
    """Spread of the per-journal ratio between two indicator vectors."""

    ratio_min: float
    ratio_max: float
    spread: float
    passed: bool

    @property
    def constant(self) -> float:
        return 0.5 * (self.ratio_min + self.ratio_max)


def min_delta(matrix: core.CitationMatrix, partition: FieldPartition) -> float:
    """Smallest leakage fraction delta compatible with the partition.

    delta is the largest share of any journal's outgoing citations that
    leaves its own field. Zero means block-diagonal citation traffic.
    """
    if partition.n != matrix.n:
        raise ValueError("partition length must match the matrix")
    sums = matrix.row_sums
    dangling = np.flatnonzero(sums == 0)
    if dangling.size:
        raise ZeroOutgoing(int(dangling[0]))
    labels = np.array(partition.field_of)
    same_field = labels[:, None] == labels[None, :]
    own = np.where(same_field, matrix.counts, 0.0).sum(axis=1)
    cross = sums - own
    return float(np.max(cross / sums))


def _weighted_mean(values: np.ndarray, weights: np.ndarray) -> float:
    total = weights.sum()
    if total <= 0:
        raise PreconditionViolated("weighted mean needs positive article counts")
    return float((values * weights).sum() / total)


def field_insensitivity_check(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    partition: FieldPartition,
    indicator: indicators.IndicatorVector,
) -> FieldInsensitivityReport:
    """Compare article-weighted field means of an indicator to the overall mean.

    Uses the tight delta from ``min_delta``. The bound predicates carry a
    small floating-point slack so exact-equality cases count as holding.
    """
    if indicator.n != journals.n:
        raise ValueError("indicator length must match the journal set")
    delta = min_delta(matrix, partition)
    a1 = journals.articles_t1
    values = indicator.values
    mean1 = _weighted_mean(values[partition.j1], a1[partition.j1])
    mean2 = _weighted_mean(values[partition.j2], a1[partition.j2])
    overall = _weighted_mean(values, a1)
    lower = (1.0 - delta) * overall
    upper = (1.0 + delta) * overall
    slack = _BOUND_SLACK * max(1.0, abs(overall))
    holds = tuple(
        bool(lower - slack <= mean <= upper + slack) for mean in (mean1, mean2)
    )

    a2 = journals.articles_t2
    eta: float | None = None
    if np.all(a1 > 0):
        ratios = a2 / a1
        low, high = float(ratios.min()), float(ratios.max())
        if high > 0 and high - low <= _ETA_TOLERANCE * high:
            eta = float(ratios.mean())
        elif high == 0 and low == 0:
            eta = 0.0
    return FieldInsensitivityReport(
        delta=delta,
        field_means=(mean1, mean2),
        overall_mean=overall,
        bounds_hold=holds,
        balanced=partition.is_balanced(journals),
        eta=eta,
    )


def leave_one_out(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    dropped: int,
    kind: str,
    *,
    alpha: float | None = None,
    beta: float | None = None,
    gamma: float | None = None,
    solver: spectral.SolverConfig | None = None,
) -> LeaveOneOutReport:
    """Recompute an indicator after removing one journal and report the shift.

    Every derived quantity (row sums, referencing rates, stationary vector)
    is recomputed on the reduced instance. Needs at least three journals
    after the drop so that recursive indicators stay meaningful.
    """
    if journals.n - 1 < 3:
        raise ValueError("need at least four journals to study a drop")
    before_vec = indicators.compute(
        kind, journals, matrix, alpha=alpha, beta=beta, gamma=gamma, solver=solver
    )
    reduced_journals, reduced_matrix = core.drop_journal(journals, matrix, dropped)
    after_vec = indicators.compute(
        kind, reduced_journals, reduced_matrix, alpha=alpha, beta=beta, gamma=gamma, solver=solver
    )
    before = np.delete(before_vec.values, dropped)
    after = after_vec.values
    with np.errstate(divide="ignore", invalid="ignore"):
        relative = np.where(before > 0, np.abs(after - before) / before, np.nan)
    zero_before = tuple(int(i) for i in np.flatnonzero(before == 0))
    defined = relative[np.isfinite(relative)]
    max_change = float(defined.max()) if defined.size else 0.0
    relative.flags.writeable = False
    before.flags.writeable = False
    return LeaveOneOutReport(
        dropped=dropped,
        before=before,
        after=after,
        relative_change=relative,
        max_relative_change=max_change,
        zero_before=zero_before,
    )


def _ratio_report(numerator: np.ndarray, denominator: np.ndarray, threshold: float) -> ProportionalityReport:
    if np.any(denominator <= 0):
        raise PreconditionViolated("proportionality needs strictly positive scores")
    ratios = numerator / denominator
    low, high = float(ratios.min()), float(ratios.max())
    spread = high / low - 1.0
    return ProportionalityReport(low, high, spread, spread < threshold)


def af_endpoint_check(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    solver: spectral.SolverConfig | None = None,
    threshold: float = 1e-9,
) -> ProportionalityReport:
    """Verify the audience factor matches the undamped per-article stationary score
    up to one constant.

    Requires the later-period article counts to be one fixed multiple of the
    earlier-period counts; raises PreconditionViolated otherwise.
    """
    a1 = journals.articles_t1
    a2 = journals.articles_t2
    if np.any(a1 <= 0):
        raise PreconditionViolated("all journals need earlier-period articles")
    ratios = a2 / a1
    if float(ratios.max()) - float(ratios.min()) > _ETA_TOLERANCE * max(float(ratios.max()), 1.0):
        raise PreconditionViolated(
            "later-period article counts are not proportional to earlier-period counts"
        )
    af = indicators.audience_factor(journals, matrix)
    ai0 = indicators.article_influence(journals, matrix, alpha=0.0, solver=solver)
    return _ratio_report(af.values, ai0.values, threshold)


def ipp_endpoint_check(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    solver: spectral.SolverConfig | None = None,
    threshold: float = 1e-9,
) -> ProportionalityReport:
    """Verify the per-article influence matches the fully damped per-article
    stationary score up to one constant. Requires an irreducible matrix."""
    report = core.structure(matrix)
    if not report.irreducible:
        raise NotIrreducible(report, core.strongly_connected_components(matrix))
    ipp = indicators.influence_per_publication(journals, matrix, solver)
    ai1 = indicators.article_influence(journals, matrix, alpha=1.0, solver=solver)
    return _ratio_report(ipp.values, ai1.values, threshold)
