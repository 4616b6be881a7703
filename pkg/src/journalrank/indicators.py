"""The eight journal performance indicators.

Citation conventions: ``matrix.counts[j, i]`` counts citations from journal
j to journal i, and ``matrix.row_sums[j]`` is journal j's outgoing citation
volume. Column sums are therefore received citations.

Scale conventions worth knowing:

* Impact factor and audience factor are raw per-article citation rates;
  they scale linearly with the citation counts.
* Influence weights are normalized so their citation-weighted mean is 1
  (per-reference basis); they are invariant under rescaling the matrix.
* Per-article influence divides the weighted citation volume by journal
  count as well as article count, which keeps scores directly comparable
  when the journal set changes (for instance between databases with
  different coverage of minor journals). Multiplying by the journal count
  recovers the classic normalization.
* Damped stationary scores sum to 100 (total basis) and their per-article
  variant divides that by 100 times the article count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import core, spectral
from .errors import ZeroArticles, ZeroArticlesT2, ZeroOutgoing

KIND_BASIS = {
    "IF": "per_article",
    "AF": "per_article",
    "IW": "per_reference",
    "IPP": "per_article",
    "EF": "total",
    "AI": "per_article",
    "WPR": "total",
    "SJR": "per_article",
}

DEFAULT_ALPHA = 0.85
DEFAULT_BETA = 0.9
DEFAULT_GAMMA = 0.0999


@dataclass(frozen=True)
class IndicatorVector:
    """One score per journal, tagged with the indicator kind and parameters.

    The normalization basis is a function of the kind and is derived, not
    supplied. Values are stored read-only; a solver report is attached when
    a fixed-point solve produced the scores.
    """

    kind: str
    values: np.ndarray
    params: Mapping[str, float] = field(default_factory=dict)
    solver: spectral.SolverReport | None = None
    basis: str = field(init=False)

    def __post_init__(self):
        if self.kind not in KIND_BASIS:
            raise ValueError(f"unknown indicator kind {self.kind!r}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("indicator values must be a vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("indicator values must be finite")
        # Forgive sub-rounding negative dust from the linear solver.
        tiny = 1e-12 * max(1.0, float(np.abs(values).max(initial=0.0)))
        if np.any(values < -tiny):
            raise ValueError("indicator values must be non-negative")
        np.clip(values, 0.0, None, out=values)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))
        object.__setattr__(self, "basis", KIND_BASIS[self.kind])
        if self.kind == "EF" and abs(values.sum() - 100.0) > 1e-6:
            raise ValueError("EF scores must sum to 100")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def label(self) -> str:
        """Short display label, e.g. IF, AI(0.85), WPR(0.9,0.0999)."""
        if "alpha" in self.params:
            return f"{self.kind}({self.params['alpha']:g})"
        if "beta" in self.params:
            return f"{self.kind}({self.params['beta']:g},{self.params['gamma']:g})"
        return self.kind


def _articles_t1(journals: core.JournalSet) -> np.ndarray:
    a1 = journals.articles_t1
    zero = np.flatnonzero(a1 == 0)
    if zero.size:
        i = int(zero[0])
        raise ZeroArticles(i, journals.journals[i].id)
    return a1


def _articles_t2(journals: core.JournalSet) -> np.ndarray:
    a2 = journals.articles_t2
    zero = np.flatnonzero(a2 == 0)
    if zero.size:
        i = int(zero[0])
        raise ZeroArticlesT2(i, journals.journals[i].id)
    return a2


def _outgoing(journals: core.JournalSet, matrix: core.CitationMatrix) -> np.ndarray:
    sums = matrix.row_sums
    zero = np.flatnonzero(sums == 0)
    if zero.size:
        i = int(zero[0])
        raise ZeroOutgoing(i, journals.journals[i].id)
    return sums


def _article_share(journals: core.JournalSet) -> np.ndarray:
    a1 = journals.articles_t1
    total = a1.sum()
    if total == 0:
        raise ZeroArticles(0, journals.journals[0].id if journals.n else None)
    return a1 / total


def impact_factor(journals: core.JournalSet, matrix: core.CitationMatrix) -> IndicatorVector:
    """Received citations per earlier-period article."""
    a1 = _articles_t1(journals)
    received = matrix.counts.sum(axis=0)
    return IndicatorVector("IF", received / a1)


def audience_factor(journals: core.JournalSet, matrix: core.CitationMatrix) -> IndicatorVector:
    """Impact factor with each citation down-weighted by the citing journal's
    referencing intensity relative to the overall average.

    A citation from a journal with many references per article counts less;
    journals that cite at the average rate contribute with weight one.
    """
    a1 = _articles_t1(journals)
    a2 = _articles_t2(journals)
    sums = _outgoing(journals, matrix)
    per_journal_rate = sums / a2
    overall_rate = sums.sum() / a2.sum()
    weights = overall_rate / per_journal_rate
    weighted_received = weights @ matrix.counts
    return IndicatorVector("AF", weighted_received / a1)


def influence_weights(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Recursive per-reference weights on an irreducible citation matrix.

    The returned vector w satisfies w[i] = sum_j w[j] * counts[j, i] / s[i]
    and is scaled so that the citation-weighted mean weight is one:
    sum_i w[i] * s[i] equals sum_i s[i].
    """
    sums = _outgoing(journals, matrix)
    direction, report = spectral.solve_iw_eigensystem(matrix, solver)
    scale = sums.sum() / float(direction @ sums)
    return IndicatorVector("IW", direction * scale, solver=report)


def influence_per_publication(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Per-article variant of the recursive influence weights.

    The weighted citation volume w[i] * s[i] is divided by the article count
    and by the number of journals. The journal-count divisor pins the scale
    to the average reference volume instead of the total, so scores barely
    move when an insignificant journal enters or leaves the set; multiply by
    the journal count to recover the classic per-reference-mean scale.
    """
    a1 = _articles_t1(journals)
    iw = influence_weights(journals, matrix, solver)
    values = iw.values * matrix.row_sums / (journals.n * a1)
    return IndicatorVector("IPP", values, solver=iw.solver)


def eigenfactor(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    alpha: float = DEFAULT_ALPHA,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Damped stationary citation score, total basis, summing to 100.

    A stationary vector p solves
    p[i] = alpha * sum_j p[j] * counts[j, i] / s[j] + (1 - alpha) * a1[i] / sum(a1),
    and the score of journal i is 100 times the citation flow it receives
    under p. alpha = 1 requires an irreducible matrix.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    _outgoing(journals, matrix)
    shares = spectral.reference_shares(matrix)
    teleport = _article_share(journals)
    p, report = spectral.stationary(shares, alpha, teleport, solver)
    scores = 100.0 * (p @ shares)
    return IndicatorVector("EF", scores, {"alpha": alpha}, report)


def article_influence(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    alpha: float = DEFAULT_ALPHA,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Damped stationary score per article: the 0-to-1 damping sweep of this
    indicator interpolates between audience-factor-like and recursive
    influence-like behavior."""
    a1 = _articles_t1(journals)
    ef = eigenfactor(journals, matrix, alpha, solver)
    return IndicatorVector("AI", ef.values / (100.0 * a1), {"alpha": alpha}, ef.solver)


def weighted_pagerank(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    beta: float,
    gamma: float,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Stationary score with separate article-share and uniform teleports.

    Solves r[i] = beta * sum_j r[j] * counts[j, i] / s[j]
                 + gamma * a1[i] / sum(a1) + (1 - beta - gamma) / n
    with sum(r) = 1. beta = 1 (hence gamma = 0) is the pure eigen-problem
    and requires irreducibility.
    """
    if beta < 0 or gamma < 0 or beta + gamma > 1 + 1e-12:
        raise ValueError("need beta >= 0, gamma >= 0 and beta + gamma <= 1")
    _outgoing(journals, matrix)
    shares = spectral.reference_shares(matrix)
    n = journals.n
    if beta == 1.0:
        teleport = np.full(n, 1.0 / n)
        r, report = spectral.stationary(shares, 1.0, teleport, solver)
    else:
        uniform_part = (1.0 - beta - gamma) / n
        mix = np.full(n, uniform_part)
        if gamma > 0:
            mix = mix + gamma * _article_share(journals)
        teleport = mix / (1.0 - beta)
        r, report = spectral.stationary(shares, beta, teleport, solver)
    return IndicatorVector("WPR", r, {"beta": beta, "gamma": gamma}, report)


def scimago_jr(
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    beta: float = DEFAULT_BETA,
    gamma: float = DEFAULT_GAMMA,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Weighted-PageRank score divided by the earlier-period article count."""
    a1 = _articles_t1(journals)
    wpr = weighted_pagerank(journals, matrix, beta, gamma, solver)
    return IndicatorVector("SJR", wpr.values / a1, {"beta": beta, "gamma": gamma}, wpr.solver)


_PLAIN_KINDS = {"if": impact_factor, "af": audience_factor}
_ALPHA_KINDS = {"ef": eigenfactor, "ai": article_influence}
_SOLVED_KINDS = {"iw": influence_weights, "ipp": influence_per_publication}


def compute(
    kind: str,
    journals: core.JournalSet,
    matrix: core.CitationMatrix,
    *,
    alpha: float | None = None,
    beta: float | None = None,
    gamma: float | None = None,
    solver: spectral.SolverConfig | None = None,
) -> IndicatorVector:
    """Dispatch by lower-case kind token: if, af, iw, ipp, ef, ai, wpr, sjr.

    Rejects parameters that do not belong to the requested indicator.
    """
    token = kind.lower()
    if token in _PLAIN_KINDS or token in _SOLVED_KINDS:
        if alpha is not None or beta is not None or gamma is not None:
            raise ValueError(f"indicator {token!r} takes no parameters")
        if token in _PLAIN_KINDS:
            return _PLAIN_KINDS[token](journals, matrix)
        return _SOLVED_KINDS[token](journals, matrix, solver)
    if token in _ALPHA_KINDS:
        if beta is not None or gamma is not None:
            raise ValueError(f"indicator {token!r} takes alpha only")
        return _ALPHA_KINDS[token](journals, matrix, DEFAULT_ALPHA if alpha is None else alpha, solver)
    if token == "wpr":
        if alpha is not None:
            raise ValueError("indicator 'wpr' takes beta and gamma, not alpha")
        if beta is None or gamma is None:
            raise ValueError("indicator 'wpr' needs both beta and gamma")
        return weighted_pagerank(journals, matrix, beta, gamma, solver)
    if token == "sjr":
        if alpha is not None:
            raise ValueError("indicator 'sjr' takes beta and gamma, not alpha")
        return scimago_jr(
            journals,
            matrix,
            DEFAULT_BETA if beta is None else beta,
            DEFAULT_GAMMA if gamma is None else gamma,
            solver,
        )
    raise ValueError(f"unknown indicator kind {kind!r}")
