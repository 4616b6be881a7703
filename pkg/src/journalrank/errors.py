"""Typed errors shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class JournalRankError(Exception):
    """Base class for every error raised by this package."""


@dataclass(frozen=True)
class Issue:
    """One validation violation with a machine-readable code and location.

    `journal` carries the offending journal id when the problem is
    journal-level; `cell` carries (row, column) indices for matrix cells.
    """

    code: str
    message: str
    journal: str | None = None
    cell: tuple[int, int] | None = None


class ValidationError(JournalRankError):
    """A journal set / citation matrix pair failed validation.

    Carries every violation found, not just the first one.
    """

    def __init__(self, issues):
        self.issues = tuple(issues)
        summary = "; ".join(issue.message for issue in self.issues)
        super().__init__(f"{len(self.issues)} validation issue(s): {summary}")


class IndexOutOfRange(JournalRankError, IndexError):
    """A journal index does not exist in the instance."""

    def __init__(self, index: int, n: int):
        self.index = index
        self.n = n
        super().__init__(f"journal index {index} out of range for {n} journals")


class ZeroArticles(JournalRankError):
    """A per-article indicator needs articles in the earlier period."""

    def __init__(self, index: int, journal_id: str | None = None):
        self.index = index
        self.journal_id = journal_id
        label = f"{journal_id!r} (index {index})" if journal_id else f"index {index}"
        super().__init__(f"journal {label} published no articles in the earlier period")


class ZeroArticlesT2(JournalRankError):
    """Citing-side weights need articles in the later period."""

    def __init__(self, index: int, journal_id: str | None = None):
        self.index = index
        self.journal_id = journal_id
        label = f"{journal_id!r} (index {index})" if journal_id else f"index {index}"
        super().__init__(f"journal {label} published no articles in the later period")


class ZeroOutgoing(JournalRankError):
    """A journal has no outgoing citations (dangling row)."""

    def __init__(self, index: int, journal_id: str | None = None):
        self.index = index
        self.journal_id = journal_id
        label = f"{journal_id!r} (index {index})" if journal_id else f"index {index}"
        super().__init__(f"journal {label} has no outgoing citations")


class NotIrreducible(JournalRankError):
    """The citation graph is not strongly connected.

    `report` is the StructureReport of the offending matrix; `components`
    lists the strongly connected components (index lists), which identify
    the cut that disconnects the graph.
    """

    def __init__(self, report, components=None):
        self.report = report
        self.components = [list(c) for c in components] if components else None
        detail = ""
        if self.components:
            detail = f" ({len(self.components)} strongly connected components)"
        super().__init__(f"citation matrix is not irreducible{detail}")


class NoConvergence(JournalRankError):
    """The iterative solver did not reach its tolerance."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )


class PreconditionViolated(JournalRankError):
    """A check was asked to run on an instance outside its assumptions."""


class DegenerateInput(JournalRankError):
    """Correlation input has fewer than two points or zero variance."""


class GenerationFailed(JournalRankError):
    """A random-instance generator exhausted its retry budget."""
