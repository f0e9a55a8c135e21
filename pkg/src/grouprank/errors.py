"""Shared exception types."""


class GroupRankError(Exception):
    """Base class for errors raised by this package."""


class SchemaError(GroupRankError):
    """A group file failed validation; ``path`` points at the offending node."""

    def __init__(self, path, message):
        self.path = path
        super().__init__("%s: %s" % (path, message))


class ImageBudgetExceeded(GroupRankError):
    """Congruence-image enumeration hit the element budget.

    Carries the partial element count; callers must propagate an
    "unknown" verdict rather than guessing.
    """

    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__("image enumeration exceeded budget %d (saw %d elements)" % (budget, count))


class UncertifiedError(GroupRankError):
    """A relation-lattice computation could not be certified complete."""

    def __init__(self, diagnostics):
        self.diagnostics = diagnostics
        super().__init__("relation lattice uncertified: %s" % (diagnostics,))


class InfiniteRankError(GroupRankError):
    """Hirsch-number style computations were asked about an infinite-rank group."""


class UnknownVerdict(GroupRankError):
    """A pipeline stage returned "unknown" (budget or certification)."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        super().__init__("unknown (%s)%s" % (reason, ": " + detail if detail else ""))
