"""Exception types shared across the package.

Every error raised by cutlab derives from CutlabError so callers can catch
the whole family at once (the CLI maps them to exit codes).
"""


class CutlabError(Exception):
    """Base class for all cutlab errors."""


class SchemaError(CutlabError):
    """A JSON document does not match the expected schema."""


class UnknownVertex(CutlabError):
    """A vertex id was referenced that is not in the graph."""


class UnknownEdge(CutlabError):
    """An edge key was referenced that is not in the graph."""


class EndpointDeleted(CutlabError):
    """A vertex cut contains a demand endpoint."""


class CostMismatch(CutlabError):
    """A certificate's stored cost differs from the recomputed cost."""


class UnweightedMember(CutlabError):
    """A certificate member carries no weight, so its cost is undefined."""


class Infeasible(CutlabError):
    """No solution exists at all (e.g. a demanded pair joined by a direct edge)."""


class OddK(CutlabError):
    """Terminal pairing requires an even number of demand pairs."""


class Refused(CutlabError):
    """The instance is too large for an exhaustive oracle; fall back to
    extraction-based checks instead."""


class BadAssignment(CutlabError):
    """An assignment maps a supernode outside its color class."""


class BadShape(CutlabError):
    """Color classes or group families are malformed for the requested build."""


class BadSupergraph(CutlabError):
    """The instance's supergraph is not the one the construction needs."""


class NotAClique(CutlabError):
    """The supplied witness vertices do not induce a clique."""


class NotABiclique(CutlabError):
    """The supplied witness vertices do not induce a complete bipartite graph."""


class NotAGtSolution(CutlabError):
    """The supplied witness does not solve the grid tiling instance."""


class SuperHeavyInCut(CutlabError):
    """A cut certificate contains a super-heavy vertex, which no solution
    within the soundness threshold may use."""


class InfeasibleCut(CutlabError):
    """The certificate passed to an extractor is not a feasible cut."""


class InfeasibleNetwork(CutlabError):
    """The certificate passed to an extractor is not a feasible network."""


class EmptyCell(CutlabError):
    """A grid tiling cell came out empty, violating the instance invariant."""


class BudgetExceeded(CutlabError):
    """A certificate's cost exceeds the budget the extraction relies on."""


class StructureViolation(CutlabError):
    """A network violates the structure forced on minimal in-budget solutions
    (e.g. a gadget holds more than one intra-gadget edge)."""
