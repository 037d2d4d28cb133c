"""Domain errors shared by every module.

Each error carries a ``kind`` (the error name used in JSON reports) and an
optional ``which`` detail, so the CLI can print ``{"error": ..., "which": ...}``.
"""


class DomainError(Exception):
    """Base class for all input-domain failures."""

    kind = "DomainError"

    def __init__(self, message="", which=None):
        super().__init__(message or self.kind)
        self.which = which

    def report(self):
        out = {"error": self.kind}
        if self.which is not None:
            out["which"] = self.which
        msg = str(self)
        if msg and msg != self.kind:
            out["message"] = msg
        return out


def _make(name, doc):
    return type(name, (DomainError,), {"kind": name, "__doc__": doc})


ConditionViolated = _make("ConditionViolated", "A data-set condition (i)-(iv) fails.")
NonIntegralGenus = _make("NonIntegralGenus", "Riemann-Hurwitz gives a non-integer genus.")
NegativeGenus = _make("NegativeGenus", "Riemann-Hurwitz gives a negative genus.")
PreconditionFailed = _make("PreconditionFailed", "An operation was called outside its domain.")
NotCompatible = _make("NotCompatible", "The chosen cone points cannot be glued.")
DegreeMismatch = _make("DegreeMismatch", "Two data sets have different degrees.")
NotType1 = _make("NotType1", "A Type 1 data set was required.")
NotType2 = _make("NotType2", "A Type 2 data set was required.")
NotRealizable = _make("NotRealizable", "The data set satisfies the arithmetic conditions but no action has it.")
IrreducibleType2 = _make("IrreducibleType2", "An irreducible Type 2 set has no compatibility tree of its own.")
BudgetExhausted = _make("BudgetExhausted", "The search bound was reached.")
UnsupportedCase = _make("UnsupportedCase", "No closed formula is available for this input.")
InvalidPolygon = _make("InvalidPolygon", "A side pairing is not a fixed-point-free involution.")
NotRealizedByPolygon = _make("NotRealizedByPolygon", "The polygon construction does not apply.")
InvalidFatGraph = _make("InvalidFatGraph", "The permutation data does not define a fat graph.")
NotAutomorphism = _make("NotAutomorphism", "The permutation does not commute with the fat-graph structure.")
ReducibleAutomorphism = _make("ReducibleAutomorphism", "The automorphism is not irreducible.")
MalformedWord = _make("MalformedWord", "A boundary word is not a valid surface word.")
NotSymplectic = _make("NotSymplectic", "A matrix does not preserve the symplectic form.")
NotRootRealizing = _make("NotRootRealizing", "The data set does not realize a root of a Dehn twist.")
NoLift = _make("NoLift", "A homology class could not be written in the cycle basis.")
