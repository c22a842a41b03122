"""Exception hierarchy.

Every failure that concerns a mathematical condition carries the name of
the axiom or theorem it violates in ``axiom`` so reports can cite it.
"""


class TDError(Exception):
    """Base class for every error raised by the package."""

    axiom = None
    code = "error"

    def __init__(self, message, axiom=None):
        super().__init__(message)
        if axiom is not None:
            self.axiom = axiom

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        if self.axiom:
            out["axiom"] = self.axiom
        return out


class ParseError(TDError, ValueError):
    code = "parse-error"


class FieldMismatch(TDError, ValueError):
    code = "field-mismatch"


class DimensionMismatch(TDError, ValueError):
    code = "dimension-mismatch"


class SingularMatrix(TDError, ArithmeticError):
    code = "singular-matrix"


class NotDiagonalizableOverField(TDError):
    code = "not-diagonalizable-over-field"
    axiom = "diagonalizability: each of A, A* is diagonalizable over the field"


class NotDiagonalizable(TDError):
    code = "not-diagonalizable"
    axiom = "diagonalizability: each of A, A* is diagonalizable over the field"


class NoTridiagonalOrdering(TDError):
    code = "no-tridiagonal-ordering"

    def __init__(self, which, message=None):
        if which == "A":
            axiom = "tridiagonality: A* V_i lies in V_{i-1} + V_i + V_{i+1}"
        else:
            axiom = "tridiagonality: A V*_i lies in V*_{i-1} + V*_i + V*_{i+1}"
        super().__init__(
            message or f"no ordering of the eigenspaces of {which} is standard", axiom)
        self.which = which


class Reducible(TDError):
    code = "reducible"
    axiom = "irreducibility: no proper nonzero subspace is invariant under both A and A*"

    def __init__(self, witness, message=None):
        super().__init__(message or
                         f"A and A* share an invariant subspace of dimension {witness.dim}")
        self.witness = witness

    def to_json(self):
        out = super().to_json()
        out["witness"] = self.witness.to_json()
        return out


class NoEigenvalueInField(TDError):
    code = "no-eigenvalue-in-field"


class VerificationFailed(TDError):
    code = "verification-failed"


class InternalInvariantViolation(TDError, AssertionError):
    code = "internal-invariant-violation"


class CrossCheckFailed(TDError, AssertionError):
    code = "cross-check-failed"
    axiom = "split sequence: E*_0 (A - th_{i-1})...(A - th_0) E*_0 acts on E*_0 V as zeta_i / prod (th*_0 - th*_j)"


class TheoremViolation(TDError, AssertionError):
    code = "theorem-violation"


class NotSharp(TDError):
    code = "not-sharp"
    axiom = "sharpness: the parameter array is defined only when dim E*_0 V = 1"


class NoIntertwiner(TDError):
    code = "no-intertwiner"
    axiom = "isomorphism: sharp systems are isomorphic iff their parameter arrays agree"


class NotRealizable(TDError):
    code = "not-realizable"


class RoundTripMismatch(TDError, AssertionError):
    code = "round-trip-mismatch"
