"""Exception types shared across the library.

Mathematical failures (broken axioms, non-cocycles, exactness defects)
derive from MathError so the CLI can map them to exit code 1; input
problems derive from InputError and map to exit code 2.
"""


class DiffLieError(Exception):
    pass


class MathError(DiffLieError):
    pass


class InputError(DiffLieError):
    pass


class ParseError(InputError):
    """Problem file could not be parsed; message carries the location."""


class ImageNotContained(MathError):
    """Quotient requested for an image that is not inside the kernel."""


class NotInM(MathError):
    """A map on g+h has a component outside the mixed cochain space."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class JacobiViolation(MathError):
    """Structure constants fail the Jacobi identity.

    ``failures`` lists (i, j, k, residual) for every failing basis triple.
    """

    def __init__(self, failures, basis_names=None):
        self.failures = list(failures)
        self.basis_names = basis_names
        names = basis_names or {}
        parts = []
        for i, j, k, res in self.failures:
            key = "({}, {}, {})".format(
                names[i] if names else i,
                names[j] if names else j,
                names[k] if names else k,
            )
            parts.append("%s -> %s" % (key, res))
        super().__init__("Jacobi identity fails at " + "; ".join(parts))


class NotAction(MathError):
    """rho is not an action by derivations."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(
            "action axioms fail: " + "; ".join(str(f) for f in self.failures)
        )


class NotDifferenceOp(MathError):
    """D fails the relative difference identity.

    ``failures`` lists ((i, j), residual) pairs; the residual is
    rho(x)Dy - rho(y)Dx + [Dx, Dy] - D[x, y] on the basis pair.
    """

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(
            "difference operator identity fails: "
            + "; ".join("at %s residual %s" % (p, r) for p, r in self.failures)
        )


class NotRepresentation(MathError):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(
            "representation axioms fail: " + "; ".join(str(f) for f in self.failures)
        )


class InternalInconsistency(MathError):
    """A property the theory guarantees failed; indicates a library bug."""


class DegreeMismatch(MathError):
    pass


class NotMaurerCartan(MathError):
    pass


class ExactnessFailure(MathError):
    def __init__(self, node, detail=""):
        self.node = node
        super().__init__("long exact sequence fails at %s %s" % (node, detail))


class NotCocycle(MathError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotASection(MathError):
    pass


class IncompatibleBaseOrKernel(MathError):
    pass


class NotNilpotent(MathError):
    pass


class ClassExceedsOrder(MathError):
    def __init__(self, cls, order):
        self.nilpotency_class = cls
        self.order = order
        super().__init__(
            "nilpotency class %d exceeds the BCH table order %d" % (cls, order)
        )


class ActionNotNilpotent(MathError):
    pass


class NotAHomomorphism(MathError):
    pass
