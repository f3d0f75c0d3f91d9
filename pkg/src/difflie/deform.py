"""Infinitesimal deformations over Q[t]/(t^2) and their classification.

A deformation datum is a pair (bracket perturbation, operator
perturbation).  Cocycle status is decided twice: through the adjoint
coboundary and through a brute-force validation of the deformed structure
over dual numbers; the two verdicts must agree on every input.
"""

from __future__ import annotations

from itertools import combinations

from .cohomology import RegularCochain, RegularComplex, regular_delta
from .errors import InternalInconsistency, NotCocycle
from .multilinear import alt_map_from_matrix
from .rationals import DualScalar, Matrix, rank, solve


class DeformationDatum:
    """Candidate first-order deformation (omega_hat, d_hat) of (g, D)."""

    __slots__ = ("omega_hat", "d_hat")

    def __init__(self, omega_hat, d_hat):
        if omega_hat.arity != 2 or omega_hat.dim != omega_hat.target_dim:
            raise ValueError("bracket perturbation must map wedge^2 g to g")
        if d_hat.rows != omega_hat.dim or d_hat.cols != omega_hat.dim:
            raise ValueError("operator perturbation must be square on g")
        self.omega_hat = omega_hat
        self.d_hat = d_hat

    def as_cochain(self):
        return RegularCochain(2, self.omega_hat, alt_map_from_matrix(self.d_hat))

    def __sub__(self, other):
        return DeformationDatum(
            self.omega_hat - other.omega_hat, self.d_hat.sub(other.d_hat)
        )

    def __eq__(self, other):
        return (
            isinstance(other, DeformationDatum)
            and self.omega_hat == other.omega_hat
            and self.d_hat == other.d_hat
        )

    def __repr__(self):
        return "DeformationDatum(dim=%d)" % self.omega_hat.dim


def dual_number_deformation_valid(algebra, datum):
    """Brute-force check of the deformed structure over Q[t]/(t^2).

    Builds the bracket [x, y] + t omega(x, y) and the operator D + t Dhat
    and validates the Jacobi identity and the difference identity on all
    basis tuples in exact dual arithmetic.
    """
    g = algebra.g
    dim = g.dim
    omega = datum.omega_hat

    table = {}
    for i in range(dim):
        for j in range(dim):
            base = g.bracket_basis(i, j)
            pert = omega.value_on((i, j))
            table[(i, j)] = tuple(
                DualScalar(b, p) for b, p in zip(base, pert)
            )

    def bracket_t(x, y):
        acc = [DualScalar(0)] * dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coeff = xi * yj
                for k, c in enumerate(table[(i, j)]):
                    if c:
                        acc[k] = acc[k] + coeff * c
        return tuple(acc)

    d_t = tuple(
        tuple(
            DualScalar(algebra.d.entries[r][c], datum.d_hat.entries[r][c])
            for c in range(dim)
        )
        for r in range(dim)
    )

    def apply_d(x):
        return tuple(
            sum((row[j] * x[j] for j in range(dim)), DualScalar(0)) for row in d_t
        )

    basis = [
        tuple(DualScalar(1 if t == i else 0) for t in range(dim)) for i in range(dim)
    ]

    for i, j, k in combinations(range(dim), 3):
        total = [DualScalar(0)] * dim
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            term = bracket_t(bracket_t(basis[a], basis[b]), basis[c])
            for t, x in enumerate(term):
                total[t] = total[t] + x
        if any(total):
            return False

    for i, j in combinations(range(dim), 2):
        dx, dy = apply_d(basis[i]), apply_d(basis[j])
        lhs = apply_d(bracket_t(basis[i], basis[j]))
        rhs = [DualScalar(0)] * dim
        for term in (
            bracket_t(dx, basis[j]),
            bracket_t(basis[i], dy),
            bracket_t(dx, dy),
        ):
            for t, x in enumerate(term):
                rhs[t] = rhs[t] + x
        if any(l != r for l, r in zip(lhs, rhs)):
            return False
    return True


def is_deformation_cocycle(algebra, datum):
    """Cocycle test, decided by the coboundary and by dual numbers at once."""
    by_delta = regular_delta(algebra, datum.as_cochain()).is_zero()
    by_dual = dual_number_deformation_valid(algebra, datum)
    if by_delta != by_dual:
        raise InternalInconsistency(
            "coboundary verdict %s disagrees with the dual-number validation %s"
            % (by_delta, by_dual)
        )
    return by_delta


class NotEquivalent:
    """Rank certificate proving the linear system for a witness is infeasible."""

    def __init__(self, rank_plain, rank_augmented):
        self.rank_plain = rank_plain
        self.rank_augmented = rank_augmented

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotEquivalent(rank %d < augmented rank %d)" % (
            self.rank_plain,
            self.rank_augmented,
        )


def deformation_equivalent(algebra, d1, d2):
    """Find N with (omega_1 - omega_2, Dhat_1 - Dhat_2) = coboundary of N.

    Returns the witness matrix or a NotEquivalent rank certificate.  Both
    inputs must be cocycles.
    """
    for datum in (d1, d2):
        if not is_deformation_cocycle(algebra, datum):
            raise NotCocycle("input datum is not a 2-cocycle")
    cx = RegularComplex(algebra)
    m1 = cx.matrix(1)
    target = (d1 - d2).as_cochain()
    b = cx.to_vector(target)
    x = solve(m1, b)
    if x is None:
        augmented = Matrix(
            tuple(row + (bv,) for row, bv in zip(m1.entries, b)), cols=m1.cols + 1
        )
        return NotEquivalent(rank(m1), rank(augmented))
    dim = algebra.g.dim
    n_cochain = cx.from_vector(1, x)
    return Matrix.from_columns(
        [n_cochain.f.value_on((j,)) for j in range(dim)], rows=dim
    )


def classify_deformations(algebra, max_report=None):
    """Second-cohomology dimension with re-validated canonical representatives.

    Every representative is checked to generate an honest dual-number
    deformation before being returned.
    """
    cx = RegularComplex(algebra)
    group = cx.cohomology(2)
    data = []
    for rep in group.representatives:
        dim = algebra.g.dim
        d_hat = Matrix.from_columns(
            [rep.theta.value_on((j,)) for j in range(dim)], rows=dim
        )
        datum = DeformationDatum(rep.f, d_hat)
        if not dual_number_deformation_valid(algebra, datum):
            raise InternalInconsistency(
                "cohomology representative fails the dual-number validation"
            )
        data.append(datum)
        if max_report is not None and len(data) >= max_report:
            break
    return group.dim, data
