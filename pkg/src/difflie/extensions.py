"""Abelian extensions of difference Lie algebras and their classification.

An extension lives on g + h coordinates with the canonical injection
u -> (0, u) and projection (x, u) -> x.  Building from a 2-cocycle, reading
a cocycle off a section, and deciding isomorphism all reduce to exact
linear algebra in the coefficient complex.
"""

from __future__ import annotations

from itertools import combinations

from .cohomology import CoeffCochain, CoeffComplex, coeff_delta
from .errors import (
    IncompatibleBaseOrKernel,
    InternalInconsistency,
    NotASection,
    NotCocycle,
)
from .multilinear import AltMap
from .rationals import Matrix, Q, ZERO, rank, solve
from .structures import (
    DiffRepresentation,
    validate_difference_algebra,
    validate_representation,
)


class ExtensionCocycle:
    """Pair (omega, chi) in the degree-2 coefficient cochain space."""

    __slots__ = ("rep", "omega", "chi")

    def __init__(self, rep, omega, chi):
        g = rep.base.g
        if omega.arity != 2 or omega.dim != g.dim or omega.target_dim != rep.v_dim:
            raise ValueError("omega must map wedge^2 g into the coefficient space")
        if chi.rows != rep.v_dim or chi.cols != g.dim:
            raise ValueError("chi must map g into the coefficient space")
        self.rep = rep
        self.omega = omega
        self.chi = chi

    def as_cochain(self):
        g = self.rep.base.g
        chi_map = AltMap(
            g.dim,
            1,
            self.rep.v_dim,
            {(j,): self.chi.column(j) for j in range(g.dim)},
        )
        return CoeffCochain(2, self.omega, chi_map)

    def residual(self):
        return coeff_delta(self.rep, self.as_cochain())

    def is_cocycle(self):
        return self.residual().is_zero()

    def __repr__(self):
        return "ExtensionCocycle(dim g=%d, dim V=%d)" % (
            self.rep.base.g.dim,
            self.rep.v_dim,
        )


class AbelianExtension:
    """Difference Lie algebra on g + h coordinates extending (g, D) by (h, K)."""

    def __init__(self, total, base, kernel_dim, kernel_k):
        self.total = total
        self.base = base
        self.kernel_dim = kernel_dim
        self.kernel_k = kernel_k
        self._check_axioms()

    @property
    def base_dim(self):
        return self.base.g.dim

    def inject(self, u):
        return (ZERO,) * self.base_dim + tuple(u)

    def project(self, vec):
        return tuple(vec[: self.base_dim])

    def kernel_part(self, vec):
        return tuple(vec[self.base_dim :])

    def _check_axioms(self):
        dg, dv = self.base_dim, self.kernel_dim
        total = self.total
        if total.g.dim != dg + dv:
            raise ValueError("total space has the wrong dimension")
        g = self.base.g
        # kernel is abelian inside the total algebra
        for a, b in combinations(range(dv), 2):
            ea = total.g.basis_vector(dg + a)
            eb = total.g.basis_vector(dg + b)
            if any(x != 0 for x in total.g.bracket(ea, eb)):
                raise InternalInconsistency("kernel is not abelian in the total algebra")
        # projection is a homomorphism of brackets and operators
        for i, j in combinations(range(dg + dv), 2):
            br = total.g.bracket_basis(i, j)
            pi_br = self.project(br)
            x = g.basis_vector(i) if i < dg else g.zero_vector()
            y = g.basis_vector(j) if j < dg else g.zero_vector()
            if tuple(pi_br) != tuple(g.bracket(x, y)):
                raise InternalInconsistency("projection does not preserve brackets")
        for i in range(dg):
            col = total.d.column(i)
            if self.project(col) != tuple(self.base.d.column(i)):
                raise InternalInconsistency("projection does not intertwine operators")
        # injection intertwines K with the total operator
        for j in range(dv):
            col = total.d.column(dg + j)
            if any(x != 0 for x in self.project(col)):
                raise InternalInconsistency("operator does not preserve the kernel")
            if self.kernel_part(col) != tuple(self.kernel_k.column(j)):
                raise InternalInconsistency("injection does not intertwine K")

    def __repr__(self):
        return "AbelianExtension(base dim=%d, kernel dim=%d)" % (
            self.base_dim,
            self.kernel_dim,
        )


def extension_from_cocycle(rep, cocycle):
    """Assemble the extension carried by a 2-cocycle; reject non-cocycles."""
    residual = cocycle.residual()
    if not residual.is_zero():
        raise NotCocycle("the pair (omega, chi) is not a 2-cocycle", residual)
    base = rep.base
    g = base.g
    dg, dv = g.dim, rep.v_dim
    names = list(g.basis_names) + ["v%d" % (j + 1) for j in range(dv)]
    zero_v = (ZERO,) * dv
    brackets = {}
    for i, j in combinations(range(dg), 2):
        gpart = g.bracket_basis(i, j)
        vpart = cocycle.omega.value_on((i, j))
        vec = tuple(gpart) + tuple(vpart)
        if any(x != 0 for x in vec):
            brackets[(i, j)] = vec
    for i in range(dg):
        for j in range(dv):
            col = rep.varrho[i].column(j)
            if any(x != 0 for x in col):
                brackets[(i, dg + j)] = g.zero_vector() + tuple(col)
    from .structures import validate_lie_algebra

    total_lie = validate_lie_algebra(names, brackets)
    columns = []
    for i in range(dg):
        columns.append(tuple(base.d.column(i)) + tuple(cocycle.chi.column(i)))
    for j in range(dv):
        columns.append(g.zero_vector() + tuple(rep.k.column(j)))
    d_total = Matrix.from_columns(columns, rows=dg + dv)
    total = validate_difference_algebra(total_lie, d_total)
    return AbelianExtension(total, base, dv, rep.k)


def canonical_section(ext):
    """The section x -> (x, 0)."""
    dg, dv = ext.base_dim, ext.kernel_dim
    return Matrix.from_columns(
        [
            tuple(Q(1) if r == i else ZERO for r in range(dg + dv))
            for i in range(dg)
        ],
        rows=dg + dv,
    )


def cocycle_from_extension(ext, section=None):
    """Read the representation and the 2-cocycle off a section.

    The section must split the projection.  The extracted representation
    is validated and the extracted pair is checked to be a cocycle; both
    are guaranteed by the construction, so failures indicate corrupt data.
    """
    if section is None:
        section = canonical_section(ext)
    dg, dv = ext.base_dim, ext.kernel_dim
    total = ext.total
    g = ext.base.g
    if section.rows != dg + dv or section.cols != dg:
        raise NotASection("section has the wrong shape")
    for i in range(dg):
        if ext.project(section.column(i)) != tuple(g.basis_vector(i)):
            raise NotASection("the map does not split the projection")

    varrho = []
    for i in range(dg):
        sx = section.column(i)
        cols = []
        for j in range(dv):
            br = total.g.bracket(sx, ext.inject(tuple(Q(1) if t == j else ZERO for t in range(dv))))
            if any(x != 0 for x in ext.project(br)):
                raise InternalInconsistency("kernel is not an ideal")
            cols.append(ext.kernel_part(br))
        varrho.append(Matrix.from_columns(cols, rows=dv))
    rep = validate_representation(ext.base, dv, varrho, ext.kernel_k)

    omega_entries = {}
    for i, j in combinations(range(dg), 2):
        si, sj = section.column(i), section.column(j)
        br = list(total.g.bracket(si, sj))
        s_br = section.apply(g.bracket_basis(i, j))
        vec = tuple(a - b for a, b in zip(br, s_br))
        if any(x != 0 for x in ext.project(vec)):
            raise InternalInconsistency("section defect leaves the kernel")
        vpart = ext.kernel_part(vec)
        if any(x != 0 for x in vpart):
            omega_entries[(i, j)] = vpart
    omega = AltMap(dg, 2, dv, omega_entries)

    chi_cols = []
    for i in range(dg):
        vec = tuple(
            a - b
            for a, b in zip(
                total.d.apply(section.column(i)),
                section.apply(ext.base.d.column(i)),
            )
        )
        if any(x != 0 for x in ext.project(vec)):
            raise InternalInconsistency("operator defect leaves the kernel")
        chi_cols.append(ext.kernel_part(vec))
    chi = Matrix.from_columns(chi_cols, rows=dv)

    cocycle = ExtensionCocycle(rep, omega, chi)
    if not cocycle.is_cocycle():
        raise InternalInconsistency("extracted pair fails the cocycle identity")
    return cocycle, rep


class NotIsomorphic:
    """Certificate that no base-and-kernel-fixing isomorphism exists."""

    def __init__(self, reason, rank_plain=None, rank_augmented=None):
        self.reason = reason
        self.rank_plain = rank_plain
        self.rank_augmented = rank_augmented

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotIsomorphic(%s)" % self.reason


class IsomorphismWitness:
    """Shift map N with (x, u) -> (x, N x + u) intertwining the extensions."""

    def __init__(self, shift, kappa):
        self.shift = shift
        self.kappa = kappa

    def __bool__(self):
        return True

    def __repr__(self):
        return "IsomorphismWitness(N=%r)" % self.shift


def _same_base_and_kernel(e1, e2):
    b1, b2 = e1.base, e2.base
    return (
        b1.g.basis_names == b2.g.basis_names
        and b1.g.brackets == b2.g.brackets
        and b1.d == b2.d
        and e1.kernel_dim == e2.kernel_dim
        and e1.kernel_k == e2.kernel_k
    )


def extension_isomorphic(e1, e2):
    """Search for an isomorphism fixing the base and the kernel.

    The candidate has the shape (x, u) -> (x, N x + u); it exists exactly
    when the extracted cocycles differ by the coboundary of some N, which
    is a linear problem with an exact rank certificate.
    """
    if not _same_base_and_kernel(e1, e2):
        raise IncompatibleBaseOrKernel(
            "extensions have different bases or kernels"
        )
    c1, rep1 = cocycle_from_extension(e1)
    c2, rep2 = cocycle_from_extension(e2)
    if any(a != b for a, b in zip(rep1.varrho, rep2.varrho)):
        return NotIsomorphic("induced representations differ")
    cx = CoeffComplex(rep1)
    m1 = cx.matrix(1)
    diff = c1.as_cochain() - c2.as_cochain()
    b = cx.to_vector(diff)
    x = solve(m1, b)
    if x is None:
        augmented = Matrix(
            tuple(row + (bv,) for row, bv in zip(m1.entries, b)), cols=m1.cols + 1
        )
        return NotIsomorphic(
            "cocycles are not cohomologous", rank(m1), rank(augmented)
        )
    dg, dv = e1.base_dim, e1.kernel_dim
    n_cochain = cx.from_vector(1, x)
    shift = Matrix.from_columns(
        [n_cochain.f.value_on((j,)) for j in range(dg)], rows=dv
    )
    kappa = _kappa_matrix(shift, dg, dv)
    _verify_isomorphism(e1, e2, kappa)
    return IsomorphismWitness(shift, kappa)


def _kappa_matrix(shift, dg, dv):
    cols = []
    for i in range(dg):
        cols.append(
            tuple(Q(1) if r == i else ZERO for r in range(dg))
            + tuple(shift.column(i))
        )
    for j in range(dv):
        cols.append(
            (ZERO,) * dg + tuple(Q(1) if r == j else ZERO for r in range(dv))
        )
    return Matrix.from_columns(cols, rows=dg + dv)


def _verify_isomorphism(e1, e2, kappa):
    """Full check that kappa maps e1 to e2 as difference Lie algebras."""
    t1, t2 = e1.total, e2.total
    dim = t1.g.dim
    for i, j in combinations(range(dim), 2):
        lhs = kappa.apply(t1.g.bracket_basis(i, j))
        rhs = t2.g.bracket(kappa.column(i), kappa.column(j))
        if tuple(lhs) != tuple(rhs):
            raise InternalInconsistency("candidate map is not a Lie isomorphism")
    if kappa.mul(t1.d) != t2.d.mul(kappa):
        raise InternalInconsistency("candidate map does not intertwine operators")
