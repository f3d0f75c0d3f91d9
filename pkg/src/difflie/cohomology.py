"""Coboundary operators, cohomology groups, and the long exact sequence.

Four complexes live here: the mixed complex of a LieAct triple, the
operator complex with shifted-action coefficients, the full complex of a
relative difference structure (mixed part plus a wedge(g)->h column), and
its specializations to difference Lie algebras (adjoint and general
coefficients).  Every coboundary is implemented twice, once in closed form
and once through the bracket or twisting machinery, and the two paths are
compared bit for bit in the tests; the sign factors are the highest-risk
transcriptions, so the redundancy is deliberate.

Degree-1 cochain spaces are special-cased exactly as defined: the full
complex starts at Hom(g,g) + Hom(h,h) and the adjoint one at Hom(g,g),
with no extra column below degree 2.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ExactnessFailure, InternalInconsistency
from .linfty import LElement, element_from_structure, twisted_bracket
from .multilinear import (
    AltMap,
    BigradedMap,
    MixedCochain,
    perm_sign,
    project_mixed,
    wedge_tuples,
)
from .nrbracket import nr_bracket
from .rationals import (
    Matrix,
    Q,
    QuotientSpace,
    ZERO,
    image_basis,
    kernel_basis,
    rank,
)
from .structures import rho_d_matrices


def ce_coboundary(g, rep_mats, f):
    """Chevalley-Eilenberg coboundary with coefficients in ``rep_mats``.

    f maps wedge^n(g) into the coefficient space; rep_mats lists one
    matrix per basis vector of g (extended linearly when brackets are fed
    back in).
    """
    n = f.arity
    dim = g.dim
    tdim = f.target_dim
    out = {}

    def rep_apply(vec, w):
        acc = [ZERO] * tdim
        for i, c in enumerate(vec):
            if c != 0:
                for t, x in enumerate(rep_mats[i].apply(w)):
                    acc[t] += c * x
        return tuple(acc)

    for tup in combinations(range(dim), n + 1):
        acc = [ZERO] * tdim
        for a in range(n + 1):
            rest = tup[:a] + tup[a + 1 :]
            w = f.value_on(rest)
            if any(x != 0 for x in w):
                term = rep_apply(g.basis_vector(tup[a]), w)
                sign = (-1) ** a
                for t, x in enumerate(term):
                    acc[t] += sign * x
        for a, b in combinations(range(n + 1), 2):
            rest = tuple(tup[p] for p in range(n + 1) if p != a and p != b)
            br = g.bracket_basis(tup[a], tup[b])
            if all(x == 0 for x in br):
                continue
            w = f.eval_first(br, rest)
            sign = (-1) ** (a + b)
            for t, x in enumerate(w):
                acc[t] += sign * x
        if any(x != 0 for x in acc):
            out[tup] = tuple(acc)
    return AltMap(dim, n + 1, tdim, out)


def lieact_coboundary(triple, mixed):
    """The mixed coboundary (-1)^(n-1) [Pi, f] computed through the lift."""
    n = mixed.n
    big = nr_bracket(triple.big_pi(), mixed.lift())
    result, pure = project_mixed(big, triple.g.dim, triple.h.dim)
    if not pure.is_zero():
        raise InternalInconsistency(
            "bracket with the structure map left the mixed space"
        )
    return result.scale((-1) ** (n - 1))


def lieact_coboundary_components(triple, mixed):
    """The same coboundary assembled from the per-component bracket formulas.

    Exists purely as a cross-check of the lift route; each component of
    the output is a sum of brackets with pi + rho or mu against a single
    input component.
    """
    n = mixed.n
    dg, dh = triple.g.dim, triple.h.dim
    sign = (-1) ** (n - 1)
    pi_l = BigradedMap(
        dg, dh, 2, 0, "g", {(k, ()): v for k, v in triple.g.brackets.items()}
    ).lift()
    rho_l = triple.rho_bigraded().lift()
    mu_l = BigradedMap(
        dg, dh, 0, 2, "h", {((), k): v for k, v in triple.h.brackets.items()}
    ).lift()
    lifted = [p.lift() for p in mixed.parts]
    dim = dg + dh
    comp_sums = []
    zero_big = AltMap.zero(dim, n + 1, dim)
    for i in range(n + 2):
        total = zero_big
        if i <= n:
            total = total + nr_bracket(pi_l + rho_l, lifted[i])
        if 1 <= i <= n + 1:
            total = total + nr_bracket(mu_l, lifted[i - 1])
        if i == 1:
            total = total + nr_bracket(rho_l, lifted[0])
        comp_sums.append(total)
    parts = []
    for i, total in enumerate(comp_sums):
        mixed_part, pure = project_mixed(total, dg, dh)
        if not pure.is_zero():
            raise InternalInconsistency("component bracket left the mixed space")
        parts.append(mixed_part.parts[i] if i <= n + 1 else None)
    return MixedCochain(dg, dh, n + 1, parts).scale(sign)


def t_operator_mixed(structure, mixed):
    """Insertion operator coupling the mixed part to the wedge(g)->h column.

    T(f)(x_1..x_n) = (-1)^n ( sum over nonempty I of eps(I)
        f_{|I|}(x outside I, D x_{i_1}, .., D x_{i_k}) - D f_0(x_1..x_n) )
    where eps(I) is the sign of moving the selected slots to the end.
    """
    n = mixed.n
    g, h = structure.g, structure.h
    d = structure.d
    out = {}
    for tup in combinations(range(g.dim), n):
        acc = [ZERO] * h.dim
        positions = range(n)
        for k in range(1, n + 1):
            part = mixed.parts[k]
            if part.is_zero():
                continue
            for subset in combinations(positions, k):
                comp = tuple(p for p in positions if p not in subset)
                eps = perm_sign(comp + subset)
                gkey = tuple(tup[p] for p in comp)
                hvecs = [d.column(tup[p]) for p in subset]
                val = part.eval_g_basis_h_vectors(gkey, hvecs)
                if eps == 1:
                    for t, x in enumerate(val):
                        acc[t] += x
                else:
                    for t, x in enumerate(val):
                        acc[t] -= x
        f0val = mixed.parts[0].value_on(tup, ())
        if any(x != 0 for x in f0val):
            for t, x in enumerate(d.apply(f0val)):
                acc[t] -= x
        sign = (-1) ** n
        acc = tuple(sign * x for x in acc)
        if any(x != 0 for x in acc):
            out[tup] = acc
    return AltMap(g.dim, n, h.dim, out)


def t_operator_plain(g, d_in, k_out, f):
    """Difference-coefficient insertion operator on a map wedge^n(g) -> V.

    T(f)(x_1..x_n) = (-1)^n ( sum over nonempty I of
        f(.., D x_i in place, ..) - K f(x_1..x_n) ).
    """
    n = f.arity
    tdim = f.target_dim
    out = {}
    basis = [g.basis_vector(i) for i in range(g.dim)]
    for tup in combinations(range(g.dim), n):
        acc = [ZERO] * tdim
        for k in range(1, n + 1):
            for subset in combinations(range(n), k):
                args = [
                    d_in.column(tup[p]) if p in subset else basis[tup[p]]
                    for p in range(n)
                ]
                val = f(*args)
                for t, x in enumerate(val):
                    acc[t] += x
        base_val = f.value_on(tup)
        if any(x != 0 for x in base_val):
            for t, x in enumerate(k_out.apply(base_val)):
                acc[t] -= x
        sign = (-1) ** n
        acc = tuple(sign * x for x in acc)
        if any(x != 0 for x in acc):
            out[tup] = acc
    return AltMap(g.dim, n, tdim, out)


class RelDiffCochain:
    """Degree-n cochain of a relative difference structure.

    ``mixed`` is the (f_0..f_n) block; ``theta`` maps wedge^{n-1}(g) to h
    and is absent in degree 1.
    """

    __slots__ = ("n", "mixed", "theta")

    def __init__(self, n, mixed, theta=None):
        if mixed.n != n:
            raise ValueError("mixed part has the wrong degree")
        if n == 1:
            if theta is not None and not theta.is_zero():
                raise ValueError("degree-1 cochains have no extra column")
            theta = None
        else:
            if theta is None:
                theta = AltMap.zero(mixed.dim_g, n - 1, mixed.dim_h)
            if theta.arity != n - 1 or theta.dim != mixed.dim_g:
                raise ValueError("column has the wrong shape")
        self.n = n
        self.mixed = mixed
        self.theta = theta

    def is_zero(self):
        return self.mixed.is_zero() and (self.theta is None or self.theta.is_zero())

    def __add__(self, other):
        theta = None
        if self.theta is not None:
            theta = self.theta + other.theta
        return RelDiffCochain(self.n, self.mixed + other.mixed, theta)

    def __sub__(self, other):
        theta = None
        if self.theta is not None:
            theta = self.theta - other.theta
        return RelDiffCochain(self.n, self.mixed - other.mixed, theta)

    def scale(self, c):
        return RelDiffCochain(
            self.n,
            self.mixed.scale(c),
            self.theta.scale(c) if self.theta is not None else None,
        )

    def __eq__(self, other):
        if not isinstance(other, RelDiffCochain) or self.n != other.n:
            return False
        if self.mixed != other.mixed:
            return False
        a = self.theta
        b = other.theta
        if a is None and b is None:
            return True
        if a is None:
            return b.is_zero()
        if b is None:
            return a.is_zero()
        return a == b

    def __repr__(self):
        return "RelDiffCochain(n=%d)" % self.n


def rel_diff_delta(structure, cochain):
    """Closed-form coboundary (mixed coboundary, shifted CE of theta + T(f))."""
    n = cochain.n
    g = structure.g
    mixed_out = lieact_coboundary(structure.triple, cochain.mixed)
    theta_out = t_operator_mixed(structure, cochain.mixed)
    if cochain.theta is not None and not cochain.theta.is_zero():
        mats = rho_d_matrices(structure)
        theta_out = theta_out + ce_coboundary(g, mats, cochain.theta)
    return RelDiffCochain(n + 1, mixed_out, theta_out)


def rel_diff_delta_twisted(structure, cochain):
    """The same coboundary through the twisted degree-1 product.

    delta(f, theta) = (-1)^(n-2) l_1 twisted by the structure element,
    applied to (desuspended f, theta).  Must agree with the closed form
    bit for bit.
    """
    n = cochain.n
    dg, dh = structure.g.dim, structure.h.dim
    alpha = element_from_structure(structure)
    x = LElement(dg, dh, n - 2, cochain.mixed.lift(), cochain.theta)
    tw = twisted_bracket(alpha, 1, [x], check=False)
    sign = (-1) ** n
    mixed_big = tw.m if tw.m is not None else AltMap.zero(dg + dh, n + 1, dg + dh)
    mixed_out, pure = project_mixed(mixed_big, dg, dh)
    if not pure.is_zero():
        raise InternalInconsistency("twisted coboundary left the mixed space")
    theta_out = tw.f if tw.f is not None else AltMap.zero(dg, n, dh)
    return RelDiffCochain(
        n + 1, mixed_out.scale(sign), theta_out.scale(sign)
    )


def danddT_check(structure, f):
    """Identity between shifted CE and the two bracket differentials.

    d_{rho_D} f = (-1)^(k-1) ( [pi+rho, f] + [[mu, D], f] ) for maps
    f: wedge^k(g) -> h.
    """
    from .structures import d_pi_rho
    from .multilinear import alt_to_bigraded_g, restrict_to_g

    triple = structure.triple
    dg, dh = structure.g.dim, structure.h.dim
    lhs = ce_coboundary(structure.g, rho_d_matrices(structure), f)
    mu_l = BigradedMap(
        dg, dh, 0, 2, "h", {((), k): v for k, v in structure.h.brackets.items()}
    ).lift()
    d_l = structure.d_bigraded().lift()
    chain = nr_bracket(nr_bracket(mu_l, d_l), alt_to_bigraded_g(f, dh).lift())
    correction = restrict_to_g(chain, dg, dh, "h")
    rhs = (d_pi_rho(f, triple) + correction).scale((-1) ** (f.arity - 1))
    return lhs == rhs


class RegularCochain:
    """Degree-n cochain (f, theta) of a difference Lie algebra; theta absent at n=1."""

    __slots__ = ("n", "f", "theta")

    def __init__(self, n, f, theta=None):
        if f.arity != n:
            raise ValueError("top component has the wrong arity")
        if n == 1:
            if theta is not None and not theta.is_zero():
                raise ValueError("degree-1 cochains have a single component")
            theta = None
        else:
            if theta is None:
                theta = AltMap.zero(f.dim, n - 1, f.target_dim)
            if theta.arity != n - 1:
                raise ValueError("column has the wrong arity")
        self.n = n
        self.f = f
        self.theta = theta

    def is_zero(self):
        return self.f.is_zero() and (self.theta is None or self.theta.is_zero())

    def __add__(self, other):
        theta = self.theta + other.theta if self.theta is not None else None
        return RegularCochain(self.n, self.f + other.f, theta)

    def __sub__(self, other):
        theta = self.theta - other.theta if self.theta is not None else None
        return RegularCochain(self.n, self.f - other.f, theta)

    def scale(self, c):
        return RegularCochain(
            self.n,
            self.f.scale(c),
            self.theta.scale(c) if self.theta is not None else None,
        )

    def __eq__(self, other):
        if not isinstance(other, RegularCochain) or self.n != other.n:
            return False
        if self.f != other.f:
            return False
        a, b = self.theta, other.theta
        if a is None and b is None:
            return True
        if a is None:
            return b.is_zero()
        if b is None:
            return a.is_zero()
        return a == b

    def __repr__(self):
        return "RegularCochain(n=%d)" % self.n


def regular_delta(algebra, cochain):
    """Adjoint-coefficient coboundary (CE of f, shifted CE of theta + T(f))."""
    g = algebra.g
    n = cochain.n
    f_out = ce_coboundary(g, g.ad_matrices(), cochain.f)
    theta_out = t_operator_plain(g, algebra.d, algebra.d, cochain.f)
    if cochain.theta is not None and not cochain.theta.is_zero():
        mats = rho_d_matrices(algebra.as_relative())
        theta_out = theta_out + ce_coboundary(g, mats, cochain.theta)
    return RegularCochain(n + 1, f_out, theta_out)


def embed_regular(algebra, cochain):
    """The embedding (f, theta) -> (f, .., f, theta) into the adjoint complex."""
    g = algebra.g
    n = cochain.n
    dg = g.dim
    parts = [
        BigradedMap(dg, dg, n, 0, "g", {(k, ()): v for k, v in cochain.f.coeffs.items()})
    ]
    for i in range(1, n + 1):
        coeffs = {}
        for gkey in wedge_tuples(dg, n - i):
            for hkey in wedge_tuples(dg, i):
                val = cochain.f.value_on(gkey + hkey)
                if any(x != 0 for x in val):
                    coeffs[(gkey, hkey)] = val
        parts.append(BigradedMap(dg, dg, n - i, i, "h", coeffs))
    mixed = MixedCochain(dg, dg, n, parts)
    return RelDiffCochain(n, mixed, cochain.theta)


def project_regular(cochain):
    """The left inverse of the embedding: keep the top component and theta."""
    n = cochain.n
    dg = cochain.mixed.dim_g
    f0 = cochain.mixed.parts[0]
    f = AltMap(dg, n, dg, {gkey: v for (gkey, _), v in f0.coeffs.items()})
    return RegularCochain(n, f, cochain.theta)


def regular_delta_via_embedding(algebra, cochain):
    """Compute the adjoint coboundary as projection of the full one."""
    s = algebra.as_relative()
    return project_regular(rel_diff_delta(s, embed_regular(algebra, cochain)))


class CoeffCochain:
    """Degree-n cochain with values in a representation; theta absent at n=1."""

    __slots__ = ("n", "f", "theta")

    def __init__(self, n, f, theta=None):
        if f.arity != n:
            raise ValueError("top component has the wrong arity")
        if n == 1:
            if theta is not None and not theta.is_zero():
                raise ValueError("degree-1 cochains have a single component")
            theta = None
        else:
            if theta is None:
                theta = AltMap.zero(f.dim, n - 1, f.target_dim)
        self.n = n
        self.f = f
        self.theta = theta

    def is_zero(self):
        return self.f.is_zero() and (self.theta is None or self.theta.is_zero())

    def __add__(self, other):
        theta = self.theta + other.theta if self.theta is not None else None
        return CoeffCochain(self.n, self.f + other.f, theta)

    def __sub__(self, other):
        theta = self.theta - other.theta if self.theta is not None else None
        return CoeffCochain(self.n, self.f - other.f, theta)

    def scale(self, c):
        return CoeffCochain(
            self.n,
            self.f.scale(c),
            self.theta.scale(c) if self.theta is not None else None,
        )

    def __eq__(self, other):
        if not isinstance(other, CoeffCochain) or self.n != other.n:
            return False
        if self.f != other.f:
            return False
        a, b = self.theta, other.theta
        if a is None and b is None:
            return True
        if a is None:
            return b.is_zero()
        if b is None:
            return a.is_zero()
        return a == b


def coeff_delta(rep, cochain):
    """Coboundary with coefficients (CE of f, doubled-action CE of theta + T(f))."""
    g = rep.base.g
    n = cochain.n
    f_out = ce_coboundary(g, list(rep.varrho), cochain.f)
    theta_out = t_operator_plain(g, rep.base.d, rep.k, cochain.f)
    if cochain.theta is not None and not cochain.theta.is_zero():
        doubled = [
            rep.varrho[i].add(rep.varrho_of(rep.base.d.column(i)))
            for i in range(g.dim)
        ]
        theta_out = theta_out + ce_coboundary(g, doubled, cochain.theta)
    return CoeffCochain(n + 1, f_out, theta_out)


class CohomologyGroup:
    """Kernel-mod-image data of one degree of a complex."""

    def __init__(self, degree, quotient, representatives, cochain_dim, delta_rank):
        self.degree = degree
        self.quotient = quotient
        self.representatives = list(representatives)
        self.cochain_dim = cochain_dim
        self.delta_rank = delta_rank

    @property
    def dim(self):
        return self.quotient.dim

    def coordinates(self, vec):
        return self.quotient.coordinates(vec)

    def __repr__(self):
        return "CohomologyGroup(degree=%d, dim=%d)" % (self.degree, self.dim)


class ComplexBase:
    """Shared matrix and cohomology plumbing for the concrete complexes."""

    def space_basis(self, n):
        raise NotImplementedError

    def to_vector(self, cochain):
        raise NotImplementedError

    def from_vector(self, n, vec):
        raise NotImplementedError

    def delta(self, cochain):
        raise NotImplementedError

    def dim(self, n):
        return len(self.space_basis(n))

    def matrix(self, n):
        """Matrix of the degree-n coboundary in the canonical bases."""
        basis = self.space_basis(n)
        target_dim = self.dim(n + 1)
        columns = [self.to_vector(self.delta(c)) for c in basis]
        return Matrix.from_columns(columns, rows=target_dim)

    def cohomology(self, n):
        if n < 1:
            raise ValueError("degrees start at 1")
        mat_n = self.matrix(n)
        ker = kernel_basis(mat_n)
        if n >= 2:
            img = image_basis(self.matrix(n - 1))
        else:
            img = image_basis(Matrix.zero(self.dim(n), 0))
        quotient = QuotientSpace(ker, img)
        reps = [self.from_vector(n, v) for v in quotient.representatives]
        return CohomologyGroup(n, quotient, reps, self.dim(n), rank(mat_n))


def _unit(tdim, t):
    return tuple(Q(1) if i == t else ZERO for i in range(tdim))


class LieActComplex(ComplexBase):
    """Mixed cochains of a LieAct triple with the bracket coboundary."""

    def __init__(self, triple):
        self.triple = triple

    def labels(self, n):
        dg, dh = self.triple.g.dim, self.triple.h.dim
        out = []
        for i in range(n + 1):
            tdim = dg if i == 0 else dh
            for gkey in wedge_tuples(dg, n - i):
                for hkey in wedge_tuples(dh, i):
                    for t in range(tdim):
                        out.append((i, gkey, hkey, t))
        return out

    def space_basis(self, n):
        dg, dh = self.triple.g.dim, self.triple.h.dim
        out = []
        for i, gkey, hkey, t in self.labels(n):
            mc = MixedCochain.zero(dg, dh, n)
            part = mc.parts[i]
            tdim = part.target_dim
            coeffs = {(gkey, hkey): _unit(tdim, t)}
            newpart = BigradedMap(dg, dh, part.k, part.l, part.target, coeffs)
            parts = list(mc.parts)
            parts[i] = newpart
            out.append(MixedCochain(dg, dh, n, parts))
        return out

    def to_vector(self, cochain):
        vec = []
        for i, gkey, hkey, t in self.labels(cochain.n):
            vec.append(cochain.parts[i].value_on(gkey, hkey)[t])
        return tuple(vec)

    def from_vector(self, n, vec):
        dg, dh = self.triple.g.dim, self.triple.h.dim
        labels = self.labels(n)
        data = [{} for _ in range(n + 1)]
        for (i, gkey, hkey, t), x in zip(labels, vec):
            if x != 0:
                tdim = dg if i == 0 else dh
                entry = data[i].setdefault((gkey, hkey), [ZERO] * tdim)
                entry[t] = x
        parts = []
        for i in range(n + 1):
            target = "g" if i == 0 else "h"
            parts.append(
                BigradedMap(
                    dg,
                    dh,
                    n - i,
                    i,
                    target,
                    {k: tuple(v) for k, v in data[i].items()},
                )
            )
        return MixedCochain(dg, dh, n, parts)

    def delta(self, cochain):
        return lieact_coboundary(self.triple, cochain)


class OperatorComplex(ComplexBase):
    """Maps wedge^n(g) -> h with the shifted-action CE coboundary."""

    def __init__(self, structure):
        self.structure = structure
        self.mats = rho_d_matrices(structure)

    def labels(self, n):
        g, h = self.structure.g, self.structure.h
        return [
            (gkey, t) for gkey in wedge_tuples(g.dim, n) for t in range(h.dim)
        ]

    def space_basis(self, n):
        g, h = self.structure.g, self.structure.h
        return [
            AltMap(g.dim, n, h.dim, {gkey: _unit(h.dim, t)})
            for gkey, t in self.labels(n)
        ]

    def to_vector(self, cochain):
        return tuple(
            cochain.value_on(gkey)[t] for gkey, t in self.labels(cochain.arity)
        )

    def from_vector(self, n, vec):
        g, h = self.structure.g, self.structure.h
        data = {}
        for (gkey, t), x in zip(self.labels(n), vec):
            if x != 0:
                data.setdefault(gkey, [ZERO] * h.dim)[t] = x
        return AltMap(g.dim, n, h.dim, {k: tuple(v) for k, v in data.items()})

    def delta(self, cochain):
        return ce_coboundary(self.structure.g, self.mats, cochain)


class RelDiffComplex(ComplexBase):
    """Full cochain complex of a relative difference structure."""

    def __init__(self, structure):
        self.structure = structure
        self._mixed = LieActComplex(structure.triple)

    def labels(self, n):
        out = [("m",) + lab for lab in self._mixed.labels(n)]
        if n >= 2:
            g, h = self.structure.g, self.structure.h
            for gkey in wedge_tuples(g.dim, n - 1):
                for t in range(h.dim):
                    out.append(("t", gkey, t))
        return out

    def space_basis(self, n):
        g, h = self.structure.g, self.structure.h
        dg, dh = g.dim, h.dim
        out = []
        for mc in self._mixed.space_basis(n):
            out.append(RelDiffCochain(n, mc))
        if n >= 2:
            for gkey in wedge_tuples(dg, n - 1):
                for t in range(dh):
                    theta = AltMap(dg, n - 1, dh, {gkey: _unit(dh, t)})
                    out.append(
                        RelDiffCochain(n, MixedCochain.zero(dg, dh, n), theta)
                    )
        return out

    def to_vector(self, cochain):
        vec = list(self._mixed.to_vector(cochain.mixed))
        if cochain.n >= 2:
            g, h = self.structure.g, self.structure.h
            for gkey in wedge_tuples(g.dim, cochain.n - 1):
                for t in range(h.dim):
                    vec.append(cochain.theta.value_on(gkey)[t])
        return tuple(vec)

    def from_vector(self, n, vec):
        mixed_len = self._mixed.dim(n)
        mixed = self._mixed.from_vector(n, vec[:mixed_len])
        theta = None
        if n >= 2:
            g, h = self.structure.g, self.structure.h
            data = {}
            pos = mixed_len
            for gkey in wedge_tuples(g.dim, n - 1):
                for t in range(h.dim):
                    x = vec[pos]
                    pos += 1
                    if x != 0:
                        data.setdefault(gkey, [ZERO] * h.dim)[t] = x
            theta = AltMap(
                g.dim, n - 1, h.dim, {k: tuple(v) for k, v in data.items()}
            )
        return RelDiffCochain(n, mixed, theta)

    def delta(self, cochain):
        return rel_diff_delta(self.structure, cochain)


class RegularComplex(ComplexBase):
    """Cochain complex of a difference Lie algebra with adjoint coefficients."""

    def __init__(self, algebra):
        self.algebra = algebra

    def labels(self, n):
        dg = self.algebra.g.dim
        out = [("f", gkey, t) for gkey in wedge_tuples(dg, n) for t in range(dg)]
        if n >= 2:
            out += [
                ("t", gkey, t)
                for gkey in wedge_tuples(dg, n - 1)
                for t in range(dg)
            ]
        return out

    def space_basis(self, n):
        dg = self.algebra.g.dim
        out = []
        for which, gkey, t in self.labels(n):
            if which == "f":
                f = AltMap(dg, n, dg, {gkey: _unit(dg, t)})
                out.append(RegularCochain(n, f))
            else:
                theta = AltMap(dg, n - 1, dg, {gkey: _unit(dg, t)})
                out.append(
                    RegularCochain(n, AltMap.zero(dg, n, dg), theta)
                )
        return out

    def to_vector(self, cochain):
        vec = []
        for which, gkey, t in self.labels(cochain.n):
            source = cochain.f if which == "f" else cochain.theta
            vec.append(source.value_on(gkey)[t])
        return tuple(vec)

    def from_vector(self, n, vec):
        dg = self.algebra.g.dim
        fdata, tdata = {}, {}
        for (which, gkey, t), x in zip(self.labels(n), vec):
            if x != 0:
                target = fdata if which == "f" else tdata
                target.setdefault(gkey, [ZERO] * dg)[t] = x
        f = AltMap(dg, n, dg, {k: tuple(v) for k, v in fdata.items()})
        theta = None
        if n >= 2:
            theta = AltMap(dg, n - 1, dg, {k: tuple(v) for k, v in tdata.items()})
        return RegularCochain(n, f, theta)

    def delta(self, cochain):
        return regular_delta(self.algebra, cochain)


class CoeffComplex(ComplexBase):
    """Cochain complex of a difference Lie algebra with general coefficients."""

    def __init__(self, rep):
        self.rep = rep

    def labels(self, n):
        dg = self.rep.base.g.dim
        vd = self.rep.v_dim
        out = [("f", gkey, t) for gkey in wedge_tuples(dg, n) for t in range(vd)]
        if n >= 2:
            out += [
                ("t", gkey, t)
                for gkey in wedge_tuples(dg, n - 1)
                for t in range(vd)
            ]
        return out

    def space_basis(self, n):
        dg = self.rep.base.g.dim
        vd = self.rep.v_dim
        out = []
        for which, gkey, t in self.labels(n):
            if which == "f":
                f = AltMap(dg, n, vd, {gkey: _unit(vd, t)})
                out.append(CoeffCochain(n, f))
            else:
                theta = AltMap(dg, n - 1, vd, {gkey: _unit(vd, t)})
                out.append(CoeffCochain(n, AltMap.zero(dg, n, vd), theta))
        return out

    def to_vector(self, cochain):
        vec = []
        for which, gkey, t in self.labels(cochain.n):
            source = cochain.f if which == "f" else cochain.theta
            vec.append(source.value_on(gkey)[t])
        return tuple(vec)

    def from_vector(self, n, vec):
        dg = self.rep.base.g.dim
        vd = self.rep.v_dim
        fdata, tdata = {}, {}
        for (which, gkey, t), x in zip(self.labels(n), vec):
            if x != 0:
                target = fdata if which == "f" else tdata
                target.setdefault(gkey, [ZERO] * vd)[t] = x
        f = AltMap(dg, n, vd, {k: tuple(v) for k, v in fdata.items()})
        theta = None
        if n >= 2:
            theta = AltMap(dg, n - 1, vd, {k: tuple(v) for k, v in tdata.items()})
        return CoeffCochain(n, f, theta)

    def delta(self, cochain):
        return coeff_delta(self.rep, cochain)


def cohomology_group(complex_obj, n):
    """Dimension and canonical representatives of the degree-n group."""
    return complex_obj.cohomology(n)


def _induced_matrix(src_group, dst_group, dst_complex, mapped_cochains):
    columns = [
        dst_group.coordinates(dst_complex.to_vector(c)) for c in mapped_cochains
    ]
    return Matrix.from_columns(columns, rows=dst_group.dim)


def _subspaces_match(first, second):
    """im(first) == ker(second) for composable matrices, by rank counting."""
    if first.cols and second.cols and not second.mul(first).is_zero():
        return False
    im_dim = rank(first)
    ker_dim = second.cols - rank(second)
    return im_dim == ker_dim


class LesReport:
    """Dimensions, induced maps, and exactness verdicts per degree."""

    def __init__(self):
        self.groups = {}
        self.nodes = []

    def add_node(self, label, ok, detail=""):
        self.nodes.append((label, ok, detail))

    @property
    def all_exact(self):
        return all(ok for _, ok, _ in self.nodes)


def les_check(structure, max_degree):
    """Verify im = ker around the operator/full/mixed cohomology triangle.

    The full complex carries the wedge(g)->h column one degree above the
    operator complex, so the inclusion lands in degree n+1; the connecting
    map sends a mixed class to the class of its insertion operator.
    """
    triple = structure.triple
    op = OperatorComplex(structure)
    full = RelDiffComplex(structure)
    mixed = LieActComplex(triple)

    hb = {n: op.cohomology(n) for n in range(1, max_degree + 2)}
    hm = {n: full.cohomology(n) for n in range(1, max_degree + 2)}
    ha = {n: mixed.cohomology(n) for n in range(1, max_degree + 2)}

    report = LesReport()
    for n in range(1, max_degree + 2):
        report.groups[("operator", n)] = hb[n].dim
        report.groups[("full", n)] = hm[n].dim
        report.groups[("mixed", n)] = ha[n].dim

    def iota_matrix(n):
        """H^{n-1}(operator) -> H^n(full)."""
        if n - 1 < 1:
            return Matrix.zero(hm[n].dim, 0)
        mapped = [
            RelDiffCochain(
                n,
                MixedCochain.zero(structure.g.dim, structure.h.dim, n),
                theta,
            )
            for theta in hb[n - 1].representatives
        ]
        return _induced_matrix(hb[n - 1], hm[n], full, mapped)

    def p_matrix(n):
        mapped = [c.mixed for c in hm[n].representatives]
        return _induced_matrix(hm[n], ha[n], mixed, mapped)

    def c_matrix(n):
        mapped = [
            t_operator_mixed(structure, rep) for rep in ha[n].representatives
        ]
        return _induced_matrix(ha[n], hb[n], op, mapped)

    for n in range(1, max_degree + 1):
        node_m = _subspaces_match(iota_matrix(n), p_matrix(n))
        report.add_node(
            "degree %d, full cohomology" % n,
            node_m,
            "inclusion image vs projection kernel",
        )
        node_a = _subspaces_match(p_matrix(n), c_matrix(n))
        report.add_node(
            "degree %d, mixed cohomology" % n,
            node_a,
            "projection image vs connecting kernel",
        )
        node_b = _subspaces_match(c_matrix(n), iota_matrix(n + 1))
        report.add_node(
            "degree %d, operator cohomology" % n,
            node_b,
            "connecting image vs inclusion kernel",
        )
    if not report.all_exact:
        failing = [label for label, ok, _ in report.nodes if not ok]
        raise ExactnessFailure(failing[0], "(%d nodes fail)" % len(failing))
    return report
