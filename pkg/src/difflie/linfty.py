"""Higher derived brackets on the shifted mixed space and their twists.

The ambient graded Lie algebra is the bracket algebra on g+h; the abelian
part F collects the maps wedge(g) -> h; the projection P extracts that
block and the distinguished element of the defining quadruple is zero.
Elements here are homogeneous pairs (desuspended map, F-component); the
nonvanishing products are

    l_1(x)              = (0, P(m-part))
    l_2(s m1, s m2)     = (-1)^{|m1|} s [m1, m2]
    l_k(s m, t_1..t_{k-1}) = P [ .. [m, t_1], .., t_{k-1} ]

and every other combination is zero.  Twisting by a Maurer-Cartan element
inserts copies of it; the insertion series terminates because a chain of
F-brackets longer than the h-capacity of the single non-F factor vanishes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

from .errors import DegreeMismatch, InternalInconsistency, NotMaurerCartan
from .multilinear import (
    AltMap,
    alt_to_bigraded_g,
    koszul_sign,
    restrict_to_g,
    shuffles,
)
from .nrbracket import nr_bracket
from .rationals import Matrix, Q


class LElement:
    """Homogeneous element (m-part through the desuspension, F-part).

    An m-part of arity a sits in degree a - 2 after the shift; an F-part
    of arity a sits in degree a - 1.  Both parts of one element carry the
    same degree.
    """

    __slots__ = ("dim_g", "dim_h", "degree", "m", "f")

    def __init__(self, dim_g, dim_h, degree, m=None, f=None):
        self.dim_g = dim_g
        self.dim_h = dim_h
        self.degree = degree
        if m is not None and m.is_zero():
            m = None
        if f is not None and f.is_zero():
            f = None
        if m is not None:
            if m.dim != dim_g + dim_h or m.arity != degree + 2:
                raise DegreeMismatch(
                    "m-part arity %d does not match degree %d" % (m.arity, degree)
                )
        if f is not None:
            if f.dim != dim_g or f.target_dim != dim_h or f.arity != degree + 1:
                raise DegreeMismatch(
                    "F-part arity %d does not match degree %d" % (f.arity, degree)
                )
        self.m = m
        self.f = f

    @classmethod
    def zero(cls, dim_g, dim_h, degree):
        return cls(dim_g, dim_h, degree)

    def is_zero(self):
        return self.m is None and self.f is None

    def atoms(self):
        out = []
        if self.m is not None:
            out.append(("m", self.m))
        if self.f is not None:
            out.append(("f", self.f))
        return out

    def __add__(self, other):
        if (self.dim_g, self.dim_h, self.degree) != (
            other.dim_g,
            other.dim_h,
            other.degree,
        ):
            raise DegreeMismatch("cannot add elements of different degrees")
        m = _add_opt(self.m, other.m)
        f = _add_opt(self.f, other.f)
        return LElement(self.dim_g, self.dim_h, self.degree, m, f)

    def scale(self, c):
        c = Q(c)
        return LElement(
            self.dim_g,
            self.dim_h,
            self.degree,
            self.m.scale(c) if self.m is not None else None,
            self.f.scale(c) if self.f is not None else None,
        )

    def __eq__(self, other):
        return (
            isinstance(other, LElement)
            and (self.dim_g, self.dim_h, self.degree)
            == (other.dim_g, other.dim_h, other.degree)
            and _eq_opt(self.m, other.m, self.dim_g + self.dim_h, self.degree + 2)
            and _eq_opt(self.f, other.f, self.dim_g, self.degree + 1)
        )

    def __repr__(self):
        return "LElement(degree=%d, m=%s, f=%s)" % (self.degree, self.m, self.f)


def _add_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _eq_opt(a, b, dim, arity):
    if a is None and b is None:
        return True
    if a is None:
        return b.is_zero()
    if b is None:
        return a.is_zero()
    return a == b


def _atom_degree(kind, amap):
    return amap.arity - 2 if kind == "m" else amap.arity - 1


def _project(amap, dim_g, dim_h):
    """P: keep the pure wedge(g) -> h block of a map on g+h."""
    return restrict_to_g(amap, dim_g, dim_h, "h")


def _lift_theta(theta, dim_h):
    return alt_to_bigraded_g(theta, dim_h).lift()


def structure_element(pi, mu, rho_mats, d, dim_g=None, dim_h=None):
    """Package raw candidate data (pi, mu, rho, D) as a degree-0 element."""
    dim_g = pi.dim if dim_g is None else dim_g
    dim_h = mu.dim if dim_h is None else dim_h
    from .multilinear import BigradedMap

    pi_big = BigradedMap(
        dim_g, dim_h, 2, 0, "g", {(key, ()): v for key, v in pi.coeffs.items()}
    )
    mu_big = BigradedMap(
        dim_g, dim_h, 0, 2, "h", {((), key): v for key, v in mu.coeffs.items()}
    )
    rho_entries = {}
    for i in range(dim_g):
        for j in range(dim_h):
            col = rho_mats[i].column(j)
            if any(x != 0 for x in col):
                rho_entries[((i,), (j,))] = col
    rho_big = BigradedMap(dim_g, dim_h, 1, 1, "h", rho_entries)
    m_part = pi_big.lift() + rho_big.lift() + mu_big.lift()
    f_part = AltMap(
        dim_g, 1, dim_h, {(j,): d.column(j) for j in range(dim_g)}
    )
    return LElement(dim_g, dim_h, 0, m_part, f_part)


def element_from_structure(s):
    """Degree-0 element of a validated relative difference structure."""
    return structure_element(
        s.triple.pi_map(),
        s.triple.mu_map(),
        s.triple.rho,
        s.d,
        s.g.dim,
        s.h.dim,
    )


def derived_bracket(k, args):
    """The arity-k product on homogeneous elements.

    Expands each argument into its two possible parts, applies the three
    nonvanishing patterns, and reorders with Koszul signs when the single
    non-F factor is not in front.
    """
    if k < 1 or len(args) != k:
        raise ValueError("need exactly k arguments")
    dim_g, dim_h = args[0].dim_g, args[0].dim_h
    for a in args:
        if (a.dim_g, a.dim_h) != (dim_g, dim_h):
            raise DegreeMismatch("arguments live on different spaces")
    degree = sum(a.degree for a in args) + 1
    result = LElement.zero(dim_g, dim_h, degree)
    choices = [a.atoms() for a in args]
    if any(not c for c in choices):
        return result
    for combo in product(*choices):
        m_positions = [p for p, (kind, _) in enumerate(combo) if kind == "m"]
        if k == 1:
            kind, amap = combo[0]
            if kind == "m":
                proj = _project(amap, dim_g, dim_h)
                result = result + LElement(dim_g, dim_h, degree, None, proj)
            continue
        if len(m_positions) == 2 and k == 2:
            f1 = combo[0][1]
            f2 = combo[1][1]
            sign = (-1) ** (f1.arity - 1)
            m = nr_bracket(f1, f2).scale(sign)
            result = result + LElement(dim_g, dim_h, degree, m, None)
            continue
        if len(m_positions) == 1:
            p = m_positions[0]
            m_map = combo[p][1]
            d_m = _atom_degree("m", m_map)
            sign = 1
            for q in range(p):
                d_q = _atom_degree("f", combo[q][1])
                if (d_m * d_q) % 2 == 1:
                    sign = -sign
            chain = m_map
            zero = False
            for q, (kind, amap) in enumerate(combo):
                if q == p:
                    continue
                chain = nr_bracket(chain, _lift_theta(amap, dim_h))
                if chain.is_zero():
                    zero = True
                    break
            if zero:
                continue
            proj = _project(chain, dim_g, dim_h).scale(sign)
            result = result + LElement(dim_g, dim_h, degree, None, proj)
        # all other patterns vanish
    return result


def _max_m_arity(elements):
    return max((e.m.arity for e in elements if e.m is not None), default=0)


def mc_sum(alpha):
    """The curvature sum_k l_k(alpha, ..., alpha)/k!, truncated exactly.

    Terms with more than (m-arity + 2) factors vanish identically, so the
    truncation loses nothing.
    """
    if alpha.degree != 0:
        raise DegreeMismatch("Maurer-Cartan candidates have degree 0")
    bound = _max_m_arity([alpha]) + 2
    total = LElement.zero(alpha.dim_g, alpha.dim_h, 1)
    for k in range(1, bound + 1):
        term = derived_bracket(k, [alpha] * k)
        total = total + term.scale(Fraction(1, factorial(k)))
    return total


def is_mc_element(alpha):
    return mc_sum(alpha).is_zero()


def is_mc_structure(pi, mu, rho_mats, d, dim_g=None, dim_h=None):
    """Whether raw data (pi, mu, rho, D) solves the Maurer-Cartan equation."""
    return is_mc_element(structure_element(pi, mu, rho_mats, d, dim_g, dim_h))


def twisted_bracket(alpha, k, args, check=True):
    """The arity-k product twisted by the Maurer-Cartan element alpha.

    l_k^alpha(x_1..x_k) = sum_n l_{k+n}(alpha^n, x_1..x_k)/n!; the series
    stops once n exceeds the largest m-arity in sight plus two.
    """
    if check and not is_mc_element(alpha):
        raise NotMaurerCartan("twisting element does not satisfy Maurer-Cartan")
    bound = max(_max_m_arity([alpha] + list(args)), 1) + 2
    degree = sum(a.degree for a in args) + 1
    total = LElement.zero(alpha.dim_g, alpha.dim_h, degree)
    for n in range(0, bound + 1):
        term = derived_bracket(k + n, [alpha] * n + list(args))
        total = total + term.scale(Fraction(1, factorial(n)))
    return total


def twisted_mc_sum(alpha, beta, check=True):
    """sum_k l_k^alpha(beta, ..., beta)/k! for a degree-0 perturbation beta."""
    if beta.degree != 0:
        raise DegreeMismatch("perturbations have degree 0")
    bound = _max_m_arity([alpha, beta]) + 2
    total = LElement.zero(alpha.dim_g, alpha.dim_h, 1)
    for k in range(1, bound + 1):
        term = twisted_bracket(alpha, k, [beta] * k, check=check and k == 1)
        total = total + term.scale(Fraction(1, factorial(k)))
    return total


def deformation_mc_check(base, pi2, mu2, rho2_mats, d2):
    """Whether a perturbation keeps the structure valid, via both routes.

    Route one validates the summed data directly; route two evaluates the
    twisted Maurer-Cartan sum of the perturbation.  The two answers must
    agree; disagreement signals a library bug.
    """
    from .structures import raw_structure_valid

    alpha = element_from_structure(base)
    beta = structure_element(
        pi2, mu2, rho2_mats, d2, base.g.dim, base.h.dim
    )
    twisted_ok = twisted_mc_sum(alpha, beta, check=False).is_zero()
    pi_sum = base.triple.pi_map() + pi2
    mu_sum = base.triple.mu_map() + mu2
    rho_sum = [a.add(b) for a, b in zip(base.triple.rho, rho2_mats)]
    d_sum = base.d.add(d2)
    direct_ok = raw_structure_valid(pi_sum, mu_sum, rho_sum, d_sum)
    if twisted_ok != direct_ok:
        raise InternalInconsistency(
            "twisted Maurer-Cartan verdict %s disagrees with direct validation %s"
            % (twisted_ok, direct_ok)
        )
    return direct_ok


def generalized_jacobi(elements, l_fun=None):
    """Check the generalized Jacobi identity on one tuple of elements.

    sum_i sum_{(i, n-i) shuffles} eps(sigma)
        l_{n-i+1}(l_i(x_{sigma first block}), x_{sigma second block}) = 0.
    """
    if l_fun is None:
        l_fun = derived_bracket
    n = len(elements)
    dim_g, dim_h = elements[0].dim_g, elements[0].dim_h
    degrees = [e.degree for e in elements]
    total_degree = sum(degrees) + 2
    total = LElement.zero(dim_g, dim_h, total_degree)
    for i in range(1, n + 1):
        for first, second, _ in shuffles(i, n):
            arrangement = first + second
            eps = koszul_sign(arrangement, degrees)
            inner = l_fun(i, [elements[p] for p in first])
            outer_args = [inner] + [elements[p] for p in second]
            term = l_fun(n - i + 1, outer_args)
            total = total + term.scale(eps)
    return total.is_zero()
