"""The graded Lie algebra of alternating maps under the circle product.

Hom(wedge^n V, V) carries degree n - 1; the bracket of f and g is
f o g - (-1)^((m-1)(n-1)) g o f, with the circle product summing over
(n, m-1)-shuffles.  Degree-1 solutions of [w, w] = 0 are exactly the Lie
brackets on V.
"""

from __future__ import annotations

from itertools import combinations

from .multilinear import AltMap, shuffles
from .rationals import ZERO


def circle(f, g):
    """Insertion f o g of g into the first slot of f, shuffle-summed."""
    if f.dim != g.dim:
        raise ValueError("maps live on different spaces")
    m, n = f.arity, g.arity
    arity = m + n - 1
    dim = f.dim
    out = {}
    if arity > dim:
        return AltMap.zero(dim, arity, f.target_dim)
    splits = shuffles(n, arity)
    for tup in combinations(range(dim), arity):
        acc = (ZERO,) * f.target_dim
        for first, second, sign in splits:
            inner = g.value_on(tuple(tup[p] for p in first))
            if all(x == 0 for x in inner):
                continue
            outer = f.eval_first(inner, tuple(tup[p] for p in second))
            if sign == 1:
                acc = tuple(a + b for a, b in zip(acc, outer))
            else:
                acc = tuple(a - b for a, b in zip(acc, outer))
        if any(x != 0 for x in acc):
            out[tup] = acc
    return AltMap(dim, arity, f.target_dim, out)


def nr_bracket(f, g):
    """Graded bracket f o g - (-1)^((|f|)(|g|)) g o f with |f| = arity - 1."""
    sign = (-1) ** ((f.arity - 1) * (g.arity - 1))
    fg = circle(f, g)
    gf = circle(g, f)
    return fg - gf.scale(sign)


def is_mc(omega):
    """Whether an arity-2 map solves [w, w] = 0, i.e. satisfies Jacobi."""
    if omega.arity != 2:
        raise ValueError("Maurer-Cartan candidates have arity 2")
    return nr_bracket(omega, omega).is_zero()


def graded_jacobi_check(f, g, h):
    """Verify [f,[g,h]] = [[f,g],h] + (-1)^(|f||g|) [g,[f,h]] by evaluation."""
    lhs = nr_bracket(f, nr_bracket(g, h))
    sign = (-1) ** ((f.arity - 1) * (g.arity - 1))
    rhs = nr_bracket(nr_bracket(f, g), h) + nr_bracket(g, nr_bracket(f, h)).scale(sign)
    return lhs == rhs


def graded_antisymmetry_check(f, g):
    """Verify [f,g] = -(-1)^(|f||g|) [g,f]."""
    sign = (-1) ** ((f.arity - 1) * (g.arity - 1))
    return nr_bracket(f, g) == nr_bracket(g, f).scale(-sign)
