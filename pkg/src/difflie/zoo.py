"""Small stock algebras and operators used throughout tests and demos."""

from __future__ import annotations

from .rationals import Matrix, Q
from .structures import (
    DifferenceLieAlgebra,
    RelDiffStructure,
    adjoint_triple,
    validate_difference_algebra,
    validate_lie_algebra,
    validate_rel_diff_op,
)


def abelian(n):
    """The abelian Lie algebra of dimension n."""
    return validate_lie_algebra(["e%d" % (i + 1) for i in range(n)], {})


def aff1():
    """The 2-dimensional nonabelian algebra: [e1, e2] = e2."""
    return validate_lie_algebra(["e1", "e2"], {(0, 1): (Q(0), Q(1))})


def heisenberg3():
    """The Heisenberg algebra: [e1, e2] = e3."""
    return validate_lie_algebra(
        ["e1", "e2", "e3"], {(0, 1): (Q(0), Q(0), Q(1))}
    )


def sl2():
    """sl(2) with basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return validate_lie_algebra(
        ["e", "f", "h"],
        {
            (0, 1): (Q(0), Q(0), Q(1)),
            (0, 2): (Q(-2), Q(0), Q(0)),
            (1, 2): (Q(0), Q(2), Q(0)),
        },
    )


def zero_operator(g, h=None):
    h = h or g
    return Matrix.zero(h.dim, g.dim)


def minus_identity(g):
    return Matrix.identity(g.dim).scale(-1)


def e2_projection():
    """On aff(1): D e1 = 0, D e2 = e2."""
    return Matrix(((Q(0), Q(0)), (Q(0), Q(1))))


def adjoint_difference(g, d) -> DifferenceLieAlgebra:
    return validate_difference_algebra(g, d)


def adjoint_structure(g, d) -> RelDiffStructure:
    return validate_rel_diff_op(adjoint_triple(g), d)


def difference_fixtures():
    """The stock difference Lie algebras: (label, DifferenceLieAlgebra)."""
    items = [
        ("abelian1 D=0", adjoint_difference(abelian(1), zero_operator(abelian(1)))),
        ("aff1 D=0", adjoint_difference(aff1(), zero_operator(aff1()))),
        ("aff1 D=-id", adjoint_difference(aff1(), minus_identity(aff1()))),
        ("aff1 D=proj", adjoint_difference(aff1(), e2_projection())),
        ("h3 D=0", adjoint_difference(heisenberg3(), zero_operator(heisenberg3()))),
        ("h3 D=-id", adjoint_difference(heisenberg3(), minus_identity(heisenberg3()))),
        ("sl2 D=0", adjoint_difference(sl2(), zero_operator(sl2()))),
    ]
    return items


def relative_fixtures():
    """Stock relative difference structures, including one with g != h."""
    items = [
        (label, alg.as_relative()) for label, alg in difference_fixtures()
    ]
    items.append(("aff1 on line", aff1_on_line()))
    return items


def aff1_on_line():
    """aff(1) acting on a 1-dimensional abelian h with rho(e1) = 1, D = (2, 3)."""
    g = aff1()
    h = abelian(1)
    rho = [Matrix(((Q(1),),)), Matrix(((Q(0),),))]
    from .structures import validate_action

    triple = validate_action(g, h, rho)
    d = Matrix(((Q(2), Q(3)),))
    return validate_rel_diff_op(triple, d)
