"""Validated algebraic structures: Lie algebras, actions, difference operators.

Axioms are checked on basis tuples only; bilinearity extends them.  The
action rho is stored as one matrix per basis vector of g, and every
characterization of a relative difference operator (direct identity, graph
closure in the semidirect product, Maurer-Cartan in the shifted bracket
algebra) is exposed so they can be played against each other.
"""

from __future__ import annotations

from itertools import combinations

from .errors import (
    InternalInconsistency,
    JacobiViolation,
    NotAction,
    NotAHomomorphism,
    NotDifferenceOp,
    NotRepresentation,
)
from .multilinear import (
    AltMap,
    BigradedMap,
    alt_to_bigraded_g,
    bigraded_from_matrix,
    shuffles,
)
from .nrbracket import nr_bracket
from .rationals import Matrix, Q, ZERO


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q given by structure constants.

    ``brackets`` maps (i, j) with i < j to the coordinate vector of
    [e_i, e_j]; antisymmetry fills in the rest.  Use
    ``validate_lie_algebra`` to construct with a Jacobi check.
    """

    def __init__(self, basis_names, brackets):
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        clean = {}
        for (i, j), vec in brackets.items():
            if not 0 <= i < j < self.dim:
                raise ValueError("bracket key (%d, %d) out of range" % (i, j))
            vec = tuple(Q(x) for x in vec)
            if len(vec) != self.dim:
                raise ValueError("bracket value has wrong dimension")
            if any(x != 0 for x in vec):
                clean[(i, j)] = vec
        self.brackets = clean

    @classmethod
    def abelian(cls, basis_names):
        return cls(basis_names, {})

    def zero_vector(self):
        return (ZERO,) * self.dim

    def basis_vector(self, i):
        return tuple(Q(1) if j == i else ZERO for j in range(self.dim))

    def bracket_basis(self, i, j):
        if i == j:
            return self.zero_vector()
        if i < j:
            return self.brackets.get((i, j), self.zero_vector())
        vec = self.brackets.get((j, i))
        if vec is None:
            return self.zero_vector()
        return tuple(-x for x in vec)

    def bracket(self, x, y):
        """Bilinear extension; works over Fraction or DualScalar coordinates."""
        acc = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cij = self.bracket_basis(i, j)
                coeff = xi * yj
                for k, c in enumerate(cij):
                    if c:
                        acc[k] = acc[k] + coeff * c
        return tuple(acc)

    def bracket_map(self):
        """The bracket as an arity-2 alternating map."""
        return AltMap(
            self.dim,
            2,
            self.dim,
            {key: vec for key, vec in self.brackets.items()},
        )

    def ad(self, i):
        """Matrix of ad(e_i)."""
        return Matrix.from_columns(
            [self.bracket_basis(i, j) for j in range(self.dim)], rows=self.dim
        )

    def ad_matrices(self):
        return [self.ad(i) for i in range(self.dim)]

    def is_abelian(self):
        return not self.brackets

    def jacobi_failures(self):
        nonzero = []
        for i, j, k in combinations(range(self.dim), 3):
            res = self.bracket(self.bracket_basis(i, j), self.basis_vector(k))
            res = tuple(
                a + b
                for a, b in zip(
                    res, self.bracket(self.bracket_basis(j, k), self.basis_vector(i))
                )
            )
            res = tuple(
                a + b
                for a, b in zip(
                    res, self.bracket(self.bracket_basis(k, i), self.basis_vector(j))
                )
            )
            if any(x != 0 for x in res):
                nonzero.append((i, j, k, res))
        return nonzero

    def __repr__(self):
        return "LieAlgebra(%s)" % ", ".join(self.basis_names)


def validate_lie_algebra(basis_names, brackets):
    """Build a LieAlgebra, raising JacobiViolation with every failing triple."""
    alg = LieAlgebra(basis_names, brackets)
    failures = alg.jacobi_failures()
    if failures:
        raise JacobiViolation(failures, basis_names=tuple(basis_names))
    return alg


def lie_algebra_from_map(basis_names, pi):
    """Build a LieAlgebra from an arity-2 AltMap (with a Jacobi check)."""
    brackets = {key: vec for key, vec in pi.coeffs.items()}
    return validate_lie_algebra(basis_names, brackets)


class LieActTriple:
    """Lie algebras g and h together with an action of g on h by derivations."""

    def __init__(self, g, h, rho):
        self.g = g
        self.h = h
        self.rho = tuple(rho)
        if len(self.rho) != g.dim:
            raise ValueError("need one action matrix per basis vector of g")
        for m in self.rho:
            if m.rows != h.dim or m.cols != h.dim:
                raise ValueError("action matrices must be dim_h x dim_h")

    def rho_of(self, x):
        """Matrix of the action of a general element x of g."""
        acc = Matrix.zero(self.h.dim, self.h.dim)
        for i, xi in enumerate(x):
            if xi != 0:
                acc = acc.add(self.rho[i].scale(xi))
        return acc

    def action_failures(self):
        failures = []
        g, h = self.g, self.h
        for i in range(g.dim):
            mat = self.rho[i]
            for a, b in combinations(range(h.dim), 2):
                lhs = mat.apply(h.bracket_basis(a, b))
                rhs = tuple(
                    p + q
                    for p, q in zip(
                        h.bracket(mat.apply(h.basis_vector(a)), h.basis_vector(b)),
                        h.bracket(h.basis_vector(a), mat.apply(h.basis_vector(b))),
                    )
                )
                if lhs != rhs:
                    failures.append(("derivation", i, (a, b)))
        for i, j in combinations(range(g.dim), 2):
            lhs = self.rho_of(g.bracket_basis(i, j))
            rhs = self.rho[i].mul(self.rho[j]).sub(self.rho[j].mul(self.rho[i]))
            if lhs != rhs:
                failures.append(("homomorphism", (i, j)))
        return failures

    def pi_map(self):
        return self.g.bracket_map()

    def mu_map(self):
        return self.h.bracket_map()

    def rho_bigraded(self):
        """The action as a bigraded (1,1)->h map."""
        out = {}
        for i in range(self.g.dim):
            for j in range(self.h.dim):
                col = self.rho[i].column(j)
                if any(x != 0 for x in col):
                    out[((i,), (j,))] = col
        return BigradedMap(self.g.dim, self.h.dim, 1, 1, "h", out)

    def big_pi(self):
        """The lifted structure map pi + rho + mu on g+h."""
        dg, dh = self.g.dim, self.h.dim
        pi_big = BigradedMap(
            dg, dh, 2, 0, "g", {(key, ()): v for key, v in self.g.brackets.items()}
        )
        mu_big = BigradedMap(
            dg, dh, 0, 2, "h", {((), key): v for key, v in self.h.brackets.items()}
        )
        return pi_big.lift() + self.rho_bigraded().lift() + mu_big.lift()

    def __repr__(self):
        return "LieActTriple(dim_g=%d, dim_h=%d)" % (self.g.dim, self.h.dim)


def validate_action(g, h, rho):
    triple = LieActTriple(g, h, rho)
    failures = triple.action_failures()
    if failures:
        raise NotAction(failures)
    return triple


def adjoint_triple(g):
    return LieActTriple(g, g, g.ad_matrices())


def difference_residuals(triple, d):
    """Residual rho(x)Dy - rho(y)Dx + [Dx, Dy] - D[x, y] on each basis pair."""
    g, h = triple.g, triple.h
    failures = []
    for i, j in combinations(range(g.dim), 2):
        dx = d.column(i)
        dy = d.column(j)
        rhs = list(triple.rho[i].apply(dy))
        for k, val in enumerate(triple.rho[j].apply(dx)):
            rhs[k] -= val
        for k, val in enumerate(h.bracket(dx, dy)):
            rhs[k] += val
        lhs = d.apply(g.bracket_basis(i, j))
        res = tuple(r - l for r, l in zip(rhs, lhs))
        if any(x != 0 for x in res):
            failures.append(((i, j), res))
    return failures


class RelDiffStructure:
    """Quadruple (g, h, rho, D) with D a relative difference operator."""

    def __init__(self, triple, d):
        if d.rows != triple.h.dim or d.cols != triple.g.dim:
            raise ValueError("operator must be a dim_h x dim_g matrix")
        self.triple = triple
        self.d = d

    @property
    def g(self):
        return self.triple.g

    @property
    def h(self):
        return self.triple.h

    def d_bigraded(self):
        return bigraded_from_matrix(self.d, self.g.dim, self.h.dim, "g_to_h")

    def __repr__(self):
        return "RelDiffStructure(dim_g=%d, dim_h=%d)" % (self.g.dim, self.h.dim)


def validate_rel_diff_op(triple, d):
    """Check the difference identity on all basis pairs; raise with residuals."""
    failures = difference_residuals(triple, d)
    if failures:
        raise NotDifferenceOp(failures)
    return RelDiffStructure(triple, d)


def is_rel_diff_op(triple, d):
    return not difference_residuals(triple, d)


def semidirect_lie(triple):
    """The semidirect product Lie algebra on g + h (validated)."""
    g, h = triple.g, triple.h
    dg = g.dim
    names = ["g:%s" % n for n in g.basis_names] + ["h:%s" % n for n in h.basis_names]
    brackets = {}
    for (i, j), vec in g.brackets.items():
        brackets[(i, j)] = vec + h.zero_vector()
    for i in range(dg):
        for j in range(h.dim):
            col = triple.rho[i].column(j)
            if any(x != 0 for x in col):
                brackets[(i, dg + j)] = g.zero_vector() + col
    for (i, j), vec in h.brackets.items():
        brackets[(dg + i, dg + j)] = g.zero_vector() + vec
    return validate_lie_algebra(names, brackets)


def graph_closure_check(triple, d):
    """Whether the graph of D is closed under the semidirect bracket."""
    semi = semidirect_lie(triple)
    g = triple.g
    dg = g.dim
    for i, j in combinations(range(dg), 2):
        xi = g.basis_vector(i) + tuple(d.column(i))
        xj = g.basis_vector(j) + tuple(d.column(j))
        z = semi.bracket(xi, xj)
        zg, zh = z[:dg], z[dg:]
        if tuple(d.apply(zg)) != tuple(zh):
            return False
    return True


def rho_d_matrices(structure):
    """The shifted action rho_D(x)u = rho(x)u + [Dx, u]; validated as a rep."""
    triple = structure.triple
    g, h = triple.g, triple.h
    mats = []
    for i in range(g.dim):
        dx = structure.d.column(i)
        ad_dx = Matrix.from_columns(
            [h.bracket(dx, h.basis_vector(j)) for j in range(h.dim)], rows=h.dim
        )
        mats.append(triple.rho[i].add(ad_dx))
    for i, j in combinations(range(g.dim), 2):
        lhs = Matrix.zero(h.dim, h.dim)
        for k, c in enumerate(g.bracket_basis(i, j)):
            if c != 0:
                lhs = lhs.add(mats[k].scale(c))
        rhs = mats[i].mul(mats[j]).sub(mats[j].mul(mats[i]))
        if lhs != rhs:
            raise InternalInconsistency(
                "rho_D fails the representation identity at basis pair (%d, %d); "
                "the input structure cannot be a relative difference Lie algebra"
                % (i, j)
            )
    return mats


def courant_bracket(f1, f2, triple):
    """Shuffle-sum bracket on maps wedge(g) -> h.

    [[f1, f2]](x_1..x_{m+n}) = (-1)^(mn+1) sum over (m, n)-shuffles of
    signed h-brackets of the two values.
    """
    h = triple.h
    m, n = f1.arity, f2.arity
    dim = triple.g.dim
    arity = m + n
    outer_sign = (-1) ** (m * n + 1)
    out = {}
    if arity > dim:
        return AltMap.zero(dim, arity, h.dim)
    splits = shuffles(m, arity)
    for tup in combinations(range(dim), arity):
        acc = (ZERO,) * h.dim
        for first, second, sign in splits:
            v1 = f1.value_on(tuple(tup[p] for p in first))
            if all(x == 0 for x in v1):
                continue
            v2 = f2.value_on(tuple(tup[p] for p in second))
            if all(x == 0 for x in v2):
                continue
            term = h.bracket(v1, v2)
            if sign == 1:
                acc = tuple(a + b for a, b in zip(acc, term))
            else:
                acc = tuple(a - b for a, b in zip(acc, term))
        acc = tuple(outer_sign * a for a in acc)
        if any(x != 0 for x in acc):
            out[tup] = acc
    return AltMap(dim, arity, h.dim, out)


def courant_bracket_via_nr(f1, f2, triple):
    """Same bracket computed as (-1)^(m-1) [[mu, f1], f2] on lifted maps."""
    dg, dh = triple.g.dim, triple.h.dim
    mu_big = BigradedMap(
        dg, dh, 0, 2, "h", {((), key): v for key, v in triple.h.brackets.items()}
    ).lift()
    lifted1 = alt_to_bigraded_g(f1, dh).lift()
    lifted2 = alt_to_bigraded_g(f2, dh).lift()
    inner = nr_bracket(nr_bracket(mu_big, lifted1), lifted2)
    from .multilinear import restrict_to_g

    result = restrict_to_g(inner, dg, dh, "h")
    return result.scale((-1) ** (f1.arity - 1))


def d_pi_rho(f, triple):
    """Differential [pi + rho, f] of the shifted bracket algebra, on wedge(g)->h."""
    dg, dh = triple.g.dim, triple.h.dim
    pi_big = BigradedMap(
        dg, dh, 2, 0, "g", {(key, ()): v for key, v in triple.g.brackets.items()}
    ).lift()
    rho_big = triple.rho_bigraded().lift()
    lifted = alt_to_bigraded_g(f, dh).lift()
    bracket = nr_bracket(pi_big + rho_big, lifted)
    from .multilinear import restrict_to_g

    return restrict_to_g(bracket, dg, dh, "h")


def dgla_mc_check(triple, d):
    """Maurer-Cartan test d_{pi+rho} D + (1/2) [[D, D]] = 0.

    Works on raw (unvalidated) triples as well; must agree with the direct
    difference-operator identity on every input.
    """
    d_map = AltMap(
        triple.g.dim,
        1,
        triple.h.dim,
        {(j,): d.column(j) for j in range(triple.g.dim)},
    )
    lhs = d_pi_rho(d_map, triple) + courant_bracket(d_map, d_map, triple).scale(
        Q(1, 2)
    )
    return lhs.is_zero()


class DifferenceLieAlgebra:
    """A Lie algebra with a difference operator for its own adjoint action."""

    def __init__(self, g, d):
        if d.rows != g.dim or d.cols != g.dim:
            raise ValueError("operator must be square of size dim g")
        self.g = g
        self.d = d

    def as_relative(self):
        return RelDiffStructure(adjoint_triple(self.g), self.d)

    def __repr__(self):
        return "DifferenceLieAlgebra(dim=%d)" % self.g.dim


def validate_difference_algebra(g, d):
    triple = adjoint_triple(g)
    failures = difference_residuals(triple, d)
    if failures:
        raise NotDifferenceOp(failures)
    return DifferenceLieAlgebra(g, d)


class DiffRepresentation:
    """Representation (V, varrho, K) of a difference Lie algebra (g, D)."""

    def __init__(self, base, v_dim, varrho, k):
        self.base = base
        self.v_dim = v_dim
        self.varrho = tuple(varrho)
        self.k = k
        if len(self.varrho) != base.g.dim:
            raise ValueError("need one matrix per basis vector of g")
        for m in self.varrho:
            if m.rows != v_dim or m.cols != v_dim:
                raise ValueError("representation matrices must be v_dim x v_dim")
        if k.rows != v_dim or k.cols != v_dim:
            raise ValueError("K must be v_dim x v_dim")

    def varrho_of(self, x):
        acc = Matrix.zero(self.v_dim, self.v_dim)
        for i, xi in enumerate(x):
            if xi != 0:
                acc = acc.add(self.varrho[i].scale(xi))
        return acc

    def failures(self):
        base, g = self.base, self.base.g
        out = []
        for i, j in combinations(range(g.dim), 2):
            lhs = self.varrho_of(g.bracket_basis(i, j))
            rhs = self.varrho[i].mul(self.varrho[j]).sub(
                self.varrho[j].mul(self.varrho[i])
            )
            if lhs != rhs:
                out.append(("lie", (i, j)))
        for i in range(g.dim):
            rho_dx = self.varrho_of(base.d.column(i))
            lhs = self.k.mul(self.varrho[i])
            rhs = rho_dx.add(self.varrho[i].mul(self.k)).add(rho_dx.mul(self.k))
            if lhs != rhs:
                out.append(("difference", i))
        return out

    def __repr__(self):
        return "DiffRepresentation(dim g=%d, dim V=%d)" % (
            self.base.g.dim,
            self.v_dim,
        )


def validate_representation(base, v_dim, varrho, k):
    rep = DiffRepresentation(base, v_dim, varrho, k)
    failures = rep.failures()
    if failures:
        raise NotRepresentation(failures)
    return rep


def adjoint_representation(base):
    return DiffRepresentation(base, base.g.dim, base.g.ad_matrices(), base.d)


def semidirect_difference(rep):
    """The semidirect product difference Lie algebra (g + V, D + K), re-validated."""
    base = rep.base
    g = base.g
    dg = g.dim
    names = ["g:%s" % n for n in g.basis_names] + [
        "v%d" % (j + 1) for j in range(rep.v_dim)
    ]
    zero_v = (ZERO,) * rep.v_dim
    brackets = {}
    for (i, j), vec in g.brackets.items():
        brackets[(i, j)] = vec + zero_v
    for i in range(dg):
        for j in range(rep.v_dim):
            col = rep.varrho[i].column(j)
            if any(x != 0 for x in col):
                brackets[(i, dg + j)] = g.zero_vector() + col
    total_g = validate_lie_algebra(names, brackets)
    columns = []
    for i in range(dg):
        columns.append(tuple(base.d.column(i)) + zero_v)
    for j in range(rep.v_dim):
        columns.append(g.zero_vector() + tuple(rep.k.column(j)))
    d_total = Matrix.from_columns(columns, rows=dg + rep.v_dim)
    return validate_difference_algebra(total_g, d_total)


def raw_jacobi_ok(pi):
    """Jacobi for an arbitrary arity-2 AltMap with target its own space."""
    dim = pi.dim
    for i, j, k in combinations(range(dim), 3):
        ei = tuple(Q(1) if t == i else ZERO for t in range(dim))
        ej = tuple(Q(1) if t == j else ZERO for t in range(dim))
        ek = tuple(Q(1) if t == k else ZERO for t in range(dim))
        total = [ZERO] * dim
        for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
            val = pi(pi(a, b), c)
            for t, x in enumerate(val):
                total[t] += x
        if any(x != 0 for x in total):
            return False
    return True


def raw_action_ok(pi, mu, rho_mats):
    """Derivation and homomorphism axioms for raw candidate data."""
    dim_g, dim_h = pi.dim, mu.dim

    def rho_of(vec):
        acc = Matrix.zero(dim_h, dim_h)
        for i, c in enumerate(vec):
            if c != 0:
                acc = acc.add(rho_mats[i].scale(c))
        return acc

    for i in range(dim_g):
        mat = rho_mats[i]
        for a, b in combinations(range(dim_h), 2):
            ea = tuple(Q(1) if t == a else ZERO for t in range(dim_h))
            eb = tuple(Q(1) if t == b else ZERO for t in range(dim_h))
            lhs = mat.apply(mu(ea, eb))
            rhs = tuple(
                p + q
                for p, q in zip(mu(mat.apply(ea), eb), mu(ea, mat.apply(eb)))
            )
            if tuple(lhs) != rhs:
                return False
    for i, j in combinations(range(dim_g), 2):
        ei = tuple(Q(1) if t == i else ZERO for t in range(dim_g))
        ej = tuple(Q(1) if t == j else ZERO for t in range(dim_g))
        lhs = rho_of(pi(ei, ej))
        rhs = rho_mats[i].mul(rho_mats[j]).sub(rho_mats[j].mul(rho_mats[i]))
        if lhs != rhs:
            return False
    return True


def raw_difference_ok(pi, mu, rho_mats, d):
    """The difference identity for raw candidate data."""
    dim_g = pi.dim
    for i, j in combinations(range(dim_g), 2):
        ei = tuple(Q(1) if t == i else ZERO for t in range(dim_g))
        ej = tuple(Q(1) if t == j else ZERO for t in range(dim_g))
        dx, dy = d.column(i), d.column(j)
        rhs = list(rho_mats[i].apply(dy))
        for k, val in enumerate(rho_mats[j].apply(dx)):
            rhs[k] -= val
        for k, val in enumerate(mu(dx, dy)):
            rhs[k] += val
        lhs = d.apply(pi(ei, ej))
        if tuple(rhs) != tuple(lhs):
            return False
    return True


def raw_structure_valid(pi, mu, rho_mats, d):
    """All axioms of a relative difference Lie algebra on raw data."""
    return (
        raw_jacobi_ok(pi)
        and raw_jacobi_ok(mu)
        and raw_action_ok(pi, mu, rho_mats)
        and raw_difference_ok(pi, mu, rho_mats, d)
    )


def validate_homomorphism(s1, s2, psi_g, psi_h):
    """Check that (psi_g, psi_h) maps (g,h,rho,D) to (g',h',rho',D')."""
    g1, h1 = s1.g, s1.h
    g2, h2 = s2.g, s2.h
    if psi_g.rows != g2.dim or psi_g.cols != g1.dim:
        raise NotAHomomorphism("psi_g has the wrong shape")
    if psi_h.rows != h2.dim or psi_h.cols != h1.dim:
        raise NotAHomomorphism("psi_h has the wrong shape")
    for i, j in combinations(range(g1.dim), 2):
        lhs = psi_g.apply(g1.bracket_basis(i, j))
        rhs = g2.bracket(psi_g.column(i), psi_g.column(j))
        if tuple(lhs) != tuple(rhs):
            raise NotAHomomorphism("psi_g does not preserve brackets at (%d,%d)" % (i, j))
    for i, j in combinations(range(h1.dim), 2):
        lhs = psi_h.apply(h1.bracket_basis(i, j))
        rhs = h2.bracket(psi_h.column(i), psi_h.column(j))
        if tuple(lhs) != tuple(rhs):
            raise NotAHomomorphism("psi_h does not preserve brackets at (%d,%d)" % (i, j))
    if psi_h.mul(s1.d) != s2.d.mul(psi_g):
        raise NotAHomomorphism("operators do not intertwine: D' psi_g != psi_h D")
    for i in range(g1.dim):
        lhs = psi_h.mul(s1.triple.rho[i])
        rhs = s2.triple.rho_of(psi_g.column(i)).mul(psi_h)
        if lhs != rhs:
            raise NotAHomomorphism("actions do not intertwine at basis vector %d" % i)
    return True
