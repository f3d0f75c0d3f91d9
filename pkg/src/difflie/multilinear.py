"""Exterior-power combinatorics and alternating multilinear maps.

Maps are stored by their values on strictly increasing basis tuples only;
evaluation on arbitrary vectors expands by multilinearity with explicit
sign bookkeeping.  Bigraded maps keep the g-block and h-block separate and
are moved to and from honest alternating maps on g+h by ``lift`` and
``project_mixed``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from .errors import NotInM
from .rationals import Q, ZERO


def perm_sign(perm):
    """Sign of a permutation given as a tuple of distinct values."""
    inversions = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inversions += 1
    return -1 if inversions % 2 else 1


def sort_with_sign(indices):
    """Sort an index tuple, tracking the permutation sign.

    Returns (sorted tuple, sign); (None, 0) when an index repeats.
    """
    if len(set(indices)) != len(indices):
        return None, 0
    order = tuple(sorted(indices))
    return order, perm_sign(indices)


def shuffles(i, n):
    """All (i, n-i)-shuffles of {0, ..., n-1} with their signs.

    A shuffle is returned as (first block, second block, sign) where both
    blocks are increasing position tuples partitioning range(n).
    """
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    out = []
    universe = range(n)
    for first in combinations(universe, i):
        chosen = set(first)
        second = tuple(p for p in universe if p not in chosen)
        out.append((first, second, perm_sign(first + second)))
    return out


def koszul_sign(perm, degrees):
    """Koszul sign of the arrangement x_{perm[0]}, ..., x_{perm[n-1]}.

    ``degrees[i]`` is the degree of x_i.  Each adjacent swap of entries of
    degrees p and q while sorting back contributes (-1)^(p*q).
    """
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list sizes differ")
    seq = list(perm)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if (degrees[seq[j - 1]] * degrees[seq[j]]) % 2 == 1:
                sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            j -= 1
    return sign


def wedge_tuples(dim, k):
    """Strictly increasing k-tuples over range(dim), in lexicographic order."""
    return list(combinations(range(dim), k))


def _vec_add(acc, vec, coeff):
    return tuple(a + coeff * v for a, v in zip(acc, vec))


class AltMap:
    """Alternating multilinear map from the arity-fold wedge of Q^dim to Q^target_dim."""

    __slots__ = ("dim", "arity", "target_dim", "coeffs")

    def __init__(self, dim, arity, target_dim, coeffs=None):
        self.dim = dim
        self.arity = arity
        self.target_dim = target_dim
        clean = {}
        if coeffs:
            for key, vec in coeffs.items():
                key = tuple(key)
                if len(key) != arity or any(not 0 <= i < dim for i in key):
                    raise ValueError("bad basis tuple %s" % (key,))
                if list(key) != sorted(set(key)):
                    raise ValueError("basis tuples must be strictly increasing")
                vec = tuple(Q(x) for x in vec)
                if len(vec) != target_dim:
                    raise ValueError("value has wrong target dimension")
                if any(x != 0 for x in vec):
                    clean[key] = vec
        self.coeffs = clean

    @classmethod
    def zero(cls, dim, arity, target_dim):
        return cls(dim, arity, target_dim)

    @property
    def degree(self):
        """Degree as a graded element: arity - 1."""
        return self.arity - 1

    def is_zero(self):
        return not self.coeffs

    def value_on(self, indices):
        """Value on basis vectors e_{i1}, ..., e_{in} in the given order."""
        key, sign = sort_with_sign(indices)
        if key is None:
            return (ZERO,) * self.target_dim
        vec = self.coeffs.get(key)
        if vec is None:
            return (ZERO,) * self.target_dim
        if sign == 1:
            return vec
        return tuple(-x for x in vec)

    def eval_first(self, vec, rest_indices):
        """Value on (general vector, basis e_{rest[0]}, ...)."""
        acc = (ZERO,) * self.target_dim
        for j, c in enumerate(vec):
            if c == 0:
                continue
            acc = _vec_add(acc, self.value_on((j,) + tuple(rest_indices)), c)
        return acc

    def __call__(self, *vectors):
        if len(vectors) != self.arity:
            raise ValueError("expected %d arguments" % self.arity)
        supports = [
            [(i, c) for i, c in enumerate(v) if c != 0] for v in vectors
        ]
        acc = (ZERO,) * self.target_dim
        for combo in product(*supports):
            idx = tuple(i for i, _ in combo)
            val = self.value_on(idx)
            if all(x == 0 for x in val):
                continue
            coeff = Q(1)
            for _, c in combo:
                coeff *= c
            acc = _vec_add(acc, val, coeff)
        return acc

    def _binary(self, other, op):
        if (self.dim, self.arity, self.target_dim) != (
            other.dim,
            other.arity,
            other.target_dim,
        ):
            raise ValueError("shape mismatch")
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        zero = (ZERO,) * self.target_dim
        for key in keys:
            a = self.coeffs.get(key, zero)
            b = other.coeffs.get(key, zero)
            out[key] = tuple(op(x, y) for x, y in zip(a, b))
        return AltMap(self.dim, self.arity, self.target_dim, out)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Q(c)
        if c == 0:
            return AltMap.zero(self.dim, self.arity, self.target_dim)
        return AltMap(
            self.dim,
            self.arity,
            self.target_dim,
            {k: tuple(c * x for x in v) for k, v in self.coeffs.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, AltMap)
            and self.dim == other.dim
            and self.arity == other.arity
            and self.target_dim == other.target_dim
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(
            (self.dim, self.arity, self.target_dim, tuple(sorted(self.coeffs.items())))
        )

    def entries(self):
        """(basis tuple, value vector) pairs in lexicographic order."""
        return sorted(self.coeffs.items())

    def __repr__(self):
        if self.is_zero():
            return "AltMap(0: wedge^%d Q^%d -> Q^%d)" % (
                self.arity,
                self.dim,
                self.target_dim,
            )
        body = ", ".join("%s -> %s" % (k, v) for k, v in self.entries())
        return "AltMap(%s)" % body


def alt_map_from_matrix(m):
    """View a linear map (matrix) as an arity-1 AltMap."""
    return AltMap(
        m.cols,
        1,
        m.rows,
        {(j,): m.column(j) for j in range(m.cols)},
    )


class BigradedMap:
    """Multilinear map on wedge^k(g) tensor wedge^l(h), alternating per block.

    ``target`` is "g" or "h"; values are coordinate vectors in that space.
    """

    __slots__ = ("dim_g", "dim_h", "k", "l", "target", "coeffs")

    def __init__(self, dim_g, dim_h, k, l, target, coeffs=None):
        if target not in ("g", "h"):
            raise ValueError("target must be 'g' or 'h'")
        self.dim_g = dim_g
        self.dim_h = dim_h
        self.k = k
        self.l = l
        self.target = target
        tdim = dim_g if target == "g" else dim_h
        clean = {}
        if coeffs:
            for (gkey, hkey), vec in coeffs.items():
                gkey, hkey = tuple(gkey), tuple(hkey)
                if len(gkey) != k or len(hkey) != l:
                    raise ValueError("block sizes do not match (k, l)")
                if list(gkey) != sorted(set(gkey)) or list(hkey) != sorted(set(hkey)):
                    raise ValueError("blocks must be strictly increasing")
                vec = tuple(Q(x) for x in vec)
                if len(vec) != tdim:
                    raise ValueError("value has wrong target dimension")
                if any(x != 0 for x in vec):
                    clean[(gkey, hkey)] = vec
        self.coeffs = clean

    @classmethod
    def zero(cls, dim_g, dim_h, k, l, target):
        return cls(dim_g, dim_h, k, l, target)

    @property
    def arity(self):
        return self.k + self.l

    @property
    def target_dim(self):
        return self.dim_g if self.target == "g" else self.dim_h

    def is_zero(self):
        return not self.coeffs

    def value_on(self, gkey, hkey):
        gkey, gsign = sort_with_sign(gkey)
        if gkey is None:
            return (ZERO,) * self.target_dim
        hkey, hsign = sort_with_sign(hkey)
        if hkey is None:
            return (ZERO,) * self.target_dim
        vec = self.coeffs.get((gkey, hkey))
        if vec is None:
            return (ZERO,) * self.target_dim
        s = gsign * hsign
        return vec if s == 1 else tuple(-x for x in vec)

    def eval_g_basis_h_vectors(self, gkey, hvecs):
        """Value on basis g-arguments and general h-argument vectors."""
        if len(hvecs) != self.l:
            raise ValueError("expected %d h-arguments" % self.l)
        supports = [[(i, c) for i, c in enumerate(v) if c != 0] for v in hvecs]
        acc = (ZERO,) * self.target_dim
        for combo in product(*supports):
            idx = tuple(i for i, _ in combo)
            val = self.value_on(tuple(gkey), idx)
            if all(x == 0 for x in val):
                continue
            coeff = Q(1)
            for _, c in combo:
                coeff *= c
            acc = _vec_add(acc, val, coeff)
        return acc

    def _binary(self, other, op):
        if (
            self.dim_g,
            self.dim_h,
            self.k,
            self.l,
            self.target,
        ) != (other.dim_g, other.dim_h, other.k, other.l, other.target):
            raise ValueError("shape mismatch")
        keys = set(self.coeffs) | set(other.coeffs)
        zero = (ZERO,) * self.target_dim
        out = {}
        for key in keys:
            a = self.coeffs.get(key, zero)
            b = other.coeffs.get(key, zero)
            out[key] = tuple(op(x, y) for x, y in zip(a, b))
        return BigradedMap(self.dim_g, self.dim_h, self.k, self.l, self.target, out)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def scale(self, c):
        c = Q(c)
        return BigradedMap(
            self.dim_g,
            self.dim_h,
            self.k,
            self.l,
            self.target,
            {k: tuple(c * x for x in v) for k, v in self.coeffs.items()},
        )

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, BigradedMap)
            and (self.dim_g, self.dim_h, self.k, self.l, self.target)
            == (other.dim_g, other.dim_h, other.k, other.l, other.target)
            and self.coeffs == other.coeffs
        )

    def entries(self):
        return sorted(self.coeffs.items())

    def lift(self):
        """The alternating map on g+h restricting to this bigraded map.

        On a strictly increasing basis tuple of g+h (all g-indices precede
        all h-indices) exactly one shuffle survives, with positive sign, so
        lifting is a re-keying; all other signs live in evaluation.
        """
        dim = self.dim_g + self.dim_h
        tdim = dim
        out = {}
        for (gkey, hkey), vec in self.coeffs.items():
            key = gkey + tuple(self.dim_g + j for j in hkey)
            if self.target == "g":
                value = vec + (ZERO,) * self.dim_h
            else:
                value = (ZERO,) * self.dim_g + vec
            out[key] = value
        return AltMap(dim, self.arity, tdim, out)

    def __repr__(self):
        return "BigradedMap(k=%d, l=%d -> %s; %d entries)" % (
            self.k,
            self.l,
            self.target,
            len(self.coeffs),
        )


def bigraded_from_matrix(m, dim_g, dim_h, which):
    """View a matrix as a bigraded map of shape (1,0)->h, (0,1)->h or (1,0)->g."""
    if which == "g_to_h":
        return BigradedMap(
            dim_g,
            dim_h,
            1,
            0,
            "h",
            {((j,), ()): m.column(j) for j in range(dim_g)},
        )
    if which == "h_to_h":
        return BigradedMap(
            dim_g,
            dim_h,
            0,
            1,
            "h",
            {((), (j,)): m.column(j) for j in range(dim_h)},
        )
    if which == "g_to_g":
        return BigradedMap(
            dim_g,
            dim_h,
            1,
            0,
            "g",
            {((j,), ()): m.column(j) for j in range(dim_g)},
        )
    raise ValueError("unknown shape tag %r" % which)


class MixedCochain:
    """Degree-n element (f_0, ..., f_n) of the mixed cochain space.

    f_0 maps wedge^n(g) to g and f_i maps wedge^{n-i}(g) tensor wedge^i(h)
    to h for 1 <= i <= n.
    """

    __slots__ = ("dim_g", "dim_h", "n", "parts")

    def __init__(self, dim_g, dim_h, n, parts):
        parts = tuple(parts)
        if len(parts) != n + 1:
            raise ValueError("need %d components" % (n + 1))
        for i, part in enumerate(parts):
            want_target = "g" if i == 0 else "h"
            if (
                part.dim_g != dim_g
                or part.dim_h != dim_h
                or part.k != n - i
                or part.l != i
                or part.target != want_target
            ):
                raise ValueError("component %d has the wrong shape" % i)
        self.dim_g = dim_g
        self.dim_h = dim_h
        self.n = n
        self.parts = parts

    @classmethod
    def zero(cls, dim_g, dim_h, n):
        parts = [BigradedMap.zero(dim_g, dim_h, n, 0, "g")]
        for i in range(1, n + 1):
            parts.append(BigradedMap.zero(dim_g, dim_h, n - i, i, "h"))
        return cls(dim_g, dim_h, n, parts)

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def lift(self):
        dim = self.dim_g + self.dim_h
        total = AltMap.zero(dim, self.n, dim)
        for part in self.parts:
            total = total + part.lift()
        return total

    def __add__(self, other):
        return MixedCochain(
            self.dim_g,
            self.dim_h,
            self.n,
            [a + b for a, b in zip(self.parts, other.parts)],
        )

    def __sub__(self, other):
        return MixedCochain(
            self.dim_g,
            self.dim_h,
            self.n,
            [a - b for a, b in zip(self.parts, other.parts)],
        )

    def scale(self, c):
        return MixedCochain(
            self.dim_g, self.dim_h, self.n, [p.scale(c) for p in self.parts]
        )

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, MixedCochain)
            and (self.dim_g, self.dim_h, self.n) == (other.dim_g, other.dim_h, other.n)
            and self.parts == other.parts
        )

    def __repr__(self):
        return "MixedCochain(n=%d, dim_g=%d, dim_h=%d)" % (
            self.n,
            self.dim_g,
            self.dim_h,
        )


def split_key(key, dim_g):
    """Split an increasing basis tuple over g+h into (g part, h part)."""
    gkey = tuple(i for i in key if i < dim_g)
    hkey = tuple(i - dim_g for i in key if i >= dim_g)
    return gkey, hkey


def project_mixed(f, dim_g, dim_h):
    """Invert ``lift`` on the mixed space plus the pure wedge(g)->h block.

    Returns (MixedCochain, theta block) where the theta block collects the
    wedge^n(g)->h component that sits outside the mixed space.  Raises
    NotInM when any value has a g-part attached to h-arguments, since no
    lifted mixed cochain can produce one.
    """
    if f.target_dim != dim_g + dim_h:
        raise ValueError("map does not take values in g+h")
    n = f.arity
    mixed_parts = {
        i: {} for i in range(n + 1)
    }
    pure = {}
    for key, vec in f.coeffs.items():
        gkey, hkey = split_key(key, dim_g)
        gval = vec[:dim_g]
        hval = vec[dim_g:]
        if any(x != 0 for x in gval):
            if hkey:
                raise NotInM(
                    "value on %s has a g-component although h-arguments occur"
                    % (key,),
                    offending=(key, gval),
                )
            if len(gkey) != n:
                raise NotInM(
                    "unexpected g-valued block at %s" % (key,), offending=(key, gval)
                )
            mixed_parts[0][(gkey, ())] = gval
        if any(x != 0 for x in hval):
            i = len(hkey)
            if i == 0:
                pure[(gkey, ())] = hval
            else:
                mixed_parts[i][(gkey, hkey)] = hval
    parts = [BigradedMap(dim_g, dim_h, n, 0, "g", mixed_parts[0])]
    for i in range(1, n + 1):
        parts.append(BigradedMap(dim_g, dim_h, n - i, i, "h", mixed_parts[i]))
    theta = BigradedMap(dim_g, dim_h, n, 0, "h", pure)
    return MixedCochain(dim_g, dim_h, n, parts), theta


def restrict_to_g(f, dim_g, dim_h, target):
    """Extract the pure wedge(g) block of an AltMap on g+h as a map on g."""
    out = {}
    for key, vec in f.coeffs.items():
        gkey, hkey = split_key(key, dim_g)
        if hkey:
            continue
        val = vec[:dim_g] if target == "g" else vec[dim_g:]
        if any(x != 0 for x in val):
            out[gkey] = val
    tdim = dim_g if target == "g" else dim_h
    return AltMap(dim_g, f.arity, tdim, out)


def alt_to_bigraded_g(f, dim_h):
    """View an AltMap wedge^n(g)->h as a bigraded (n, 0)->h map."""
    return BigradedMap(
        f.dim,
        dim_h,
        f.arity,
        0,
        "h",
        {(key, ()): vec for key, vec in f.coeffs.items()},
    )
