"""Finite-dimensional G-graded vector spaces with a bicharacter symmetry.

The grading group is a finite abelian group ``Z/m_1 x ... x Z/m_k``; its
elements are integer tuples reduced componentwise.  A bicharacter ``chi``
with ``chi(g, h) chi(h, g) = 1`` turns graded spaces into a symmetric
monoidal category whose swap is ``x (x) y -> chi(|x|, |y|) y (x) x``.

Morphisms are grading-preserving matrices stored column by column: column
``j`` is a dict ``{row: value}`` holding the image of the j-th source basis
vector.  Tensor products order their bases lexicographically with the left
factor major.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .scalars import Scalar, as_scalar

__all__ = [
    "Bicharacter",
    "GradedMorphism",
    "GradedSpace",
    "GradingError",
    "GradingGroup",
    "SparseVector",
    "dimension",
    "dual_data",
    "identity",
    "koszul_sign",
    "norm_on_invertible",
    "permutation_morphism",
    "sigma_of",
    "symmetry",
    "tensor",
    "trace",
]

Degree = Tuple[int, ...]

ONE = Fraction(1)
ZERO = Fraction(0)


class GradingError(ValueError):
    """Raised for grading violations and incompatible categories."""


class GradingGroup:
    """The finite abelian group Z/m_1 x ... x Z/m_k."""

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(m) for m in orders)
        if any(m < 1 for m in orders):
            raise GradingError(f"cyclic orders must be positive: {orders}")
        self.orders = orders

    @property
    def rank(self) -> int:
        return len(self.orders)

    def element(self, g) -> Degree:
        if isinstance(g, int):
            g = (g,)
        g = tuple(g)
        if len(g) != self.rank:
            raise GradingError(f"degree {g} does not belong to Z/{self.orders}")
        return tuple(x % m for x, m in zip(g, self.orders))

    def zero(self) -> Degree:
        return (0,) * self.rank

    def add(self, g: Degree, h: Degree) -> Degree:
        return tuple((a + b) % m for a, b, m in zip(g, h, self.orders))

    def neg(self, g: Degree) -> Degree:
        return tuple((-a) % m for a, m in zip(g, self.orders))

    def elements(self):
        return itertools.product(*(range(m) for m in self.orders))

    def order(self) -> int:
        n = 1
        for m in self.orders:
            n *= m
        return n

    def __eq__(self, other):
        return isinstance(other, GradingGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(("GradingGroup", self.orders))

    def __repr__(self):
        return f"GradingGroup({list(self.orders)})"


class Bicharacter:
    """A bicharacter given by its values on pairs of generators.

    ``table[(i, j)]`` is ``chi(e_i, e_j)``; missing pairs default to 1.
    Construction validates that the values are compatible with the cyclic
    orders and that ``chi(g, h) chi(h, g) = 1``.
    """

    def __init__(self, group: GradingGroup, table: Mapping[Tuple[int, int], object] = None):
        self.group = group
        k = group.rank
        vals = {}
        for i in range(k):
            for j in range(k):
                vals[(i, j)] = as_scalar((table or {}).get((i, j), 1))
        for (i, j), v in vals.items():
            mi, mj = group.orders[i], group.orders[j]
            if v ** mi != 1 or v ** mj != 1:
                raise GradingError(
                    f"chi(e{i}, e{j}) = {v} is not a root of unity compatible "
                    f"with the orders {mi}, {mj}")
            if v * vals[(j, i)] != 1:
                raise GradingError(
                    f"chi(e{i}, e{j}) chi(e{j}, e{i}) != 1: the swap would not be symmetric")
        self.table = vals
        self._call = lru_cache(maxsize=None)(self._evaluate)

    @classmethod
    def trivial(cls, group: GradingGroup = None) -> "Bicharacter":
        return cls(group or GradingGroup([1]))

    @classmethod
    def super(cls) -> "Bicharacter":
        """chi(g, h) = (-1)^(gh) on Z/2: super vector spaces."""
        return cls(GradingGroup([2]), {(0, 0): -1})

    def _evaluate(self, g: Degree, h: Degree):
        out = ONE
        for (i, j), v in self.table.items():
            e = g[i] * h[j]
            if e and v != 1:
                out = out * v ** e
        return out

    def __call__(self, g, h):
        return self._call(self.group.element(g), self.group.element(h))

    def __eq__(self, other):
        return (isinstance(other, Bicharacter) and self.group == other.group
                and self.table == other.table)

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return f"Bicharacter({self.group!r}, {self.table!r})"


SUPER = Bicharacter.super()
TRIVIAL = Bicharacter.trivial()


class GradedSpace:
    """A graded space given by the degrees of its basis vectors."""

    __slots__ = ("chi", "degrees", "_hash")

    def __init__(self, degrees: Iterable, chi: Bicharacter = SUPER):
        self.chi = chi
        self.degrees = tuple(chi.group.element(d) for d in degrees)
        self._hash = None

    @classmethod
    def unit(cls, chi: Bicharacter = SUPER) -> "GradedSpace":
        return cls([chi.group.zero()], chi)

    @classmethod
    def line(cls, degree, chi: Bicharacter = SUPER) -> "GradedSpace":
        return cls([degree], chi)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def group(self) -> GradingGroup:
        return self.chi.group

    def power(self, n: int) -> "GradedSpace":
        out = GradedSpace.unit(self.chi)
        for _ in range(n):
            out = tensor(out, self)
        return out

    def degree_component(self, d) -> list:
        d = self.group.element(d)
        return [i for i, e in enumerate(self.degrees) if e == d]

    def __eq__(self, other):
        return (isinstance(other, GradedSpace) and self.degrees == other.degrees
                and self.chi == other.chi)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degrees, self.chi))
        return self._hash

    def __repr__(self):
        degs = [d[0] if len(d) == 1 else d for d in self.degrees]
        return f"GradedSpace({degs})"


def _clean(col: Mapping) -> Dict[int, Scalar]:
    return {i: v for i, v in col.items() if v != 0}


class GradedMorphism:
    """A grading-preserving linear map, stored as sparse columns."""

    __slots__ = ("source", "target", "cols")

    def __init__(self, source: GradedSpace, target: GradedSpace, cols, check: bool = True):
        self.source = source
        self.target = target
        cols = tuple(_clean(c) for c in cols)
        if len(cols) != source.dim:
            raise GradingError(f"expected {source.dim} columns, got {len(cols)}")
        if check:
            tdeg = target.degrees
            sdeg = source.degrees
            for j, col in enumerate(cols):
                for i in col:
                    if not 0 <= i < target.dim:
                        raise GradingError(f"row index {i} out of range")
                    if tdeg[i] != sdeg[j]:
                        raise GradingError(
                            f"entry ({i}, {j}) maps degree {sdeg[j]} to {tdeg[i]}")
        self.cols = cols

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_matrix(cls, source, target, rows) -> "GradedMorphism":
        rows = [[as_scalar(v) for v in r] for r in rows]
        cols = [{i: rows[i][j] for i in range(target.dim) if rows[i][j] != 0}
                for j in range(source.dim)]
        return cls(source, target, cols)

    @classmethod
    def zero(cls, source, target) -> "GradedMorphism":
        return cls(source, target, [{} for _ in range(source.dim)], check=False)

    # -- accessors -----------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return self.cols[j].get(i, ZERO)

    def to_rows(self) -> list:
        return [[self.entry(i, j) for j in range(self.source.dim)]
                for i in range(self.target.dim)]

    def apply(self, vec: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for j, c in vec.items():
            if c == 0:
                continue
            for i, v in self.cols[j].items():
                out[i] = out.get(i, ZERO) + c * v
        return _clean(out)

    def is_zero(self) -> bool:
        return not any(self.cols)

    # -- algebra -------------------------------------------------------------

    def __matmul__(self, other: "GradedMorphism") -> "GradedMorphism":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise GradingError(
                f"cannot compose: {other.target!r} != {self.source!r}")
        cols = [self.apply(c) for c in other.cols]
        return GradedMorphism(other.source, self.target, cols, check=False)

    def _same_shape(self, other):
        if self.source != other.source or self.target != other.target:
            raise GradingError("morphisms have different source or target")

    def __add__(self, other):
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, ZERO) + v
            cols.append(c)
        return GradedMorphism(self.source, self.target, cols, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "GradedMorphism":
        s = as_scalar(s)
        cols = [{i: s * v for i, v in c.items()} for c in self.cols]
        return GradedMorphism(self.source, self.target, cols, check=False)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, GradedMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source, self.target))

    def first_difference(self, other) -> Tuple[int, int] | None:
        """(row, column) of the first entry where two morphisms differ."""
        self._same_shape(other)
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                rows = sorted(set(a) | set(b))
                for i in rows:
                    if a.get(i, ZERO) != b.get(i, ZERO):
                        return (i, j)
        return None

    def __repr__(self):
        return (f"GradedMorphism({self.source.dim} -> {self.target.dim}, "
                f"{sum(len(c) for c in self.cols)} nonzeros)")


def identity(X: GradedSpace) -> GradedMorphism:
    return GradedMorphism(X, X, [{i: ONE} for i in range(X.dim)], check=False)


def _tensor2_spaces(X: GradedSpace, Y: GradedSpace) -> GradedSpace:
    if X.chi != Y.chi:
        raise GradingError("tensor product of spaces over different gradings")
    add = X.group.add
    degs = [add(a, b) for a in X.degrees for b in Y.degrees]
    return GradedSpace(degs, X.chi)


def _tensor2_morphisms(f: GradedMorphism, g: GradedMorphism) -> GradedMorphism:
    src = _tensor2_spaces(f.source, g.source)
    tgt = _tensor2_spaces(f.target, g.target)
    dv = g.target.dim
    cols = []
    for fc in f.cols:
        for gc in g.cols:
            cols.append({a * dv + b: x * y for a, x in fc.items() for b, y in gc.items()})
    return GradedMorphism(src, tgt, cols, check=False)


def tensor(*items):
    """Monoidal product of spaces or of morphisms (left factor major).

    No Koszul signs appear: all morphisms are grading preserving.
    """
    if not items:
        raise ValueError("tensor() needs at least one argument")
    out = items[0]
    for nxt in items[1:]:
        if isinstance(out, GradedSpace) and isinstance(nxt, GradedSpace):
            out = _tensor2_spaces(out, nxt)
        elif isinstance(out, GradedMorphism) and isinstance(nxt, GradedMorphism):
            out = _tensor2_morphisms(out, nxt)
        else:
            raise TypeError("tensor() mixes spaces and morphisms")
    return out


def symmetry(X: GradedSpace, Y: GradedSpace) -> GradedMorphism:
    """tau_{X,Y}: x (x) y -> chi(|x|, |y|) y (x) x."""
    if X.chi != Y.chi:
        raise GradingError("symmetry between different gradings")
    chi = X.chi
    cols = []
    for i, dx in enumerate(X.degrees):
        for j, dy in enumerate(Y.degrees):
            cols.append({j * X.dim + i: chi(dx, dy)})
    return GradedMorphism(tensor(X, Y), tensor(Y, X), cols, check=False)


def _check_permutation(sigma: Sequence[int]) -> Tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"{sigma} is not a permutation of 0..{len(sigma) - 1}")
    return sigma


def koszul_sign(chi: Bicharacter, degrees: Sequence[Degree], sigma: Sequence[int]):
    """Sign picked up when factor i of a homogeneous term moves to slot sigma[i].

    Product of chi(|x_i|, |x_j|) over the pairs i < j inverted by sigma.
    """
    s = ONE
    n = len(sigma)
    for i in range(n):
        si = sigma[i]
        di = degrees[i]
        for j in range(i + 1, n):
            if sigma[j] < si:
                v = chi(di, degrees[j])
                if v != 1:
                    s = s * v
    return s


def permutation_morphism(A: GradedSpace, sigma: Sequence[int]) -> GradedMorphism:
    """P_sigma on A^{(x)N}: moves tensor factor i to position sigma[i] (0-based)."""
    sigma = _check_permutation(sigma)
    n = len(sigma)
    space = A.power(n)
    d = A.dim
    cols = []
    for idx in itertools.product(range(d), repeat=n):
        out = [0] * n
        for i, a in enumerate(idx):
            out[sigma[i]] = a
        flat = 0
        for a in out:
            flat = flat * d + a
        sign = koszul_sign(A.chi, [A.degrees[a] for a in idx], sigma)
        cols.append({flat: sign})
    return GradedMorphism(space, space, cols, check=False)


def dual_data(X: GradedSpace):
    """Left dual X* with lev, lcoev and the induced rev, rcoev.

    X* has the dual basis with negated degrees.  lev pairs e^i with e_i,
    lcoev is sum_i e_i (x) e^i, rev = lev tau_{X,X*} and
    rcoev = tau_{X,X*} lcoev.
    """
    G = X.group
    Xd = GradedSpace([G.neg(d) for d in X.degrees], X.chi)
    unit = GradedSpace.unit(X.chi)
    n = X.dim
    lev_cols = [({0: ONE} if i == j else {}) for i in range(n) for j in range(n)]
    lev = GradedMorphism(tensor(Xd, X), unit, lev_cols)
    lcoev = GradedMorphism(unit, tensor(X, Xd), [{i * n + i: ONE for i in range(n)}])
    tau = symmetry(X, Xd)
    rev = lev @ tau
    rcoev = tau @ lcoev
    return Xd, lev, lcoev, rev, rcoev


def trace(f: GradedMorphism) -> Scalar:
    """lev_X (id_{X*} (x) f) rcoev_X."""
    X = f.source
    if f.target != X:
        raise GradingError("trace of a non-endomorphism")
    Xd, lev, _, _, rcoev = dual_data(X)
    m = lev @ tensor(identity(Xd), f) @ rcoev
    return m.entry(0, 0)


def dimension(X: GradedSpace) -> Scalar:
    return trace(identity(X))


def _require_line(I: GradedSpace):
    if I.dim != 1:
        raise GradingError(f"object of dimension {I.dim} is not invertible")


def norm_on_invertible(f: GradedMorphism, I: GradedSpace = None) -> Scalar:
    """The scalar s with f = s id_I, for an endomorphism f of a line I."""
    I = I if I is not None else f.source
    _require_line(I)
    if f.source != I or f.target != I:
        raise GradingError("not an endomorphism of the given line")
    return f.entry(0, 0)


def sigma_of(I: GradedSpace) -> Scalar:
    """chi(d, d) for the line k_d, i.e. tau_{I,I} = sigma_I id."""
    _require_line(I)
    d = I.degrees[0]
    s = I.chi(d, d)
    assert s * s == 1, "sigma_I must square to one"
    return s


class SparseVector:
    """A vector in a tensor power of a base space, keyed by index tuples."""

    __slots__ = ("base", "arity", "terms")

    def __init__(self, base: GradedSpace, arity: int, terms: Mapping = None):
        self.base = base
        self.arity = arity
        self.terms: Dict[Tuple[int, ...], Scalar] = {}
        for k, v in (terms or {}).items():
            self.add_term(k, v)

    def add_term(self, key, coeff):
        key = tuple(key)
        if len(key) != self.arity:
            raise ValueError(f"term {key} has arity {len(key)}, expected {self.arity}")
        v = self.terms.get(key, ZERO) + coeff
        if v == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def scale(self, s) -> "SparseVector":
        return SparseVector(self.base, self.arity, {k: s * v for k, v in self.terms.items()})

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if other.base != self.base or other.arity != self.arity:
            raise GradingError("adding vectors from different spaces")
        out = SparseVector(self.base, self.arity, self.terms)
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def degree(self, key) -> Degree:
        G = self.base.group
        d = G.zero()
        for a in key:
            d = G.add(d, self.base.degrees[a])
        return d

    def __eq__(self, other):
        return (isinstance(other, SparseVector) and self.base == other.base
                and self.arity == other.arity and self.terms == other.terms)

    def __repr__(self):
        return f"SparseVector(arity={self.arity}, {len(self.terms)} terms)"
