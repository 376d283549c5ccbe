"""Dense brute-force evaluation of the invariant, used to cross-check the engine.

Every stage acts on a full state tensor of shape (dim,) * arity through
explicit numpy matrices of the structure maps.  Tensor products of stage
matrices act factorwise, so they are applied one tensor mode at a time
instead of being materialized; Delta_n and mu_n are applied through their
recursions (Delta_n (x) id) Delta and mu (mu_n (x) id), one Delta or mu
matrix product at a time.
P_sigma is realized as a product of adjacent transpositions, each an
axis swap times a broadcast sign table, rather than by inversion counting.

Rational data are scaled to integers by a common denominator per matrix;
a running bound on entry size switches from int64 to Python objects
before overflow is possible.  Cyclotomic data always use object arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List

import numpy as np

from .graded import sigma_of
from .heegaard import HeegaardDiagram, extract_permutation
from .hopf import HopfAlgebraData
from .scalars import Cyclotomic

__all__ = ["OracleBudgetError", "dense_invariant"]

INT_LIMIT = 2 ** 62


class OracleBudgetError(RuntimeError):
    pass


class _Mat:
    """An exact matrix stored as (numerator array, common denominator)."""

    def __init__(self, rows):
        vals = [v for r in rows for v in r]
        self.exact = not any(isinstance(v, Cyclotomic) for v in vals)
        if self.exact:
            den = 1
            for v in vals:
                den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
            self.den = den
            ints = [[int(Fraction(v) * den) for v in r] for r in rows]
            self.bound = max([sum(abs(x) for x in r) for r in ints] + [1])
            self.num = np.array(ints, dtype=object)
        else:
            self.den = 1
            self.bound = None
            self.num = np.array(rows, dtype=object)
        if self.num.ndim == 1:
            self.num = self.num.reshape(len(rows), -1)

    @classmethod
    def from_morphism(cls, m):
        return cls(m.to_rows())


class _State:
    def __init__(self, array, den, bound, exact):
        self.array = array
        self.den = den
        self.bound = bound
        self.exact = exact

    def _cast(self, mat: _Mat, times: int = 1):
        """Pick int64 or object for the result of applying mat `times` times."""
        if not (self.exact and mat.exact):
            self.exact = False
            self.bound = None
            return object
        self.bound = self.bound * mat.bound ** times
        return np.int64 if self.bound < INT_LIMIT else object

    def convert(self, dtype):
        if self.array.dtype != dtype:
            self.array = self.array.astype(dtype)


def _as(mat: _Mat, dtype):
    return mat.num.astype(dtype) if dtype is np.int64 else mat.num


def _apply_block(state: _State, axis: int, width: int, mat: _Mat, d: int, out_modes: int):
    """Apply mat (d^out_modes x d^width) to the `width` modes starting at `axis`."""
    arr = state.array
    shape = arr.shape
    pre = int(np.prod(shape[:axis], dtype=np.int64))
    post = int(np.prod(shape[axis + width:], dtype=np.int64))
    dtype = state._cast(mat)
    state.convert(dtype)
    block = state.array.reshape(pre, d ** width, post)
    out = np.einsum("ij,pjq->piq", _as(mat, dtype), block)
    state.array = out.reshape(shape[:axis] + (d,) * out_modes + shape[axis + width:])
    state.den *= mat.den
    return out_modes


def dense_invariant(H: HopfAlgebraData, pair, D: HeegaardDiagram, budget: int = 2 ** 24):
    d = H.dim
    perm = extract_permutation(D)
    g = D.genus
    N = len(perm.sigma)
    size = d ** max(N, g)
    if size > budget:
        raise OracleBudgetError(f"dense state of {size} entries exceeds budget {budget}")

    # seed: Omega^{(x) g} as a full tensor
    om = _Mat.from_morphism(pair.Omega)
    vec = om.num[:, 0]
    arr = np.array(1, dtype=object)
    for _ in range(g):
        arr = np.multiply.outer(arr, vec)
    state = _State(arr, om.den ** g, max(1, int(max(abs(x) for x in vec))) ** g if om.exact
                   else None, om.exact)
    if state.exact and state.bound < INT_LIMIT:
        state.convert(np.int64)

    # Delta_low, one lower circle at a time
    Dm = _Mat.from_morphism(H.delta)
    Em = _Mat.from_morphism(H.eps)
    axis = 0
    for l in D.lower:
        n = len(l)
        if n == 0:
            _apply_block(state, axis, 1, Em, d, 0)
        for _ in range(n - 1):
            # Delta_n = (Delta_{n-1} (x) id) Delta: split the leftmost mode again
            _apply_block(state, axis, 1, Dm, d, 2)
        axis += n

    # S_low, one mode at a time
    S = _Mat.from_morphism(H.antipode)
    for pos, k in enumerate(perm.lower_kappas):
        if k:
            _apply_block(state, pos, 1, S, d, 1)

    # P_sigma by bubble sort into the upper order
    degs = H.A.degrees
    sign_table = np.array([[H.chi(a, b) for b in degs] for a in degs], dtype=object)
    exact_signs = all(isinstance(v, (int, Fraction)) and Fraction(v).denominator == 1
                      for v in sign_table.flat)
    cur = list(perm.sigma)
    for sweep in range(N):
        swapped = False
        for k in range(N - 1):
            if cur[k] > cur[k + 1]:
                arr = np.swapaxes(state.array, k, k + 1)
                # new[.., y_k, y_{k+1}, ..] = chi(|y_{k+1}|, |y_k|) old[.., y_{k+1}, y_k, ..]
                sign = sign_table.T
                if state.array.dtype == np.int64 and exact_signs:
                    sign = sign.astype(np.int64)
                shape = [1] * N
                shape[k] = d
                shape[k + 1] = d
                state.array = arr * sign.reshape(shape)
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                swapped = True
        if not swapped:
            break
    if not exact_signs:
        state.exact = False

    # mu_up, one upper circle at a time
    Mm = _Mat.from_morphism(H.mu)
    Um = _Mat.from_morphism(H.eta)
    axis = 0
    for u in D.upper:
        n = len(u)
        if n == 0:
            _apply_block(state, axis, 0, Um, d, 1)
        for _ in range(n - 1):
            # mu_n = mu (mu_{n-1} (x) id): multiply the two leftmost modes
            _apply_block(state, axis, 2, Mm, d, 1)
        axis += 1

    # phi^{(x) g}
    ph = _Mat.from_morphism(pair.phi)
    for _ in range(g):
        _apply_block(state, 0, 1, ph, d, 0)
    raw = state.array.reshape(()).item()
    value = _to_scalar(raw) / state.den if state.den != 1 else _to_scalar(raw)
    gamma = 1 if (sigma_of(pair.I) == 1 and pair.nu == 1) else 2
    return value ** gamma


def _to_scalar(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    return Fraction(x) if not isinstance(x, Fraction) else x
