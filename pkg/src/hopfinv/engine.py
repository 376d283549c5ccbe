"""Evaluation of K_A(D) and of the invariant by sparse term propagation.

A state is a dict mapping tuples of basis indices (one per tensor factor)
to exact coefficients.  Each stage of the plan rewrites every term and
collects like terms before the next stage runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .graded import GradedMorphism, GradingError, koszul_sign, sigma_of, tensor
from .heegaard import HeegaardDiagram, extract_permutation
from .hopf import HopfAlgebraData
from .scalars import format_scalar

__all__ = [
    "EvaluationPlan",
    "NotInvolutoryError",
    "dense_oracle",
    "evaluate_KAD",
    "evaluate_invariant",
    "gamma_exponent",
    "make_plan",
    "upsilon",
]

ONE = Fraction(1)
ZERO = Fraction(0)

State = Dict[Tuple[int, ...], object]


class NotInvolutoryError(ValueError):
    pass


@dataclass(frozen=True)
class EvaluationPlan:
    genus: int
    lower_sizes: Tuple[int, ...]
    upper_sizes: Tuple[int, ...]
    sigma: Tuple[int, ...]
    lower_kappas: Tuple[int, ...]
    upper_kappas: Tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.sigma)

    def stages(self, factorization: str = "low") -> List[Tuple[str, int]]:
        """Stage names with the arity of the state after each stage."""
        g, N = self.genus, self.N
        mid = [("S_low", N), ("P_sigma", N)] if factorization == "low" else \
            [("P_sigma", N), ("S_up", N)]
        return [("seed", g), ("Delta_low", N)] + mid + [("mu_up", g), ("phi", 0)]


def make_plan(D: HeegaardDiagram) -> EvaluationPlan:
    perm = extract_permutation(D)
    return EvaluationPlan(
        D.genus,
        tuple(len(c) for c in D.lower),
        tuple(len(c) for c in D.upper),
        perm.sigma,
        perm.lower_kappas,
        perm.upper_kappas,
    )


def gamma_exponent(sigma_I, nu) -> int:
    if sigma_I * sigma_I != 1 or nu * nu != 1:
        raise ValueError("sigma_I and nu must square to one")
    return 1 if (sigma_I == 1 and nu == 1) else 2


# ---------------------------------------------------------------------------
# per-algebra caches


class _Tables:
    """Basis-level images of Delta_n, products and S, built lazily."""

    def __init__(self, H: HopfAlgebraData):
        self.H = H
        self.prod, self.cop, self.anti = H.tables()
        self.degrees = H.A.degrees
        self.chi = H.chi
        self._delta_n: Dict[Tuple[int, int], State] = {}
        self._mul: Dict[Tuple[int, ...], Dict[int, object]] = {}
        self.eps = {i: c[0] for i, c in enumerate(H.eps.cols) if c}
        self.unit = H.eta.cols[0]

    def delta_n(self, n: int, x: int) -> State:
        """Delta_n(e_x) as {tuple of n indices: coeff}."""
        key = (n, x)
        hit = self._delta_n.get(key)
        if hit is not None:
            return hit
        if n == 0:
            out = {(): self.eps[x]} if x in self.eps else {}
        elif n == 1:
            out = {(x,): ONE}
        else:
            # Delta_n = (Delta_{n-1} (x) id) Delta
            out = {}
            for (a, b), c in self.cop[x].items():
                for head, v in self.delta_n(n - 1, a).items():
                    k = head + (b,)
                    out[k] = out.get(k, ZERO) + c * v
            out = {k: v for k, v in out.items() if v != 0}
        self._delta_n[key] = out
        return out

    def multiply(self, factors: Tuple[int, ...]) -> Dict[int, object]:
        """mu_n(e_{x1} (x) ... (x) e_{xn}) as a vector."""
        hit = self._mul.get(factors)
        if hit is not None:
            return hit
        if not factors:
            out = dict(self.unit)
        elif len(factors) == 1:
            out = {factors[0]: ONE}
        else:
            out = {}
            for a, c in self.multiply(factors[:-1]).items():
                for k, v in self.prod[(a, factors[-1])].items():
                    out[k] = out.get(k, ZERO) + c * v
            out = {k: v for k, v in out.items() if v != 0}
        self._mul[factors] = out
        return out


def _tables(H: HopfAlgebraData) -> _Tables:
    t = getattr(H, "_engine_tables", None)
    if t is None:
        t = _Tables(H)
        H._engine_tables = t
    return t


def _add(out: State, key, v):
    nv = out.get(key, ZERO) + v
    if nv == 0:
        out.pop(key, None)
    else:
        out[key] = nv


# ---------------------------------------------------------------------------
# stages


def _stage_delta(T: _Tables, state: State, sizes: Sequence[int]) -> State:
    # one lower circle at a time, collecting like terms in between
    done = 0
    for pos, n in enumerate(sizes):
        new: State = {}
        for key, c in state.items():
            head, x, tail = key[:done], key[done], key[done + 1:]
            for mid, v in T.delta_n(n, x).items():
                _add(new, head + mid + tail, c * v)
        state = new
        done += n
    return state


def _stage_antipode(T: _Tables, state: State, kappas: Sequence[int]) -> State:
    for pos, k in enumerate(kappas):
        if not k:
            continue
        new: State = {}
        for key, c in state.items():
            for y, v in T.anti[key[pos]].items():
                _add(new, key[:pos] + (y,) + key[pos + 1:], c * v)
        state = new
    return state


def _stage_permute(T: _Tables, state: State, sigma: Sequence[int]) -> State:
    new: State = {}
    N = len(sigma)
    for key, c in state.items():
        sign = koszul_sign(T.chi, [T.degrees[x] for x in key], sigma)
        out = [0] * N
        for i, x in enumerate(key):
            out[sigma[i]] = x
        _add(new, tuple(out), c * sign)
    return new


def _stage_mu(T: _Tables, state: State, sizes: Sequence[int]) -> State:
    new: State = {}
    for key, c in state.items():
        parts: List[Dict[int, object]] = []
        start = 0
        for n in sizes:
            parts.append(T.multiply(key[start:start + n]))
            start += n
        partial: State = {(): c}
        for vec in parts:
            nxt: State = {}
            for k, a in partial.items():
                for y, b in vec.items():
                    _add(nxt, k + (y,), a * b)
            partial = nxt
        for k, v in partial.items():
            _add(new, k, v)
    return new


def _run(H: HopfAlgebraData, plan: EvaluationPlan, state: State, factorization: str,
         trace: Optional[List[str]]) -> State:
    T = _tables(H)

    def log(name, st):
        if trace is not None:
            trace.append(f"{name:<10} terms={len(st)}")

    log("seed", state)
    state = _stage_delta(T, state, plan.lower_sizes)
    log("Delta_low", state)
    if factorization == "low":
        state = _stage_antipode(T, state, plan.lower_kappas)
        log("S_low", state)
        state = _stage_permute(T, state, plan.sigma)
        log("P_sigma", state)
    elif factorization == "up":
        state = _stage_permute(T, state, plan.sigma)
        log("P_sigma", state)
        state = _stage_antipode(T, state, plan.upper_kappas)
        log("S_up", state)
    else:
        raise ValueError("factorization must be 'low' or 'up'")
    state = _stage_mu(T, state, plan.upper_sizes)
    log("mu_up", state)
    return state


def _require_involutory(H: HopfAlgebraData):
    if not H.involutory:
        raise NotInvolutoryError("the Hopf algebra is not involutory (S^2 != id)")


def evaluate_KAD(H: HopfAlgebraData, D: HeegaardDiagram,
                 factorization: str = "low") -> GradedMorphism:
    """The matrix of K_A(D) on A^{(x) g}, one basis column at a time."""
    _require_involutory(H)
    plan = make_plan(D)
    g = plan.genus
    n = H.dim
    space = H.A.power(g)
    cols = []
    for flat in range(n ** g):
        key = []
        r = flat
        for _ in range(g):
            r, x = divmod(r, n)
            key.append(x)
        seed = {tuple(reversed(key)): ONE}
        out = _run(H, plan, seed, factorization, None)
        col = {}
        for k, v in out.items():
            idx = 0
            for x in k:
                idx = idx * n + x
            col[idx] = v
        cols.append(col)
    return GradedMorphism(space, space, cols, check=False)


def upsilon(H: HopfAlgebraData, pair, D: HeegaardDiagram, factorization: str = "low",
            trace: Optional[List[str]] = None):
    """The scalar of phi^{(x) g} K_A(D) Omega^{(x) g} on the line I^{(x) g}."""
    _require_involutory(H)
    if pair.H is not H and pair.H.A != H.A:
        raise GradingError("good pair belongs to a different algebra")
    plan = make_plan(D)
    omega = {x: v for x, v in pair.Omega.cols[0].items()}
    state: State = {(): ONE}
    for _ in range(plan.genus):
        nxt: State = {}
        for k, a in state.items():
            for x, b in omega.items():
                _add(nxt, k + (x,), a * b)
        state = nxt
    state = _run(H, plan, state, factorization, trace)
    phi = {x: c[0] for x, c in enumerate(pair.phi.cols) if c}
    total = ZERO
    for key, c in state.items():
        term = c
        for x in key:
            v = phi.get(x)
            if v is None:
                term = ZERO
                break
            term = term * v
        total = total + term
    if trace is not None:
        trace.append(f"{'phi':<10} value={format_scalar(total)}")
    return total


def evaluate_invariant(H: HopfAlgebraData, pair, D: HeegaardDiagram,
                       factorization: str = "low", trace: Optional[List[str]] = None):
    value = upsilon(H, pair, D, factorization, trace)
    gamma = gamma_exponent(sigma_of(pair.I), pair.nu)
    return value ** gamma


def dense_oracle(H: HopfAlgebraData, pair, D: HeegaardDiagram, budget: int = 2 ** 24):
    from .oracle import dense_invariant
    return dense_invariant(H, pair, D, budget)
