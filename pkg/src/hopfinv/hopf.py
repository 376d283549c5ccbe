"""Hopf algebras in graded vector spaces: data, axiom checks and built-ins.

The built-in families are generated from their defining relations by
rewriting words in the generators to normal form (odd generators first,
then powers of the group-like generators), so every structure constant
comes from one place.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graded import (
    SUPER,
    Bicharacter,
    GradedMorphism,
    GradedSpace,
    GradingGroup,
    identity,
    symmetry,
    tensor,
)
from .scalars import Cyclotomic, as_scalar, format_scalar, zeta

__all__ = [
    "AlgebraSpecError",
    "AxiomReport",
    "HopfAlgebraData",
    "build_Anomega",
    "build_group_algebra",
    "build_Hn",
    "check_axioms",
    "delta_n",
    "dual_hopf",
    "mu_n",
    "parse_algebra_spec",
]

ONE = Fraction(1)
ZERO = Fraction(0)

AXIOM_GROUPS = ("algebra", "coalgebra", "bialgebra", "antipode", "involutory")


class AlgebraSpecError(ValueError):
    pass


@dataclass
class HopfAlgebraData:
    A: GradedSpace
    mu: GradedMorphism
    eta: GradedMorphism
    delta: GradedMorphism
    eps: GradedMorphism
    antipode: GradedMorphism
    basis_names: Tuple[str, ...] = ()
    name: str = ""
    flags: Dict[str, Optional[bool]] = field(
        default_factory=lambda: {k: None for k in AXIOM_GROUPS})

    def __post_init__(self):
        A = self.A
        unit = GradedSpace.unit(A.chi)
        AA = tensor(A, A)
        shapes = {
            "mu": (self.mu, AA, A), "eta": (self.eta, unit, A),
            "delta": (self.delta, A, AA), "eps": (self.eps, A, unit),
            "antipode": (self.antipode, A, A),
        }
        for nm, (m, s, t) in shapes.items():
            if m.source != s or m.target != t:
                raise ValueError(f"structure map {nm} has the wrong shape")
        if not self.basis_names:
            self.basis_names = tuple(f"e{i}" for i in range(A.dim))
        self._tables = None

    @property
    def dim(self) -> int:
        return self.A.dim

    @property
    def chi(self) -> Bicharacter:
        return self.A.chi

    @property
    def unit_space(self) -> GradedSpace:
        return GradedSpace.unit(self.A.chi)

    @property
    def involutory(self) -> bool:
        if self.flags["involutory"] is None:
            check_axioms(self)
        return bool(self.flags["involutory"])

    def all_pass(self) -> bool:
        if any(v is None for v in self.flags.values()):
            check_axioms(self)
        return all(self.flags.values())

    # -- per-basis-element tables used by the evaluation engine --------------

    def tables(self):
        """(product, coproduct, antipode) lookup tables on basis indices."""
        if self._tables is None:
            n = self.dim
            prod = {(i, j): self.mu.cols[i * n + j] for i in range(n) for j in range(n)}
            cop = []
            for i in range(n):
                cop.append({divmod(k, n): v for k, v in self.delta.cols[i].items()})
            anti = [self.antipode.cols[i] for i in range(n)]
            self._tables = (prod, cop, anti)
        return self._tables

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def element(self, coeffs: Dict[str, object]) -> Dict[int, object]:
        return {self.index(k): as_scalar(v) for k, v in coeffs.items()}

    def format_vector(self, vec: Dict[int, object]) -> str:
        if not vec:
            return "0"
        return " + ".join(f"({format_scalar(v)})*{self.basis_names[i]}"
                          for i, v in sorted(vec.items()))


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    results: List[Tuple[str, str, bool, Optional[str]]]

    def passed(self, group: str = None) -> bool:
        return all(ok for g, _, ok, _ in self.results if group is None or g == group)

    def failures(self):
        return [(nm, w) for _, nm, ok, w in self.results if not ok]

    def lines(self) -> List[str]:
        out = []
        for g, nm, ok, w in self.results:
            line = f"{g:<10} {nm:<28} {'pass' if ok else 'FAIL'}"
            if not ok and w:
                line += f"  witness: {w}"
            out.append(line)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _tensor_names(names: Sequence[str], k: int, flat: int) -> str:
    n = len(names)
    parts = []
    for _ in range(k):
        flat, r = divmod(flat, n)
        parts.append(names[r])
    return " (x) ".join(reversed(parts)) if parts else "1"


def check_axioms(H: HopfAlgebraData) -> AxiomReport:
    """Verify every Hopf algebra axiom by exact matrix equality."""
    A = H.A
    I = identity(A)
    one = identity(H.unit_space)
    mu, eta, de, ep, S = H.mu, H.eta, H.delta, H.eps, H.antipode
    tau = symmetry(A, A)
    checks = [
        ("algebra", "associativity", mu @ tensor(mu, I), mu @ tensor(I, mu), 3),
        ("algebra", "left unit", mu @ tensor(eta, I), I, 1),
        ("algebra", "right unit", mu @ tensor(I, eta), I, 1),
        ("coalgebra", "coassociativity", tensor(de, I) @ de, tensor(I, de) @ de, 1),
        ("coalgebra", "left counit", tensor(ep, I) @ de, I, 1),
        ("coalgebra", "right counit", tensor(I, ep) @ de, I, 1),
        ("bialgebra", "coproduct multiplicative",
         de @ mu, tensor(mu, mu) @ tensor(I, tau, I) @ tensor(de, de), 2),
        ("bialgebra", "coproduct unital", de @ eta, tensor(eta, eta), 0),
        ("bialgebra", "counit multiplicative", ep @ mu, tensor(ep, ep), 2),
        ("bialgebra", "counit unital", ep @ eta, one, 0),
        ("antipode", "left antipode", mu @ tensor(S, I) @ de, eta @ ep, 1),
        ("antipode", "right antipode", mu @ tensor(I, S) @ de, eta @ ep, 1),
        ("involutory", "S^2 = id", S @ S, I, 1),
    ]
    results = []
    for group, name, lhs, rhs, arity in checks:
        diff = lhs.first_difference(rhs)
        witness = None
        if diff is not None:
            witness = _tensor_names(H.basis_names, arity, diff[1])
        results.append((group, name, diff is None, witness))
    report = AxiomReport(results)
    for g in AXIOM_GROUPS:
        H.flags[g] = report.passed(g)
    return report


# ---------------------------------------------------------------------------
# iterated (co)products


def mu_n(H: HopfAlgebraData, n: int) -> GradedMorphism:
    """mu_0 = eta, mu_1 = id, mu_{k+1} = mu (mu_k (x) id)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return H.eta
    out = identity(H.A)
    I = identity(H.A)
    for _ in range(n - 1):
        out = H.mu @ tensor(out, I)
    return out


def delta_n(H: HopfAlgebraData, n: int) -> GradedMorphism:
    """Delta_0 = eps, Delta_1 = id, Delta_{k+1} = (Delta_k (x) id) Delta."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return H.eps
    out = identity(H.A)
    I = identity(H.A)
    for _ in range(n - 1):
        out = tensor(out, I) @ H.delta
    return out


# ---------------------------------------------------------------------------
# presented algebras


class _Presentation:
    """Words in generators rewritten to sorted normal form.

    ``swaps[(b, a)] = c`` (b > a) encodes ``b a = c a b``; ``squares[a]``
    gives the expansion of ``a a`` as {word: coeff}; ``powers[a] = n``
    encodes ``a^n = 1``.
    """

    def __init__(self, gens, degrees, swaps, squares, powers):
        self.gens = list(gens)
        self.degrees = list(degrees)
        self.swaps = dict(swaps)
        self.squares = dict(squares)
        self.powers = dict(powers)

    def normal_form(self, word) -> Dict[tuple, object]:
        out: Dict[tuple, object] = {}
        work = [(tuple(word), ONE)]
        while work:
            w, c = work.pop()
            if c == 0:
                continue
            done = True
            for i in range(len(w) - 1):
                a, b = w[i], w[i + 1]
                if a > b:
                    coef = self.swaps.get((a, b), ONE)
                    work.append((w[:i] + (b, a) + w[i + 2:], c * coef))
                    done = False
                    break
                if a == b and a in self.squares:
                    for rep, rc in self.squares[a].items():
                        work.append((w[:i] + tuple(rep) + w[i + 2:], c * rc))
                    done = False
                    break
            if not done:
                continue
            reduced = False
            for g, n in self.powers.items():
                run = [i for i, x in enumerate(w) if x == g]
                if len(run) >= n:
                    start = run[0]
                    work.append((w[:start] + w[start + n:], c))
                    reduced = True
                    break
            if reduced:
                continue
            out[w] = out.get(w, ZERO) + c
        return {w: c for w, c in out.items() if c != 0}


def _power_name(g: str, k: int) -> List[str]:
    if k == 0:
        return []
    return [g if k == 1 else f"{g}^{k}"]


def _build_presented(pres: _Presentation, basis_words, names, delta_gens, eps_gens,
                     anti_gens, chi: Bicharacter, title: str) -> HopfAlgebraData:
    """Assemble structure matrices from generator data.

    ``delta_gens[g]`` is a dict {(word1, word2): coeff}; ``anti_gens[g]`` a
    dict {word: coeff}; ``eps_gens[g]`` a scalar.
    """
    index = {w: i for i, w in enumerate(basis_words)}
    G = chi.group

    def deg_of(word):
        d = G.zero()
        for g in word:
            d = G.add(d, G.element(pres.degrees[g]))
        return d

    degrees = [deg_of(w) for w in basis_words]
    A = GradedSpace(degrees, chi)
    n = len(basis_words)

    def to_vec(word_coeffs):
        vec: Dict[int, object] = {}
        for w, c in word_coeffs.items():
            for nw, nc in pres.normal_form(w).items():
                if nw not in index:
                    raise AssertionError(f"normal form {nw} not in basis")
                vec[index[nw]] = vec.get(index[nw], ZERO) + c * nc
        return {i: v for i, v in vec.items() if v != 0}

    table = {}
    for i, wi in enumerate(basis_words):
        for j, wj in enumerate(basis_words):
            table[(i, j)] = to_vec({wi + wj: ONE})

    def mul(x, y):
        out: Dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, v in table[(i, j)].items():
                    out[k] = out.get(k, ZERO) + a * b * v
        return {k: v for k, v in out.items() if v != 0}

    def mul2(x, y):
        # product in A (x) A: (a (x) b)(c (x) d) = chi(|b|, |c|) ac (x) bd
        out: Dict[tuple, object] = {}
        for (a, b), u in x.items():
            for (c, d), v in y.items():
                sign = chi(degrees[b], degrees[c])
                for p, pv in table[(a, c)].items():
                    for q, qv in table[(b, d)].items():
                        key = (p, q)
                        out[key] = out.get(key, ZERO) + sign * u * v * pv * qv
        return {k: v for k, v in out.items() if v != 0}

    unit_idx = index[()]
    gen_delta = {}
    for g, terms in delta_gens.items():
        vec: Dict[tuple, object] = {}
        for (w1, w2), c in terms.items():
            for i, a in to_vec({w1: ONE}).items():
                for j, b in to_vec({w2: ONE}).items():
                    vec[(i, j)] = vec.get((i, j), ZERO) + c * a * b
        gen_delta[g] = vec
    gen_anti = {g: to_vec(t) for g, t in anti_gens.items()}

    mu_cols = [table[(i, j)] for i in range(n) for j in range(n)]
    delta_cols, eps_cols, anti_cols = [], [], []
    for w in basis_words:
        d = {(unit_idx, unit_idx): ONE}
        e = ONE
        for g in w:
            d = mul2(d, gen_delta[g])
            e = e * as_scalar(eps_gens[g])
        delta_cols.append({a * n + b: v for (a, b), v in d.items()})
        eps_cols.append({0: e} if e != 0 else {})
        # S(g1 g2 ... gk) = chi(|g1|, |rest|) S(rest) S(g1)
        s = {unit_idx: ONE}
        rest_deg = G.zero()
        for g in reversed(w):
            gd = G.element(pres.degrees[g])
            sign = chi(gd, rest_deg)
            s = mul(s, gen_anti[g])
            if sign != 1:
                s = {k: sign * v for k, v in s.items()}
            rest_deg = G.add(rest_deg, gd)
        anti_cols.append(s)

    unit = GradedSpace.unit(chi)
    AA = tensor(A, A)
    return HopfAlgebraData(
        A=A,
        mu=GradedMorphism(AA, A, mu_cols),
        eta=GradedMorphism(unit, A, [{unit_idx: ONE}]),
        delta=GradedMorphism(A, AA, delta_cols),
        eps=GradedMorphism(A, unit, eps_cols),
        antipode=GradedMorphism(A, A, anti_cols),
        basis_names=tuple(names),
        name=title,
    )


def build_group_algebra(n: int) -> HopfAlgebraData:
    """k[Z/n] with trivial grading: group-like t, S(t^k) = t^{-k}."""
    if n < 1:
        raise ValueError("n must be positive")
    chi = Bicharacter.trivial(GradingGroup([1]))
    pres = _Presentation(["t"], [0], {}, {}, {0: n})
    words = [(0,) * k for k in range(n)]
    names = ["*".join(_power_name("t", k)) or "1" for k in range(n)]
    t = (0,)
    return _build_presented(
        pres, words, names,
        delta_gens={0: {(t, t): ONE}},
        eps_gens={0: ONE},
        anti_gens={0: {(0,) * (n - 1): ONE}},
        chi=chi, title=f"group:{n}")


def build_Hn(n: int, c=0) -> HopfAlgebraData:
    """The super Hopf algebra on t, theta with t^n = 1, theta t = t theta,
    theta^2 = c (t^2 - 1); |t| = 0, |theta| = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    c = as_scalar(c)
    TH, T = 0, 1
    squares = {TH: {(T, T): c, (): -c}} if c != 0 else {TH: {}}
    pres = _Presentation(["theta", "t"], [1, 0], {(T, TH): ONE}, squares, {T: n})
    words, names = [], []
    for a in (0, 1):
        for k in range(n):
            words.append((TH,) * a + (T,) * k)
            parts = (["theta"] if a else []) + _power_name("t", k)
            names.append("*".join(parts) or "1")
    tinv = (T,) * (n - 1)
    H = _build_presented(
        pres, words, names,
        delta_gens={T: {((T,), (T,)): ONE},
                    TH: {((T,), (TH,)): ONE, ((TH,), ()): ONE}},
        eps_gens={T: ONE, TH: ZERO},
        anti_gens={T: {tinv: ONE}, TH: {(TH,) + tinv: -ONE}},
        chi=SUPER, title=f"hn:{n}:{format_scalar(c)}")
    return H


def _root_of_unity(d: int, r: int):
    if d <= 2:
        return zeta(d, r)
    return Cyclotomic(d, [0] * (r % d) + [1]) if r % d else Cyclotomic(d, [1])


def build_Anomega(n1: int, n2: int, r: int) -> HopfAlgebraData:
    """The 4 n1 n2 dimensional super Hopf algebra with omega = zeta_d^r,
    d = gcd(n1, n2)."""
    if n1 < 1 or n2 < 1:
        raise ValueError("n1 and n2 must be positive")
    d = math.gcd(n1, n2)
    w = _root_of_unity(d, r)
    winv = ONE / w
    TH1, TH2, T1, T2 = 0, 1, 2, 3
    swaps = {
        (TH2, TH1): -winv,   # theta1 theta2 = -w theta2 theta1
        (T1, TH1): ONE,
        (T1, TH2): w,        # t1 theta2 = w theta2 t1
        (T2, TH1): winv,     # t2 theta1 = w^-1 theta1 t2
        (T2, TH2): ONE,
        (T2, T1): ONE,
    }
    pres = _Presentation(["theta1", "theta2", "t1", "t2"], [1, 1, 0, 0], swaps,
                         {TH1: {}, TH2: {}}, {T1: n1, T2: n2})
    words, names = [], []
    for th in ((), (TH1,), (TH2,), (TH1, TH2)):
        for k in range(n1):
            for l in range(n2):
                words.append(th + (T1,) * k + (T2,) * l)
                parts = [pres.gens[g] for g in th] + _power_name("t1", k) + _power_name("t2", l)
                names.append("*".join(parts) or "1")
    t1inv = (T1,) * (n1 - 1)
    t2inv = (T2,) * (n2 - 1)
    return _build_presented(
        pres, words, names,
        delta_gens={
            T1: {((T1,), (T1,)): ONE}, T2: {((T2,), (T2,)): ONE},
            TH1: {((T1,), (TH1,)): ONE, ((TH1,), ()): ONE},
            TH2: {((T2,), (TH2,)): ONE, ((TH2,), ()): ONE},
        },
        eps_gens={T1: ONE, T2: ONE, TH1: ZERO, TH2: ZERO},
        anti_gens={
            T1: {t1inv: ONE}, T2: {t2inv: ONE},
            TH1: {(TH1,) + t1inv: -ONE}, TH2: {(TH2,) + t2inv: -ONE},
        },
        chi=SUPER, title=f"anomega:{n1}:{n2}:{r}")


# ---------------------------------------------------------------------------
# duals


def dual_hopf(H: HopfAlgebraData) -> HopfAlgebraData:
    """The dual Hopf algebra A* on the dual basis (degrees negated).

    Pairings are nested, <f (x) g, x (x) y> = <f, y><g, x>, which is the
    sign-free identification (A (x) A)* = A* (x) A* given by the left
    evaluations.  Hence mu* transposes Delta with the two factors read in
    reverse, Delta* transposes mu likewise, and S* is the transpose of S.
    """
    A = H.A
    n = A.dim
    G = A.group
    Ad = GradedSpace([G.neg(d) for d in A.degrees], A.chi)
    unit = GradedSpace.unit(A.chi)
    AdAd = tensor(Ad, Ad)
    mu_cols = []
    for a in range(n):
        for b in range(n):
            mu_cols.append({x: H.delta.entry(b * n + a, x) for x in range(n)})
    delta_cols = []
    for k in range(n):
        col = {}
        for i in range(n):
            for j in range(n):
                v = H.mu.entry(k, i * n + j)
                if v != 0:
                    col[j * n + i] = v
        delta_cols.append(col)
    eta_col = {x: H.eps.entry(0, x) for x in range(n)}
    eps_cols = [{0: H.eta.entry(x, 0)} for x in range(n)]
    anti_cols = [{x: H.antipode.entry(y, x) for x in range(n)} for y in range(n)]
    return HopfAlgebraData(
        A=Ad,
        mu=GradedMorphism(AdAd, Ad, mu_cols),
        eta=GradedMorphism(unit, Ad, [eta_col]),
        delta=GradedMorphism(Ad, AdAd, delta_cols),
        eps=GradedMorphism(Ad, unit, eps_cols),
        antipode=GradedMorphism(Ad, Ad, anti_cols),
        basis_names=tuple(f"{nm}*" for nm in H.basis_names),
        name=f"dual({H.name})",
    )


# ---------------------------------------------------------------------------
# algebra specification strings

_SPEC_RE = re.compile(r"^(group|hn|anomega)((?::[^:]+)+)$")


def parse_algebra_spec(spec: str) -> HopfAlgebraData:
    """``group:<n>``, ``hn:<n>:<c>`` or ``anomega:<n1>:<n2>:<r>``."""
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise AlgebraSpecError(f"unrecognised algebra spec {spec!r}")
    kind = m.group(1)
    args = m.group(2)[1:].split(":")
    try:
        if kind == "group":
            if len(args) != 1:
                raise AlgebraSpecError("group:<n> takes one argument")
            return build_group_algebra(int(args[0]))
        if kind == "hn":
            if len(args) not in (1, 2):
                raise AlgebraSpecError("hn:<n>:<c> takes two arguments")
            c = as_scalar(args[1]) if len(args) == 2 else ZERO
            return build_Hn(int(args[0]), c)
        if len(args) != 3:
            raise AlgebraSpecError("anomega:<n1>:<n2>:<r> takes three arguments")
        return build_Anomega(int(args[0]), int(args[1]), int(args[2]))
    except AlgebraSpecError:
        raise
    except ValueError as exc:
        raise AlgebraSpecError(f"bad algebra spec {spec!r}: {exc}") from exc
