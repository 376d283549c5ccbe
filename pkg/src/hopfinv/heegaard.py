"""Combinatorial Heegaard diagrams: data model, text format, moves.

A diagram records, for each upper and lower circle, the intersection
points met when walking the circle from its base point along its
orientation.  Each point carries a sign.  The surface itself is not
stored.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

__all__ = [
    "Circle",
    "DiagramError",
    "DiagramPermutation",
    "HeegaardDiagram",
    "Move",
    "apply_move",
    "builtin_diagram",
    "extract_permutation",
    "parse_diagram",
    "parse_move",
    "random_diagram",
    "serialize_diagram",
]

UPPER, LOWER = "upper", "lower"
SIDES = (UPPER, LOWER)


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Circle:
    name: str
    points: Tuple[Tuple[str, int], ...] = ()

    def __len__(self):
        return len(self.points)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(p for p, _ in self.points)


@dataclass(frozen=True)
class HeegaardDiagram:
    genus: int
    upper: Tuple[Circle, ...]
    lower: Tuple[Circle, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        self.validate()

    def validate(self):
        if self.genus < 1:
            raise DiagramError("genus must be at least 1")
        for side in SIDES:
            circles = self.side(side)
            if len(circles) != self.genus:
                raise DiagramError(
                    f"genus {self.genus} needs {self.genus} {side} circles, got {len(circles)}")
        signs: Dict[str, Dict[str, int]] = {}
        for side in SIDES:
            seen = signs.setdefault(side, {})
            for c in self.side(side):
                for label, s in c.points:
                    if s not in (1, -1):
                        raise DiagramError(f"bad sign {s!r} at point {label!r}")
                    if label in seen:
                        raise DiagramError(f"point {label!r} appears twice on the {side} side")
                    seen[label] = s
        up, low = signs[UPPER], signs[LOWER]
        if set(up) != set(low):
            missing = sorted(set(up) ^ set(low))
            raise DiagramError(f"points not shared by both sides: {missing}")
        for label, s in up.items():
            if low[label] != s:
                raise DiagramError(f"sign mismatch at point {label!r}")

    def side(self, side: str) -> Tuple[Circle, ...]:
        if side == UPPER:
            return self.upper
        if side == LOWER:
            return self.lower
        raise DiagramError(f"unknown side {side!r}")

    @property
    def N(self) -> int:
        return sum(len(c) for c in self.upper)

    def signs(self) -> Dict[str, int]:
        return {p: s for c in self.upper for p, s in c.points}

    def labels(self) -> List[str]:
        return [p for c in self.upper for p, _ in c.points]

    def _with(self, side: str, circles) -> "HeegaardDiagram":
        if side == UPPER:
            return HeegaardDiagram(self.genus, tuple(circles), self.lower)
        return HeegaardDiagram(self.genus, self.upper, tuple(circles))


# ---------------------------------------------------------------------------
# text format

_TOKEN_RE = re.compile(r"^([^\s:#]+?)([+\-−])$")
_CIRCLE_RE = re.compile(r"^(upper|lower)\s+([^\s:]+)\s*:(.*)$")


def parse_diagram(text: str) -> HeegaardDiagram:
    genus = None
    circles = {UPPER: [], LOWER: []}
    where: Dict[str, Dict[str, Tuple[int, int]]] = {UPPER: {}, LOWER: {}}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("genus"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise DiagramError(f"line {no}: expected 'genus <g>'")
            if genus is not None:
                raise DiagramError(f"line {no}: genus given twice")
            genus = int(parts[1])
            continue
        m = _CIRCLE_RE.match(line)
        if not m:
            raise DiagramError(f"line {no}: unknown token {line.split()[0]!r}")
        side, name, body = m.group(1), m.group(2), m.group(3)
        points = []
        seen = {c.name for c in circles[side]}
        if name in seen:
            raise DiagramError(f"line {no}: circle {name!r} defined twice")
        for tok in body.split():
            t = _TOKEN_RE.match(tok)
            if not t:
                raise DiagramError(f"line {no}: unknown token {tok!r}")
            points.append((t.group(1), 1 if t.group(2) == "+" else -1))
        labels = [p for p, _ in points]
        if len(set(labels)) != len(labels):
            raise DiagramError(f"line {no}: duplicate point on circle {name!r}")
        for other in circles[side]:
            dup = set(labels) & set(other.labels)
            if dup:
                raise DiagramError(
                    f"line {no}: duplicate point {sorted(dup)[0]!r} on the {side} side")
        circles[side].append(Circle(name, tuple(points)))
        for p, sgn in points:
            where[side][p] = (no, sgn)
    if genus is None:
        raise DiagramError("missing 'genus' line")
    up, low = where[UPPER], where[LOWER]
    for p, (no, sgn) in sorted(up.items(), key=lambda kv: kv[1][0]):
        if p not in low:
            raise DiagramError(f"line {no}: point {p!r} has no lower occurrence")
        if low[p][1] != sgn:
            raise DiagramError(f"line {low[p][0]}: sign mismatch at point {p!r} "
                               f"(line {no} gives the opposite sign)")
    for p, (no, _) in low.items():
        if p not in up:
            raise DiagramError(f"line {no}: point {p!r} has no upper occurrence")
    for side in SIDES:
        if len(circles[side]) != genus:
            raise DiagramError(
                f"genus mismatch: genus {genus} but {len(circles[side])} {side} circles")
    return HeegaardDiagram(genus, tuple(circles[UPPER]), tuple(circles[LOWER]))


def _format_circle(side: str, c: Circle) -> str:
    toks = " ".join(f"{p}{'+' if s > 0 else '-'}" for p, s in c.points)
    return f"{side} {c.name}:" + (f" {toks}" if toks else "")


def serialize_diagram(D: HeegaardDiagram) -> str:
    lines = [f"genus {D.genus}"]
    lines += [_format_circle(UPPER, c) for c in D.upper]
    lines += [_format_circle(LOWER, c) for c in D.lower]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# orders and the permutation


@dataclass(frozen=True)
class DiagramPermutation:
    """``sigma[i]`` is the 0-based position in the upper order of the
    i-th point of the lower order."""

    sigma: Tuple[int, ...]
    upper_kappas: Tuple[int, ...]
    lower_kappas: Tuple[int, ...]
    upper_order: Tuple[str, ...]
    lower_order: Tuple[str, ...]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles in 1-based notation, each starting at its least element."""
        seen = set()
        out = []
        for i in range(len(self.sigma)):
            if i in seen or self.sigma[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.sigma[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.sigma[j]
            out.append(tuple(x + 1 for x in cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == s for i, s in enumerate(self.sigma))


def extract_permutation(D: HeegaardDiagram) -> DiagramPermutation:
    up = [p for c in D.upper for p, _ in c.points]
    low = [p for c in D.lower for p, _ in c.points]
    signs = D.signs()
    pos = {p: i for i, p in enumerate(up)}
    sigma = tuple(pos[p] for p in low)
    return DiagramPermutation(
        sigma,
        tuple(0 if signs[p] > 0 else 1 for p in up),
        tuple(0 if signs[p] > 0 else 1 for p in low),
        tuple(up),
        tuple(low),
    )


# ---------------------------------------------------------------------------
# built-in diagrams

POINCARE_TEXT = """\
genus 2
upper u1: 1+ 2+ 3+ 4+ a- 6- c-
upper u2: b- 7- d+ e+ 5-
lower l1: 1+ 2+ 3+ 4+ 5- 6- 7-
lower l2: a- b- c- d+ e+
"""


def lens_diagram(p: int) -> HeegaardDiagram:
    if p < 1:
        raise DiagramError("lens diagrams need p >= 1")
    pts = tuple((str(i), 1) for i in range(1, p + 1))
    return HeegaardDiagram(1, (Circle("u", pts),), (Circle("l", pts),))


def builtin_diagram(spec: str) -> HeegaardDiagram:
    """``lens:<p>``, ``s1xs2`` or ``poincare`` (a ``builtin:`` prefix is allowed)."""
    s = spec.strip()
    if s.startswith("builtin:"):
        s = s[len("builtin:"):]
    if s == "s1xs2":
        return HeegaardDiagram(1, (Circle("u"),), (Circle("l"),))
    if s == "poincare":
        return parse_diagram(POINCARE_TEXT)
    m = re.fullmatch(r"lens[:\s]?(\d+)", s)
    if m:
        return lens_diagram(int(m.group(1)))
    raise DiagramError(f"unknown built-in diagram {spec!r}")


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class Move:
    """A move and its arguments.

    kinds and args:
      flip_orientation (side, i); shift_basepoint (side, i, steps);
      swap_circles (side, i); stabilize (); handle_slide (side, i, j);
      two_point_insert (upper i, lower j, upper_pos, lower_pos);
      two_point_cancel (p, q).
    Circle indices are 0-based.
    """

    kind: str
    args: tuple = ()

    def __str__(self):
        return ":".join([self.kind] + [str(a) for a in self.args])


_MOVE_ARITY = {
    "flip_orientation": ("side", "int"),
    "shift_basepoint": ("side", "int", "int"),
    "swap_circles": ("side", "int"),
    "stabilize": (),
    "handle_slide": ("side", "int", "int"),
    "two_point_insert": ("int", "int", "int", "int"),
    "two_point_cancel": ("str", "str"),
}


def parse_move(text: str) -> Move:
    """``kind:arg:arg...``, e.g. ``handle_slide:upper:0:1``."""
    parts = text.strip().split(":")
    kind, raw = parts[0], parts[1:]
    if kind not in _MOVE_ARITY:
        raise DiagramError(f"unknown move {kind!r}")
    types = _MOVE_ARITY[kind]
    if len(raw) != len(types):
        raise DiagramError(f"move {kind} takes {len(types)} arguments")
    args = []
    for t, a in zip(types, raw):
        if t == "side":
            if a not in SIDES:
                raise DiagramError(f"bad side {a!r}")
            args.append(a)
        elif t == "int":
            try:
                args.append(int(a))
            except ValueError:
                raise DiagramError(f"bad integer {a!r} in move {text!r}") from None
        else:
            args.append(a)
    return Move(kind, tuple(args))


def _check_index(D, side, i):
    if not 0 <= i < D.genus:
        raise DiagramError(f"{side} circle index {i} out of range")


def _fresh_labels(D: HeegaardDiagram, k: int, stem: str = "x") -> List[str]:
    used = set(D.labels())
    out = []
    n = 1
    while len(out) < k:
        cand = f"{stem}{n}"
        if cand not in used:
            out.append(cand)
            used.add(cand)
        n += 1
    return out


def _fresh_name(circles, stem):
    used = {c.name for c in circles}
    n = len(circles) + 1
    while f"{stem}{n}" in used:
        n += 1
    return f"{stem}{n}"


def _flip(D, side, i):
    _check_index(D, side, i)
    target = D.side(side)[i]
    labels = set(target.labels)
    other = LOWER if side == UPPER else UPPER

    def neg(c):
        return Circle(c.name, tuple((p, -s if p in labels else s) for p, s in c.points))

    new_side = list(D.side(side))
    new_side[i] = Circle(target.name, tuple((p, -s) for p, s in reversed(target.points)))
    new_other = [neg(c) for c in D.side(other)]
    if side == UPPER:
        return HeegaardDiagram(D.genus, tuple(new_side), tuple(new_other))
    return HeegaardDiagram(D.genus, tuple(new_other), tuple(new_side))


def _shift(D, side, i, steps):
    _check_index(D, side, i)
    circles = list(D.side(side))
    c = circles[i]
    if c.points:
        k = steps % len(c.points)
        circles[i] = Circle(c.name, c.points[k:] + c.points[:k])
    return D._with(side, circles)


def _swap(D, side, i):
    if not 0 <= i < D.genus - 1:
        raise DiagramError(f"cannot swap {side} circles {i} and {i + 1}")
    circles = list(D.side(side))
    circles[i], circles[i + 1] = circles[i + 1], circles[i]
    return D._with(side, circles)


def _stabilize(D):
    (label,) = _fresh_labels(D, 1, "s")
    u = Circle(_fresh_name(D.upper, "u"), ((label, 1),))
    l = Circle(_fresh_name(D.lower, "l"), ((label, 1),))
    return HeegaardDiagram(D.genus + 1, D.upper + (u,), D.lower + (l,))


def _slide(D, side, i, j):
    _check_index(D, side, i)
    _check_index(D, side, j)
    if i == j:
        raise DiagramError("cannot slide a circle past itself")
    other = LOWER if side == UPPER else UPPER
    circles = list(D.side(side))
    src = circles[j]
    fresh = _fresh_labels(D, len(src), "h")
    copy_of = {p: (f, s) for (p, s), f in zip(src.points, fresh)}
    circles[i] = Circle(circles[i].name,
                        circles[i].points + tuple((f, s) for (p, s), f in zip(src.points, fresh)))
    new_other = []
    for c in D.side(other):
        pts = []
        for p, s in c.points:
            if p in copy_of:
                f, fs = copy_of[p]
                if s > 0:
                    pts += [(f, fs), (p, s)]
                else:
                    pts += [(p, s), (f, fs)]
            else:
                pts.append((p, s))
        new_other.append(Circle(c.name, tuple(pts)))
    if side == UPPER:
        return HeegaardDiagram(D.genus, tuple(circles), tuple(new_other))
    return HeegaardDiagram(D.genus, tuple(new_other), tuple(circles))


def _insert(D, i, j, upos, lpos):
    _check_index(D, UPPER, i)
    _check_index(D, LOWER, j)
    u, l = D.upper[i], D.lower[j]
    if not 0 <= upos <= len(u) or not 0 <= lpos <= len(l):
        raise DiagramError("insertion position out of range")
    p, q = _fresh_labels(D, 2, "y")
    pair = ((p, 1), (q, -1))
    ups = list(D.upper)
    lows = list(D.lower)
    ups[i] = Circle(u.name, u.points[:upos] + pair + u.points[upos:])
    lows[j] = Circle(l.name, l.points[:lpos] + pair + l.points[lpos:])
    return HeegaardDiagram(D.genus, tuple(ups), tuple(lows))


def _adjacent(circles, p, q):
    for k, c in enumerate(circles):
        labels = c.labels
        if p in labels:
            a = labels.index(p)
            return a + 1 < len(labels) and labels[a + 1] == q, k, a
    return False, None, None


def _cancel(D, p, q):
    signs = D.signs()
    if p not in signs or q not in signs:
        raise DiagramError("two-point cancel: unknown point")
    if signs[p] == signs[q]:
        raise DiagramError("two-point cancel needs points of opposite sign")
    ok_u, ku, au = _adjacent(D.upper, p, q)
    ok_l, kl, al = _adjacent(D.lower, p, q)
    if not (ok_u and ok_l):
        raise DiagramError("two-point cancel needs the points adjacent, in the same "
                           "order, on both circles")
    ups = list(D.upper)
    lows = list(D.lower)
    u, l = ups[ku], lows[kl]
    ups[ku] = Circle(u.name, u.points[:au] + u.points[au + 2:])
    lows[kl] = Circle(l.name, l.points[:al] + l.points[al + 2:])
    return HeegaardDiagram(D.genus, tuple(ups), tuple(lows))


def apply_move(D: HeegaardDiagram, move) -> HeegaardDiagram:
    if isinstance(move, str):
        move = parse_move(move)
    elif isinstance(move, tuple):
        move = Move(move[0], tuple(move[1:]))
    k, a = move.kind, move.args
    if k == "flip_orientation":
        return _flip(D, *a)
    if k == "shift_basepoint":
        return _shift(D, *a)
    if k == "swap_circles":
        return _swap(D, *a)
    if k == "stabilize":
        return _stabilize(D)
    if k == "handle_slide":
        return _slide(D, *a)
    if k == "two_point_insert":
        return _insert(D, *a)
    if k == "two_point_cancel":
        return _cancel(D, *a)
    raise DiagramError(f"unknown move {k!r}")


# ---------------------------------------------------------------------------
# random diagrams


def random_diagram(seed: int, genus: int, max_points: int) -> HeegaardDiagram:
    """A pseudorandom valid combinatorial diagram (not necessarily realizable)."""
    if genus < 1:
        raise DiagramError("genus must be at least 1")
    rng = random.Random(seed)
    n = rng.randint(0, max(0, max_points))
    labels = [str(k) for k in range(1, n + 1)]
    signs = {p: rng.choice((1, -1)) for p in labels}

    def distribute(stem):
        order = labels[:]
        rng.shuffle(order)
        buckets = [[] for _ in range(genus)]
        for p in order:
            buckets[rng.randrange(genus)].append((p, signs[p]))
        return tuple(Circle(f"{stem}{k + 1}", tuple(b)) for k, b in enumerate(buckets))

    return HeegaardDiagram(genus, distribute("u"), distribute("l"))
