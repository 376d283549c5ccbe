"""Move-invariance checks over a corpus of diagrams.

For each diagram every applicable move is applied and the invariant
recomputed.  The pre-exponent scalar Upsilon is also compared: it must
pick up exactly nu under an orientation flip, sigma_I under a swap of
neighbouring circles, and nothing under the other moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

from .engine import evaluate_invariant, upsilon
from .graded import sigma_of
from .heegaard import (
    LOWER,
    SIDES,
    UPPER,
    HeegaardDiagram,
    Move,
    apply_move,
    builtin_diagram,
    random_diagram,
)

__all__ = ["MoveCheck", "applicable_moves", "check_moves", "corpus"]

BUILTINS = ("s1xs2", "lens:1", "lens:2", "lens:3", "lens:4", "poincare")


def corpus(count: int = 200, seed: int = 0, max_genus: int = 2,
           max_points: int = 8) -> List[Tuple[str, HeegaardDiagram]]:
    """Built-in diagrams followed by `count` seeded random ones."""
    out = [(name, builtin_diagram(name)) for name in BUILTINS]
    for k in range(count):
        s = seed * 100003 + k
        genus = 1 + (s % max_genus)
        out.append((f"random:{s}", random_diagram(s, genus, max_points)))
    return out


def applicable_moves(D: HeegaardDiagram) -> List[Move]:
    moves = []
    for side in SIDES:
        for i, c in enumerate(D.side(side)):
            moves.append(Move("flip_orientation", (side, i)))
            if len(c) >= 2:
                moves.append(Move("shift_basepoint", (side, i, 1)))
        for i in range(D.genus - 1):
            moves.append(Move("swap_circles", (side, i)))
        for i in range(D.genus):
            for j in range(D.genus):
                if i != j:
                    moves.append(Move("handle_slide", (side, i, j)))
    moves.append(Move("stabilize"))
    for i, u in enumerate(D.upper):
        for j, l in enumerate(D.lower):
            moves.append(Move("two_point_insert", (i, j, 0, len(l))))
            if len(u) or len(l):
                moves.append(Move("two_point_insert", (i, j, len(u), 0)))
    # cancellation of an adjacent opposite pair, when one exists
    signs = D.signs()
    for u in D.upper:
        for (p, sp), (q, sq) in zip(u.points, u.points[1:]):
            if sp != sq:
                for l in D.lower:
                    labels = l.labels
                    if p in labels:
                        k = labels.index(p)
                        if k + 1 < len(labels) and labels[k + 1] == q:
                            moves.append(Move("two_point_cancel", (p, q)))
    return moves


def _factor(move: Move, nu, sigma_I):
    if move.kind == "flip_orientation":
        return nu
    if move.kind == "swap_circles":
        return sigma_I
    return 1


@dataclass
class MoveCheck:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_moves(H, pair, diagrams: Iterable[Tuple[str, HeegaardDiagram]],
                result: MoveCheck = None) -> MoveCheck:
    result = result or MoveCheck()
    sI = sigma_of(pair.I)
    for name, D in diagrams:
        base_u = upsilon(H, pair, D)
        base = evaluate_invariant(H, pair, D)
        for mv in applicable_moves(D):
            D2 = apply_move(D, mv)
            u2 = upsilon(H, pair, D2)
            v2 = evaluate_invariant(H, pair, D2)
            result.checked += 1
            if v2 != base:
                result.failures.append(f"{name} {mv}: invariant {base} -> {v2}")
            if u2 != _factor(mv, pair.nu, sI) * base_u:
                result.failures.append(f"{name} {mv}: Upsilon {base_u} -> {u2}")
    return result
