"""Left/right Engel membership, Engel lengths, level sets and the rho-sets.

Every set here is closed under conjugation, so memberships are computed once
per conjugacy class and spread over the class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT_MAX_N, FULL_ENGEL_LIMIT
from .errors import CapacityError, InvariantViolation, UsageError
from .group import FiniteGroup, Subgroup, closure
from .structure import normal_closure, subnormal_defect

NOT_ENGEL = -1


def left_engel_status(G: FiniteGroup, a: int) -> tuple[bool, int | None]:
    """(is a left Engel, least n with [g, n a] = 1 for all g).

    Iterates the map g -> [g, a] on the image set f^n(G).  The image sets
    shrink until f permutes them; a is left Engel iff they shrink to {1}.
    """
    a = G.check_element(a)
    f = G.comm(np.arange(G.order), a)
    image = np.unique(f)
    n = 1
    while True:
        if image.size == 1 and image[0] == 0:
            return True, n
        nxt = np.unique(f[image])
        if nxt.size == image.size:
            return False, None
        image = nxt
        n += 1


def right_engel_status(G: FiniteGroup, a: int) -> tuple[bool, int | None]:
    """(is a right Engel, least n with [a, n g] = 1 for all g).

    For every g the sequence a, [a,g], [a,g,g], ... is followed step by step;
    a Floyd pointer running at double speed detects a cycle that avoids the
    identity, which proves a is not right Engel.
    """
    a = G.check_element(a)
    C = G.comm_table
    g = np.arange(G.order)
    slow = np.full(G.order, a, dtype=np.int64)
    fast = C[C[slow, g], g]
    slow = C[slow, g]
    n = 1
    while True:
        if np.all(slow == 0):
            return True, n
        stuck = (slow == fast) & (slow != 0)
        if np.any(stuck):
            return False, None
        slow = C[slow, g]
        fast = C[C[fast, g], g]
        n += 1


def engel_lengths(G: FiniteGroup, side: str) -> np.ndarray:
    """Per-element Engel length, NOT_ENGEL (-1) where the element is not Engel."""
    status = {"left": left_engel_status, "right": right_engel_status}[side]
    out = np.full(G.order, NOT_ENGEL, dtype=np.int64)
    cls = G.class_index
    for rep in G.class_reps:
        ok, n = status(G, int(rep))
        if ok:
            out[cls == cls[rep]] = n
    return out


def rho_sets(G: FiniteGroup) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Masks (rho, rho_bar) and the per-element uniform defect bound (-1 outside rho).

    a is in rho iff for every x, <x> is subnormal in <x><a>^G.  In a finite
    group a uniform bound always exists once rho holds, so rho_bar is rho
    plus the recorded bound; a missing bound would be an engine bug.
    """
    cls = G.class_index
    x_reps = _cyclic_class_reps(G)
    cyclic = {x: closure(G, [x]) for x in x_reps}
    cache: dict[bytes, int | None] = {}
    bound = np.full(G.order, NOT_ENGEL, dtype=np.int64)

    def max_defect(N: Subgroup) -> int | None:
        key = N.key
        if key in cache:
            return cache[key]
        worst = 0
        for x in x_reps:
            X = cyclic[x]
            J = closure(G, [x, *N.witness_generators])
            d = subnormal_defect(G, X, within=J)
            if d is None:
                worst = None
                break
            worst = max(worst, d)
        cache[key] = worst
        return worst

    for rep in G.class_reps:
        d = max_defect(normal_closure(G, [int(rep)]))
        if d is not None:
            bound[cls == cls[rep]] = d
    rho = bound >= 0
    rho_bar = rho.copy()
    if np.any(bound[rho] < 0):
        raise InvariantViolation("rho element without a uniform defect bound")
    return rho, rho_bar, bound


def _cyclic_class_reps(G: FiniteGroup) -> list[int]:
    """One generator per conjugacy class of cyclic subgroups.

    <y> is conjugate to <x> iff y is conjugate to a generator of <x>, so a
    class is skipped once it contains a generator of an already chosen <x>.
    """
    covered = np.zeros(int(G.class_index.max()) + 1, dtype=bool)
    reps = []
    for x in G.class_reps:
        x = int(x)
        if covered[G.class_index[x]]:
            continue
        reps.append(x)
        m = int(G.orders[x])
        for k in range(1, m + 1):
            if np.gcd(k, m) == 1:
                covered[G.class_index[G.power(x, k)]] = True
    return reps


@dataclass
class EngelReport:
    """Engel data for every element of an enumerable group.

    ``left_length[x]`` / ``right_length[x]`` are Engel lengths (-1: not Engel).
    Level sets are exposed as boolean masks through :meth:`L` and :meth:`R`.
    """

    group: FiniteGroup
    max_n: int
    left_length: np.ndarray
    right_length: np.ndarray
    rho: np.ndarray
    rho_bar: np.ndarray
    rho_bound: np.ndarray

    def L(self, n: int) -> np.ndarray:
        if n < 1:
            raise UsageError("level sets start at n = 1")
        return (self.left_length >= 0) & (self.left_length <= n)

    def R(self, n: int) -> np.ndarray:
        if n < 1:
            raise UsageError("level sets start at n = 1")
        return (self.right_length >= 0) & (self.right_length <= n)

    @cached_property
    def L_set(self) -> np.ndarray:
        return self.left_length >= 0

    @cached_property
    def R_set(self) -> np.ndarray:
        return self.right_length >= 0

    @cached_property
    def L_bar(self) -> np.ndarray:
        # union of the level sets over n <= |G|; equal to L_set in a finite group
        return self.L(max(self.group.order, 1))

    @cached_property
    def R_bar(self) -> np.ndarray:
        return self.R(max(self.group.order, 1))

    @property
    def level_sets(self) -> dict[str, list[np.ndarray]]:
        return {
            "L": [self.L(n) for n in range(1, self.max_n + 1)],
            "R": [self.R(n) for n in range(1, self.max_n + 1)],
        }

    def is_left_engel(self, x: int) -> bool:
        return bool(self.left_length[x] >= 0)

    def is_right_engel(self, x: int) -> bool:
        return bool(self.right_length[x] >= 0)


def engel_level_sets(G: FiniteGroup, max_n: int = DEFAULT_MAX_N, *,
                     full_limit: int = FULL_ENGEL_LIMIT) -> EngelReport:
    if max_n < 1:
        raise UsageError("max_n must be at least 1")
    if G.order > full_limit:
        raise CapacityError(
            f"full Engel report limited to order {full_limit}; {G.name} has order {G.order}"
        )
    left = engel_lengths(G, "left")
    right = engel_lengths(G, "right")
    rho, rho_bar, bound = rho_sets(G)
    report = EngelReport(G, max_n, left, right, rho, rho_bar, bound)
    _check_report(report)
    return report


def _check_report(rep: EngelReport) -> None:
    G = rep.group
    center = G.center_mask
    if not (np.array_equal(rep.L(1), center) and np.array_equal(rep.R(1), center)):
        raise InvariantViolation("L_1 or R_1 differs from the center")
    if not np.array_equal(rep.L_bar, rep.L_set) or not np.array_equal(rep.R_bar, rep.R_set):
        raise InvariantViolation("bounded and unbounded Engel sets differ in a finite group")
