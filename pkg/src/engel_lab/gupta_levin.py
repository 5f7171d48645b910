"""Black-box groups of lower-triangular 2x2 matrices ((g, 0), (r, 1)) over Z_p[G].

An element is stored as the pair (g, r).  The matrix product
((g,0),(r,1)) * ((h,0),(s,1)) = ((gh,0),(rh+s,1)) gives the pair law
(g, r)(h, s) = (gh, r*h + s).  The group is never enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, UsageError
from .group import FiniteGroup
from .grouprings import GroupRing, GroupRingElement


@dataclass(frozen=True, eq=False)
class GuptaLevinElement:
    group: GuptaLevinGroup
    g: int
    r: GroupRingElement

    def __eq__(self, other):
        if not isinstance(other, GuptaLevinElement):
            return NotImplemented
        return self.group is other.group and self.g == other.g and self.r == other.r

    def __hash__(self):
        return hash((self.g, self.r))

    def __mul__(self, other):
        return self.group.mul(self, other)

    def __invert__(self):
        return self.group.inv(self)

    def __pow__(self, m: int):
        return self.group.power(self, m)

    def __repr__(self):
        return f"({self.group.base.labels[self.g]}, {self.r!r})"

    @property
    def is_identity(self) -> bool:
        return self.g == 0 and self.r.is_zero

    @property
    def in_kernel(self) -> bool:
        """True for the unitriangular elements ((1,0),(r,1))."""
        return self.g == 0


class GuptaLevinGroup:
    """The matrix group over Z_p[base] for a free nilpotent class-2 base.

    ``p = 2`` uses the exponent-4 base ``fnil4(k)``; odd ``p`` uses ``fnil(p, k)``.
    """

    def __init__(self, p: int, base: FiniteGroup, name: str | None = None):
        self.p = p
        self.base = base
        self.ring = GroupRing(p, base)
        self.name = name or f"gl(p={p},k={len(base.generators)})"
        self.rank = len(base.generators)

    def __repr__(self):
        return f"GuptaLevinGroup({self.name})"

    # -- black-box protocol ----------------------------------------------

    def __len__(self):
        raise CapabilityError(f"{self.name} is black-box and cannot be enumerated")

    def __iter__(self):
        raise CapabilityError(f"{self.name} is black-box and cannot be enumerated")

    @property
    def order(self):
        raise CapabilityError(f"{self.name} is black-box; its order is not computed")

    def check_element(self, x) -> GuptaLevinElement:
        if not isinstance(x, GuptaLevinElement) or x.group is not self:
            raise UsageError(f"{x!r} is not an element of {self.name}")
        return x

    def make(self, g: int, r: GroupRingElement) -> GuptaLevinElement:
        if r.ring.base is not self.base or r.ring.p != self.p:
            raise UsageError("ring element over a different group ring")
        return GuptaLevinElement(self, self.base.check_element(g), r)

    @property
    def identity(self) -> GuptaLevinElement:
        return GuptaLevinElement(self, 0, self.ring.zero)

    def mul(self, a: GuptaLevinElement, b: GuptaLevinElement) -> GuptaLevinElement:
        self.check_element(a)
        self.check_element(b)
        return GuptaLevinElement(self, self.base.mul(a.g, b.g), a.r.right_translate(b.g) + b.r)

    def inv(self, a: GuptaLevinElement) -> GuptaLevinElement:
        self.check_element(a)
        g_inv = self.base.inv(a.g)
        return GuptaLevinElement(self, g_inv, -a.r.right_translate(g_inv))

    def comm(self, a: GuptaLevinElement, b: GuptaLevinElement) -> GuptaLevinElement:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def power(self, a: GuptaLevinElement, m: int) -> GuptaLevinElement:
        if m < 0:
            a, m = self.inv(a), -m
        result, base = self.identity, a
        while m:
            if m & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            m >>= 1
        return result

    def is_identity(self, a: GuptaLevinElement) -> bool:
        return self.check_element(a).is_identity

    # -- named elements --------------------------------------------------

    def X(self, i: int) -> GuptaLevinElement:
        """((x_i, 0), (1, 1)) for the i-th base generator."""
        if not 0 <= i < self.rank:
            raise UsageError(f"X_{i} needs rank > {i}")
        return GuptaLevinElement(self, self.base.generators[i], self.ring.one)

    @property
    def Y(self) -> GuptaLevinElement:
        return GuptaLevinElement(self, 0, self.ring.one)

    def kernel_element(self, s: GroupRingElement) -> GuptaLevinElement:
        """((1, 0), (s, 1))."""
        return self.make(0, s)

    def random_element(self, rng: np.random.Generator, terms: int = 4) -> GuptaLevinElement:
        return GuptaLevinElement(self, int(rng.integers(self.base.order)), self.ring.random(rng, terms))

    def random_kernel_element(self, rng: np.random.Generator, terms: int = 4) -> GuptaLevinElement:
        return GuptaLevinElement(self, 0, self.ring.random(rng, terms))

    def u(self, m: int) -> GroupRingElement:
        """([x0,x1] - 1)([x0,x2] - 1)...([x0,xm] - 1) in Z_p[base]."""
        if not 1 <= m < self.rank:
            raise UsageError(f"u_{m} needs 1 <= m < rank {self.rank}")
        x = self.base.generators
        out = self.ring.one
        for j in range(1, m + 1):
            out = out * self.ring.aug(int(self.base.comm(x[0], x[j])))
        return out

    def as_matrix(self, a: GuptaLevinElement):
        """The 2x2 matrix over the group ring, as nested tuples."""
        self.check_element(a)
        return ((self.ring.basis(a.g), self.ring.zero), (a.r, self.ring.one))


def matrix_mul(A, B):
    """Plain 2x2 matrix product over a (non-commutative) ring."""
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2)
    )


def gupta_levin_group(p: int, k: int, *, cap: int | None = None) -> GuptaLevinGroup:
    """Build the black-box group over fnil4(k) (p = 2) or fnil(p, k) (odd p)."""
    from .constructions import free_nil_c2
    from .config import DEFAULT_CAP

    base = free_nil_c2(p if p != 2 else 4, k, cap=cap or DEFAULT_CAP)
    return GuptaLevinGroup(p, base)
