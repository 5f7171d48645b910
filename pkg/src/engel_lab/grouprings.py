"""Sparse group-ring arithmetic over Z_p[G] for an enumerable G."""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .errors import UsageError
from .group import FiniteGroup


class GroupRing:
    """Arithmetic context for Z_p[base]."""

    def __init__(self, p: int, base: FiniteGroup):
        if p < 2:
            raise UsageError("modulus must be a prime")
        self.p = p
        self.base = base

    def __repr__(self):
        return f"GroupRing(Z_{self.p}[{self.base.name}])"

    def element(self, coeffs: Mapping[int, int] | None = None) -> GroupRingElement:
        return GroupRingElement(self, coeffs or {})

    @property
    def zero(self) -> GroupRingElement:
        return GroupRingElement(self, {})

    @property
    def one(self) -> GroupRingElement:
        return GroupRingElement(self, {0: 1})

    def basis(self, g: int) -> GroupRingElement:
        return GroupRingElement(self, {self.base.check_element(g): 1})

    def aug(self, g: int) -> GroupRingElement:
        """g - 1."""
        return self.basis(g) - self.one

    def random(self, rng: np.random.Generator, terms: int = 4) -> GroupRingElement:
        support = rng.integers(0, self.base.order, size=terms)
        coeffs = rng.integers(1, self.p, size=terms)
        out: dict[int, int] = {}
        for g, c in zip(support, coeffs):
            out[int(g)] = out.get(int(g), 0) + int(c)
        return GroupRingElement(self, out)


class GroupRingElement:
    """Finite sum of base-group elements with coefficients in Z_p.

    Stored sparsely with no zero coefficients, so equality is dict equality.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GroupRing, coeffs: Mapping[int, int]):
        p = ring.p
        self.ring = ring
        self.coeffs = {int(g): int(c) % p for g, c in coeffs.items() if int(c) % p}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        labels = self.ring.base.labels
        terms = [f"{c}*[{labels[g]}]" if c != 1 else f"[{labels[g]}]" for g, c in sorted(self.coeffs.items())]
        return " + ".join(terms)

    def _same(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.ring, {0: other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.ring.p != self.ring.p or other.ring.base is not self.ring.base:
            raise UsageError("group-ring operands from different rings")
        return other

    def __eq__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.ring, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.ring, {g: c * other for g, c in self.coeffs.items()})
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        table = self.ring.base.mul_table
        out: dict[int, int] = {}
        for g, c in self.coeffs.items():
            row = table[g]
            for h, d in other.coeffs.items():
                k = int(row[h])
                out[k] = out.get(k, 0) + c * d
        return GroupRingElement(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, m: int):
        if m < 0:
            raise UsageError("negative powers are not defined in the group ring")
        result = self.ring.one
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def right_translate(self, h: int) -> GroupRingElement:
        """r*h for a base-group element h (a permutation of the support)."""
        row = self.ring.base.mul_table[:, h]
        return GroupRingElement(self.ring, {int(row[g]): c for g, c in self.coeffs.items()})

    def left_translate(self, h: int) -> GroupRingElement:
        row = self.ring.base.mul_table[h]
        return GroupRingElement(self.ring, {int(row[g]): c for g, c in self.coeffs.items()})

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.ring.base.order, dtype=np.int64)
        for g, c in self.coeffs.items():
            out[g] = c
        return out


def group_ring_ops(p: int, base: FiniteGroup) -> GroupRing:
    return GroupRing(p, base)
