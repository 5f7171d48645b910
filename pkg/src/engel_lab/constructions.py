"""The example groups: cyclic, dihedral, symmetric, alternating, Q8, direct
products, regular wreath products and free nilpotent class-2 groups."""

from __future__ import annotations

import itertools

from .config import DEFAULT_CAP
from .errors import CapabilityError, CapacityError, UsageError
from .group import ConcreteRep, FiniteGroup, enumerate_concrete, load_cayley
from .specs import (
    Alternating,
    Cayley,
    Cyclic,
    Descriptor,
    Dihedral,
    FreeNil,
    FreeNil4,
    GuptaLevin,
    Product,
    Quaternion,
    Symmetric,
    Wreath,
    parse_group_spec,
)


def _check_cap(desc: Descriptor, cap: int) -> None:
    order = desc.order
    if order is not None and order > cap:
        raise CapacityError(f"{desc} has order {order}, above the cap {cap}")


def _build(rep: ConcreteRep, name: str, cap: int) -> FiniteGroup:
    # identity generators only add noise to labels
    keep = [i for i, g in enumerate(rep.generators) if g != rep.identity]
    seen = []
    for i in keep:
        if rep.generators[i] not in [rep.generators[j] for j in seen]:
            seen.append(i)
    names = rep.names
    rep = ConcreteRep(
        rep.identity,
        tuple(rep.generators[i] for i in seen),
        rep.mul,
        tuple(names[i] for i in seen) if names else None,
        rep.roles,
    )
    return enumerate_concrete(rep, cap=cap, name=name).group


def cyclic(n: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    return _build(ConcreteRep(0, (1 % n,), lambda a, b: (a + b) % n, ("a",)), f"C{n}", cap)


def dihedral(order: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    m = order // 2

    def mul(a, b):
        i, s = a
        j, t = b
        return ((i + (j if s == 0 else -j)) % m, s ^ t)

    return _build(ConcreteRep((0, 0), ((1 % m, 0), (0, 1)), mul, ("r", "s")), f"D{order}", cap)


def _perm_mul(p, q):
    return tuple(q[i] for i in p)


def symmetric(n: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    ident = tuple(range(n))
    if n < 2:
        return _build(ConcreteRep(ident, (), _perm_mul, ()), f"S{n}", cap)
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return _build(ConcreteRep(ident, (swap, cycle), _perm_mul, ("s", "c")), f"S{n}", cap)


def alternating(n: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    ident = tuple(range(n))
    gens = []
    for i in range(2, n):
        # 3-cycle 0 -> 1 -> i -> 0
        img = list(range(n))
        img[0], img[1], img[i] = 1, i, 0
        gens.append(tuple(img))
    names = tuple("abcdfghjkmnpq"[: len(gens)]) if len(gens) <= 13 else None
    return _build(ConcreteRep(ident, tuple(gens), _perm_mul, names), f"A{n}", cap)


# quaternion units 1, i, j, k as 0..3; _QT[a][b] = (sign, unit) of a*b
_QT = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
]


def quaternion(*, cap: int = DEFAULT_CAP) -> FiniteGroup:
    def mul(a, b):
        s, u = _QT[a[1]][b[1]]
        return (a[0] * b[0] * s, u)

    return _build(ConcreteRep((1, 0), ((1, 1), (1, 2)), mul, ("i", "j")), "Q8", cap)


def direct_product(factors: list[FiniteGroup], *, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    ident = tuple(0 for _ in factors)
    gens, names = [], []
    roles: dict[str, tuple] = {}
    for pos, F in enumerate(factors):
        embedded = []
        for g, nm in zip(F.generators, F.generator_names):
            e = list(ident)
            e[pos] = g
            gens.append(tuple(e))
            names.append(f"{nm}{pos + 1}")
            embedded.append(tuple(e))
        roles[f"factor{pos + 1}"] = tuple(embedded)
    tables = [F.mul_table for F in factors]

    def mul(a, b):
        return tuple(int(t[x, y]) for t, x, y in zip(tables, a, b))

    nm = name or "x".join(F.name for F in factors)
    return _build(ConcreteRep(ident, tuple(gens), mul, tuple(names), roles), nm, cap)


_TOP_NAMES = "xyzw"


def wreath_regular(A: FiniteGroup, B: FiniteGroup, *, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    """Standard wreath product A wr B with B acting on A^|B| by right regular shifts.

    Elements are pairs (f, b) with f a tuple of A-indices indexed by B's
    elements.  (f, b)(f', b') = (c -> f(c) f'(c b), b b').  Generators are
    A's generators placed in coordinate 0 followed by B's generators.

    Roles: ``base_generators``, ``top_generators``, ``base_copy`` (the copy
    of A in coordinate 0) and ``top`` (the complement B).
    """
    nb = B.order
    order = A.order ** nb * nb
    if order > cap:
        raise CapacityError(f"wreath product of order {order} exceeds cap {cap}")
    ta, tb = A.mul_table, B.mul_table
    ident = (tuple(0 for _ in range(nb)), 0)

    def mul(x, y):
        f, b = x
        g, c = y
        shifted = tb[:, b]
        return (tuple(int(ta[f[i], g[shifted[i]]]) for i in range(nb)), int(tb[b, c]))

    def base_elem(a):
        f = [0] * nb
        f[0] = a
        return (tuple(f), 0)

    base_gens = [base_elem(a) for a in A.generators]
    top_gens = [(ident[0], b) for b in B.generators]
    if len(B.generators) <= len(_TOP_NAMES):
        top_names = list(_TOP_NAMES[: len(B.generators)])
    else:
        top_names = [f"t{i + 1}" for i in range(len(B.generators))]
    base_names = [n if n not in top_names else f"{n}0" for n in A.generator_names]
    roles = {
        "base_generators": tuple(base_gens),
        "top_generators": tuple(top_gens),
        "base_copy": tuple(base_elem(a) for a in range(A.order)),
        "top": tuple((ident[0], b) for b in range(nb)),
    }
    rep = ConcreteRep(ident, tuple(base_gens + top_gens), mul, tuple(base_names + top_names), roles)
    return _build(rep, name or f"wreath({A.name},{B.name})", cap)


def free_nil_c2(variant: int, k: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Free nilpotent class-2 group of rank k: exponent p for odd prime ``variant``,
    exponent 4 when ``variant == 4``.

    Realised as pairs (v, w): v holds generator exponents (mod p, or mod 4),
    w commutator coordinates indexed by pairs i < j (mod p, or mod 2), with
    (v, w)(v', w') = (v + v', w + w' + beta(v, v')) and beta_ij = v_i * v'_j.
    With [a, b] = a^-1 b^-1 a b this makes [x_i, x_j] the (i, j) basis vector.
    """
    if k < 2:
        raise UsageError("rank must be at least 2")
    if variant == 4:
        vmod, wmod = 4, 2
    elif variant >= 3 and all(variant % d for d in range(2, int(variant ** 0.5) + 1)):
        vmod = wmod = variant
    else:
        raise UsageError("variant must be an odd prime or 4")
    pairs = list(itertools.combinations(range(k), 2))
    order = vmod ** k * wmod ** len(pairs)
    if order > cap:
        raise CapacityError(f"free nilpotent group of order {order} exceeds cap {cap}")

    def mul(a, b):
        v, w = a
        v2, w2 = b
        return (
            tuple((x + y) % vmod for x, y in zip(v, v2)),
            tuple((w[t] + w2[t] + v[i] * v2[j]) % wmod for t, (i, j) in enumerate(pairs)),
        )

    zero_w = tuple(0 for _ in pairs)
    gens = tuple((tuple(int(i == j) for j in range(k)), zero_w) for i in range(k))
    names = tuple(f"x{i}" for i in range(k))
    name = f"fnil4(k={k})" if variant == 4 else f"fnil(p={variant},k={k})"
    return _build(ConcreteRep((tuple(0 for _ in range(k)), zero_w), gens, mul, names), name, cap)


def make_group(spec: Descriptor | str, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Enumerable group for a descriptor (or spec string); element order is deterministic."""
    desc = parse_group_spec(spec) if isinstance(spec, str) else spec
    if isinstance(desc, GuptaLevin):
        raise CapabilityError(f"{desc} is black-box; use build_group or gupta_levin_group")
    _check_cap(desc, cap)
    G = _make(desc, cap)
    G.name = str(desc)
    return G


def _make(desc: Descriptor, cap: int) -> FiniteGroup:
    if isinstance(desc, Cyclic):
        return cyclic(desc.n, cap=cap)
    if isinstance(desc, Dihedral):
        return dihedral(desc.n, cap=cap)
    if isinstance(desc, Symmetric):
        return symmetric(desc.n, cap=cap)
    if isinstance(desc, Alternating):
        return alternating(desc.n, cap=cap)
    if isinstance(desc, Quaternion):
        return quaternion(cap=cap)
    if isinstance(desc, Product):
        return direct_product([_make(f, cap) for f in desc.factors], cap=cap, name=str(desc))
    if isinstance(desc, Wreath):
        return wreath_regular(_make(desc.base, cap), _make(desc.top, cap), cap=cap, name=str(desc))
    if isinstance(desc, FreeNil):
        return free_nil_c2(desc.p, desc.k, cap=cap)
    if isinstance(desc, FreeNil4):
        return free_nil_c2(4, desc.k, cap=cap)
    if isinstance(desc, Cayley):
        return load_cayley(desc.path, cap=cap)
    if isinstance(desc, GuptaLevin):
        raise CapabilityError(f"{desc} cannot be a factor of an enumerable group")
    raise UsageError(f"unsupported descriptor {desc!r}")


def build_group(spec: Descriptor | str, *, cap: int = DEFAULT_CAP):
    """FiniteGroup for enumerable specs, GuptaLevinGroup for ``gl(...)``."""
    desc = parse_group_spec(spec) if isinstance(spec, str) else spec
    if isinstance(desc, GuptaLevin):
        from .gupta_levin import GuptaLevinGroup

        base = make_group(desc.base, cap=cap)
        return GuptaLevinGroup(desc.p, base, name=str(desc))
    return make_group(desc, cap=cap)
