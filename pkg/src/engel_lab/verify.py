"""Executable catalog of Engel-theoretic identities, inclusions and structure
theorems, plus a bounded counterexample search.

Each check runs over one group and returns a :class:`CheckResult`.  A failing
check carries a witness (element labels plus integer parameters) which
:func:`replay_witness` re-evaluates through the scalar public operations.
"""

from __future__ import annotations

import re
import zlib
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import Limits
from .constructions import build_group
from .engel import EngelReport, engel_level_sets, left_engel_status, rho_sets, right_engel_status
from .errors import CapacityError, UsageError
from .group import FiniteGroup, Subgroup, closure, engel_commutator
from .gupta_levin import GuptaLevinGroup
from .specs import parse_group_spec
from .structure import (
    StructureReport,
    is_nilpotent,
    nilpotency_class,
    normal_closure,
    normalizer,
    radical,
    structure_report,
    upper_central_series,
)

DEFAULT_ZOO = (
    "C2", "C6", "C2xC2", "D8", "D16", "Q8", "S3", "S4", "A4",
    "wreath(C2,C2)", "wreath(C2,C2xC2)", "wreath(C4,C2xC2)", "wreath(C3,C3)",
    "fnil(p=3,k=2)", "fnil(p=3,k=3)", "fnil4(k=2)", "fnil4(k=3)",
)

# Extra 2-groups for the bounded witness search.
SEARCH_ZOO_2GROUPS = (
    "C2", "C4", "C2xC2", "D8", "Q8", "C2xC4", "D16", "C2xD8", "C2xQ8", "C4xC4",
    "wreath(C2,C2)", "wreath(C4,C2)", "wreath(C2xC2,C2)", "wreath(D8,C2)", "wreath(Q8,C2)",
    "wreath(C2,C4)", "wreath(C2,C2xC2)", "wreath(C4,C4)", "wreath(C2xC4,C2)",
    "wreath(C4,C2xC2)", "fnil4(k=2)", "fnil4(k=3)", "wreath(wreath(C2,C2),C2)",
    "wreath(C2,D8)", "wreath(C2,Q8)",
)

MAX_WORD_N = 6  # identities are checked for 1 <= n <= 6
GL_PAIRS = 200
GL_RING_SAMPLES = 100


@dataclass
class CheckResult:
    check_id: str
    group: str
    outcome: str  # "pass" | "fail" | "skipped"
    witness: dict | None = None
    stats: dict = field(default_factory=dict)
    reason: str | None = None

    def to_dict(self) -> dict:
        d = {"id": self.check_id, "group": self.group, "outcome": self.outcome}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        d["stats"] = self.stats
        return d

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"


class CheckFailed(Exception):
    """Internal: raised inside a check to stop at the first violation."""

    def __init__(self, witness: dict, **stats):
        self.witness = witness
        self.stats = stats


class Skip(Exception):
    pass


def _stable_hash(text: str) -> int:
    return zlib.crc32(text.encode())


class GroupContext:
    """A group plus lazily computed analyses, shared across checks."""

    def __init__(self, spec: str, limits: Limits = Limits(), group=None):
        self.spec = spec
        self.limits = limits
        self.group = group if group is not None else build_group(spec, cap=limits.cap)

    @property
    def black_box(self) -> bool:
        return isinstance(self.group, GuptaLevinGroup)

    @property
    def G(self) -> FiniteGroup:
        if self.black_box:
            raise Skip("black-box group: check needs enumeration")
        return self.group

    @cached_property
    def engel(self) -> EngelReport:
        G = self.G
        if G.order > self.limits.full_engel_limit:
            raise Skip(f"order {G.order} above the full Engel limit {self.limits.full_engel_limit}")
        return engel_level_sets(G, self.limits.max_n, full_limit=self.limits.full_engel_limit)

    @cached_property
    def structure(self) -> StructureReport:
        return structure_report(self.G)

    @cached_property
    def upper(self) -> list[Subgroup]:
        return upper_central_series(self.G)

    def zeta(self, i: int) -> Subgroup:
        terms = self.upper
        return terms[min(i, len(terms) - 1)]

    @property
    def exhaustive(self) -> bool:
        return self.G.order <= self.limits.exhaustive_limit

    def rng(self, check_id: str) -> np.random.Generator:
        return np.random.default_rng([self.limits.seed, _stable_hash(check_id), _stable_hash(self.spec)])

    def label(self, x) -> str:
        if self.black_box:
            return repr(x)
        return self.G.labels[int(x)]

    def pairs(self, check_id: str, xs: np.ndarray | None = None, ys: np.ndarray | None = None):
        """All pairs from xs * ys when the group is small, seeded samples otherwise."""
        n = self.G.order
        xs = np.arange(n) if xs is None else np.asarray(xs)
        ys = np.arange(n) if ys is None else np.asarray(ys)
        if self.exhaustive:
            a, b = np.meshgrid(xs, ys, indexing="ij")
            return a.ravel(), b.ravel(), {"mode": "exhaustive", "examined": int(a.size)}
        rng = self.rng(check_id)
        k = self.limits.samples
        a = xs[rng.integers(0, xs.size, size=k)] if xs.size else xs
        b = ys[rng.integers(0, ys.size, size=k)] if ys.size else ys
        return a, b, {"mode": "sampled", "examined": int(min(a.size, b.size)), "seed": self.limits.seed}


# -- helpers ----------------------------------------------------------------------------


def _iter_comm(G: FiniteGroup, x, y, n: int):
    for _ in range(n):
        x = G.comm(x, y)
    return x


def _elements(mask: np.ndarray) -> np.ndarray:
    return np.flatnonzero(mask)


def _first(bad: np.ndarray) -> int:
    return int(np.flatnonzero(bad)[0])


def _set_equal(ctx: GroupContext, a: np.ndarray, b: np.ndarray, a_name: str, b_name: str) -> None:
    diff = a != b
    if np.any(diff):
        x = _first(diff)
        raise CheckFailed({"x": ctx.label(x), "claim": f"{a_name} == {b_name}",
                           f"in_{a_name}": bool(a[x]), f"in_{b_name}": bool(b[x])})


def _subset(ctx: GroupContext, a: np.ndarray, b: np.ndarray, a_name: str, b_name: str) -> None:
    bad = a & ~b
    if np.any(bad):
        raise CheckFailed({"x": ctx.label(_first(bad)), "claim": f"{a_name} <= {b_name}"})


# -- the catalog ----------------------------------------------------------------------------


def check_heineken_identity(ctx: GroupContext) -> dict:
    """[x, n+1 g] == [g^-x, n g]^g for 1 <= n <= 6."""
    G = ctx.G
    x, g, stats = ctx.pairs("heineken_identity")
    g_inv_x = G.conj(G.inv_table[g], x)
    for n in range(1, MAX_WORD_N + 1):
        lhs = _iter_comm(G, x, g, n + 1)
        rhs = G.conj(_iter_comm(G, g_inv_x, g, n), g)
        bad = lhs != rhs
        if np.any(bad):
            i = _first(bad)
            raise CheckFailed({"x": ctx.label(x[i]), "g": ctx.label(g[i]), "n": n}, **stats)
    return stats


def check_heineken_inclusions(ctx: GroupContext) -> dict:
    """R^-1 <= L, R_n^-1 <= L_(n+1) (n <= 6) and Rbar^-1 <= Lbar."""
    E = ctx.engel
    inv = ctx.G.inv_table
    for n in range(1, MAX_WORD_N + 1):
        bad = E.R(n) & ~E.L(n + 1)[inv]
        if np.any(bad):
            raise CheckFailed({"a": ctx.label(_first(bad)), "n": n, "claim": "R_n^-1 <= L_(n+1)"})
    _subset(ctx, E.R_set, E.L_set[inv], "R", "L^-1")
    _subset(ctx, E.R_bar, E.L_bar[inv], "Rbar", "Lbar^-1")
    return {"R": int(E.R_set.sum()), "L": int(E.L_set.sum())}


def check_baer_plotkin_L(ctx: GroupContext) -> dict:
    E = ctx.engel
    HP = ctx.structure.radicals.hirsch_plotkin
    _set_equal(ctx, E.L_set, E.L_bar, "L", "Lbar")
    _set_equal(ctx, E.L_set, HP.mask, "L", "HP")
    if not is_nilpotent(ctx.G, HP):
        raise CheckFailed({"claim": "HP(G) nilpotent"})
    return {"L": int(E.L_set.sum()), "HP": HP.order}


def check_held_Lbar(ctx: GroupContext) -> dict:
    E = ctx.engel
    F = ctx.structure.radicals.fitting
    _set_equal(ctx, E.L_bar, F.mask, "Lbar", "Fitt")
    return {"Lbar": int(E.L_bar.sum()), "Fitt": F.order}


def check_peng_R(ctx: GroupContext) -> dict:
    E = ctx.engel
    Z = ctx.structure.hypercenter
    _set_equal(ctx, E.R_set, E.R_bar, "R", "Rbar")
    _set_equal(ctx, E.R_set, Z.mask, "R", "hypercenter")
    return {"R": int(E.R_set.sum()), "hypercenter": Z.order}


def _wreath_data(G: FiniteGroup):
    """(base exponent k, x, y, base copy) for A wr (C2 x C2) with exp(A) = 2^k, else None."""
    top_gens = G.roles.get("top_generators")
    base_copy = G.roles.get("base_copy")
    top = G.roles.get("top")
    if not top_gens or base_copy is None or top is None:
        return None
    if len(top) != 4 or len(top_gens) != 2 or any(G.orders[t] > 2 for t in top):
        return None
    exp_a = int(np.lcm.reduce(G.orders[list(base_copy)]))
    if exp_a < 2 or exp_a & (exp_a - 1):
        return None
    return exp_a.bit_length() - 1, top_gens[0], top_gens[1], base_copy


def check_l2_characterization(ctx: GroupContext) -> dict:
    """L_2 = {x : <x>^G abelian} and L_2 <= Fitt; on C2 wr (C2 x C2) also <L_2> = G != L_2."""
    G = ctx.G
    E = ctx.engel
    abelian_nc = np.zeros(G.order, dtype=bool)
    for rep in G.class_reps:
        if normal_closure(G, [int(rep)]).is_abelian():
            abelian_nc[G.class_index == G.class_index[rep]] = True
    _set_equal(ctx, E.L(2), abelian_nc, "L_2", "abelian_normal_closure")
    _subset(ctx, E.L(2), ctx.structure.radicals.fitting.mask, "L_2", "Fitt")
    stats = {"L_2": int(E.L(2).sum())}
    wd = _wreath_data(G)
    if wd is not None and wd[0] == 1:
        gen = closure(G, _elements(E.L(2)))
        if not gen.is_whole or E.L(2).all():
            raise CheckFailed({"claim": "<L_2(K)> = K and L_2(K) != K"})
        stats["generated_by_L_2"] = True
    return stats


def _class_at_most(G: FiniteGroup, H: Subgroup, c: int) -> bool:
    cl = nilpotency_class(G, H)
    return cl is not None and cl <= c


def check_l3_characterization(ctx: GroupContext) -> dict:
    """L_3 = {x : <x, x^y> nilpotent of class <= 2 for all y}; L_3 closed under powers."""
    G = ctx.G
    E = ctx.engel
    good = np.zeros(G.order, dtype=bool)
    cache: dict[bytes, bool] = {}
    examined = 0
    for rep in G.class_reps:
        x = int(rep)
        ok = True
        for y in G.conjugates(x):
            H = closure(G, [x, int(y)])
            if H.key not in cache:
                cache[H.key] = _class_at_most(G, H, 2)
                examined += 1
            if not cache[H.key]:
                ok = False
                break
        if ok:
            good[G.class_index == G.class_index[x]] = True
    _set_equal(ctx, E.L(3), good, "L_3", "class2_pairs")
    L3 = _elements(E.L(3))
    for k in range(2, int(G.exponent) + 1):
        powers = G.power_array(L3, k)
        bad = ~E.L(3)[powers]
        if np.any(bad):
            i = _first(bad)
            raise CheckFailed({"x": ctx.label(L3[i]), "k": k, "claim": "x in L_3 => x^k in L_3"})
    return {"L_3": int(L3.size), "subgroups_examined": examined}


def check_involution_formula(ctx: GroupContext) -> dict:
    """[g, n x] == [g, x]^((-2)^(n-1)) for involutions x."""
    G = ctx.G
    invols = np.flatnonzero(G.orders == 2)
    if invols.size == 0:
        return {"involutions": 0}
    g, x, stats = ctx.pairs("involution_formula", None, invols)
    base = G.comm(g, x)
    for n in range(1, MAX_WORD_N + 1):
        lhs = _iter_comm(G, g, x, n)
        rhs = G.power_array(base, (-2) ** (n - 1))
        bad = lhs != rhs
        if np.any(bad):
            i = _first(bad)
            raise CheckFailed({"g": ctx.label(g[i]), "x": ctx.label(x[i]), "n": n}, **stats)
    stats["involutions"] = int(invols.size)
    return stats


def check_kappe_r2_subgroup(ctx: GroupContext) -> dict:
    """R_2 is a subgroup, closed under conjugation."""
    G = ctx.G
    R2 = ctx.engel.R(2)
    a, b = np.meshgrid(_elements(R2), _elements(R2), indexing="ij")
    prod = G.mul_table[a.ravel(), G.inv_table[b.ravel()]]
    bad = ~R2[prod]
    if np.any(bad):
        i = _first(bad)
        raise CheckFailed({"a": ctx.label(a.ravel()[i]), "b": ctx.label(b.ravel()[i]),
                           "claim": "a b^-1 in R_2"})
    conj = G.conj(_elements(R2)[:, None], np.asarray(G.generators)[None, :]) if G.generators else None
    if conj is not None and not np.all(R2[conj]):
        raise CheckFailed({"claim": "R_2 normal"})
    return {"R_2": int(R2.sum()), "pairs": int(a.size)}


def check_levi_kappe_identities(ctx: GroupContext) -> dict:
    """For a in R_2: [a,x,y] = [a,y,x]^-1, [a,[x,y]] = [a,x,y]^2, [a^2,x,y,z] = [a,x,y,z]^2 = 1,
    a^2 in zeta_3, [a,[x,y],z] = 1; also R_2 <= L_2 and <a>^G <= R_2."""
    G = ctx.G
    E = ctx.engel
    R2 = _elements(E.R(2))
    n = G.order
    inv, C = G.inv_table, G.comm
    _subset(ctx, E.R(2), E.L(2), "R_2", "L_2")
    for a in G.class_reps:
        if E.R(2)[a]:
            nc = normal_closure(G, [int(a)])
            if not np.all(E.R(2)[nc.elements]):
                raise CheckFailed({"a": ctx.label(a), "claim": "<a>^G <= R_2"})
    z3 = ctx.zeta(3).mask
    sq = G.mul_table[R2, R2]
    bad = ~z3[sq]
    if np.any(bad):
        raise CheckFailed({"a": ctx.label(R2[_first(bad)]), "claim": "a^2 in zeta_3"})
    if ctx.exhaustive:
        mode = {"mode": "exhaustive"}
        xs, ys = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        xs, ys = xs.ravel(), ys.ravel()
        a_list = R2
    else:
        rng = ctx.rng("levi_kappe_identities")
        k = ctx.limits.samples
        mode = {"mode": "sampled", "seed": ctx.limits.seed}
        a_list = R2[rng.integers(0, R2.size, size=k)] if R2.size else R2
        xs = rng.integers(0, n, size=k)
        ys = rng.integers(0, n, size=k)
    examined = 0
    xy = C(xs, ys)
    for idx, a in enumerate(a_list):
        if ctx.exhaustive:
            x, y, cxy = xs, ys, xy
        else:
            x, y, cxy = xs[idx:idx + 1], ys[idx:idx + 1], xy[idx:idx + 1]
        axy = C(C(a, x), y)
        ayx = C(C(a, y), x)
        checks = (
            ("[a,x,y] = [a,y,x]^-1", axy != inv[ayx]),
            ("[a,[x,y]] = [a,x,y]^2", C(a, cxy) != G.mul_table[axy, axy]),
        )
        for claim, bad in checks:
            if np.any(bad):
                i = _first(bad)
                raise CheckFailed({"a": ctx.label(a), "x": ctx.label(x[i]), "y": ctx.label(y[i]),
                                   "claim": claim}, **mode)
        # quadruple identities through the distinct intermediate values
        a2 = G.mul_table[a, a]
        zs = np.arange(n) if ctx.exhaustive else ctx.rng(f"lk-z-{idx}").integers(0, n, size=8)
        for claim, inner in (
            ("[a,x,y,z]^2 = 1", np.unique(axy)),
            ("[a^2,x,y,z] = 1", np.unique(C(C(a2, x), y))),
            ("[a,[x,y],z] = 1", np.unique(C(a, np.unique(cxy)))),
        ):
            w = C(inner[:, None], zs[None, :])
            if claim.startswith("[a,x,y,z]"):
                w = G.mul_table[w, w]
            if np.any(w != 0):
                i, j = np.argwhere(w != 0)[0]
                raise CheckFailed({"a": ctx.label(a), "inner": ctx.label(inner[i]),
                                   "z": ctx.label(zs[j]), "claim": claim}, **mode)
        examined += x.size
    return {**mode, "R_2": int(R2.size), "examined": int(examined)}


def check_newell_r3(ctx: GroupContext) -> dict:
    """x in R_3 => <x>^G nilpotent of class <= 3."""
    G = ctx.G
    E = ctx.engel
    worst = 0
    for rep in G.class_reps:
        if not E.R(3)[rep]:
            continue
        cl = nilpotency_class(G, normal_closure(G, [int(rep)]))
        if cl is None or cl > 3:
            raise CheckFailed({"x": ctx.label(rep), "class": cl, "claim": "cl(<x>^G) <= 3"})
        worst = max(worst, cl)
    return {"R_3": int(E.R(3).sum()), "max_class": worst}


def check_abdollahi_l3_pair(ctx: GroupContext) -> dict:
    """a, b in L_3 => <a, b> nilpotent of class <= 4."""
    G = ctx.G
    L3 = ctx.engel.L(3)
    reps = np.asarray([r for r in G.class_reps if L3[r]], dtype=np.int64)
    if ctx.exhaustive:
        a, b = np.meshgrid(reps, _elements(L3), indexing="ij")
        a, b = a.ravel(), b.ravel()
        stats = {"mode": "exhaustive", "note": "a up to conjugacy"}
    else:
        a, b, stats = ctx.pairs("abdollahi_l3_pair", _elements(L3), _elements(L3))
    cache: dict[bytes, int | None] = {}
    worst = 0
    for x, y in zip(a.tolist(), b.tolist()):
        H = closure(G, [x, y])
        if H.key not in cache:
            cache[H.key] = nilpotency_class(G, H)
        cl = cache[H.key]
        if cl is None or cl > 4:
            raise CheckFailed({"a": ctx.label(x), "b": ctx.label(y), "class": cl}, **stats)
        worst = max(worst, cl)
    stats.update({"pairs": int(a.size), "subgroups": len(cache), "max_class": worst})
    return stats


def check_product_l2_ln(ctx: GroupContext) -> dict:
    """a in L_2, b in L_n => ab, ba in L_2n."""
    G = ctx.G
    E = ctx.engel
    A = _elements(E.L(2))
    for n in range(1, E.max_n // 2 + 1):
        B = _elements(E.L(n))
        a, b = np.meshgrid(A, B, indexing="ij")
        a, b = a.ravel(), b.ravel()
        target = E.L(2 * n)
        for order, prod in (("ab", G.mul_table[a, b]), ("ba", G.mul_table[b, a])):
            bad = ~target[prod]
            if np.any(bad):
                i = _first(bad)
                raise CheckFailed({"a": ctx.label(a[i]), "b": ctx.label(b[i]), "n": n,
                                   "claim": f"{order} in L_2n"})
    return {"mode": "exhaustive", "L_2": int(A.size), "max_n": E.max_n // 2}


def check_product_r2_r3(ctx: GroupContext) -> dict:
    """a in R_2, b, c in R_3 => ab in R_3 and bc in R_4."""
    G = ctx.G
    E = ctx.engel
    R2, R3 = _elements(E.R(2)), _elements(E.R(3))
    for left, right, target, claim in ((R2, R3, E.R(3), "ab in R_3"), (R3, R3, E.R(4), "bc in R_4")):
        a, b = np.meshgrid(left, right, indexing="ij")
        a, b = a.ravel(), b.ravel()
        bad = ~target[G.mul_table[a, b]]
        if np.any(bad):
            i = _first(bad)
            raise CheckFailed({"a": ctx.label(a[i]), "b": ctx.label(b[i]), "claim": claim})
    return {"mode": "exhaustive", "R_2": int(R2.size), "R_3": int(R3.size)}


def check_wreath_separation(ctx: GroupContext) -> dict:
    """In A wr (C2 x C2) with exp(A) = 2^k: x, y, xy in L_(k+1) minus L_k; ax not in L_(k+1) for 1 != a in A."""
    G = ctx.G
    wd = _wreath_data(G)
    if wd is None:
        raise Skip("not a wreath product A wr (C2 x C2) with A of 2-power exponent")
    k, x, y, base_copy = wd
    E = ctx.engel
    xy = G.mul(x, y)
    for name, t in (("x", x), ("y", y), ("xy", xy)):
        if not (E.L(k + 1)[t] and not (k >= 1 and E.L(k)[t])):
            raise CheckFailed({"element": name, "x": ctx.label(t), "k": k,
                               "left_length": int(E.left_length[t]),
                               "claim": "in L_(k+1) minus L_k"})
    offenders = [a for a in base_copy if a != 0 and E.L(k + 1)[G.mul(a, x)]]
    # the claim restricted to a of maximal order 2^k, reported either way
    full_order = [a for a in base_copy if G.orders[a] == 2 ** k]
    restricted = not any(a in offenders for a in full_order)
    stats = {"k": k, "base_copy": len(base_copy) - 1, "holds_for_order_2^k": restricted}
    if offenders:
        a = offenders[0]
        stats["offenders"] = [{"a": ctx.label(b), "order": int(G.orders[b])} for b in offenders]
        raise CheckFailed({"a": ctx.label(a), "ax": ctx.label(G.mul(a, x)), "k": k,
                           "claim": "ax not in L_(k+1)"}, **stats)
    return stats


def _lemma_sets(G: FiniteGroup, x: int, y: int, max_n: int):
    """Yield (n, H, K, N) for every n <= max_n with [x, n y] = 1."""
    N = closure(G, [int(G.conj(x, G.power(y, i))) for i in range(int(G.orders[y]))])
    comms = [x]
    conjs = [x]
    for _ in range(max_n):
        comms.append(int(G.comm(comms[-1], y)))
        conjs.append(int(G.conj(conjs[-1], y)))
    for n in range(1, max_n + 1):
        if comms[n] != 0:
            continue
        H = closure(G, comms[:n])
        K = closure(G, conjs[:n])
        yield n, H, K, N


def check_lemma_xy(ctx: GroupContext) -> dict:
    """[x, n y] = 1 => <x>^<y> = <x, [x,y], ..., [x,n-1 y]> = <x, x^y, ..., x^(y^(n-1))>."""
    G = ctx.G
    if ctx.exhaustive:
        a, b = np.meshgrid(G.class_reps, np.arange(G.order), indexing="ij")
        a, b = a.ravel(), b.ravel()
        stats = {"mode": "exhaustive", "note": "x up to conjugacy"}
    else:
        a, b, stats = ctx.pairs("lemma_xy")
    hits = 0
    for x, y in zip(a.tolist(), b.tolist()):
        for n, H, K, N in _lemma_sets(G, x, y, MAX_WORD_N):
            hits += 1
            if not (H == K == N):
                raise CheckFailed({"x": ctx.label(x), "y": ctx.label(y), "n": n,
                                   "orders": [H.order, K.order, N.order]}, **stats)
    stats.update({"pairs": int(a.size), "instances": hits})
    return stats


def check_plotkin_normalizer(ctx: GroupContext) -> dict:
    """H = <a, b> with a, b in L(G): if H is not normal, some x in N_G(H) minus H is
    conjugate to an element of H meet L(G)."""
    G = ctx.G
    L = ctx.engel.L_set
    reps = np.asarray([r for r in G.class_reps if L[r]], dtype=np.int64)
    if ctx.exhaustive:
        a, b = np.meshgrid(reps, _elements(L), indexing="ij")
        a, b = a.ravel(), b.ravel()
        stats = {"mode": "exhaustive", "note": "H = <a, b>, a up to conjugacy"}
    else:
        a, b, stats = ctx.pairs("plotkin_normalizer", _elements(L), _elements(L))
        stats["note"] = "H = <a, b>"
    seen: set[bytes] = set()
    non_normal = 0
    for x, y in zip(a.tolist(), b.tolist()):
        H = closure(G, [x, y])
        if H.key in seen:
            continue
        seen.add(H.key)
        if not is_nilpotent(G, H):
            raise CheckFailed({"a": ctx.label(x), "b": ctx.label(y), "claim": "<a, b> nilpotent"}, **stats)
        if H.is_normal():
            continue
        non_normal += 1
        N = normalizer(G, H)
        classes = np.unique(G.class_index[H.elements[L[H.elements]]])
        outside = N.elements[~H.mask[N.elements]]
        if not np.any(np.isin(G.class_index[outside], classes)):
            raise CheckFailed({"a": ctx.label(x), "b": ctx.label(y),
                               "claim": "N_G(H) minus H meets a conjugate of H meet L"}, **stats)
    stats.update({"subgroups": len(seen), "non_normal": non_normal})
    return stats


def check_gruenberg_rho_chain(ctx: GroupContext) -> dict:
    """zeta_omega <= rho_bar <= B, hypercenter <= rho <= Gr, rho <= R, rho_bar <= Rbar."""
    E = ctx.engel
    S = ctx.structure
    zeta = S.hypercenter.mask  # zeta_omega = hypercenter for finite groups
    rad = S.radicals
    _subset(ctx, zeta, E.rho_bar, "zeta_omega", "rho_bar")
    _subset(ctx, E.rho_bar, rad.baer.mask, "rho_bar", "B")
    _subset(ctx, zeta, E.rho, "hypercenter", "rho")
    _subset(ctx, E.rho, rad.gruenberg.mask, "rho", "Gr")
    _subset(ctx, E.rho, E.R_set, "rho", "R")
    _subset(ctx, E.rho_bar, E.R_bar, "rho_bar", "Rbar")
    return {"rho": int(E.rho.sum()), "rho_bar": int(E.rho_bar.sum()),
            "max_defect_bound": int(E.rho_bound.max())}


def check_hp_in_L(ctx: GroupContext) -> dict:
    _subset(ctx, ctx.structure.radicals.hirsch_plotkin.mask, ctx.engel.L_set, "HP", "L")
    return {"HP": ctx.structure.radicals.hirsch_plotkin.order}


def check_baer_in_Lbar(ctx: GroupContext) -> dict:
    _subset(ctx, ctx.structure.radicals.baer.mask, ctx.engel.L_bar, "B", "Lbar")
    return {"B": ctx.structure.radicals.baer.order}


def check_zomega_in_Rbar(ctx: GroupContext) -> dict:
    _subset(ctx, ctx.structure.hypercenter.mask, ctx.engel.R_bar, "zeta_omega", "Rbar")
    return {"zeta_omega": ctx.structure.hypercenter.order}


def check_gupta_levin_6engel(ctx: GroupContext) -> dict:
    """Black-box checks on the matrix group M over Z_p[base] at finite rank."""
    if not ctx.black_box:
        raise Skip("needs a gl(p=..,k=..) group")
    M: GuptaLevinGroup = ctx.group
    p = M.p
    base = M.base
    ring = M.ring
    rng = ctx.rng("gupta_levin_6engel")
    e = 4 if p == 2 else p  # (g - 1)^e = g^e - 1 = 0 in Z_p[base]
    engel_n = e + 2
    exp_M = 8 if p == 2 else p * p

    def fail(claim, **elems):
        raise CheckFailed({"claim": claim, **{k: repr(v) for k, v in elems.items()}})

    for _ in range(GL_RING_SAMPLES):
        g = int(rng.integers(base.order))
        if not (ring.aug(g) ** e).is_zero:
            fail(f"(g-1)^{e} = 0", g=base.labels[g])
    for _ in range(GL_PAIRS):
        A = M.random_kernel_element(rng)
        B = M.random_element(rng)
        c = M.comm(A, B)
        if c != M.kernel_element(A.r * ring.aug(B.g)):
            fail("[A,B] = (1, s(g-1))", A=A, B=B)
        if not engel_commutator(M, A, B, e).is_identity:
            fail(f"[A,{e} B] = 1", A=A, B=B)
    for _ in range(GL_PAIRS):
        X = M.random_element(rng)
        Z = M.random_element(rng)
        if not engel_commutator(M, X, Z, engel_n).is_identity:
            fail(f"[X,{engel_n} Z] = 1", X=X, Z=Z)
    for _ in range(GL_PAIRS):
        A, B, C = (M.random_element(rng) for _ in range(3))
        w = M.comm(M.comm(A, B), C)
        w2 = M.mul(w, M.comm(M.comm(C, A), B))
        for v in (w, w2):
            if not v.in_kernel or not M.power(v, p).is_identity:
                fail(f"gamma_3 element of exponent {p}", A=A, B=B, C=C)
        K1, K2 = M.random_kernel_element(rng), M.random_kernel_element(rng)
        if M.mul(K1, K2) != M.mul(K2, K1):
            fail("kernel abelian", K1=K1, K2=K2)
        X = M.random_element(rng)
        if not M.power(X, exp_M).is_identity:
            fail(f"X^{exp_M} = 1", X=X)
    if M.power(M.X(0), exp_M // p).is_identity:
        fail(f"X_0 has order {exp_M}")
    base_class = nilpotency_class(base)
    if base_class != 2:
        fail("base group nilpotent of class 2")
    witnesses = []
    for m in range(1, M.rank):
        C_list = [M.comm(M.X(0), M.X(j)) for j in range(1, m + 1)]
        w = M.Y
        for c in C_list:
            w = M.comm(w, c)
        u = M.u(m)
        if w != M.kernel_element(u) or u.is_zero:
            fail(f"[Y,[X0,X1],...,[X0,X{m}]] = (1, u_{m}) with u_{m} != 0")
        witnesses.append(len(u))
    return {"mode": "sampled", "seed": ctx.limits.seed, "pairs": GL_PAIRS,
            "ring_samples": GL_RING_SAMPLES, "engel_n": engel_n, "exponent": exp_M,
            "u_support_sizes": witnesses}


CATALOG: dict[str, Callable[[GroupContext], dict]] = {
    "heineken_identity": check_heineken_identity,
    "heineken_inclusions": check_heineken_inclusions,
    "baer_plotkin_L": check_baer_plotkin_L,
    "held_Lbar": check_held_Lbar,
    "peng_R": check_peng_R,
    "l2_characterization": check_l2_characterization,
    "l3_characterization": check_l3_characterization,
    "involution_formula": check_involution_formula,
    "kappe_r2_subgroup": check_kappe_r2_subgroup,
    "levi_kappe_identities": check_levi_kappe_identities,
    "newell_r3": check_newell_r3,
    "abdollahi_l3_pair": check_abdollahi_l3_pair,
    "product_l2_ln": check_product_l2_ln,
    "product_r2_r3": check_product_r2_r3,
    "wreath_separation": check_wreath_separation,
    "lemma_xy": check_lemma_xy,
    "plotkin_normalizer": check_plotkin_normalizer,
    "gruenberg_rho_chain": check_gruenberg_rho_chain,
    "gupta_levin_6engel": check_gupta_levin_6engel,
    "hp_in_L": check_hp_in_L,
    "baer_in_Lbar": check_baer_in_Lbar,
    "zomega_in_Rbar": check_zomega_in_Rbar,
}


def run_check(check_id: str, G, *, limits: Limits = Limits(), spec: str | None = None) -> CheckResult:
    """Run one catalog check.  ``G`` may be a GroupContext, a spec string or a built group."""
    if check_id not in CATALOG:
        raise UsageError(f"unknown check {check_id!r}")
    ctx = _context(G, limits, spec)
    try:
        stats = CATALOG[check_id](ctx)
    except Skip as exc:
        return CheckResult(check_id, ctx.spec, "skipped", reason=str(exc))
    except CheckFailed as exc:
        return CheckResult(check_id, ctx.spec, "fail", witness=_plain(exc.witness), stats=_plain(exc.stats))
    return CheckResult(check_id, ctx.spec, "pass", stats=_plain(stats))


def _context(G, limits: Limits, spec: str | None) -> GroupContext:
    if isinstance(G, GroupContext):
        return G
    if isinstance(G, str):
        return GroupContext(str(parse_group_spec(G)), limits)
    return GroupContext(spec or G.name, limits, group=G)


def _plain(obj):
    """Convert numpy scalars for JSON."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def resolve_suite(suite: str) -> list[str]:
    if suite == "all":
        return list(CATALOG)
    ids = [s.strip() for s in suite.split(",") if s.strip()]
    unknown = [s for s in ids if s not in CATALOG]
    if unknown or not ids:
        raise UsageError(f"unknown check id(s): {', '.join(unknown) or suite!r}")
    return ids


def run_suite(check_ids: Iterable[str], ctx: GroupContext) -> list[CheckResult]:
    return [run_check(c, ctx) for c in check_ids]


# -- witness replay ----------------------------------------------------------------------------


def _left_len(G, x):
    ok, n = left_engel_status(G, x)
    return n if ok else None


def _right_len(G, x):
    ok, n = right_engel_status(G, x)
    return n if ok else None


def _in_level(length, n):
    return length is not None and length <= n


def replay_witness(result: CheckResult, G: FiniteGroup) -> bool:
    """Re-evaluate a failing witness with scalar public operations.

    Returns True when the violation reproduces.
    """
    if result.outcome != "fail" or not result.witness:
        raise UsageError("only failing results carry a witness to replay")
    w = result.witness
    el = {k: G.element(v) for k, v in w.items() if k in ("x", "g", "a", "b", "y", "z", "ax")}
    cid = result.check_id
    n = w.get("n")
    if cid == "heineken_identity":
        x, g = el["x"], el["g"]
        lhs = engel_commutator(G, x, g, n + 1)
        rhs = G.conj(engel_commutator(G, G.conj(G.inv(g), x), g, n), g)
        return lhs != int(rhs)
    if cid == "involution_formula":
        g, x = el["g"], el["x"]
        return engel_commutator(G, g, x, n) != G.power(engel_commutator(G, g, x, 1), (-2) ** (n - 1))
    if cid == "heineken_inclusions" and n is not None:
        a = el["a"]
        return _in_level(_right_len(G, a), n) and not _in_level(_left_len(G, G.inv(a)), n + 1)
    if cid == "kappe_r2_subgroup" and "b" in el:
        a, b = el["a"], el["b"]
        return (_in_level(_right_len(G, a), 2) and _in_level(_right_len(G, b), 2)
                and not _in_level(_right_len(G, G.mul(a, G.inv(b))), 2))
    if cid == "product_l2_ln":
        a, b = el["a"], el["b"]
        prod = G.mul(a, b) if w["claim"].startswith("ab") else G.mul(b, a)
        return (_in_level(_left_len(G, a), 2) and _in_level(_left_len(G, b), n)
                and not _in_level(_left_len(G, prod), 2 * n))
    if cid == "product_r2_r3":
        a, b = el["a"], el["b"]
        first, target = (2, 3) if w["claim"] == "ab in R_3" else (3, 4)
        return (_in_level(_right_len(G, a), first) and _in_level(_right_len(G, b), 3)
                and not _in_level(_right_len(G, G.mul(a, b)), target))
    if cid == "lemma_xy":
        x, y = el["x"], el["y"]
        for m, H, K, N in _lemma_sets(G, x, y, n):
            if m == n:
                return not (H == K == N)
        return False
    if cid == "newell_r3":
        x = el["x"]
        cl = nilpotency_class(G, normal_closure(G, [x]))
        return _in_level(_right_len(G, x), 3) and (cl is None or cl > 3)
    if cid == "abdollahi_l3_pair":
        a, b = el["a"], el["b"]
        cl = nilpotency_class(G, closure(G, [a, b]))
        return (_in_level(_left_len(G, a), 3) and _in_level(_left_len(G, b), 3)
                and (cl is None or cl > 4))
    if cid == "wreath_separation" and "ax" in el:
        return _in_level(_left_len(G, el["ax"]), w["k"] + 1)
    if cid == "levi_kappe_identities" and "a" in el:
        return _replay_levi_kappe(G, w, el)
    if cid == "l3_characterization" and "k" in w:
        x = el["x"]
        return _in_level(_left_len(G, x), 3) and not _in_level(_left_len(G, G.power(x, w["k"])), 3)
    if cid == "plotkin_normalizer":
        a, b = el["a"], el["b"]
        H = closure(G, [a, b])
        if w["claim"] == "<a, b> nilpotent":
            return not is_nilpotent(G, H)
        if H.is_normal():
            return False
        left = [x for x in H.elements if _left_len(G, int(x)) is not None]
        targets = {int(c) for x in left for c in G.conjugates(int(x))}
        N = normalizer(G, H)
        return not any(int(g) in targets for g in N.elements if int(g) not in H)
    if "x" in el and "claim" in w:
        return _replay_membership(G, w["claim"], el["x"])
    raise UsageError(f"no replay rule for witness {w!r} of {cid}")


def _replay_levi_kappe(G: FiniteGroup, w: dict, el: dict) -> bool:
    claim = w["claim"]
    a = el["a"]
    in_r2 = _in_level(_right_len(G, a), 2)
    C = G.comm
    if claim == "[a,x,y] = [a,y,x]^-1":
        x, y = el["x"], el["y"]
        return in_r2 and C(C(a, x), y) != G.inv(C(C(a, y), x))
    if claim == "[a,[x,y]] = [a,x,y]^2":
        x, y = el["x"], el["y"]
        axy = C(C(a, x), y)
        return in_r2 and C(a, C(x, y)) != G.mul(axy, axy)
    if claim == "a^2 in zeta_3":
        terms = upper_central_series(G)
        return in_r2 and G.mul(a, a) not in terms[min(3, len(terms) - 1)]
    if claim == "<a>^G <= R_2":
        N = normal_closure(G, [a])
        return in_r2 and not all(_in_level(_right_len(G, int(g)), 2) for g in N.elements)
    if "inner" in w:
        # the inner value was produced from a; the final commutator step is replayed
        inner, z = G.element(w["inner"]), el["z"]
        v = C(inner, z)
        if claim == "[a,x,y,z]^2 = 1":
            v = G.mul(v, v)
        return in_r2 and v != 0
    raise UsageError(f"no replay rule for claim {claim!r}")


def _set_member(G: FiniteGroup, name: str, x: int) -> bool:
    """Membership of x in a named set, from scalar status functions and radicals."""
    if name.endswith("^-1"):
        return _set_member(G, name[:-3], G.inv(x))
    if name in ("L", "Lbar"):
        return _left_len(G, x) is not None
    if name in ("R", "Rbar"):
        return _right_len(G, x) is not None
    m = re.fullmatch(r"([LR])_(\d+)", name)
    if m:
        length = _left_len(G, x) if m.group(1) == "L" else _right_len(G, x)
        return _in_level(length, int(m.group(2)))
    if name in ("HP", "Fitt", "B", "Gr"):
        kind = {"HP": "hirsch_plotkin", "Fitt": "fitting", "B": "baer", "Gr": "gruenberg"}[name]
        return x in radical(G, kind)
    if name in ("hypercenter", "zeta_omega"):
        return x in upper_central_series(G)[-1]
    if name == "abelian_normal_closure":
        return normal_closure(G, [x]).is_abelian()
    if name == "class2_pairs":
        for y in G.conjugates(x):
            cl = nilpotency_class(G, closure(G, [x, int(y)]))
            if cl is None or cl > 2:
                return False
        return True
    if name in ("rho", "rho_bar"):
        return bool(rho_sets(G)[0][x])
    raise UsageError(f"cannot replay membership in {name}")


def _replay_membership(G: FiniteGroup, claim: str, x: int) -> bool:
    lhs, op, rhs = claim.split()
    if op == "==":
        return _set_member(G, lhs, x) != _set_member(G, rhs, x)
    return _set_member(G, lhs, x) and not _set_member(G, rhs, x)


# -- witness search --------------------------------------------------------------------------


SEARCH_PREDICATES = ("macdonald_r3", "macdonald_rn_ln")


def search_witness(predicate: str, zoo: Iterable[str], *, limits: Limits = Limits(),
                   n_values: Iterable[int] | None = None) -> CheckResult | None:
    """Scan the zoo in order for an element satisfying the predicate.

    macdonald_r3:     a in R_3 and a^-1 not in R_3
    macdonald_rn_ln:  a in R_n, a not in L_n and a^-1 not in L_n (n from ``n_values``,
                      default 3..max_n)

    Absence is not a refutation: the search is bounded by the zoo.
    """
    return search_report(predicate, zoo, limits=limits, n_values=n_values).result


@dataclass
class SearchReport:
    predicate: str
    result: CheckResult | None
    searched: list[str]
    skipped: dict[str, str]

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "outcome": "found" if self.result else "absent",
            "witness": self.result.to_dict() if self.result else None,
            "searched": self.searched,
            "skipped": self.skipped,
        }


def search_report(predicate: str, zoo: Iterable[str], *, limits: Limits = Limits(),
                  n_values: Iterable[int] | None = None) -> SearchReport:
    if predicate not in SEARCH_PREDICATES:
        raise UsageError(f"unknown predicate {predicate!r}")
    ns = list(n_values) if n_values is not None else list(range(3, limits.max_n + 1))
    searched: list[str] = []
    skipped: dict[str, str] = {}
    for spec in zoo:
        name = str(parse_group_spec(spec))
        try:
            ctx = GroupContext(name, limits)
            if ctx.black_box:
                raise Skip("black-box group")
            E = ctx.engel
        except (CapacityError, Skip) as exc:
            skipped[name] = str(exc)
            continue
        searched.append(name)
        G = ctx.G
        inv = G.inv_table
        if predicate == "macdonald_r3":
            hits = E.R(3) & ~E.R(3)[inv]
            if np.any(hits):
                a = _first(hits)
                found = CheckResult(predicate, name, "pass", witness={"a": G.labels[a], "n": 3},
                                    stats={"a_squared_in_R_3": bool(E.R(3)[G.mul(a, a)]),
                                           "right_length": int(E.right_length[a])})
                return SearchReport(predicate, found, searched, skipped)
        else:
            for n in ns:
                hits = E.R(n) & ~E.L(n) & ~E.L(n)[inv]
                if np.any(hits):
                    a = _first(hits)
                    found = CheckResult(predicate, name, "pass", witness={"a": G.labels[a], "n": n})
                    return SearchReport(predicate, found, searched, skipped)
    return SearchReport(predicate, None, searched, skipped)


def replay_search_witness(result: CheckResult, G: FiniteGroup) -> bool:
    """Re-check a search witness from scratch with the scalar Engel status functions."""
    a = G.element(result.witness["a"])
    n = result.witness["n"]
    a_inv = G.inv(a)
    if result.check_id == "macdonald_r3":
        return _in_level(_right_len(G, a), 3) and not _in_level(_right_len(G, a_inv), 3)
    return (_in_level(_right_len(G, a), n) and not _in_level(_left_len(G, a), n)
            and not _in_level(_left_len(G, a_inv), n))


def load_zoo(zoo: str | None) -> list[str]:
    """'default' (or None) for the built-in zoo, otherwise a file with one spec per line."""
    if zoo in (None, "default"):
        return list(DEFAULT_ZOO)
    if zoo == "search2":
        return list(SEARCH_ZOO_2GROUPS)
    from pathlib import Path

    lines = Path(zoo).read_text().splitlines()
    return [ln.split("#", 1)[0].strip() for ln in lines if ln.split("#", 1)[0].strip()]

