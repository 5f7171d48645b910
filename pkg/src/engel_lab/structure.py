"""Normal closures, subnormality, central/derived series and the four radicals.

All functions assume an enumerable group.  The finite-group identifications
(Gruenberg = Baer, Hirsch-Plotkin = Fitting, hypercenter = omega-center) are
checked at runtime: each radical is computed from its own definition and a
disagreement raises :class:`InvariantViolation`.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

import numpy as np
import sympy

from .errors import InvariantViolation, UsageError
from .group import FiniteGroup, Subgroup, _closure_into, _mask_of, closure

SeriesKind = Literal["upper_central", "lower_central", "derived"]
RadicalKind = Literal["fitting", "baer", "gruenberg", "hirsch_plotkin"]


def _gens_array(xs: Iterable[int]) -> np.ndarray:
    return np.fromiter((int(x) for x in xs), dtype=np.int32)


def _normal_closure_within(G: FiniteGroup, S: Iterable[int], conj_by: np.ndarray) -> Subgroup:
    mask = _mask_of(G.order, [0])
    kept: list[int] = []
    _closure_into(G, mask, kept, sorted(set(int(s) for s in S)))
    if conj_by.size == 0:
        return Subgroup(G, mask, kept)
    checked = 0
    while checked < len(kept):
        # conjugates of the generators added since the last pass
        fresh = np.asarray(kept[checked:], dtype=np.int32)
        checked = len(kept)
        images = G.conj(fresh[:, None], conj_by[None, :]).ravel()
        missing = np.unique(images[~mask[images]])
        _closure_into(G, mask, kept, missing)
    return Subgroup(G, mask, kept)


def normal_closure(G: FiniteGroup, S: Iterable[int], within: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing S that is normalised by ``within`` (default G)."""
    S = [G.check_element(int(s)) for s in S]
    conj_by = _gens_array(within.witness_generators if within is not None else G.generators)
    return _normal_closure_within(G, S, conj_by)


def subnormal_defect(G: FiniteGroup, H: Subgroup, within: Subgroup | None = None) -> int | None:
    """Length of the normal-closure chain from ``within`` (default G) down to H, or None.

    K0 = within, K(i+1) = H^K(i).  H is subnormal exactly when the chain hits H.
    """
    K = within if within is not None else G.whole
    if not H <= K:
        raise UsageError("H is not contained in the ambient subgroup")
    gens = H.witness_generators
    i = 0
    while True:
        if K.order == H.order:
            return i
        nxt = _normal_closure_within(G, gens, _gens_array(K.witness_generators))
        if nxt.order == K.order:
            return None
        K = nxt
        i += 1


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup, ambient: Subgroup | None = None) -> Subgroup:
    """[A, B] as the normal closure in <A, B> of commutators of generators.

    ``ambient`` (if given) must be <A, B>; passing it saves recomputing it.
    """
    a = _gens_array(A.witness_generators)
    b = _gens_array(B.witness_generators)
    if a.size == 0 or b.size == 0:
        return G.trivial
    comms = np.unique(G.comm(a[:, None], b[None, :]).ravel())
    if ambient is None:
        ambient = closure(G, list(A.witness_generators) + list(B.witness_generators))
    return _normal_closure_within(G, comms, _gens_array(ambient.witness_generators))


def lower_central_series(G: FiniteGroup, H: Subgroup | None = None) -> list[Subgroup]:
    """gamma_1 = H, gamma_(i+1) = [gamma_i, H], stopping at the first repeat."""
    H = H if H is not None else G.whole
    terms = [H]
    while True:
        nxt = commutator_subgroup(G, terms[-1], H, ambient=H)
        if nxt.order == terms[-1].order:
            return terms
        terms.append(nxt)


def derived_series(G: FiniteGroup, H: Subgroup | None = None) -> list[Subgroup]:
    H = H if H is not None else G.whole
    terms = [H]
    while True:
        D = terms[-1]
        nxt = commutator_subgroup(G, D, D, ambient=D)
        if nxt.order == D.order:
            return terms
        terms.append(nxt)


def nilpotency_class(G: FiniteGroup, H: Subgroup | None = None) -> int | None:
    """Class of H (default G), or None if H is not nilpotent."""
    terms = lower_central_series(G, H)
    if not terms[-1].is_trivial:
        return None
    return len(terms) - 1


def is_nilpotent(G: FiniteGroup, H: Subgroup | None = None) -> bool:
    return nilpotency_class(G, H) is not None


def derived_length(G: FiniteGroup, H: Subgroup | None = None) -> int | None:
    terms = derived_series(G, H)
    if not terms[-1].is_trivial:
        return None
    return len(terms) - 1


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    """zeta_0 = 1 and zeta_(i+1)/zeta_i = Z(G/zeta_i), up to the hypercenter."""
    gens = _gens_array(G.generators)
    comm_with_gens = G.comm(np.arange(G.order)[:, None], gens[None, :]) if gens.size else None
    mask = _mask_of(G.order, [0])
    terms = [G.trivial]
    while True:
        if comm_with_gens is None:
            nxt = np.ones(G.order, dtype=bool)
        else:
            nxt = np.all(mask[comm_with_gens], axis=1)
        if nxt.sum() == mask.sum():
            return terms
        mask = nxt
        terms.append(closure(G, np.flatnonzero(mask)))
        if terms[-1].order != int(mask.sum()):
            raise InvariantViolation("upper central term is not a subgroup")


@dataclass(frozen=True)
class SeriesResult:
    """Terms of a series, each distinct from the previous.

    ``stabilized`` is True when the series stalls before its natural end
    (G for the upper central series, the trivial group for the descending
    ones); ``length`` counts the steps taken.
    """

    kind: str
    terms: tuple[Subgroup, ...]
    stabilized: bool
    length: int

    @property
    def last(self) -> Subgroup:
        return self.terms[-1]


def series(G: FiniteGroup, kind: SeriesKind) -> SeriesResult:
    if kind == "upper_central":
        terms = upper_central_series(G)
        stalled = not terms[-1].is_whole
    elif kind == "lower_central":
        terms = lower_central_series(G)
        stalled = not terms[-1].is_trivial
    elif kind == "derived":
        terms = derived_series(G)
        stalled = not terms[-1].is_trivial
    else:
        raise UsageError(f"unknown series kind {kind!r}")
    return SeriesResult(kind, tuple(terms), stalled, len(terms) - 1)


def hypercenter(G: FiniteGroup) -> Subgroup:
    return upper_central_series(G)[-1]


def center(G: FiniteGroup) -> Subgroup:
    return closure(G, np.flatnonzero(G.center_mask))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    gens = _gens_array(H.witness_generators)
    if gens.size == 0:
        return G.whole
    images = G.conj(gens[:, None], np.arange(G.order)[None, :])
    keep = np.all(H.mask[images], axis=0)
    N = closure(G, np.flatnonzero(keep))
    if N.order != int(keep.sum()):
        raise InvariantViolation("normalizer element set is not a subgroup")
    return N


def centralizer(G: FiniteGroup, xs: Iterable[int]) -> Subgroup:
    xs = _gens_array(xs)
    t = G.mul_table
    keep = np.all(t[:, xs] == t[xs, :].T, axis=1) if xs.size else np.ones(G.order, dtype=bool)
    return closure(G, np.flatnonzero(keep))


# -- radicals -----------------------------------------------------------------------------


def _spread_over_classes(G: FiniteGroup, rep_flags: dict[int, bool]) -> np.ndarray:
    flags = np.zeros(G.order, dtype=bool)
    cls = G.class_index
    for rep, ok in rep_flags.items():
        if ok:
            flags[cls == cls[rep]] = True
    return flags


def _as_subgroup(G: FiniteGroup, flags: np.ndarray, what: str) -> Subgroup:
    H = closure(G, np.flatnonzero(flags))
    if H.order != int(flags.sum()):
        raise InvariantViolation(f"{what}: candidate element set is not a subgroup")
    return H


def _fitting(G: FiniteGroup) -> Subgroup:
    flags = {int(x): is_nilpotent(G, normal_closure(G, [x])) for x in G.class_reps}
    F = _as_subgroup(G, _spread_over_classes(G, flags), "fitting")
    if not (F.is_normal() and is_nilpotent(G, F)):
        raise InvariantViolation("fitting subgroup is not normal nilpotent")
    return F


def _baer(G: FiniteGroup) -> Subgroup:
    flags = {int(x): subnormal_defect(G, closure(G, [x])) is not None for x in G.class_reps}
    return _as_subgroup(G, _spread_over_classes(G, flags), "baer")


def _gruenberg(G: FiniteGroup) -> Subgroup:
    # Ascendant = subnormal for finite groups; tested here through Wielandt's
    # join criterion, <x> sn G iff <x> sn <x, x^g> for every g, so that this
    # path shares no chain with the Baer computation on G itself.
    flags = {}
    for x in G.class_reps:
        x = int(x)
        X = closure(G, [x])
        ok = True
        for y in G.conjugates(x):
            if X.mask[y]:
                continue
            J = closure(G, [x, int(y)])
            if subnormal_defect(G, X, within=J) is None:
                ok = False
                break
        flags[x] = ok
    return _as_subgroup(G, _spread_over_classes(G, flags), "gruenberg")


def largest_normal_p_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    orders = G.orders
    flags = {}
    for x in G.class_reps:
        x = int(x)
        if not _is_power_of(int(orders[x]), p):
            flags[x] = False
            continue
        flags[x] = _is_power_of(normal_closure(G, [x]).order, p)
    return _as_subgroup(G, _spread_over_classes(G, flags), f"O_{p}")


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def _hirsch_plotkin(G: FiniteGroup) -> Subgroup:
    # product of the largest normal p-subgroups; locally nilpotent = nilpotent here
    gens: list[int] = []
    for p in sympy.primefactors(G.order):
        gens.extend(largest_normal_p_subgroup(G, p).witness_generators)
    HP = closure(G, gens)
    if not (HP.is_normal() and is_nilpotent(G, HP)):
        raise InvariantViolation("Hirsch-Plotkin radical is not normal nilpotent")
    return HP


_RADICALS = {
    "fitting": _fitting,
    "baer": _baer,
    "gruenberg": _gruenberg,
    "hirsch_plotkin": _hirsch_plotkin,
}


def radical(G: FiniteGroup, kind: RadicalKind) -> Subgroup:
    try:
        fn = _RADICALS[kind]
    except KeyError:
        raise UsageError(f"unknown radical {kind!r}") from None
    return fn(G)


@dataclass(frozen=True)
class RadicalReport:
    fitting: Subgroup
    baer: Subgroup
    gruenberg: Subgroup
    hirsch_plotkin: Subgroup

    def chain_holds(self) -> bool:
        return self.fitting <= self.baer <= self.gruenberg <= self.hirsch_plotkin


def radicals(G: FiniteGroup) -> RadicalReport:
    """All four radicals, each from its own definition, cross-checked."""
    report = RadicalReport(*(radical(G, k) for k in ("fitting", "baer", "gruenberg", "hirsch_plotkin")))
    if not report.chain_holds():
        raise InvariantViolation("radical chain Fitt <= B <= Gr <= HP fails")
    if not (report.fitting == report.baer == report.gruenberg == report.hirsch_plotkin):
        raise InvariantViolation("finite-group radicals disagree")
    return report


@dataclass(frozen=True)
class StructureReport:
    order: int
    abelian: bool
    nilpotency_class: int | None
    derived_length: int | None
    upper_central: SeriesResult
    lower_central: SeriesResult
    derived: SeriesResult
    radicals: RadicalReport

    @property
    def hypercenter(self) -> Subgroup:
        return self.upper_central.last

    @property
    def nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    @property
    def soluble(self) -> bool:
        return self.derived_length is not None


def structure_report(G: FiniteGroup) -> StructureReport:
    upper = series(G, "upper_central")
    lower = series(G, "lower_central")
    der = series(G, "derived")
    cls = None if lower.stabilized else lower.length
    if (cls is not None) != upper.last.is_whole:
        raise InvariantViolation("upper and lower central series disagree on nilpotency")
    return StructureReport(
        order=G.order,
        abelian=G.is_abelian,
        nilpotency_class=cls,
        derived_length=None if der.stabilized else der.length,
        upper_central=upper,
        lower_central=lower,
        derived=der,
        radicals=radicals(G),
    )
