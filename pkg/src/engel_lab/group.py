"""Table-backed finite groups, subgroups and the Engel commutator.

Elements are plain ``int`` indices into the group's tables; index 0 is always
the identity.  Everything heavy is vectorised over the multiplication table.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .config import DEFAULT_CAP, DEFAULT_SEED, EXHAUSTIVE_LIMIT
from .errors import CapacityError, PreconditionError, UsageError, ValidationError

Element = int

_INDEX = np.int32


class FiniteGroup:
    """An enumerable group with full multiplication and inverse tables.

    Instances are immutable after construction (the tables are flagged
    read-only) and can be shared freely.  ``labels[i]`` is the shortlex-least
    word in the generators that evaluates to element ``i``.
    """

    def __init__(
        self,
        table: np.ndarray,
        generators: Sequence[int],
        generator_names: Sequence[str] | None = None,
        *,
        name: str = "G",
        roles: dict[str, tuple[int, ...]] | None = None,
        validate: bool = True,
        seed: int = DEFAULT_SEED,
    ):
        table = np.ascontiguousarray(table, dtype=_INDEX)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValidationError("multiplication table must be a non-empty square array")
        n = table.shape[0]
        self.order = n
        self.name = name
        gens = tuple(int(g) for g in generators)
        if any(not 0 <= g < n for g in gens):
            raise ValidationError("generator index out of range")
        if generator_names is None:
            generator_names = _default_names(len(gens))
        if len(generator_names) != len(gens):
            raise ValidationError("one name per generator required")
        self.generators = gens
        self.generator_names = tuple(generator_names)
        self.roles = {k: tuple(int(i) for i in v) for k, v in (roles or {}).items()}

        if validate:
            self.associativity_check = _validate_table(table, seed)
        else:
            self.associativity_check = "skipped"
        table.setflags(write=False)
        self.mul_table = table
        inv = np.argmin(table, axis=1).astype(_INDEX)
        if validate and not np.all(table[np.arange(n), inv] == 0):
            raise ValidationError("some element has no inverse")
        inv.setflags(write=False)
        self.inv_table = inv
        self.labels = _bfs_labels(table, gens, self.generator_names)

    # -- basic arithmetic -------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @property
    def identity(self) -> int:
        return 0

    def check_element(self, x) -> int:
        if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
            raise UsageError(f"{x!r} is not an element index of {self.name}")
        if not 0 <= x < self.order:
            raise UsageError(f"element {x} out of range for {self.name} of order {self.order}")
        return int(x)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inv_table[a])

    def comm(self, a, b):
        """[a, b] = a^-1 b^-1 a b; works elementwise on index arrays too."""
        t, i = self.mul_table, self.inv_table
        return t[t[i[a], i[b]], t[a, b]]

    def conj(self, a, g):
        """a^g = g^-1 a g."""
        t = self.mul_table
        return t[t[self.inv_table[g], a], g]

    def power(self, a: int, m: int) -> int:
        m %= int(self.orders[a])
        result, base = 0, int(a)
        while m:
            if m & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            m >>= 1
        return result

    def power_array(self, a, m):
        """Elementwise power of an index array by an integer (possibly negative)."""
        a = np.asarray(a)
        out = np.zeros_like(a)
        exps = np.mod(m, self.orders[a])
        base = a.copy()
        while np.any(exps):
            odd = (exps & 1).astype(bool)
            out = np.where(odd, self.mul_table[out, base], out)
            base = self.mul_table[base, base]
            exps >>= 1
        return out

    def element_order(self, a: int) -> int:
        return int(self.orders[self.check_element(a)])

    # -- cached whole-group data ------------------------------------------

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n, dtype=_INDEX)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if np.all(orders):
                break
            cur = self.mul_table[cur, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.orders))

    @cached_property
    def comm_table(self) -> np.ndarray:
        """comm_table[x, y] = [x, y]; n*n, built on first use."""
        i = self.inv_table
        t = self.mul_table
        out = t[t[i[:, None], i[None, :]], t]
        out.setflags(write=False)
        return out

    @cached_property
    def center_mask(self) -> np.ndarray:
        gens = np.asarray(self.generators, dtype=_INDEX)
        if gens.size == 0:
            return np.ones(self.order, dtype=bool)
        t = self.mul_table
        return np.all(t[:, gens] == t[gens, :].T, axis=1)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.center_mask.all())

    @cached_property
    def class_index(self) -> np.ndarray:
        """class_index[x] = number of the conjugacy class of x (classes numbered by least member)."""
        n = self.order
        cls = np.full(n, -1, dtype=np.int64)
        gens = np.asarray(self.generators, dtype=_INDEX)
        k = 0
        for x in range(n):
            if cls[x] >= 0:
                continue
            orbit = np.zeros(n, dtype=bool)
            orbit[x] = True
            frontier = np.array([x], dtype=_INDEX)
            while frontier.size:
                if gens.size == 0:
                    break
                images = self.conj(frontier[:, None], gens[None, :]).ravel()
                images = np.unique(images[~orbit[images]])
                orbit[images] = True
                frontier = images
            cls[orbit] = k
            k += 1
        cls.setflags(write=False)
        return cls

    @cached_property
    def class_reps(self) -> np.ndarray:
        _, first = np.unique(self.class_index, return_index=True)
        return first.astype(_INDEX)

    def conjugates(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.class_index == self.class_index[x]).astype(_INDEX)

    # -- labels -----------------------------------------------------------

    def label(self, x: int) -> str:
        return self.labels[x]

    def labels_of(self, elements: Iterable[int]) -> list[str]:
        return [self.labels[int(x)] for x in sorted(int(e) for e in elements)]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def element(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise UsageError(f"no element labelled {label!r} in {self.name}") from None

    def evaluate(self, word: str) -> int:
        """Evaluate a label-style word (``'a^2*b'``) in the generators."""
        word = word.strip()
        if word in ("", "1"):
            return 0
        names = {n: g for n, g in zip(self.generator_names, self.generators)}
        result = 0
        for part in word.split("*"):
            base, _, exp = part.partition("^")
            if base not in names:
                raise UsageError(f"unknown generator {base!r} in word {word!r}")
            result = self.mul(result, self.power(names[base], int(exp) if exp else 1))
        return result

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self, np.ones(self.order, dtype=bool), self.generators)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(self, _mask_of(self.order, [0]), ())


def _default_names(k: int) -> tuple[str, ...]:
    letters = "abcdfghjkmnpqrstuvwyz"
    if k <= len(letters):
        return tuple(letters[:k])
    return tuple(f"g{i}" for i in range(k))


def _validate_table(table: np.ndarray, seed: int) -> str:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise ValidationError("table entries out of range")
    idx = np.arange(n)
    if not (np.array_equal(table[0], idx) and np.array_equal(table[:, 0], idx)):
        raise ValidationError("index 0 is not a two-sided identity")
    rows = np.sort(table, axis=1)
    if not np.all(rows == idx):
        raise ValidationError("table is not a Latin square (rows)")
    cols = np.sort(table, axis=0)
    if not np.all(cols == idx[:, None]):
        raise ValidationError("table is not a Latin square (columns)")
    if n <= EXHAUSTIVE_LIMIT:
        for a in range(n):
            if not np.array_equal(table[table[a], :], table[a][table]):
                raise ValidationError(f"associativity fails with first factor {a}")
        return "full"
    rng = np.random.default_rng([seed, n])
    a, b, c = rng.integers(0, n, size=(3, 512))
    if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
        raise ValidationError("associativity fails on a sampled triple")
    return "sampled"


def _format_word(word: list[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    run_gen, run_len = word[0], 0
    for g in word + [-1]:
        if g == run_gen:
            run_len += 1
            continue
        parts.append(names[run_gen] if run_len == 1 else f"{names[run_gen]}^{run_len}")
        run_gen, run_len = g, 1
    return "*".join(parts)


def _bfs_labels(table: np.ndarray, gens: tuple[int, ...], names: Sequence[str]) -> tuple[str, ...]:
    n = table.shape[0]
    words: list[list[int] | None] = [None] * n
    words[0] = []
    queue = [0]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for k, g in enumerate(gens):
            y = int(table[x, g])
            if words[y] is None:
                words[y] = words[x] + [k]
                queue.append(y)
    if len(queue) != n:
        raise ValidationError(f"generators reach only {len(queue)} of {n} elements")
    return tuple(_format_word(w, names) for w in words)


# -- construction from concrete representations -------------------------------


@dataclass(frozen=True)
class PermutationRep:
    """Permutation generators given as image tuples on ``range(degree)``."""

    generators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None


@dataclass(frozen=True)
class CayleyRep:
    table: np.ndarray = field(repr=False)
    generators: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ConcreteRep:
    """Hashable elements with an explicit product; enumerated by BFS."""

    identity: Hashable
    generators: tuple[Hashable, ...]
    mul: Callable[[Hashable, Hashable], Hashable] = field(repr=False)
    names: tuple[str, ...] | None = None
    roles: dict[str, tuple[Hashable, ...]] = field(default_factory=dict)


@dataclass
class Enumerated:
    group: FiniteGroup
    elements: list[Hashable]
    index: dict[Hashable, int]


def enumerate_concrete(rep: ConcreteRep, *, cap: int = DEFAULT_CAP, name: str = "G",
                       validate: bool = True) -> Enumerated:
    """BFS over right multiplication by generators; element i is the i-th discovered."""
    gens = list(rep.generators)
    elements = [rep.identity]
    index = {rep.identity: 0}
    right: list[list[int]] = [[] for _ in gens]
    head = 0
    while head < len(elements):
        x = elements[head]
        for k, s in enumerate(gens):
            y = rep.mul(x, s)
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise CapacityError(f"{name}: more than {cap} elements")
                j = len(elements)
                index[y] = j
                elements.append(y)
            right[k].append(j)
        head += 1
    n = len(elements)
    table = _table_from_right_actions(n, np.array(right, dtype=_INDEX).reshape(len(gens), n),
                                      [index[s] for s in gens])
    roles = {k: tuple(index[e] for e in v) for k, v in rep.roles.items()}
    group = FiniteGroup(table, [index[s] for s in gens], rep.names, name=name, roles=roles,
                        validate=validate)
    return Enumerated(group, elements, index)


def _table_from_right_actions(n: int, right: np.ndarray, gen_idx: list[int]) -> np.ndarray:
    # column h of the table is obtained from the column of its BFS parent by
    # one right multiplication; BFS order guarantees the parent comes first
    table = np.empty((n, n), dtype=_INDEX)
    table[:, 0] = np.arange(n)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    for x in range(n):
        for k in range(right.shape[0]):
            y = right[k, x]
            if not done[y]:
                table[:, y] = right[k][table[:, x]]
                done[y] = True
    if not done.all():
        raise ValidationError("right actions do not reach every element")
    return table


def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # left-to-right composition: apply p, then q
    return tuple(q[i] for i in p)


def build_enumerable(rep, *, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    """Build a FiniteGroup from permutation generators, a Cayley table, or a construction descriptor."""
    if isinstance(rep, PermutationRep):
        gens = tuple(tuple(int(i) for i in g) for g in rep.generators)
        degree = max((len(g) for g in gens), default=1)
        if any(len(g) != degree or sorted(g) != list(range(degree)) for g in gens):
            raise ValidationError("permutation generators must be permutations of one common degree")
        concrete = ConcreteRep(tuple(range(degree)), gens, _perm_mul, rep.names)
        return enumerate_concrete(concrete, cap=cap, name=name or "perm").group
    if isinstance(rep, CayleyRep):
        table = np.asarray(rep.table)
        if table.shape[0] > cap:
            raise CapacityError(f"Cayley table of order {table.shape[0]} exceeds cap {cap}")
        gens = rep.generators
        if gens is None:
            gens = greedy_generators(table)
        return FiniteGroup(table, gens, name=name or "cayley")
    from .constructions import make_group
    from .specs import Descriptor

    if isinstance(rep, Descriptor):
        return make_group(rep, cap=cap)
    raise UsageError(f"cannot build a group from {type(rep).__name__}")


def greedy_generators(table: np.ndarray) -> tuple[int, ...]:
    """Smallest-index-first generating set for a Cayley table."""
    table = np.asarray(table, dtype=_INDEX)
    n = table.shape[0]
    mask = _mask_of(n, [0])
    gens: list[int] = []
    for x in range(n):
        if not mask[x]:
            gens.append(x)
            _grow(table, mask, gens)
    return tuple(gens)


# -- Cayley text format ---------------------------------------------------------


def parse_cayley_text(text: str) -> CayleyRep:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty Cayley table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValidationError(f"first line must be the order, got {lines[0]!r}") from None
    if len(lines) < n + 1:
        raise ValidationError(f"expected {n} table rows, found {len(lines) - 1}")
    try:
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:n + 1]]
    except ValueError as exc:
        raise ValidationError(f"non-integer table entry: {exc}") from None
    if any(len(r) != n for r in rows):
        raise ValidationError(f"every row needs exactly {n} entries")
    gens = None
    rest = lines[n + 1:]
    if rest:
        m = re.fullmatch(r"gens:\s*(.*)", rest[0])
        if m is None or len(rest) > 1:
            raise ValidationError(f"unexpected trailing content: {rest[0]!r}")
        gens = tuple(int(tok) for tok in m.group(1).split())
    return CayleyRep(np.array(rows, dtype=_INDEX), gens)


def load_cayley(path: str | Path, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    rep = parse_cayley_text(Path(path).read_text())
    return build_enumerable(rep, cap=cap, name=f"cayley({path})")


def format_cayley_text(G: FiniteGroup, *, with_generators: bool = True) -> str:
    lines = [str(G.order)]
    lines += [" ".join(str(int(v)) for v in row) for row in G.mul_table]
    if with_generators:
        lines.append("gens: " + " ".join(str(g) for g in G.generators))
    return "\n".join(lines) + "\n"


# -- subgroups --------------------------------------------------------------------


def _mask_of(n: int, elements: Iterable[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[np.fromiter((int(e) for e in elements), dtype=np.int64)] = True
    return mask


class Subgroup:
    """A subgroup of a FiniteGroup stored as a sorted index array plus a membership mask."""

    __slots__ = ("group", "elements", "mask", "witness_generators", "__weakref__")

    def __init__(self, group: FiniteGroup, mask: np.ndarray, witness_generators: Iterable[int]):
        self.group = group
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        self.mask = mask
        elements = np.flatnonzero(mask).astype(_INDEX)
        elements.setflags(write=False)
        self.elements = elements
        self.witness_generators = tuple(int(g) for g in witness_generators)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __iter__(self):
        return (int(x) for x in self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.elements, other.elements)

    def __hash__(self) -> int:
        return hash((id(self.group), self.elements.tobytes()))

    def __le__(self, other: Subgroup) -> bool:
        return bool(np.all(other.mask[self.elements]))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.group.name})"

    @property
    def key(self) -> bytes:
        return self.mask.tobytes()

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.group.order

    def is_normal(self, within: Subgroup | None = None) -> bool:
        G = self.group
        conj_by = np.asarray(within.witness_generators if within is not None else G.generators,
                             dtype=_INDEX)
        gens = np.asarray(self.witness_generators, dtype=_INDEX)
        if gens.size == 0 or conj_by.size == 0:
            return True
        images = G.conj(gens[:, None], conj_by[None, :])
        return bool(np.all(self.mask[images]))

    def labels(self) -> list[str]:
        return [self.group.labels[int(x)] for x in self.elements]

    def is_abelian(self) -> bool:
        gens = np.asarray(self.witness_generators, dtype=_INDEX)
        if gens.size < 2:
            return True
        c = self.group.comm(gens[:, None], gens[None, :])
        return bool(np.all(c == 0))


def _grow(table: np.ndarray, mask: np.ndarray, kept: list[int]) -> None:
    """Extend ``mask`` (a subgroup generated by kept[:-1]) to the closure including kept[-1]."""
    new_gen = np.array([kept[-1]], dtype=_INDEX)
    gens = np.asarray(kept, dtype=_INDEX)
    old = np.flatnonzero(mask)
    frontier = table[old, new_gen[0]]
    frontier = np.unique(frontier[~mask[frontier]])
    mask[frontier] = True
    while frontier.size:
        prod = table[frontier[:, None], gens[None, :]].ravel()
        prod = prod[~mask[prod]]
        if prod.size == 0:
            break
        frontier = np.unique(prod)
        mask[frontier] = True


def _closure_into(G: FiniteGroup, mask: np.ndarray, kept: list[int], candidates: Iterable[int]) -> bool:
    """Add candidates to the subgroup (mask, kept) in place; True if it grew."""
    grew = False
    for s in candidates:
        s = int(s)
        if not mask[s]:
            kept.append(s)
            _grow(G.mul_table, mask, kept)
            grew = True
    return grew


def closure(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing S (incremental closure, one generator at a time)."""
    S = [G.check_element(int(s)) for s in S]
    mask = _mask_of(G.order, [0])
    kept: list[int] = []
    _closure_into(G, mask, kept, sorted(set(S)))
    return Subgroup(G, mask, kept)


def subgroup_from_elements(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Wrap an element set that must already be a subgroup (checked)."""
    mask = _mask_of(G.order, elements)
    H = closure(G, np.flatnonzero(mask))
    if H.order != int(mask.sum()):
        raise PreconditionError("element set is not closed under multiplication")
    return H


# -- quotients -------------------------------------------------------------------------


def quotient(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    """G/N with cosets numbered by their least element (so the identity coset is 0)."""
    if N.group is not G:
        raise UsageError("subgroup belongs to a different group")
    if not N.is_normal():
        raise PreconditionError("quotient needs a normal subgroup")
    coset_min = G.mul_table[:, N.elements].min(axis=1)
    reps, coset_of = np.unique(coset_min, return_inverse=True)
    table = coset_of[G.mul_table[np.ix_(reps, reps)]]
    gens = []
    names = []
    for g, nm in zip(G.generators, G.generator_names):
        c = int(coset_of[g])
        if c != 0 and c not in gens:
            gens.append(c)
            names.append(nm)
    return FiniteGroup(table, gens, names, name=f"{G.name}/N{N.order}")


# -- element-level operations ---------------------------------------------------------


def element_order(G: FiniteGroup, x: int) -> int:
    return G.element_order(x)


def engel_commutator(G, x, y, n: int):
    """Left-normed commutator [x, n y]: [x,0 y] = x and [x,n y] = [[x,n-1 y], y].

    ``G`` is a FiniteGroup (elements are indices) or any black-box group
    exposing ``check_element`` and ``comm``.
    """
    if n < 0:
        raise UsageError("n must be non-negative")
    x = G.check_element(x)
    y = G.check_element(y)
    for _ in range(n):
        x = G.comm(x, y)
    if isinstance(x, np.integer):
        x = int(x)
    return x
