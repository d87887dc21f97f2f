"""Finite groups as dense multiplication tables, plus subgroup primitives.

Two immutable carriers underpin everything: ``GroupTable`` (the ambient
group, identity pinned at element id 0) and ``SubgroupSet`` (a membership
bit vector over one table).  All operations are pure functions of their
inputs; tables and subgroup sets are never mutated after construction, so
any number of operations may run concurrently over shared objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    InvalidGenerator,
    NotContained,
    NotNilpotent,
    NotNormal,
    OrderCapExceeded,
    ParentMismatch,
)

DEFAULT_ORDER_CAP = 5000

# Above this order, associativity is spot-checked on random triples instead
# of exhaustively; 10*n*n triples per the table contract.
_ASSOC_EXHAUSTIVE_LIMIT = 512
_ASSOC_SEED = 0x5EED
_ASSOC_CHUNK = 1 << 20


# ---------------------------------------------------------------------------
# small number theory helpers


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as (prime, exponent) pairs, ascending."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def p_power_exponent(n: int, p: int) -> int | None:
    """Return k if n == p**k (k >= 0), else None."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def _bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# permutation helpers (image-tuple form, 0-based internally, 1-based labels)


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Build a 0-based image tuple from 1-based disjoint cycles."""
    images = list(range(degree))
    seen: set[int] = set()
    for cycle in cycles:
        pts = [int(x) for x in cycle]
        if any(x < 1 or x > degree for x in pts):
            raise InvalidGenerator(f"cycle {tuple(cycle)} out of range 1..{degree}")
        if len(set(pts)) != len(pts) or seen & set(pts):
            raise InvalidGenerator(f"cycle {tuple(cycle)} repeats a point")
        seen.update(pts)
        for i, x in enumerate(pts):
            images[x - 1] = pts[(i + 1) % len(pts)] - 1
    return tuple(images)


def perm_label(images: Sequence[int]) -> str:
    """Cycle notation on 1-based points; the identity is rendered as 'e'."""
    seen: set[int] = set()
    parts = []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        seen.add(start)
        j = images[start]
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = images[j]
        parts.append("(" + ",".join(str(x + 1) for x in cycle) + ")")
    return "".join(parts) if parts else "e"


def compose_permutations(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """(x*y)(i) = x(y(i))."""
    return tuple(x[y[i]] for i in range(len(x)))


# ---------------------------------------------------------------------------
# the group table


class GroupTable:
    """A finite group with elements 0..order-1 and identity 0.

    mult[a][b] is the id of a*b; inv[a] the id of a**-1.  labels hold
    display strings for DOT/JSON output.  generators lists the element ids
    of the construction generators (empty for the trivial group).
    """

    identity = 0

    __slots__ = ("order", "mult", "inv", "labels", "order_factorization",
                 "generators", "_memo")

    def __init__(self, mult: list[list[int]], inv: list[int], labels: list[str],
                 generators: tuple[int, ...]):
        self.order = len(mult)
        self.mult = mult
        self.inv = inv
        self.labels = labels
        self.order_factorization = factorize(self.order)
        self.generators = generators
        self._memo: dict = {}

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<GroupTable order={self.order}>"


def _validate_table(tbl: np.ndarray) -> np.ndarray:
    """Check the group-table invariants; return the inverse array.

    Raises InvalidGenerator with a reason when the table is not a group
    table anchored at identity 0.  Associativity is exhaustive up to order
    512 and randomized (>= 10*n*n seeded triples) above that.
    """
    n = tbl.shape[0]
    if tbl.shape != (n, n):
        raise InvalidGenerator("multiplication table must be square")
    if n == 0:
        raise InvalidGenerator("empty multiplication table")
    if tbl.min() < 0 or tbl.max() >= n:
        raise InvalidGenerator("table entry out of range")
    idx = np.arange(n)
    if not np.array_equal(tbl[0], idx) or not np.array_equal(tbl[:, 0], idx):
        raise InvalidGenerator("row/column 0 must be the identity maps")
    zero_counts = (tbl == 0).sum(axis=1)
    if not np.all(zero_counts == 1):
        raise InvalidGenerator("some element has no unique inverse")
    inv = np.argmax(tbl == 0, axis=1)
    if n <= _ASSOC_EXHAUSTIVE_LIMIT:
        for a in range(n):
            if not np.array_equal(tbl[tbl[a]], tbl[a][tbl]):
                raise InvalidGenerator(f"associativity fails at a={a}")
    else:
        rng = np.random.default_rng(_ASSOC_SEED)
        remaining = 10 * n * n
        while remaining > 0:
            m = min(remaining, _ASSOC_CHUNK)
            a = rng.integers(0, n, size=m)
            b = rng.integers(0, n, size=m)
            c = rng.integers(0, n, size=m)
            if not np.array_equal(tbl[tbl[a, b], c], tbl[a, tbl[b, c]]):
                raise InvalidGenerator("associativity fails on a random triple")
            remaining -= m
    return inv


def _assemble_table(identity_rep, generator_reps: list, compose: Callable,
                    label_of: Callable, order_cap: int):
    """BFS-close the generators and materialize the full n x n table.

    Element ids follow deterministic BFS from the identity with the given
    generator ordering.  Only the generator columns are computed by actual
    element composition; every other column y = x*g follows from the BFS
    tree via mult[a][y] = mult[mult[a][x]][g], filled vectorized.

    Returns (GroupTable, elements, index) where elements maps id -> rep and
    index maps rep -> id.
    """
    gens = []
    for g in generator_reps:
        if g != identity_rep and g not in gens:
            gens.append(g)

    elements = [identity_rep]
    index = {identity_rep: 0}
    tree: list[tuple[int, int] | None] = [None]
    qi = 0
    while qi < len(elements):
        x_rep = elements[qi]
        for j, g in enumerate(gens):
            y = compose(x_rep, g)
            if y not in index:
                if len(elements) + 1 > order_cap:
                    raise OrderCapExceeded(
                        f"closure exceeds the order cap ({order_cap})")
                index[y] = len(elements)
                elements.append(y)
                tree.append((qi, j))
        qi += 1

    n = len(elements)
    gen_ids = [index[g] for g in gens]
    tbl = np.empty((n, n), dtype=np.int32)
    tbl[:, 0] = np.arange(n)
    for j, g in enumerate(gens):
        col = [index[compose(rep, g)] for rep in elements]
        tbl[:, gen_ids[j]] = col
    gen_id_set = set(gen_ids)
    for y in range(1, n):
        if y in gen_id_set:
            continue
        x, j = tree[y]  # type: ignore[misc]
        tbl[:, y] = tbl[tbl[:, x], gen_ids[j]]

    inv = _validate_table(tbl)
    table = GroupTable(tbl.tolist(), inv.tolist(),
                       [label_of(rep) for rep in elements],
                       tuple(gen_ids))
    return table, elements, index


def build_group_from_permutations(degree: int, generators: Iterable,
                                  *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Group generated by permutations of {1..degree}, given as cycle lists.

    Each generator is an iterable of cycles, e.g. [(1, 2)] or [(1, 2), (3, 4)].
    """
    if degree < 1:
        raise InvalidGenerator("degree must be >= 1")
    reps = [perm_from_cycles(degree, cycles) for cycles in generators]
    identity = tuple(range(degree))
    table, _, _ = _assemble_table(identity, reps, compose_permutations,
                                  perm_label, order_cap)
    return table


def build_group_from_matrices(q: int, generators: Iterable[Sequence[int]],
                              *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Group generated by invertible upper-triangular 2x2 matrices mod q.

    Generators are (a, b, d) triples encoding [[a, b], [0, d]]; q must be
    prime and a, d nonzero mod q.
    """
    if not is_prime(q):
        raise InvalidGenerator(f"modulus {q} is not prime")
    reps = []
    for g in generators:
        a, b, d = (int(x) % q for x in g)
        if a == 0 or d == 0:
            raise InvalidGenerator(f"matrix {tuple(g)} is not invertible mod {q}")
        reps.append((a, b, d))

    def compose(x, y):
        return ((x[0] * y[0]) % q, (x[0] * y[1] + x[1] * y[2]) % q,
                (x[2] * y[2]) % q)

    table, _, _ = _assemble_table((1, 0, 1), reps, compose,
                                  lambda r: f"({r[0]},{r[1]},{r[2]})", order_cap)
    return table


def build_group_from_table(mult: Sequence[Sequence[int]],
                           labels: Sequence[str] | None = None,
                           *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Group from an explicit multiplication table (identity must be id 0)."""
    n = len(mult)
    if n > order_cap:
        raise OrderCapExceeded(f"table order {n} exceeds the cap ({order_cap})")
    try:
        tbl = np.array(mult, dtype=np.int32)
    except ValueError as exc:
        raise InvalidGenerator(f"malformed table: {exc}") from None
    if tbl.ndim != 2 or tbl.shape[0] != tbl.shape[1]:
        raise InvalidGenerator("multiplication table must be square")
    inv = _validate_table(tbl)
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    elif len(labels) != n:
        raise InvalidGenerator("labels length does not match table order")
    table = GroupTable(tbl.tolist(), inv.tolist(), list(labels), ())
    table.generators = _greedy_witnesses(table, (1 << n) - 1)
    return table


# ---------------------------------------------------------------------------
# subgroup sets


def _closure_list(mult: list[list[int]], gens: Sequence[int]) -> tuple[int, list[int]]:
    """Closure of a generator list: (bit mask, members in BFS order)."""
    mask = 1
    elems = [0]
    qi = 0
    while qi < len(elems):
        row = mult[elems[qi]]
        for g in gens:
            y = row[g]
            if not mask >> y & 1:
                mask |= 1 << y
                elems.append(y)
        qi += 1
    return mask, elems


def _greedy_witnesses(G: GroupTable, mask: int) -> tuple[int, ...]:
    """Canonical irredundant generating list: scan member ids ascending,
    keep each element not yet generated.  Depends only on the member set,
    so serialized lattices reproduce identical witnesses."""
    if mask == 1:
        return ()
    wits: list[int] = []
    closed = 1
    for x in _bits(mask):
        if not closed >> x & 1:
            wits.append(x)
            closed, _ = _closure_list(G.mult, wits)
            if closed == mask:
                break
    return tuple(wits)


class SubgroupSet:
    """A subgroup of a GroupTable as a membership bit vector.

    Identity is member-set equality over the same parent table; witness
    lists are generating sets kept for labeling and normality checks.
    """

    __slots__ = ("parent", "members", "order", "witnesses")

    def __init__(self, parent: GroupTable, members: int,
                 witnesses: Sequence[int], *, validate: bool = True):
        self.parent = parent
        self.members = members
        self.order = members.bit_count()
        self.witnesses = tuple(witnesses)
        if not members & 1:
            raise ValueError("subgroup must contain the identity (bit 0)")
        if parent.order % self.order != 0:
            raise ValueError("subgroup order does not divide the group order")
        if validate:
            mask, _ = _closure_list(parent.mult, self.witnesses)
            if mask != members:
                raise ValueError("witnesses do not generate the member set")

    @classmethod
    def from_members(cls, parent: GroupTable, members: int) -> "SubgroupSet":
        """Wrap a member mask, computing canonical greedy witnesses."""
        return cls(parent, members, _greedy_witnesses(parent, members),
                   validate=False)

    def elements(self) -> Iterator[int]:
        return _bits(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def __len__(self) -> int:
        return self.order

    def issubset(self, other: "SubgroupSet") -> bool:
        return self.members & other.members == self.members

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubgroupSet) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<SubgroupSet order={self.order} of {self.parent.order}>"


def trivial_subgroup(G: GroupTable) -> SubgroupSet:
    return SubgroupSet(G, 1, (), validate=False)


def full_subgroup(G: GroupTable) -> SubgroupSet:
    full = G._memo.get("full")
    if full is None:
        full = SubgroupSet.from_members(G, (1 << G.order) - 1)
        G._memo["full"] = full
    return full


def element_order(G: GroupTable, x: int) -> int:
    if not 0 <= x < G.order:
        raise ValueError(f"element id {x} out of range")
    return _element_orders(G)[x]


def _element_orders(G: GroupTable) -> list[int]:
    orders = G._memo.get("element_orders")
    if orders is None:
        orders = [1] * G.order
        for x in range(1, G.order):
            y = x
            k = 1
            while y != 0:
                y = G.mult[y][x]
                k += 1
            orders[x] = k
        G._memo["element_orders"] = orders
    return orders


def subgroup_closure(G: GroupTable, seed: Iterable[int]) -> SubgroupSet:
    """Smallest subgroup containing the seed; witnesses are the seed itself
    (deduplicated, sorted)."""
    wits = tuple(sorted(set(int(x) for x in seed)))
    for x in wits:
        if not 0 <= x < G.order:
            raise ValueError(f"element id {x} out of range")
    mask, _ = _closure_list(G.mult, wits)
    return SubgroupSet(G, mask, wits, validate=False)


def _require_same_parent(A: SubgroupSet, B: SubgroupSet) -> None:
    if A.parent is not B.parent:
        raise ParentMismatch("subgroups live over different group tables")


def intersect(A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    """A ∩ B; witnesses recomputed as a greedy minimal generating list."""
    _require_same_parent(A, B)
    return SubgroupSet.from_members(A.parent, A.members & B.members)


def index_of(B: SubgroupSet, A: SubgroupSet) -> int:
    """[B : A] for A a subgroup of B."""
    _require_same_parent(A, B)
    if A.members & B.members != A.members:
        raise NotContained("first argument must contain the second")
    return B.order // A.order


def product_set(A: SubgroupSet, Q: SubgroupSet) -> SubgroupSet:
    """The subgroup AQ = {aq}; Q must be normal in the parent group."""
    _require_same_parent(A, Q)
    G = A.parent
    if not is_normal(Q, full_subgroup(G)):
        raise NotNormal("second factor must be normal in the parent group")
    mult = G.mult
    q_ids = list(_bits(Q.members))
    mask = 0
    for a in A.elements():
        row = mult[a]
        for q in q_ids:
            mask |= 1 << row[q]
    inter = (A.members & Q.members).bit_count()
    assert mask.bit_count() * inter == A.order * Q.order, \
        "|AQ| != |A||Q|/|A∩Q|"
    wits = tuple(sorted(set(A.witnesses) | set(Q.witnesses)))
    return SubgroupSet(G, mask, wits)


def conjugate_subgroup(A: SubgroupSet, g: int) -> SubgroupSet:
    """The conjugate g A g^-1."""
    G = A.parent
    if not 0 <= g < G.order:
        raise ValueError(f"element id {g} out of range")
    mult, gi = G.mult, G.inv[g]
    row = mult[g]
    wits = tuple(mult[row[w]][gi] for w in A.witnesses)
    return SubgroupSet(G, _conjugate_mask(G, A.members, g), wits, validate=False)


def _conjugate_mask(G: GroupTable, mask: int, g: int) -> int:
    mult, gi = G.mult, G.inv[g]
    row = mult[g]
    out = 0
    for a in _bits(mask):
        out |= 1 << mult[row[a]][gi]
    return out


def is_normal(A: SubgroupSet, B: SubgroupSet) -> bool:
    """True iff g A g^-1 = A for every generator witness g of B.

    Sufficient because the witnesses generate B; requires A <= B.
    """
    _require_same_parent(A, B)
    if A.members & B.members != A.members:
        raise NotContained("normality check requires A <= B")
    mult, inv = A.parent.mult, A.parent.inv
    mask = A.members
    for g in B.witnesses:
        row, gi = mult[g], inv[g]
        for a in _bits(mask):
            if not mask >> mult[row[a]][gi] & 1:
                return False
    return True


def normal_core(A: SubgroupSet, G: GroupTable) -> SubgroupSet:
    """Largest normal subgroup of G inside A: the intersection of all
    conjugates g A g^-1."""
    if A.parent is not G:
        raise ParentMismatch("subgroup does not live over the given table")
    mask = A.members
    for g in range(1, G.order):
        mask &= _conjugate_mask(G, A.members, g)
        if mask == 1:
            break
    return SubgroupSet.from_members(G, mask)


# ---------------------------------------------------------------------------
# derived series, Sylow subgroups, structure flags


@dataclass(frozen=True)
class DerivedSeries:
    """G = G1 ⊵ G2 ⊵ ..., each term the commutator subgroup of the previous,
    ending at the first stable term."""

    terms: tuple[SubgroupSet, ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(t.order for t in self.terms)


def _commutator_subgroup_mask(G: GroupTable, S: SubgroupSet) -> int:
    """Member mask of [S, S].

    Computed as the closure of all witness-pair commutators together with
    their conjugates under the witnesses (the normal closure in S), which
    equals the subgroup generated by all commutators of S.
    """
    mult, inv = G.mult, G.inv
    wits = S.witnesses
    if not wits:
        return 1
    gens: set[int] = set()
    for i, a in enumerate(wits):
        for b in wits[i:]:
            ab = mult[a][b]
            c = mult[mult[ab][inv[a]]][inv[b]]
            if c:
                gens.add(c)
    gen_list = sorted(gens)
    mask, elems = _closure_list(mult, gen_list)
    while True:
        added: set[int] = set()
        for g in wits:
            row, gi = mult[g], inv[g]
            for x in elems:
                c = mult[row[x]][gi]
                if not mask >> c & 1:
                    added.add(c)
        if not added:
            return mask
        gen_list = sorted(set(gen_list) | added)
        mask, elems = _closure_list(mult, gen_list)


def derived_series(G: GroupTable) -> DerivedSeries:
    series = G._memo.get("derived_series")
    if series is not None:
        return series
    terms = [full_subgroup(G)]
    while True:
        nxt = _commutator_subgroup_mask(G, terms[-1])
        if nxt == terms[-1].members:
            break
        terms.append(SubgroupSet.from_members(G, nxt))
        if nxt == 1:
            break
    series = DerivedSeries(tuple(terms))
    G._memo["derived_series"] = series
    return series


def sylow_subgroup(H: SubgroupSet, p: int) -> SubgroupSet:
    """A subgroup of H whose order is the exact p-part of |H|.

    p-subgroup ascent: grow a p-subgroup by adjoining, in ascending id
    order, a p-power-order element of H that normalizes the current
    subgroup.  Sylow theory guarantees such an element exists until the
    full p-part is reached, so the scan always progresses.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    G = H.parent
    m = H.order
    while m % p == 0:
        m //= p
    target = H.order // m
    if target == 1:
        return trivial_subgroup(G)
    mult, inv = G.mult, G.inv
    orders = _element_orders(G)
    mask, elems = 1, [0]
    wits: tuple[int, ...] = ()
    while mask.bit_count() < target:
        for x in _bits(H.members):
            if mask >> x & 1:
                continue
            if p_power_exponent(orders[x], p) is None:
                continue
            row, xi = mult[x], inv[x]
            if all(mask >> mult[row[y]][xi] & 1 for y in elems):
                wits += (x,)
                mask, elems = _closure_list(mult, wits)
                break
        else:  # pragma: no cover - impossible for a valid group table
            raise RuntimeError("p-subgroup ascent stalled")
    return SubgroupSet(G, mask, wits, validate=False)


def is_nilpotent_subgroup(H: SubgroupSet) -> bool:
    """True iff every Sylow subgroup of H is normal in H."""
    return all(is_normal(sylow_subgroup(H, p), H)
               for p, _ in factorize(H.order))


@dataclass(frozen=True)
class StructureFlags:
    is_abelian: bool
    is_nilpotent: bool
    is_metabelian: bool
    is_solvable: bool


def structure_flags(G: GroupTable) -> StructureFlags:
    flags = G._memo.get("structure_flags")
    if flags is not None:
        return flags
    mult = G.mult
    abelian = True
    for a in range(G.order):
        row = mult[a]
        for b in range(a + 1, G.order):
            if row[b] != mult[b][a]:
                abelian = False
                break
        if not abelian:
            break
    series = derived_series(G)
    solvable = series.terms[-1].order == 1
    metabelian = solvable and len(series.terms) <= 3
    nilpotent = abelian or is_nilpotent_subgroup(full_subgroup(G))
    flags = StructureFlags(abelian, nilpotent, metabelian, solvable)
    G._memo["structure_flags"] = flags
    return flags


def p_prime_complement(H: SubgroupSet, p: int) -> SubgroupSet:
    """Elements of H of order coprime to p; a subgroup because H is
    nilpotent (checked)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not is_nilpotent_subgroup(H):
        raise NotNilpotent("p'-complement requires a nilpotent subgroup")
    orders = _element_orders(H.parent)
    mask = 0
    for x in H.elements():
        if orders[x] % p != 0:
            mask |= 1 << x
    return SubgroupSet.from_members(H.parent, mask)
