"""Fully enumerated finite groups and structural computations.

Every group here indexes its elements ``0 .. order - 1`` with the identity at
index 0. Multiplication is exposed both elementwise (``mul``) and vectorized
over numpy index arrays (``mul_array``); the vectorized form is what the BFS
code and subgroup closures use.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import ResourceLimitError
from .perm import Permutation, format_cycles

DEFAULT_MAX_ELEMENTS = 10**7
DEFAULT_MAX_SUBSETS = 10**6
# groups up to this order get a materialized multiplication table
TABLE_LIMIT = 1024


class FiniteGroup:
    """Base class: subclasses implement ``_mul_raw``, ``_inverses`` and ``element``."""

    name = "G"

    def __init__(self, order):
        self.order = int(order)
        self._table = None

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} of order {self.order}>"

    @property
    def identity_index(self):
        return 0

    def _mul_raw(self, x, y):
        raise NotImplementedError

    def _inverses(self):
        raise NotImplementedError

    def element(self, i):
        raise NotImplementedError

    def format_element(self, i):
        return str(self.element(i))

    def index_of(self, element):
        raise NotImplementedError

    @property
    def table(self):
        """Multiplication table (only for groups of order <= TABLE_LIMIT)."""
        if self._table is None:
            if self.order > TABLE_LIMIT:
                raise ResourceLimitError(
                    f"refusing to materialize a {self.order}x{self.order} table",
                    cap=TABLE_LIMIT,
                )
            idx = np.arange(self.order, dtype=np.int64)
            x = np.repeat(idx, self.order)
            y = np.tile(idx, self.order)
            self._table = self._mul_raw(x, y).reshape(self.order, self.order)
        return self._table

    def mul_array(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        x, y = np.broadcast_arrays(x, y)
        if self.order <= TABLE_LIMIT:
            return self.table[x, y]
        return self._mul_raw(x.ravel(), y.ravel()).reshape(x.shape)

    def mul(self, i, j):
        return int(self.mul_array(np.array([i]), np.array([j]))[0])

    @cached_property
    def inverses(self):
        return np.asarray(self._inverses(), dtype=np.int64)

    def inv(self, i):
        return int(self.inverses[i])

    def power(self, i, e):
        if e < 0:
            i, e = self.inv(i), -e
        result, base = 0, i
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def evaluate(self, letters):
        """Product of a sequence of element indices, left to right."""
        result = 0
        for x in letters:
            result = self.mul(result, x)
        return result

    @cached_property
    def generators(self):
        """Some generating set as a tuple of indices (greedy if not known)."""
        return greedy_generators(self, np.arange(self.order))

    @cached_property
    def element_orders(self):
        return element_orders(self)

    def is_abelian(self):
        gens = self.generators
        return all(self.mul(a, b) == self.mul(b, a) for a, b in combinations(gens, 2))


class PermutationGroup(FiniteGroup):
    """A group whose elements are :class:`Permutation` instances."""

    def __init__(self, elements, generators=None, name=None):
        super().__init__(len(elements))
        self.elements = list(elements)
        self.degree = self.elements[0].degree
        if not self.elements[0].is_identity():
            raise ValueError("index 0 must be the identity")
        self._index = {p: i for i, p in enumerate(self.elements)}
        if len(self._index) != self.order:
            raise ValueError("duplicate elements")
        self._images = np.array([p.images for p in self.elements], dtype=np.int16)
        keys = self._keys(self._images)
        self._key_order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._key_order]
        if generators is not None:
            self.__dict__["generators"] = tuple(generators)
        if name:
            self.name = name

    def _keys(self, images):
        rows = np.ascontiguousarray(images, dtype=np.int16)
        return rows.view(np.dtype((np.void, rows.shape[1] * 2))).ravel()

    def _lookup(self, images):
        keys = self._keys(images)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise ValueError("product left the group (not closed)")
        return self._key_order[pos].astype(np.int64)

    def _mul_raw(self, x, y):
        px = self._images[x]
        qy = self._images[y]
        return self._lookup(np.take_along_axis(qy, px.astype(np.int64), axis=1))

    def _inverses(self):
        inv = np.empty_like(self._images)
        rows = np.arange(self.order)[:, None]
        inv[rows, self._images] = np.arange(self.degree, dtype=np.int16)[None, :]
        return self._lookup(inv)

    def element(self, i):
        return self.elements[i]

    def format_element(self, i):
        return format_cycles(self.elements[i])

    def index_of(self, element):
        if isinstance(element, Permutation):
            try:
                return self._index[element]
            except KeyError:
                raise ValueError(f"{element} is not in {self.name}") from None
        raise TypeError(f"expected Permutation, got {type(element).__name__}")


class SubgroupView(FiniteGroup):
    """Subgroup given by sorted parent indices; ``embedding[i]`` is the parent index."""

    def __init__(self, parent, members, name=None):
        members = np.unique(np.asarray(members, dtype=np.int64))
        if members.size == 0 or members[0] != 0:
            raise ValueError("a subgroup must contain the identity")
        super().__init__(members.size)
        self.parent = parent
        self.embedding = members
        self.name = name or f"H<{parent.name}"

    def _to_local(self, parent_indices):
        pos = np.searchsorted(self.embedding, parent_indices)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self.embedding[pos] == parent_indices):
            raise ValueError("product left the subgroup")
        return pos

    def _mul_raw(self, x, y):
        return self._to_local(self.parent.mul_array(self.embedding[x], self.embedding[y]))

    def _inverses(self):
        return self._to_local(self.parent.inverses[self.embedding])

    def element(self, i):
        return self.parent.element(int(self.embedding[i]))

    def format_element(self, i):
        return self.parent.format_element(int(self.embedding[i]))

    def index_of(self, element):
        return int(self._to_local(np.array([self.parent.index_of(element)]))[0])

    def contains_parent(self, parent_index):
        pos = np.searchsorted(self.embedding, parent_index)
        return pos < self.order and self.embedding[pos] == parent_index


class QuotientGroup(FiniteGroup):
    """Coset group G/N; coset ``i`` has the minimal parent index ``reps[i]``."""

    def __init__(self, parent, normal, labels, reps):
        super().__init__(len(reps))
        self.parent = parent
        self.normal = normal
        self.labels = labels
        self.reps = reps
        self.name = f"{parent.name}/{normal.name}"

    def _mul_raw(self, x, y):
        return self.labels[self.parent.mul_array(self.reps[x], self.reps[y])]

    def _inverses(self):
        return self.labels[self.parent.inverses[self.reps]]

    def element(self, i):
        return int(self.reps[i])

    def format_element(self, i):
        return "[" + self.parent.format_element(int(self.reps[i])) + "]"

    def index_of(self, element):
        return int(self.labels[self.parent.index_of(element)])

    @cached_property
    def generators(self):
        gens = []
        for g in self.parent.generators:
            c = int(self.labels[g])
            if c != 0 and c not in gens:
                gens.append(c)
        return tuple(gens)


@dataclass(frozen=True)
class AbelianType:
    """Invariant factors ``(m1, ..., mk)`` with each dividing its predecessor."""

    invariants: tuple

    def __post_init__(self):
        inv = tuple(int(m) for m in self.invariants)
        object.__setattr__(self, "invariants", inv)
        if any(m < 2 for m in inv):
            raise ValueError("invariant factors must be >= 2")
        for prev, m in zip(inv, inv[1:]):
            if prev % m:
                raise ValueError(f"{m} does not divide {prev}")

    @property
    def order(self):
        out = 1
        for m in self.invariants:
            out *= m
        return out

    def __len__(self):
        return len(self.invariants)


@dataclass(frozen=True, eq=False)
class GenSet:
    """An ordered, validated generating set of element indices."""

    group: FiniteGroup
    members: tuple
    labels: tuple
    name: str = ""
    allow_identity: bool = False

    @classmethod
    def build(cls, group, members, labels=None, name="", allow_identity=False, check=True):
        members = [int(m) for m in members]
        if labels is None:
            labels = [group.format_element(m) for m in members]
        labels = list(labels)
        if len(labels) != len(members):
            raise ValueError("one label per member required")
        if not allow_identity:
            keep = [i for i, m in enumerate(members) if m != 0]
            members = [members[i] for i in keep]
            labels = [labels[i] for i in keep]
        if len(set(members)) != len(members):
            raise ValueError("duplicate generators")
        if any(not 0 <= m < group.order for m in members):
            raise ValueError("generator index out of range")
        if check and not generates(group, members):
            raise ValueError(f"{name or 'set'} does not generate {group.name}")
        return cls(group, tuple(members), tuple(labels), name, allow_identity)

    def __len__(self):
        return len(self.members)

    @property
    def nontrivial_size(self):
        """|X \\ {1}|, the size diameter bounds use."""
        return sum(1 for m in self.members if m != 0)

    def describe(self):
        body = "{" + ",".join(self.labels) + "}"
        return f"{self.name} = {body}" if self.name else body


def closure(seed, max_elements=DEFAULT_MAX_ELEMENTS, name=None):
    """Enumerate <seed> by BFS from the identity, right-multiplying by seed in order.

    The discovery order is the canonical element order.
    """
    seed = list(seed)
    if not seed:
        raise ValueError("closure needs a nonempty seed")
    degree = seed[0].degree
    if any(p.degree != degree for p in seed):
        raise ValueError("seed permutations must share a degree")
    ident = Permutation.identity(degree)
    gens = [tuple(p.images) for p in seed if not p.is_identity()]
    index = {ident.images: 0}
    elements = [ident.images]
    queue = deque([ident.images])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = tuple(g[x] for x in cur)
            if nxt not in index:
                index[nxt] = len(elements)
                elements.append(nxt)
                queue.append(nxt)
                if len(elements) > max_elements:
                    raise ResourceLimitError(
                        f"closure exceeded {max_elements} elements (raise --max-states)",
                        cap=max_elements,
                        flag="--max-states",
                    )
    gen_idx = []
    for g in gens:
        i = index[g]
        if i not in gen_idx:
            gen_idx.append(i)
    return PermutationGroup([Permutation(e) for e in elements], generators=gen_idx, name=name)


def subgroup_mask(group, gens):
    """Boolean membership mask of <gens> (indices into ``group``)."""
    mask = np.zeros(group.order, dtype=bool)
    mask[0] = True
    gens = [int(g) for g in gens if g != 0]
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and gens:
        nxt = np.concatenate([group.mul_array(frontier, g) for g in gens])
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return mask


def generated_subgroup(group, gens, name=None):
    return SubgroupView(group, np.flatnonzero(subgroup_mask(group, gens)), name=name)


def generates(group, gens):
    gens = [g for g in gens if g != 0]
    if group.order == 1:
        return True
    if not gens:
        return False
    return bool(subgroup_mask(group, gens).all())


def greedy_generators(group, members):
    """Generators of the subgroup with the given parent ``members``, chosen greedily."""
    mask = np.zeros(group.order, dtype=bool)
    mask[0] = True
    gens = []
    for m in np.asarray(members, dtype=np.int64):
        if not mask[m]:
            gens.append(int(m))
            mask = subgroup_mask(group, gens)
    return tuple(gens)


def commutator(group, x, y):
    """x^-1 y^-1 x y."""
    inv = group.inverses
    return group.evaluate([int(inv[x]), int(inv[y]), x, y])


def normal_closure(group, seed, conjugators=None):
    """Smallest subgroup containing ``seed`` and stable under conjugation by ``conjugators``."""
    conjugators = group.generators if conjugators is None else tuple(conjugators)
    inv = group.inverses
    gens = [int(s) for s in seed if s != 0]
    mask = subgroup_mask(group, gens)
    changed = True
    while changed:
        changed = False
        members = np.flatnonzero(mask)
        for x in conjugators:
            conj = group.mul_array(group.mul_array(inv[x], members), x)
            outside = conj[~mask[conj]]
            if outside.size:
                gens.append(int(outside[0]))
                mask = subgroup_mask(group, gens)
                members = np.flatnonzero(mask)
                changed = True
    return np.flatnonzero(mask)


def commutator_of(group, members, other_gens=None):
    """[H, K] inside ``group`` for H given by parent members, K by generators.

    H must be normalized by K, and K defaults to the whole group.
    """
    hgens = greedy_generators(group, members)
    kgens = group.generators if other_gens is None else tuple(other_gens)
    seed = [commutator(group, h, k) for h in hgens for k in kgens]
    return normal_closure(group, seed, conjugators=kgens if other_gens is not None else None)


def commutator_subgroup(group):
    """Derived subgroup G' as a :class:`SubgroupView` of ``group``."""
    gens = group.generators
    seed = [commutator(group, x, y) for x, y in combinations(gens, 2)]
    return SubgroupView(group, normal_closure(group, seed), name=f"{group.name}'")


def is_perfect(group):
    return commutator_subgroup(group).order == group.order


def lower_central_series(group):
    """Orders-decreasing list of member arrays gamma_1 = G, gamma_{i+1} = [gamma_i, G]."""
    series = [np.arange(group.order)]
    while True:
        nxt = commutator_of(group, series[-1])
        if nxt.size == series[-1].size:
            return series
        series.append(nxt)


def is_nilpotent(group):
    return lower_central_series(group)[-1].size == 1


def derived_series(group):
    series = [np.arange(group.order)]
    while True:
        cur = series[-1]
        gens = greedy_generators(group, cur)
        nxt = commutator_of(group, cur, other_gens=gens) if gens else cur
        if nxt.size == cur.size:
            return series
        series.append(nxt)


def is_solvable(group):
    return derived_series(group)[-1].size == 1


def is_normal(group, sub):
    members = sub.embedding
    mask = np.zeros(group.order, dtype=bool)
    mask[members] = True
    inv = group.inverses
    for x in group.generators:
        conj = group.mul_array(group.mul_array(inv[x], members), x)
        if not mask[conj].all():
            return False
    return True


def quotient(group, normal):
    """G/N with cosets ordered by their minimal element index."""
    if not isinstance(normal, SubgroupView) or normal.parent is not group:
        normal = SubgroupView(group, normal)
    if not is_normal(group, normal):
        raise ValueError(f"{normal.name} is not normal in {group.name}")
    labels = np.full(group.order, -1, dtype=np.int64)
    reps = []
    for g in range(group.order):
        if labels[g] < 0:
            coset = group.mul_array(g, normal.embedding)
            labels[coset] = len(reps)
            reps.append(g)
    return QuotientGroup(group, normal, labels, np.array(reps, dtype=np.int64))


def element_orders(group):
    allidx = np.arange(group.order, dtype=np.int64)
    orders = np.zeros(group.order, dtype=np.int64)
    cur = allidx.copy()
    t = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = t
        if orders.all():
            return orders
        cur = group.mul_array(cur, allidx)
        t += 1


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(group):
    """Invariant factors of an abelian group.

    For each prime p the number of cyclic p-factors of exponent >= j is read
    off |{g : g^(p^j) = 1}| = p^(sum_i min(e_i, j)).
    """
    if not group.is_abelian():
        raise ValueError(f"{group.name} is not abelian")
    orders = group.element_orders
    exponents = {}
    for p in _prime_factors(group.order):
        logs = [0]
        j = 1
        while True:
            count = int(np.count_nonzero((p**j) % orders == 0))
            e, c = 0, count
            while c % p == 0 and c > 1:
                c //= p
                e += 1
            logs.append(e)
            if e == logs[-2] and j > 1:
                break
            j += 1
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        parts = []
        for j, cnt in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            parts.extend([j] * (cnt - nxt))
        exponents[p] = sorted(parts, reverse=True)
    k = max((len(v) for v in exponents.values()), default=0)
    inv = []
    for i in range(k):
        m = 1
        for p, parts in exponents.items():
            if i < len(parts):
                m *= p ** parts[i]
        inv.append(m)
    return AbelianType(tuple(inv))


def rank_lower_bound(group):
    """rank(G/G') computed from abelian invariants; at least 1 for nontrivial G."""
    if group.order == 1:
        return 0
    if group.is_abelian():
        return len(abelian_invariants(group))
    q = quotient(group, commutator_subgroup(group))
    return max(1, len(abelian_invariants(q)) if q.order > 1 else 0)


def minimum_generating_set(group, max_subsets=DEFAULT_MAX_SUBSETS, start=None):
    """Lexicographically first (by index) generating set of minimum size.

    Subsets are tried in increasing size from the abelianization bound. A
    subset whose image fails to generate G/G' is rejected without a closure.
    """
    if group.order == 1:
        return ()
    lower = rank_lower_bound(group) if start is None else start
    abel = quotient(group, commutator_subgroup(group))
    labels = abel.labels
    abel_cache = {}

    def abel_ok(subset):
        key = frozenset(int(labels[s]) for s in subset) - {0}
        hit = abel_cache.get(key)
        if hit is None:
            hit = abel_cache[key] = generates(abel, list(key))
        return hit

    tried = 0
    candidates = range(1, group.order)
    for size in range(max(lower, 1), group.order):
        for subset in combinations(candidates, size):
            tried += 1
            if tried > max_subsets:
                raise ResourceLimitError(
                    f"rank search exceeded {max_subsets} candidate subsets "
                    f"(raise --max-subsets)",
                    cap=max_subsets,
                    flag="--max-subsets",
                )
            if abel_ok(subset) and generates(group, subset):
                return subset
    raise AssertionError("unreachable: the whole group generates itself")


def rank(group, max_subsets=DEFAULT_MAX_SUBSETS):
    return len(minimum_generating_set(group, max_subsets=max_subsets))


def iter_generating_sets(group, size):
    """All identity-free generating sets of exactly ``size`` elements, in lex order."""
    for subset in combinations(range(1, group.order), size):
        if generates(group, subset):
            yield subset
