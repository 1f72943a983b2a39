"""Direct powers G^n with mixed-radix element indexing.

Coordinate ``i`` (0-based) of an element contributes the digit of weight
``|G| ** (n - 1 - i)``, so the enumeration order of G^n is lexicographic in
the base-group indices. Multiplication is componentwise through the base
group; no table for G^n itself is kept unless it is small.
"""

from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .errors import ResourceLimitError
from .group import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_SUBSETS,
    FiniteGroup,
    GenSet,
    commutator_subgroup,
    is_perfect,
    is_solvable,
    minimum_generating_set,
    quotient,
    rank,
)


class PowerGroup(FiniteGroup):
    def __init__(self, base, n, max_elements=DEFAULT_MAX_ELEMENTS):
        if n < 1:
            raise ValueError("power exponent must be positive")
        size = base.order**n
        if size > max_elements:
            raise ResourceLimitError(
                f"|{base.name}|^{n} = {size} exceeds the element cap {max_elements} "
                f"(raise --max-states)",
                cap=max_elements,
                flag="--max-states",
            )
        super().__init__(size)
        self.base = base
        self.n = n
        self.name = f"{base.name}^{n}" if n > 1 else base.name
        self._weights = np.array([base.order ** (n - 1 - i) for i in range(n)], dtype=np.int64)

    def digits(self, x):
        """(len(x), n) array of base indices."""
        x = np.asarray(x, dtype=np.int64).ravel()
        return (x[:, None] // self._weights[None, :]) % self.base.order

    def undigits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._weights

    def encode(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        if any(not 0 <= c < self.base.order for c in coords):
            raise ValueError("coordinate out of range")
        return int(sum(c * int(w) for c, w in zip(coords, self._weights)))

    def decode(self, index):
        if not 0 <= index < self.order:
            raise ValueError("index out of range")
        return tuple(int(c) for c in self.digits([index])[0])

    def _mul_raw(self, x, y):
        dx, dy = self.digits(x), self.digits(y)
        out = np.empty_like(dx)
        for c in range(self.n):
            out[:, c] = self.base.mul_array(dx[:, c], dy[:, c])
        return self.undigits(out)

    def _inverses(self):
        values = np.arange(self.order, dtype=np.int64)
        return self.undigits(self.base.inverses[self.digits(values)])

    def element(self, i):
        return self.decode(i)

    def format_element(self, i):
        return "(" + ", ".join(self.base.format_element(c) for c in self.decode(i)) + ")"

    def index_of(self, element):
        coords = [c if isinstance(c, (int, np.integer)) else self.base.index_of(c) for c in element]
        return self.encode(coords)

    def embed(self, slot, base_index):
        """Index of (1, ..., g at 0-based ``slot``, ..., 1)."""
        coords = [0] * self.n
        coords[slot] = base_index
        return self.encode(coords)

    @cached_property
    def generators(self):
        gens = []
        for slot in range(self.n):
            for g in self.base.generators:
                gens.append(self.embed(slot, g))
        return tuple(gens)


def direct_power(group, n, max_elements=DEFAULT_MAX_ELEMENTS):
    return PowerGroup(group, n, max_elements=max_elements)


def canonical_genset(genset, n, power=None, max_elements=DEFAULT_MAX_ELEMENTS, check=True):
    """C^n(A): each generator of A placed alone in each slot, slot-major."""
    P = power if power is not None else direct_power(genset.group, n, max_elements)
    members, labels = [], []
    for slot in range(n):
        for m, lab in zip(genset.members, genset.labels):
            members.append(P.embed(slot, m))
            labels.append(f"{lab}_{slot + 1}" if n > 1 else lab)
    name = f"C^{n}({genset.name})" if genset.name else f"C^{n}"
    return GenSet.build(P, members, labels, name=name, allow_identity=genset.allow_identity, check=check)


def coprime_genset(genset, n, power=None, max_elements=DEFAULT_MAX_ELEMENTS, check=True):
    """The n-element staircase generating set for G^n built from k = |A| <= n
    generators of pairwise coprime orders.

    Row i (1-based) places a_1 at slot i, a_2 at slot i+1, ..., a_k at slot
    i+k-1, wrapping past slot n.
    """
    G = genset.group
    k = len(genset.members)
    if n < k:
        raise ValueError(f"need n >= |A| = {k}, got n = {n}")
    orders = [int(G.element_orders[m]) for m in genset.members]
    for i in range(k):
        for j in range(i + 1, k):
            if gcd(orders[i], orders[j]) != 1:
                raise ValueError(f"generator orders {orders} are not pairwise coprime")
    if G.order > 1 and is_perfect(G):
        raise ValueError(f"{G.name} is perfect; the coprime construction needs an imperfect group")
    P = power if power is not None else direct_power(G, n, max_elements)
    members = []
    for i in range(n):
        coords = [0] * n
        for j, a in enumerate(genset.members):
            coords[(i + j) % n] = a
        members.append(P.encode(coords))
    labels = [f"g{i + 1}" for i in range(n)]
    name = "C'" if genset.name.startswith("A'") else "C"
    return GenSet.build(P, members, labels, name=name, check=check)


def recovery_exponent(orders, i):
    """Smallest positive l with l = 1 mod orders[i] and l = 0 mod orders[j], j != i.

    Raising (.., a_1, .., a_k, ..) to this power isolates a_i. Orders must be
    pairwise coprime.
    """
    m_i = orders[i]
    rest = 1
    for j, m in enumerate(orders):
        if j != i:
            rest = lcm(rest, m)
    if gcd(m_i, rest) != 1:
        raise ValueError("orders are not pairwise coprime")
    if m_i == 1:
        return rest
    ell = (rest * pow(rest, -1, m_i)) % (m_i * rest)
    return ell


def projection(power, x, i):
    """i-th coordinate (1-based) of element index ``x``."""
    if not 1 <= i <= power.n:
        raise ValueError(f"coordinate {i} out of range 1..{power.n}")
    return power.decode(x)[i - 1]


def genset_projection(genset, i):
    """A pi_i as an ordered list of distinct base indices (identity kept)."""
    power = genset.group
    out = []
    for m in genset.members:
        c = projection(power, m, i)
        if c not in out:
            out.append(c)
    return out


@dataclass(frozen=True)
class PowerRank:
    value: int
    source: str  # "formula" or "brute-force"
    rule: str
    alpha: int
    beta: int

    def to_dict(self):
        return {"value": self.value, "source": self.source, "rule": self.rule,
                "alpha": self.alpha, "beta": self.beta}


def ceil_div(a, b):
    return -(-a // b)


def power_rank(group, n, max_subsets=DEFAULT_MAX_SUBSETS, max_elements=DEFAULT_MAX_ELEMENTS):
    """rank(G^n), from a closed formula when one applies, else by brute force."""
    alpha = rank(group, max_subsets=max_subsets)
    if group.order == 1:
        return PowerRank(0, "formula", "trivial group", 0, 0)
    q = quotient(group, commutator_subgroup(group))
    beta = rank(q, max_subsets=max_subsets) if q.order > 1 else 0
    if alpha == beta:
        return PowerRank(n * alpha, "formula", "rank(G) = rank(G/G'): rank(G^n) = n rank(G)", alpha, beta)
    if beta >= 2 and n >= ceil_div(alpha - 1, beta - 1):
        return PowerRank(beta * n, "formula", "imperfect, n >= (alpha-1)/(beta-1)", alpha, beta)
    if beta >= 1 and is_solvable(group) and n >= ceil_div(alpha, beta):
        return PowerRank(beta * n, "formula", "solvable, n >= alpha/beta", alpha, beta)
    P = direct_power(group, n, max_elements=max_elements)
    value = len(minimum_generating_set(P, max_subsets=max_subsets))
    return PowerRank(value, "brute-force", "exhaustive subset search", alpha, beta)
