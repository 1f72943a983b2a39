"""Generator constructions for S_n and D_n, and constructive word procedures.

``sn_express`` writes a permutation through transpositions and adjacent
transpositions. ``dihedral_power_express`` writes an element of D_n^k (n odd)
over the staircase generating set g_1, ..., g_k using the commutation rules
between consecutive g_i; every returned word is re-evaluated before it is
handed back.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .diameter import Word, evaluate
from .group import GenSet, closure
from .perm import Permutation
from .power import coprime_genset, direct_power


def _cycle(points, degree):
    return Permutation.from_cycles([points], degree)


def sn_elements(n):
    """(a, a', b) as permutations of degree n."""
    if n < 3:
        raise ValueError("S_n generators are defined for n >= 3")
    a = _cycle(range(1, n + 1), n)
    a_prime = _cycle(range(2, n + 1), n)
    b = _cycle((1, 2), n)
    return a, a_prime, b


@lru_cache(maxsize=None)
def symmetric_group(n, variant=None):
    variant = variant or ("A" if n % 2 else "A'")
    a, a_prime, b = sn_elements(n)
    first = a if variant == "A" else a_prime
    return closure([first, b], name=f"S{n}")


@lru_cache(maxsize=None)
def sn_generators(n, variant=None):
    """{a, b} for odd n and {a', b} for even n, unless ``variant`` forces one."""
    variant = variant or ("A" if n % 2 else "A'")
    if variant not in ("A", "A'"):
        raise ValueError(f"unknown S_n generating set {variant!r}")
    a, a_prime, b = sn_elements(n)
    G = symmetric_group(n, variant)
    first = a if variant == "A" else a_prime
    label = "a" if variant == "A" else "a'"
    return GenSet.build(G, [G.index_of(first), G.index_of(b)], [label, "b"], name=variant)


def dn_elements(n):
    """Rotation a = (1 2 ... n) and the reflection b fixing 1."""
    if n < 3:
        raise ValueError("D_n generators are defined for n >= 3")
    a = _cycle(range(1, n + 1), n)
    b = Permutation([0] + [n - i for i in range(1, n)])
    return a, b


@lru_cache(maxsize=None)
def dn_generators(n):
    a, b = dn_elements(n)
    G = closure([a, b], name=f"D{n}")
    return GenSet.build(G, [G.index_of(a), G.index_of(b)], ["a", "b"], name="A")


# -- symmetric groups ---------------------------------------------------------

def adjacent_transposition_word(i, n, variant):
    """Letters for (i, i+1), 1-based, as a^{n-i+1} b a^{i-1} (a -> a'b for A')."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"(i, i+1) needs 1 <= i <= {n - 1}")
    a_word = (0,) if variant == "A" else (0, 1)
    return a_word * (n - i + 1) + (1,) + a_word * (i - 1)


def transposition_as_adjacent(i, j):
    """(i, j) with i < j as (i,i+1)(i+1,i+2)...(j-1,j)...(i+1,i+2)(i,i+1)."""
    if not i < j:
        raise ValueError("need i < j")
    up = list(range(i, j))
    return up + up[-2::-1]


def transpositions_of(sigma):
    """Transpositions (1-based pairs) whose left-to-right product is ``sigma``.

    A cycle (c1 c2 ... cm) is (c1 c2)(c1 c3)...(c1 cm).
    """
    out = []
    for cycle in sigma.cycles():
        c1 = cycle[0] + 1
        for c in cycle[1:]:
            out.append(tuple(sorted((c1, c + 1))))
    return out


def sn_diameter_bound_for(n, variant):
    per_adjacent = n + 1 if variant == "A" else 2 * n + 1
    return (n - 1) * (2 * n - 3) * per_adjacent


def sn_express(sigma, n, variant=None):
    """A word for ``sigma`` over A = {a, b} or A' = {a', b} (letters 0 and 1).

    Built as transpositions -> adjacent transpositions -> generator words, so
    its length is at most (n-1)(2n-3)(n+1) for A and (n-1)(2n-3)(2n+1) for A'.
    """
    variant = variant or ("A" if n % 2 else "A'")
    if sigma.degree != n:
        raise ValueError(f"degree mismatch: {sigma.degree} vs {n}")
    letters = []
    for i, j in transpositions_of(sigma):
        for t in transposition_as_adjacent(i, j):
            letters.extend(adjacent_transposition_word(t, n, variant))
    word = Word(tuple(letters))
    genset = sn_generators(n, variant)
    if genset.group.element(evaluate(genset, word)) != sigma:
        raise AssertionError(f"transposition word does not evaluate to {sigma}")
    return word


# -- dihedral powers ----------------------------------------------------------

@dataclass(frozen=True)
class DihedralWord:
    """Exponents (i_1, ..., i_k) of g_1^{i_1} ... g_k^{i_k}, each in [0, 2n-1]."""

    exponents: tuple
    n: int

    def __post_init__(self):
        if any(not 0 <= e <= 2 * self.n - 1 for e in self.exponents):
            raise ValueError("exponent out of range [0, 2n-1]")

    def blocks(self):
        return [(j, e) for j, e in enumerate(self.exponents)]


class DihedralPower:
    """D_n^k with its staircase generating set C and a normal-form lookup table."""

    def __init__(self, n, k):
        if n % 2 == 0 or n < 3:
            raise ValueError("the staircase construction for D_n^k needs odd n >= 3")
        if k < 2:
            raise ValueError("need k >= 2")
        self.n, self.k = n, k
        self.base_genset = dn_generators(n)
        self.group = direct_power(self.base_genset.group, k)
        self.genset = coprime_genset(self.base_genset, k, power=self.group)
        self.bound = k * (2 * n - 2)
        self._normal_form = None

    def gen_power(self, j, e):
        return self.group.power(self.genset.members[j], e % (2 * self.n))

    def evaluate_blocks(self, blocks):
        return self.group.evaluate([self.gen_power(j, e) for j, e in blocks if e % (2 * self.n)])

    @property
    def normal_form_lookup(self):
        """element index -> lexicographically first exponent vector."""
        if self._normal_form is None:
            N = 2 * self.n
            acc = np.array([0], dtype=np.int64)
            for j in range(self.k):
                pw = np.array([self.gen_power(j, e) for e in range(N)], dtype=np.int64)
                acc = self.group.mul_array(acc[:, None], pw[None, :]).ravel()
            uniq, first = np.unique(acc, return_index=True)
            if uniq.size != self.group.order:
                raise AssertionError("some element has no g_1^i1 ... g_k^ik form")
            lookup = np.empty(self.group.order, dtype=np.int64)
            lookup[uniq] = first
            self._normal_form = lookup
        return self._normal_form

    def normal_form(self, x):
        code = int(self.normal_form_lookup[x])
        N = 2 * self.n
        exps = []
        for _ in range(self.k):
            exps.append(code % N)
            code //= N
        return DihedralWord(tuple(reversed(exps)), self.n)


def _rewrite_pair_k2(i, j, n):
    """g_1^i g_2^j over D_n^2, rewritten by g1^s g2^t = g2^{(-1)^s t} g1^{(-1)^t s}."""
    N = 2 * n
    bound = 2 * (2 * n - 2)
    if i + j <= bound or i == 0 or j == 0:
        return [(0, i), (1, j)]
    e2 = j if i % 2 == 0 else (N - j) % N
    e1 = i if j % 2 == 0 else (N - i) % N
    return [(1, e2), (0, e1)]


def _rewrite_chain(seq, n, k):
    """Rewrite blocks whose generator indices are cyclically consecutive.

    Runs of r >= 2 top exponents (2n-1) use
        g_j^top ... g_{j+r-1}^top = g_{j+r-1} ... g_{j+1} g_j^top,
    valid while the run does not close the cycle (r < k). A full cycle of k
    top exponents is split into that rule on the first k-1 blocks followed by
        g_j^top g_{j-1}^top = g_{j-1}^top g_j.
    A lone top exponent followed by g_{j+1}^f takes the shorter side of
        g_j^top g_{j+1}^f = g_{j+1}^{2n-f} g_j^top.
    """
    N = 2 * n
    top = N - 1
    out = []
    p = 0
    while p < len(seq):
        g, e = seq[p]
        if e != top:
            out.append((g, e))
            p += 1
            continue
        r = 1
        while p + r < len(seq) and seq[p + r][1] == top:
            r += 1
        if r >= 2:
            if r == k:
                out += [((g + s) % k, 1) for s in range(k - 2, 0, -1)]
                out += [((g - 1) % k, top), (g, 1)]
            else:
                out += [((g + s) % k, 1) for s in range(r - 1, 0, -1)] + [(g, top)]
            p += r
            continue
        if p + 1 < len(seq):
            h, f = seq[p + 1]
            swapped = (N - f) % N
            if swapped + top < top + f:
                out += [(h, swapped), (g, top)]
            else:
                out += [(g, top), (h, f)]
            p += 2
        else:
            out.append((g, top))
            p += 1
    return out


def dihedral_blocks(x, dp):
    """Blocks (generator position, exponent) of a word for ``x`` of length <= k(2n-2)."""
    n, k = dp.n, dp.k
    N = 2 * n
    top = N - 1
    exps = dp.normal_form(x).exponents
    if k == 2:
        return _rewrite_pair_k2(exps[0], exps[1], n)
    if max(exps) < top:
        return [(j, e) for j, e in enumerate(exps)]
    if exps[k - 1] == top and exps[k - 2] != top:
        # move g_1^{i_1} to the back: it flips g_2 when i_1 is odd and is
        # inverted on passing g_k^top
        i1 = exps[0]
        e2 = exps[1] if i1 % 2 == 0 else (N - exps[1]) % N
        seq = [(1, e2)] + [(j, exps[j]) for j in range(2, k)] + [(0, (N - i1) % N)]
        return _rewrite_chain(seq, n, k)
    return _rewrite_chain([(j, e) for j, e in enumerate(exps)], n, k)


def blocks_to_word(blocks):
    letters = []
    for j, e in blocks:
        letters.extend([j] * e)
    return Word(tuple(letters))


@lru_cache(maxsize=None)
def dihedral_power(n, k):
    return DihedralPower(n, k)


def dihedral_power_express(x, n, k):
    """Word over the staircase generating set of D_n^k (n odd, k >= 2) for ``x``.

    Raises if the produced word is wrong or longer than k(2n-2).
    """
    dp = dihedral_power(n, k)
    word = blocks_to_word(dihedral_blocks(x, dp))
    if evaluate(dp.genset, word) != x:
        raise AssertionError(f"rewritten word does not evaluate to element {x}")
    if len(word) > dp.bound:
        raise AssertionError(
            f"word of length {len(word)} exceeds k(2n-2) = {dp.bound} for element {x}; "
            "the rewriting rules did not reach the claimed bound"
        )
    return word


def relation_violations(n, k):
    """Count failures of each commutation rule over D_n^k for exponents in [1, 2n-1].

    Keys: ``pair`` (k = 2 rule), ``adjacent`` (both adjacent forms),
    ``distant`` (non-neighbours commute), ``one_top``, ``block`` (run rule for
    runs of 2..k-1 blocks) and ``block_full_cycle`` (the same rule for a run
    of all k blocks). The run rule does not hold for a full cycle, since the
    last block is then a neighbour of the first; ``block_full_cycle_split``
    checks the replacement used by the rewriting. Each value is
    (checked, violated).
    """
    dp = DihedralPower(n, k)
    N = 2 * n
    top = N - 1
    ev = dp.evaluate_blocks
    stats = {}

    def tally(key, ok):
        checked, bad = stats.get(key, (0, 0))
        stats[key] = (checked + 1, bad + (not ok))

    rng = range(1, N)
    if k == 2:
        for s in rng:
            for t in rng:
                lhs = ev([(0, s), (1, t)])
                rhs = ev([(1, (-1) ** s * t), (0, (-1) ** t * s)])
                tally("pair", lhs == rhs)
        return stats
    for i in range(k):
        j = (i + 1) % k
        for s in rng:
            for t in rng:
                flip = (-1) ** s * t
                tally("adjacent", ev([(i, s), (j, t)]) == ev([(j, flip), (i, s)]))
                tally("adjacent", ev([(j, t), (i, s)]) == ev([(i, s), (j, flip)]))
            tally("one_top", ev([(i, top), (j, s)]) == ev([(j, N - s), (i, top)]))
        for other in range(k):
            if other in (i, j, (i - 1) % k):
                continue
            for s in rng:
                for t in rng:
                    tally("distant", ev([(i, s), (other, t)]) == ev([(other, t), (i, s)]))
        for t in range(1, k):
            lhs = ev([((i + s) % k, top) for s in range(t + 1)])
            rhs = ev([((i + s) % k, 1) for s in range(t, 0, -1)] + [(i, top)])
            tally("block" if t < k - 1 else "block_full_cycle", lhs == rhs)
        lhs = ev([((i + s) % k, top) for s in range(k)])
        rhs = ev([((i + s) % k, 1) for s in range(k - 2, 0, -1)] + [((i - 1) % k, top), (i, 1)])
        tally("block_full_cycle_split", lhs == rhs)
    return stats
