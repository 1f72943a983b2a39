"""Word lengths and diameters by BFS on the directed Cayley graph.

Words use the generators only, never their inverses. ``l_A(1) = 0``.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ResourceLimitError
from .group import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_SUBSETS, GenSet

UNREACHED = -1


@dataclass(frozen=True)
class Word:
    """Generator indices into a GenSet, read left to right."""

    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def format(self, labels, compress=False):
        """Dash-separated labels; ``compress`` folds runs into ``label^k``."""
        if not self.letters:
            return ""
        if not compress:
            return "-".join(labels[i] for i in self.letters)
        parts = []
        run_letter, run = self.letters[0], 0
        for x in self.letters + (None,):
            if x == run_letter:
                run += 1
                continue
            lab = labels[run_letter]
            parts.append(lab if run == 1 else f"{lab}^{run}")
            run_letter, run = x, 1
        return "-".join(parts)


def evaluate(genset, word):
    """Element index obtained by multiplying the word's letters left to right."""
    return genset.group.evaluate([genset.members[i] for i in word.letters])


@dataclass(frozen=True, eq=False)
class LengthTable:
    genset: GenSet
    lengths: np.ndarray
    parent: np.ndarray  # predecessor element index, -1 for the identity
    parent_gen: np.ndarray  # generator position in genset, -1 for the identity

    @property
    def group(self):
        return self.genset.group

    @property
    def diameter(self):
        return int(self.lengths.max())

    def __getitem__(self, g):
        return int(self.lengths[g])


def bfs_lengths(group, gens, max_states=DEFAULT_MAX_ELEMENTS, with_parents=False):
    """Level-synchronous BFS from the identity by right multiplication.

    Among all shortest-path predecessors, the parent of an element is the
    lowest (predecessor index, generator position) pair, so the result does
    not depend on expansion order.
    """
    if group.order > max_states:
        raise ResourceLimitError(
            f"{group.name} has {group.order} elements, over the state cap {max_states} "
            f"(raise --max-states)",
            cap=max_states,
            flag="--max-states",
        )
    order = group.order
    lengths = np.full(order, UNREACHED, dtype=np.int32)
    lengths[0] = 0
    parent = np.full(order, -1, dtype=np.int64) if with_parents else None
    parent_gen = np.full(order, -1, dtype=np.int32) if with_parents else None
    gens = [int(g) for g in gens]
    frontier = np.array([0], dtype=np.int64)
    level = 0
    while frontier.size and gens:
        level += 1
        targets = np.concatenate([group.mul_array(frontier, g) for g in gens])
        fresh = lengths[targets] == UNREACHED
        if not fresh.any():
            break
        targets = targets[fresh]
        if with_parents:
            preds = np.tile(frontier, len(gens))[fresh]
            which = np.repeat(np.arange(len(gens), dtype=np.int32), frontier.size)[fresh]
            order_idx = np.lexsort((which, preds, targets))
            targets, preds, which = targets[order_idx], preds[order_idx], which[order_idx]
            first = np.ones(targets.size, dtype=bool)
            first[1:] = targets[1:] != targets[:-1]
            targets, preds, which = targets[first], preds[first], which[first]
            parent[targets] = preds
            parent_gen[targets] = which
        else:
            targets = np.unique(targets)
        lengths[targets] = level
        frontier = targets
    return lengths, parent, parent_gen


def length_table(genset, max_states=DEFAULT_MAX_ELEMENTS):
    group = genset.group
    lengths, parent, parent_gen = bfs_lengths(group, genset.members, max_states, with_parents=True)
    if (lengths == UNREACHED).any():
        raise ValueError(f"{genset.describe()} does not generate {group.name}")
    for arr in (lengths, parent, parent_gen):
        arr.setflags(write=False)
    return LengthTable(genset, lengths, parent, parent_gen)


def diam(genset, max_states=DEFAULT_MAX_ELEMENTS):
    lengths, _, _ = bfs_lengths(genset.group, genset.members, max_states)
    if (lengths == UNREACHED).any():
        raise ValueError(f"{genset.describe()} does not generate {genset.group.name}")
    return int(lengths.max())


def max_length_over(table, elements):
    """Ml_A(S): the largest word length over the element indices in S."""
    elements = np.asarray(list(elements), dtype=np.int64)
    if elements.size == 0:
        raise ValueError("maximum length over an empty set is undefined")
    return int(table.lengths[elements].max())


def express(table, g):
    """A shortest word for element ``g``, rebuilt from parent pointers."""
    letters = []
    while g != 0:
        letters.append(int(table.parent_gen[g]))
        g = int(table.parent[g])
    return Word(tuple(reversed(letters)))


def write_csv(table, fh):
    """Rows ``element,length,word`` in element-index order."""
    labels = table.genset.labels
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["element", "length", "word"])
    for g in range(table.group.order):
        writer.writerow([table.group.format_element(g), int(table.lengths[g]),
                         express(table, g).format(labels)])


@dataclass(frozen=True)
class MaxDiameter:
    value: int
    verdict: str  # "exact" or "lower-bound"
    witness: tuple  # member indices of a genset attaining ``value``
    evaluated: int  # generating sets whose diameter was computed
    seed: object = None

    def to_dict(self):
        return {"value": self.value, "verdict": self.verdict, "witness": list(self.witness),
                "evaluated": self.evaluated, "seed": self.seed}


def _diam_or_none(group, subset, max_states):
    lengths, _, _ = bfs_lengths(group, subset, max_states)
    if (lengths == UNREACHED).any():
        return None
    return int(lengths.max())


BATCH_ORDER_LIMIT = 32


def _batch_diameters(group, subsets, chunk=4096):
    """The same values as per-subset BFS, for many subsets of a tiny group at once.

    Row r of ``reached`` is the ball around the identity for subset r; one
    level adds y whenever y g^-1 is in the ball and g is in the subset.
    """
    order = group.order
    table, inv = group.table, group.inverses
    sources = [table[:, inv[g]] for g in range(order)]
    out = []
    for start in range(0, len(subsets), chunk):
        block = subsets[start:start + chunk]
        member = np.zeros((len(block), order), dtype=bool)
        for r, s in enumerate(block):
            member[r, list(s)] = True
        used = [g for g in range(1, order) if member[:, g].any()]
        reached = np.zeros_like(member)
        reached[:, 0] = True
        depth = np.zeros(len(block), dtype=np.int64)
        level = 0
        while True:
            new = np.zeros_like(reached)
            for g in used:
                new |= reached[:, sources[g]] & member[:, g:g + 1]
            new &= ~reached
            grew = new.any(axis=1)
            if not grew.any():
                break
            level += 1
            depth[grew] = level
            reached |= new
        full = reached.all(axis=1)
        out.extend(int(d) if ok else None for d, ok in zip(depth, full))
    return out


def genset_diameters(group, subsets, max_states=DEFAULT_MAX_ELEMENTS, workers=1):
    """Diameter for each candidate subset (None where it does not generate), in order."""
    subsets = list(subsets)
    if group.order <= BATCH_ORDER_LIMIT and len(subsets) > 1:
        return _batch_diameters(group, subsets)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda s: _diam_or_none(group, s, max_states), subsets))
    return [_diam_or_none(group, s, max_states) for s in subsets]


def identity_free_subsets(group):
    elems = range(1, group.order)
    for size in range(1, group.order):
        yield from combinations(elems, size)


def sample_subsets(group, count, seed, max_attempts=None):
    """Up to ``count`` random identity-free generating subsets, reproducible from ``seed``.

    Each attempt draws a size uniformly from 1..|G|-1 and then a uniform subset
    of that size; non-generating draws are discarded.
    """
    rng = np.random.default_rng(seed)
    max_attempts = 50 * count if max_attempts is None else max_attempts
    out = []
    attempts = 0
    if group.order == 1:
        return [()]
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        size = int(rng.integers(1, group.order))
        subset = tuple(sorted(int(x) for x in rng.choice(np.arange(1, group.order), size, replace=False)))
        if _generates_quick(group, subset):
            out.append(subset)
    return out


def _generates_quick(group, subset):
    lengths, _, _ = bfs_lengths(group, subset)
    return not (lengths == UNREACHED).any()


def max_diameter(group, mode="exhaustive", count=100, seed=0,
                 max_subsets=DEFAULT_MAX_SUBSETS, max_states=DEFAULT_MAX_ELEMENTS, workers=1):
    """D(G): exact by exhaustive enumeration, or a seeded sampled lower bound."""
    if group.order == 1:
        return MaxDiameter(0, "exact", (), 1, None if mode == "exhaustive" else seed)
    if mode == "exhaustive":
        total = 2 ** (group.order - 1) - 1
        if total > max_subsets:
            raise ResourceLimitError(
                f"exhaustive D({group.name}) needs {total} subsets, over the cap {max_subsets} "
                f"(raise --max-subsets or use sampled mode)",
                cap=max_subsets,
                flag="--max-subsets",
            )
        subsets = list(identity_free_subsets(group))
        verdict = "exact"
        seed = None
    elif mode == "sampled":
        subsets = sample_subsets(group, count, seed)
        verdict = "lower-bound"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    values = genset_diameters(group, subsets, max_states, workers)
    best, witness, evaluated = -1, (), 0
    for subset, value in zip(subsets, values):
        if value is None:
            continue
        evaluated += 1
        if value > best:
            best, witness = value, subset
    return MaxDiameter(max(best, 0), verdict, witness, evaluated, seed)
