"""Instance checks of the two conjectured bounds on diameters of direct powers.

Strong form: every generating set of G^n has diameter at most n(|G| - rank(G)).
Weak form: some generating set of G^n of size rank(G^n) meets that bound.

Verdicts, from strongest to weakest:

``verified-exhaustive``
    D(G^n) is known exactly and is within the bound.
``verified-witness``
    a generating set of size rank(G^n) was built and its exact BFS diameter
    is within the bound (weak form only).
``no-counterexample-found``
    nothing was refuted, but nothing was proved either; ``evidence.status``
    says why (sampling, a failed candidate witness, or an exhausted budget).
``COUNTEREXAMPLE``
    an exact measurement exceeds the bound. For the weak form this needs
    every minimum-size generating set to fail.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from ._version import __version__
from .bounds import abelian_diameter, canonical_bound, product_bound, strong_conjecture_bound
from .diameter import diam, genset_diameters, length_table, max_diameter, max_length_over
from .errors import ResourceLimitError
from .group import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_SUBSETS,
    GenSet,
    abelian_invariants,
    commutator_subgroup,
    generates,
    is_perfect,
    minimum_generating_set,
    quotient,
    rank,
)
from .power import canonical_genset, coprime_genset, direct_power, genset_projection, power_rank

VERDICTS = ("verified-exhaustive", "verified-witness", "no-counterexample-found", "COUNTEREXAMPLE")
EXHAUSTIVE_ORDER_LIMIT = 16


@dataclass
class ConjectureReport:
    conjecture: str  # "strong" or "weak"
    group_spec: str
    n: int
    bound: int
    measured: int
    measured_kind: str  # "exact" or "lower-bound"
    verdict: str
    witness_genset: dict = None
    evidence: dict = field(default_factory=dict)
    seed: object = None
    version: str = __version__

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_dict(self):
        return {
            "conjecture": self.conjecture,
            "group_spec": self.group_spec,
            "n": self.n,
            "bound": self.bound,
            "measured": self.measured,
            "measured_kind": self.measured_kind,
            "verdict": self.verdict,
            "witness_genset": self.witness_genset,
            "evidence": self.evidence,
            "seed": self.seed,
            "version": self.version,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def to_text(self):
        lines = [
            f"{self.conjecture} conjecture for {self.group_spec}^{self.n}: {self.verdict}",
            f"  bound n(|G| - rank(G)) = {self.bound}",
            f"  measured diameter = {self.measured} ({self.measured_kind})",
        ]
        if self.witness_genset is not None:
            w = self.witness_genset
            lines.append(f"  witness {w['name'] or 'genset'} of size {w['size']}: "
                         + ", ".join(w["elements"]))
        for key in sorted(self.evidence):
            lines.append(f"  {key}: {self.evidence[key]}")
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        lines.append(f"  version: {self.version}")
        return "\n".join(lines)


def genset_record(genset):
    """JSON-ready description of a generating set, enough to replay it."""
    G = genset.group
    return {
        "name": genset.name,
        "size": len(genset.members),
        "labels": list(genset.labels),
        "indices": list(genset.members),
        "elements": [G.format_element(m) for m in genset.members],
    }


def replay(report, group):
    """Recompute the diameter of a report's witness over ``group`` (the power G^n)."""
    record = report.witness_genset if isinstance(report, ConjectureReport) else report["witness_genset"]
    genset = GenSet.build(group, record["indices"], record["labels"], name=record["name"])
    return diam(genset)


def _ranks(G, max_subsets):
    alpha_set = minimum_generating_set(G, max_subsets=max_subsets)
    if G.order == 1:
        return alpha_set, 0, 0
    q = quotient(G, commutator_subgroup(G))
    beta = rank(q, max_subsets=max_subsets) if q.order > 1 else 0
    return alpha_set, len(alpha_set), beta


def _pairwise_coprime(orders):
    return all(gcd(a, b) == 1 for a, b in combinations(orders, 2))


def find_coprime_genset(G, max_size, start=1, max_subsets=DEFAULT_MAX_SUBSETS):
    """Lex-first generating set of G of size <= max_size with pairwise coprime orders."""
    orders = G.element_orders
    tried = 0
    for size in range(max(start, 1), max_size + 1):
        for subset in combinations(range(1, G.order), size):
            tried += 1
            if tried > max_subsets:
                raise ResourceLimitError(
                    f"coprime generating-set search exceeded {max_subsets} subsets "
                    f"(raise --max-subsets)", cap=max_subsets, flag="--max-subsets")
            if _pairwise_coprime([int(orders[s]) for s in subset]) and generates(G, subset):
                return GenSet.build(G, subset, [f"x{i + 1}" for i in range(size)])
    return None


def _coprime_ok(genset, n):
    orders = [int(genset.group.element_orders[m]) for m in genset.members]
    return len(orders) <= n and _pairwise_coprime(orders)


def _weak_verdict(measured, bound):
    return "verified-witness" if measured <= bound else "no-counterexample-found"


def check_weak(G, n, strategy="auto", genset=None, group_spec=None, dihedral_odd=None,
               max_states=DEFAULT_MAX_ELEMENTS, max_subsets=DEFAULT_MAX_SUBSETS, workers=1):
    """Look for a minimum-size generating set of G^n within the conjectured bound.

    ``genset`` is an optional generating set of G used by the canonical and
    coprime constructions. ``dihedral_odd`` (the degree of an odd dihedral
    group) adds the rewriting certificate for the staircase set.
    """
    if strategy not in ("auto", "canonical", "coprime", "search"):
        raise ValueError(f"unknown strategy {strategy!r}")
    spec = group_spec or G.name
    alpha_set, alpha, beta = _ranks(G, max_subsets)
    bound = strong_conjecture_bound(G.order, alpha, n)
    evidence = {"rank_G": alpha, "rank_abelianization": beta, "order_G": G.order}
    imperfect = G.order == 1 or not is_perfect(G)

    base = genset
    if strategy == "auto":
        if alpha == beta:
            strategy = "canonical"
        elif imperfect:
            if base is None or not _coprime_ok(base, n):
                base = find_coprime_genset(G, n, start=alpha, max_subsets=max_subsets)
            strategy = "coprime" if base is not None else "search"
        else:
            strategy = "search"
    evidence["strategy"] = strategy
    P = direct_power(G, n, max_elements=max_states)

    if strategy == "canonical":
        if base is None or len(base.members) != alpha:
            base = GenSet.build(G, alpha_set, [f"x{i + 1}" for i in range(alpha)], name="A")
        if alpha != beta:
            pr = power_rank(G, n, max_subsets=max_subsets, max_elements=max_states)
            target = pr.value
            evidence["rank_source"] = pr.source
        else:
            target = n * alpha
            evidence["rank_source"] = "rank(G) = rank(G/G'), so rank(G^n) = n rank(G)"
        witness = canonical_genset(base, n, power=P)
        measured = diam(witness, max_states)
        diam_g = diam(base, max_states)
        evidence["diam_base"] = diam_g
        evidence["canonical_bound"] = canonical_bound(diam_g, n)
        evidence["rank_G_power"] = target
        if len(witness.members) != target:
            evidence["status"] = "canonical set is not of minimum size"
            verdict = "no-counterexample-found"
        else:
            verdict = _weak_verdict(measured, bound)
            if verdict != "verified-witness":
                evidence["status"] = "witness failed; other minimum-size sets not tried"
        return ConjectureReport("weak", spec, n, bound, measured, "exact", verdict,
                                genset_record(witness), evidence)

    if strategy == "coprime":
        if base is None or not _coprime_ok(base, n):
            base = find_coprime_genset(G, n, max_subsets=max_subsets)
        if base is None:
            raise ValueError(f"{G.name} has no generating set of <= {n} elements with coprime orders")
        witness = coprime_genset(base, n, power=P)
        evidence["rank_source"] = "imperfect: rank(G^n) >= n rank(G/G') >= n = |witness|"
        evidence["rank_G_power"] = n
        evidence["base_genset"] = genset_record(base)["elements"]
        table = length_table(witness, max_states)
        measured = table.diameter
        canon = [P.embed(slot, m) for slot in range(n) for m in base.members]
        ml = max_length_over(table, canon)
        proj = []
        for i in range(1, n + 1):
            members = [m for m in genset_projection(witness, i) if m != 0]
            proj.append(diam(GenSet.build(G, members, check=False), max_states))
        evidence["max_length_canonical"] = ml
        evidence["product_bound"] = product_bound(ml, proj)
        if dihedral_odd is not None:
            evidence.update(_dihedral_certificate(dihedral_odd, n))
        verdict = _weak_verdict(measured, bound)
        if verdict != "verified-witness":
            evidence["status"] = "witness failed; other minimum-size sets not tried"
        return ConjectureReport("weak", spec, n, bound, measured, "exact", verdict,
                                genset_record(witness), evidence)

    pr = power_rank(G, n, max_subsets=max_subsets, max_elements=max_states)
    evidence["rank_source"] = pr.source
    evidence["rank_G_power"] = pr.value
    return _search_weak(P, spec, n, bound, pr.value, evidence, max_states, max_subsets, workers)


def _dihedral_certificate(m, k):
    from .families import dihedral_power, dihedral_power_express

    dp = dihedral_power(m, k)
    longest = max(len(dihedral_power_express(x, m, k)) for x in range(dp.group.order))
    return {"rewriting_max_length": longest, "rewriting_bound": dp.bound}


def _search_weak(P, spec, n, bound, target, evidence, max_states, max_subsets, workers):
    tried, best, best_set, batch = 0, None, None, []

    def flush():
        nonlocal best, best_set
        for subset, value in zip(batch, genset_diameters(P, batch, max_states, workers)):
            if value is not None and (best is None or value < best):
                best, best_set = value, subset
        batch.clear()

    for subset in combinations(range(1, P.order), target):
        tried += 1
        if tried > max_subsets:
            flush()
            evidence["subsets_tried"] = tried - 1
            if best is not None and best <= bound:
                record = genset_record(GenSet.build(P, best_set))
                return ConjectureReport("weak", spec, n, bound, best, "exact", "verified-witness",
                                        record, evidence)
            evidence["status"] = "budget exhausted before all minimum-size sets were tried"
            record = genset_record(GenSet.build(P, best_set)) if best_set is not None else None
            return ConjectureReport("weak", spec, n, bound, -1 if best is None else best, "exact",
                                    "no-counterexample-found", record, evidence)
        batch.append(subset)
        if len(batch) >= 256:
            flush()
            if best is not None and best <= bound:
                break
    flush()
    evidence["subsets_tried"] = tried
    if best is None:
        raise AssertionError(f"no generating set of size {target} found; rank is wrong")
    record = genset_record(GenSet.build(P, best_set))
    if best <= bound:
        return ConjectureReport("weak", spec, n, bound, best, "exact", "verified-witness", record, evidence)
    evidence["status"] = "every minimum-size generating set exceeds the bound"
    return ConjectureReport("weak", spec, n, bound, best, "exact", "COUNTEREXAMPLE", record, evidence)


def check_strong(G, n, mode="exhaustive", count=100, seed=0, group_spec=None,
                 max_states=DEFAULT_MAX_ELEMENTS, max_subsets=DEFAULT_MAX_SUBSETS, workers=1):
    """Compare D(G^n), or a sampled lower bound on it, with n(|G| - rank(G))."""
    spec = group_spec or G.name
    alpha = rank(G, max_subsets=max_subsets)
    bound = strong_conjecture_bound(G.order, alpha, n)
    P = direct_power(G, n, max_elements=max_states)
    evidence = {"rank_G": alpha, "order_power": P.order}

    if mode == "exhaustive":
        closed_form = abelian_diameter(abelian_invariants(P)) if G.is_abelian() else None
        if closed_form is not None:
            evidence["abelian_formula"] = closed_form
        if P.order <= EXHAUSTIVE_ORDER_LIMIT:
            result = max_diameter(P, "exhaustive", max_subsets=max_subsets,
                                  max_states=max_states, workers=workers)
            evidence["method"] = "enumeration of identity-free generating sets"
            evidence["gensets_evaluated"] = result.evaluated
            witness = genset_record(GenSet.build(P, result.witness)) if result.witness else None
            measured = result.value
        elif closed_form is not None:
            evidence["method"] = "invariant-factor formula for abelian groups"
            witness, measured = None, closed_form
        else:
            raise ResourceLimitError(
                f"exhaustive check needs |G^n| <= {EXHAUSTIVE_ORDER_LIMIT} for non-abelian G "
                f"(|G^n| = {P.order}); use sampled mode (--samples)",
                cap=EXHAUSTIVE_ORDER_LIMIT, flag="--samples")
        verdict = "verified-exhaustive" if measured <= bound else "COUNTEREXAMPLE"
        return ConjectureReport("strong", spec, n, bound, measured, "exact", verdict, witness, evidence)

    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    result = max_diameter(P, "sampled", count=count, seed=seed, max_states=max_states, workers=workers)
    evidence["method"] = "random generating sets, exact BFS each"
    evidence["samples_requested"] = count
    evidence["gensets_evaluated"] = result.evaluated
    witness = genset_record(GenSet.build(P, result.witness)) if result.witness else None
    if result.value > bound:
        verdict = "COUNTEREXAMPLE"
    else:
        verdict = "no-counterexample-found"
        evidence["status"] = "sampling only; D(G^n) may be larger than observed"
    return ConjectureReport("strong", spec, n, bound, result.value, "lower-bound", verdict,
                            witness, evidence, seed=seed)
