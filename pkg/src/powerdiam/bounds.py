"""Closed-form diameter and rank bounds.

Pure integer arithmetic: nothing here runs a BFS. Python integers do not
wrap, so the only checks are on input types and ranges.
"""

import json
from dataclasses import dataclass, field

from .group import AbelianType


def _int(name, value, minimum=0):
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: dict
    value: int
    citation: str = field(default="")

    def to_dict(self):
        return {"name": self.name, "inputs": dict(self.inputs), "value": self.value,
                "citation": self.citation}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


# statement strings used as the citation field of reports
STATEMENTS = {
    "general_upper_bound": "D(G) <= |G| - rank(G)",
    "abelian_diameter": "D(G) = sum(m_i - 1) over invariant factors",
    "strong_conjecture_bound": "D(G^n) <= n(|G| - rank(G)) (conjectured)",
    "product_bound": "diam(G^n, A) <= Ml_A(C^n(X)) * sum_i diam(G, A pi_i)",
    "sn_diameter_bound": "diam(S_n, A) <= (n-1)(2n-3)(n+1); diam(S_n, A') <= (n-1)(2n-3)(2n+1)",
    "canonical_bound": "diam(G^n, C^n(A)) <= n diam(G, A)",
    "wiegold_threshold": "rank(G^n) = rank(G/G') n for n >= (a-1)/(b-1) (imperfect) or a/b (solvable)",
}


def report(name, value, **inputs):
    return BoundReport(name, inputs, value, STATEMENTS[name])


def general_upper_bound(order, rank):
    _int("order", order, 1)
    _int("rank", rank)
    if rank > order:
        raise ValueError("rank cannot exceed the group order")
    return order - rank


def abelian_diameter(invariants):
    """Exact D(G) of the abelian group with these invariant factors."""
    if not isinstance(invariants, AbelianType):
        invariants = AbelianType(tuple(invariants))
    return sum(m - 1 for m in invariants.invariants)


def strong_conjecture_bound(order, rank, n):
    _int("n", n, 1)
    return n * general_upper_bound(order, rank)


def product_bound(ml, per_coordinate_diams):
    _int("ml", ml)
    diams = [_int("diam", d) for d in per_coordinate_diams]
    return ml * sum(diams)


def sn_diameter_bound(n, variant=None):
    """Upper bound on diam(S_n, A) (variant "A") or diam(S_n, A') (variant "A'")."""
    _int("n", n)
    if n < 3:
        raise ValueError("the S_n bound needs n >= 3")
    variant = variant or ("A" if n % 2 else "A'")
    if variant == "A":
        return (n - 1) * (2 * n - 3) * (n + 1)
    if variant == "A'":
        return (n - 1) * (2 * n - 3) * (2 * n + 1)
    raise ValueError(f"unknown variant {variant!r}")


def canonical_bound(diam_g, n):
    _int("diam_g", diam_g)
    _int("n", n, 1)
    return n * diam_g


def wiegold_threshold(alpha, beta, family):
    """Least integer n from which rank(G^n) = beta * n is guaranteed."""
    _int("alpha", alpha)
    _int("beta", beta)
    if family == "imperfect":
        if beta < 2:
            raise ValueError("the imperfect-group threshold needs beta >= 2")
        return max(1, -(-(alpha - 1) // (beta - 1)))
    if family == "solvable":
        if beta < 1:
            raise ValueError("the solvable-group threshold needs beta >= 1")
        return max(1, -(-alpha // beta))
    raise ValueError(f"unknown family {family!r}")
