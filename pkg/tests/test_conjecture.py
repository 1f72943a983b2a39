import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerdiam import conjecture
from powerdiam.bounds import abelian_diameter
from powerdiam.conjecture import (
    VERDICTS,
    ConjectureReport,
    check_strong,
    check_weak,
    find_coprime_genset,
    replay,
)
from powerdiam.diameter import diam
from powerdiam.errors import ResourceLimitError
from powerdiam.families import dn_generators, sn_generators
from powerdiam.group import abelian_invariants
from powerdiam.power import direct_power

from zoo import alt, cyclic, dih, product, sym, trivial


def test_weak_z4_squared():
    r = check_weak(cyclic(4), 2)
    assert r.bound == 6 and r.measured == 6
    assert r.evidence["strategy"] == "canonical"
    assert r.verdict == "verified-witness"
    assert r.witness_genset["size"] == 2


def test_weak_s4_squared():
    A = sn_generators(4)
    r = check_weak(A.group, 2, genset=A)
    assert r.bound == 44
    assert r.evidence["strategy"] == "coprime"
    assert r.witness_genset["name"] == "C'"
    assert r.measured <= 38
    assert r.verdict == "verified-witness"


def test_weak_d5_squared():
    A = dn_generators(5)
    r = check_weak(A.group, 2, genset=A, dihedral_odd=5)
    assert r.bound == 16
    assert r.evidence["rewriting_max_length"] <= 16
    assert r.measured <= 16
    assert r.verdict == "verified-witness"


def test_weak_trivial_group():
    r = check_weak(trivial(), 4)
    assert (r.bound, r.measured, r.verdict) == (4, 0, "verified-witness")


def test_weak_search_strategy():
    r = check_weak(sym(3), 2, strategy="search")
    assert r.verdict == "verified-witness"
    assert r.witness_genset["size"] == 2
    assert r.measured == replay(r, direct_power(sym(3), 2))


def test_weak_witness_size_is_power_rank():
    for G, n in [(dih(4), 2), (product(2, 4), 2), (sym(3), 3)]:
        r = check_weak(G, n)
        assert r.witness_genset["size"] == r.evidence["rank_G_power"]


def test_weak_budget_gives_inconclusive(monkeypatch):
    # with the real bound the first subsets already succeed; a bound nothing
    # meets shows that running out of budget does not become a refutation
    monkeypatch.setattr(conjecture, "strong_conjecture_bound", lambda *a: 1)
    r = check_weak(sym(3), 2, strategy="search", max_subsets=10)
    assert r.verdict == "no-counterexample-found"
    assert "budget" in r.evidence["status"]


def test_weak_budget_after_success_keeps_witness():
    # the first generating pair of S3^2 is candidate 222
    r = check_weak(sym(3), 2, strategy="search", max_subsets=230)
    assert r.verdict == "verified-witness" and r.measured <= r.bound


def test_weak_search_exhaustion_is_counterexample(monkeypatch):
    # force an impossible bound to exercise the refutation path
    monkeypatch.setattr(conjecture, "strong_conjecture_bound", lambda *a: 1)
    r = check_weak(sym(3), 2, strategy="search")
    assert r.verdict == "COUNTEREXAMPLE"
    assert r.measured > r.bound
    assert replay(r, direct_power(sym(3), 2)) == r.measured


def test_weak_failed_witness_is_not_refutation(monkeypatch):
    monkeypatch.setattr(conjecture, "strong_conjecture_bound", lambda *a: 1)
    r = check_weak(cyclic(4), 2)
    assert r.verdict == "no-counterexample-found"
    assert "witness failed" in r.evidence["status"]


def test_find_coprime_genset():
    A = find_coprime_genset(sym(4), 2)
    orders = [int(sym(4).element_orders[m]) for m in A.members]
    assert len(orders) == 2 and orders[0] % orders[1] and orders[1] % orders[0]
    assert find_coprime_genset(dih(4), 2) is None


def test_strong_z2_squared():
    r = check_strong(cyclic(2), 2)
    assert (r.bound, r.measured, r.verdict) == (2, 2, "verified-exhaustive")
    assert r.evidence["abelian_formula"] == 2


@pytest.mark.parametrize("orders,n", [((2,), 3), ((4,), 2), ((2, 2), 2), ((8,), 2), ((2, 4), 2),
                                      ((3,), 2), ((6,), 2), ((2, 2, 2), 2)], ids=str)
def test_strong_abelian_paths_agree(orders, n):
    G = product(*orders)
    r = check_strong(G, n)
    P = direct_power(G, n)
    formula = abelian_diameter(abelian_invariants(P))
    assert r.measured == formula
    assert r.verdict == ("verified-exhaustive" if formula <= r.bound else "COUNTEREXAMPLE")
    assert r.verdict == "verified-exhaustive"


def test_strong_nonabelian_exhaustive_needs_small_power():
    with pytest.raises(ResourceLimitError):
        check_strong(sym(3), 2)


def test_strong_s3_sampled():
    r = check_strong(sym(3), 2, mode="sampled", count=500, seed=0)
    assert r.verdict == "no-counterexample-found"
    assert r.measured <= 8 and r.measured_kind == "lower-bound"
    assert r.seed == 0


def test_strong_sampled_counterexample_replays(monkeypatch):
    monkeypatch.setattr(conjecture, "strong_conjecture_bound", lambda *a: 2)
    r = check_strong(sym(3), 2, mode="sampled", count=20, seed=4)
    assert r.verdict == "COUNTEREXAMPLE"
    assert replay(r.to_dict(), direct_power(sym(3), 2)) == r.measured > r.bound


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6), count=st.integers(1, 25))
def test_sampled_never_claims_exhaustive(seed, count):
    r = check_strong(sym(3), 2, mode="sampled", count=count, seed=seed)
    assert r.verdict in ("no-counterexample-found", "COUNTEREXAMPLE")
    if r.verdict == "COUNTEREXAMPLE":
        assert r.measured > r.bound


def test_report_json_is_deterministic():
    a = check_weak(sym(4), 2, genset=sn_generators(4)).to_json()
    b = check_weak(sym(4), 2, genset=sn_generators(4), workers=4).to_json()
    assert a == b
    d = json.loads(a)
    assert set(d) == {"conjecture", "group_spec", "n", "bound", "measured", "measured_kind",
                      "verdict", "witness_genset", "evidence", "seed", "version"}
    assert list(json.loads(a)) == sorted(d)


def test_report_rejects_unknown_verdict():
    with pytest.raises(ValueError):
        ConjectureReport("weak", "G", 1, 1, 0, "exact", "probably-true")
    assert len(VERDICTS) == 4


def test_text_rendering():
    r = check_weak(cyclic(4), 2)
    text = r.to_text()
    assert "verified-witness" in text and "bound" in text


def test_weak_perfect_group_uses_search():
    r = check_weak(alt(5), 1, max_subsets=10**4)
    assert r.evidence["strategy"] == "search"
    assert r.verdict == "verified-witness"
    assert r.measured == diam(conjecture.GenSet.build(alt(5), r.witness_genset["indices"]))
