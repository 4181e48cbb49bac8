import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from submodlearn.core import ConstructionError, check_properties, make_tabulated, mask_of, popcount
from submodlearn.expanders import BipartiteNeighborhoods
from submodlearn.matroids import (
    ConstraintFamily,
    brute_rank,
    brute_rank_table,
    build_family_MB,
    build_pairwise,
    build_truncated,
    build_uncrossed,
    check_matroid_axioms,
    check_uncrossing,
    family_mb_from_json,
    from_constraints,
    g_value,
    gross_substitutes_spot_check,
    is_dtau_large,
    partition_matroid,
    spec_from_json,
    spec_to_json,
    theorem_defaults,
    uniform_matroid,
)

OVERLAP = ConstraintFamily.of(5, [{0, 1, 2}, {2, 3, 4}], (2, 2))
DISJOINT = ConstraintFamily.of(6, [{0, 1, 2}, {3, 4, 5}], 2)


def test_g_value_examples():
    assert g_value(OVERLAP, [0, 1]) == 3
    assert g_value(OVERLAP, []) == 0
    assert g_value(DISJOINT, [0, 1]) == 4


def test_largeness_examples():
    assert is_dtau_large(DISJOINT, 4, 2)[0]
    assert is_dtau_large(OVERLAP, 100, 1)[0]
    twin = ConstraintFamily.of(3, [{0, 1, 2}, {0, 1, 2}], (1, 1))
    ok, J = is_dtau_large(twin, 3, 2)
    assert not ok and sorted(J) == [0, 1]


def test_uncrossed_example():
    spec = build_uncrossed(OVERLAP)
    assert check_matroid_axioms(spec)[0]
    assert check_uncrossing(spec)[0]
    assert spec.is_independent(mask_of([0, 1, 3]))
    assert not spec.is_independent(mask_of([0, 1, 3, 4]))


def test_uncrossed_disjoint_is_partition():
    a = build_uncrossed(DISJOINT)
    b = partition_matroid(6, [[0, 1, 2], [3, 4, 5]], [2, 2])
    assert np.array_equal(a.independence_table(), b.independence_table())


def test_uncrossed_empty_family_is_free():
    spec = build_uncrossed(ConstraintFamily.of(4, [], ()))
    assert spec.independence_table().all()


def test_truncated_disjoint_passes_axioms():
    assert check_matroid_axioms(build_truncated(DISJOINT, 4, 2))[0]


def test_truncated_paving():
    fam = ConstraintFamily.of(7, [{0, 1, 2}, {2, 3, 4}, {4, 5, 6}], 2)
    spec = build_truncated(fam, 3, 2)
    assert check_matroid_axioms(spec)[0]
    table = spec.independence_table()
    # every circuit has size 3 or 4: all sets of size <= 2 are independent
    assert all(table[m] for m in range(1 << 7) if popcount(m) <= 2)


def test_truncated_large_tau_is_uncrossed_plus_cap():
    t = build_truncated(OVERLAP, 4, 3)
    u = build_uncrossed(OVERLAP)
    cap = np.array([popcount(m) <= 4 for m in range(32)])
    assert np.array_equal(t.independence_table(), u.independence_table() & cap)


def test_truncated_refuses_small_rank():
    with pytest.raises(ConstructionError, match="large"):
        build_truncated(ConstraintFamily.of(3, [{0, 1, 2}, {0, 1, 2}], (1, 1)), 3, 2)


def test_pairwise_examples():
    single = ConstraintFamily.of(4, [{0, 1, 2}], (1,))
    assert build_pairwise(single, 4).d == 4
    with pytest.raises(ConstructionError, match=r"\(0,1\)"):
        build_pairwise(ConstraintFamily.of(3, [{0, 1}, {1, 2}], (1, 1)), 2)


def test_family_mb_dichotomy_on_disjoint_graph():
    g = BipartiteNeighborhoods(2, 6, 3, ((0, 1, 2), (3, 4, 5)))
    free = build_family_MB(g, 2, 3, 2, [])
    assert free.rank(g.masks()[0]) == 3 and free.rank(g.masks()[1]) == 3
    marked = build_family_MB(g, 2, 3, 2, [0])
    assert marked.rank(marked.A(0)) == 2
    assert not marked.spec.is_independent(marked.A(0))
    assert marked.rank(marked.A(1)) == 3


def test_family_mb_json_round_trip():
    g = BipartiteNeighborhoods(2, 6, 3, ((0, 1, 2), (3, 4, 5)))
    mb = build_family_MB(g, 2, 3, 2, [1])
    back = family_mb_from_json(mb.to_json())
    assert back.B == mb.B and back.rank(mb.A(1)) == 2


def test_rank_basics():
    spec = partition_matroid(8, [[0, 1, 2], [3, 4], [5, 6, 7]], [2, 1, 3])
    assert spec.rank(0) == 0
    for m in range(256):
        expect = min(popcount(m & 7), 2) + min(popcount(m & 24), 1) + popcount(m & 224)
        assert spec.rank(m) == expect == brute_rank(spec, m)


def test_brute_rank_on_non_matroid():
    raw = from_constraints(5, [(31, 4), (7, 2), (28, 2)])
    assert brute_rank(raw, 31) == 4
    ok, (tag, I, J) = check_matroid_axioms(raw)
    assert not ok and tag == "exchange"
    assert popcount(I) < popcount(J)
    assert all(not raw.is_independent(I | 1 << x) for x in range(5) if (J & ~I) >> x & 1)


def test_classic_exchange_witness_is_valid():
    raw = from_constraints(5, [(31, 4), (7, 2), (28, 2)])
    I, J = mask_of([1, 2, 3]), mask_of([0, 1, 3, 4])
    assert raw.is_independent(I) and raw.is_independent(J)
    assert not any(raw.is_independent(I | 1 << x) for x in (0, 4))


def test_raw_oracle_axiom_check():
    ok, _ = check_matroid_axioms(lambda m: popcount(m) <= 2, 4)
    assert ok
    ok, (tag, *_rest) = check_matroid_axioms(lambda m: m != 1, 3)
    assert not ok and tag == "downward-closure"


def test_uncrossing_detects_corrupted_g():
    spec = from_constraints(5, [(7, 2), (28, 2), (31, 4)])
    ok, witness = check_uncrossing(spec)
    assert not ok
    I, C1, C2 = witness
    assert C1 & C2 and spec.is_independent(I)


def test_partition_uncrossing_and_axioms():
    spec = partition_matroid(6, [[0, 1], [2, 3, 4], [5]], [1, 2, 1])
    assert check_matroid_axioms(spec)[0] and check_uncrossing(spec)[0]


def test_spec_json_round_trip():
    spec = build_truncated(DISJOINT, 4, 2)
    back = spec_from_json(spec_to_json(spec))
    assert np.array_equal(back.independence_table(), spec.independence_table())
    assert json.loads(spec_to_json(spec))["kind"] == "truncated"


def test_theorem_defaults_use_base_two():
    d = theorem_defaults(1024, 1024)
    assert d["b"] == 8 * 10


def test_gross_substitutes_examples():
    additive = make_tabulated([float(bin(m).count("1")) * 0.3 for m in range(16)])
    assert gross_substitutes_spot_check(additive, 500, 0).passed
    assert gross_substitutes_spot_check(uniform_matroid(6, 6).rank_function(), 500, 0).passed
    res = gross_substitutes_spot_check(make_tabulated([0, 0, 0, 1]), 1000, 0)
    assert not res.passed and res.witness is not None


# ---------------------------------------------------------------------------
# properties


@st.composite
def families(draw, max_n=8, max_k=4):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(0, max_k))
    sets = [draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n)) for _ in range(k)]
    caps = [draw(st.integers(0, len(s))) for s in sets]
    return ConstraintFamily.of(n, sets, caps)


@settings(max_examples=40, deadline=None)
@given(families())
def test_uncrossed_is_always_matroid(fam):
    try:
        spec = build_uncrossed(fam)
    except ConstructionError:
        return
    assert check_matroid_axioms(spec)[0]
    assert check_uncrossing(spec)[0]
    rank = spec.rank_function()
    assert check_properties(rank).all_matroid_rank_properties


@settings(max_examples=40, deadline=None)
@given(families(), st.integers(1, 3))
def test_greedy_rank_matches_brute_force(fam, tau):
    d = min([g for J in range(1 << fam.k) if tau <= bin(J).count("1") <= 2 * tau - 2
             for g in [g_value(fam, [i for i in range(fam.k) if J >> i & 1])]] or [fam.n])
    if d < 0:
        return
    spec = build_truncated(fam, d, tau)
    brute = brute_rank_table(spec.independence_table(), spec.n)
    assert all(spec.rank(m) == brute[m] for m in range(1 << spec.n))


@settings(max_examples=40, deadline=None)
@given(families(max_k=5))
def test_pairwise_accepts_at_its_bound(fam):
    bounds = [fam.b[i] + fam.b[j] - popcount(fam.A[i] & fam.A[j]) for i, j in combinations(range(fam.k), 2)]
    d = min(bounds, default=fam.n)
    if d < 0:
        return
    spec = build_pairwise(fam, d)
    assert check_matroid_axioms(spec)[0]
    if bounds:
        with pytest.raises(ConstructionError):
            build_pairwise(fam, d + 1)
