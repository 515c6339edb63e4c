import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_force_continuous, brute_force_freezing, generated_isomorphisms
from digitop.errors import HypothesisError
from digitop.image import DigitalImage, boundary, interval, product, rectangle
from digitop.maps import EnumerationConstraints, ImageMap, enumerate_maps, SelfMap, continuous_self_maps, is_continuous, is_retraction
from digitop.freezing import (FreezingError, Minimality, NotAnIsomorphism, Verdict, check_boundary_fix_extension,
                              check_projection_freezing, check_retract_exclusion, is_freezing_set,
                              is_minimal_freezing_set, search_freezing_subsets, transfer_freezing)

X3 = interval(0, 2)


def test_freezing_examples():
    assert is_freezing_set(X3, [(0,), (2,)]).verdict is Verdict.FREEZING
    rep = is_freezing_set(X3, [(0,)])
    assert rep.verdict is Verdict.NOT_FREEZING
    w = rep.witness
    assert is_continuous(w) and w((0,)) == (0,) and not w.is_identity()
    # the engine's first witness in search order
    assert w.images == (0, 0, 0)
    assert is_freezing_set(X3, X3.points).freezing


def test_freezing_rejects_foreign_points():
    with pytest.raises(FreezingError):
        is_freezing_set(X3, [(5,)])


def test_freezing_budget_is_never_a_verdict():
    rep = is_freezing_set(rectangle(3, 3), boundary(rectangle(3, 3)), budget=10)
    assert rep.verdict is Verdict.BUDGET_EXCEEDED and rep.witness is None


def test_empty_set():
    assert is_freezing_set(rectangle(0), []).freezing
    assert not is_freezing_set(X3, []).freezing


def test_minimality_examples():
    assert is_minimal_freezing_set(rectangle(2, 2), boundary(rectangle(2, 2))).minimal
    rep = is_minimal_freezing_set(X3, X3.points)
    assert rep.verdict is Minimality.NOT_MINIMAL and rep.redundant == (1,)
    assert is_minimal_freezing_set(rectangle(0), []).minimal
    assert is_minimal_freezing_set(X3, [(0,)]).verdict is Minimality.NOT_FREEZING


@pytest.mark.parametrize("ext", [(2, 2), (2, 3)])
def test_boundary_is_minimal_under_c2(ext):
    X = rectangle(*ext, adjacency=2)
    rep = is_minimal_freezing_set(X, boundary(X))
    assert rep.minimal
    assert all(r.verdict is Verdict.NOT_FREEZING for r in rep.removals.values())


SMALL = [interval(0, 2), interval(0, 3), rectangle(1, 1, adjacency=1), rectangle(1, 1, adjacency=2),
         rectangle(2, 1, adjacency=1), rectangle(2, 1, adjacency=2),
         DigitalImage.from_points([(0, 0), (1, 0), (1, 1)], 1)]


@pytest.mark.parametrize("X", SMALL, ids=lambda X: f"{len(X)}pts-{X.adjacency}")
def test_freezing_matches_brute_force_and_is_upward_closed(X):
    freezing = set()
    maps = brute_force_continuous(X)
    for k in range(len(X) + 1):
        for A in itertools.combinations(X.points, k):
            got = is_freezing_set(X, A).freezing
            assert got == brute_force_freezing(X, A, maps)
            if got:
                freezing.add(frozenset(A))
    for A in freezing:
        rest = [p for p in X.points if p not in A]
        for k in range(len(rest) + 1):
            for extra in itertools.combinations(rest, k):
                assert A | frozenset(extra) in freezing


@settings(max_examples=40, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=6),
       st.integers(1, 2), st.data())
def test_witnesses_valid(pts, u, data):
    X = DigitalImage.from_points(pts, u)
    A = data.draw(st.sets(st.sampled_from(X.points)))
    rep = is_freezing_set(X, A)
    assert (rep.witness is not None) == (rep.verdict is Verdict.NOT_FREEZING)
    if rep.witness is not None:
        w = rep.witness
        assert w.images in brute_force_continuous(X)
        assert all(w(a) == a for a in A) and not w.is_identity()


def test_transfer_examples():
    Y = interval(5, 7)
    F = ImageMap.from_table(X3, Y, {(i,): (i + 5,) for i in range(3)})
    rep = transfer_freezing([(0,), (2,)], F)
    assert rep.image_set == [(5,), (7,)] and rep.target.freezing
    rep = transfer_freezing([(0,), (2,)], SelfMap.identity(X3))
    assert rep.image_set == [(0,), (2,)] and rep.target.freezing
    with pytest.raises(NotAnIsomorphism):
        transfer_freezing([(0,)], SelfMap.constant(X3, 0))
    with pytest.raises(HypothesisError):
        transfer_freezing([(0,)], SelfMap.identity(X3))


def test_transfer_preserves_verdicts_on_generated_isomorphisms():
    cases = generated_isomorphisms()
    assert len(cases) == 20
    for X, Y, table in cases:
        F = ImageMap.from_table(X, Y, table)
        for k in range(len(X) + 1):
            for A in itertools.combinations(X.points, k):
                src = is_freezing_set(X, A).freezing
                tgt = is_freezing_set(Y, [table[a] for a in A]).freezing
                assert src == tgt
                if src:
                    assert transfer_freezing(A, F, assume_freezing=True).target.freezing
            if len(X) > 6:
                break


def test_projection_examples():
    P = product([interval(0, 1), interval(0, 1)])
    rep = check_projection_freezing(P, P.points)
    assert rep.all_freezing
    assert rep.factors[0][0] == [(0,), (1,)] and rep.factors[1][0] == [(0,), (1,)]
    with pytest.raises(HypothesisError):
        check_projection_freezing(P, [(0, 0)])
    with pytest.raises(FreezingError):
        check_projection_freezing(X3, X3.points)


def test_projection_of_every_freezing_set():
    P = product([interval(0, 1), interval(0, 2)])
    for k in range(len(P) + 1):
        for A in itertools.combinations(P.points, k):
            if is_freezing_set(P, A).freezing:
                assert check_projection_freezing(P, A).all_freezing


def test_boundary_extension_examples():
    X = rectangle(2, 2)
    assert check_boundary_fix_extension(X, X.points, SelfMap.identity(X))
    seen = []
    enumerate_maps(X, EnumerationConstraints(), visitor=lambda f: seen.append(f) or len(seen) == 200)
    assert len(seen) == 200
    for f in seen:
        assert check_boundary_fix_extension(X, [(1, 1)], f)
    with pytest.raises(HypothesisError):
        check_boundary_fix_extension(X3, [(0,)], SelfMap.from_values(X3, [0, 2, 0]))


def test_boundary_extension_sweep_interval():
    for f in continuous_self_maps(X3):
        for k in range(4):
            for A in itertools.combinations(X3.points, k):
                assert check_boundary_fix_extension(X3, A, f)


def test_retract_examples():
    rep = check_retract_exclusion(X3, [(0,), (1,)])
    assert is_retraction(rep.retraction, [(0,), (1,)])
    assert rep.freezing.verdict is Verdict.NOT_FREEZING
    w = rep.witness
    assert is_continuous(w) and not w.is_identity()
    with pytest.raises(HypothesisError):
        check_retract_exclusion(X3, X3.points)
    rep = check_retract_exclusion(rectangle(1, 1), [(0, 0)])
    assert rep.retraction.images == (0, 0, 0, 0)
    with pytest.raises(HypothesisError):
        check_retract_exclusion(X3, [(0,), (2,)])


def test_subset_search_examples():
    rep = search_freezing_subsets(X3, 3)
    assert rep.minimal_sets == [[(0,), (2,)]] and rep.complete
    assert search_freezing_subsets(rectangle(0), 0).minimal_sets == [[]]
    assert search_freezing_subsets(interval(0, 1), 2).minimal_sets == [[(0,), (1,)]]
    with pytest.raises(FreezingError):
        search_freezing_subsets(X3, 4)
    assert not search_freezing_subsets(rectangle(2, 2), 8, budget=5).complete


def test_subset_search_matches_brute_force():
    X = rectangle(2, 1, adjacency=1)
    rep = search_freezing_subsets(X, len(X))
    maps = brute_force_continuous(X)
    fam = [frozenset(A) for k in range(len(X) + 1) for A in itertools.combinations(X.points, k)
           if brute_force_freezing(X, A, maps)]
    minimal = [A for A in fam if not any(B < A for B in fam)]
    assert sorted(map(sorted, minimal)) == sorted(rep.minimal_sets)
