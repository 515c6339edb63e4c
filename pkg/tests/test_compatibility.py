import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import qualifying_prefixes
from digitop.compatibility import (CompatibilityError, coincidence_points, compat_limit_check, compatibility_report,
                                   is_occasionally_weakly_compatible, is_weakly_compatible)
from digitop.errors import HypothesisError
from digitop.image import DigitalImage, interval, rectangle
from digitop.maps import SelfMap, all_self_maps
from digitop.metrics import LpMetric

X3 = interval(0, 2)
L1 = LpMetric(X3, 1)
S_EX = SelfMap.from_values(X3, [1, 2, 2])
T_EX = SelfMap.from_values(X3, [1, 0, 2])


def test_coincidence_examples():
    assert coincidence_points(S_EX, S_EX) == list(X3.points)
    X2 = interval(0, 1)
    assert coincidence_points(SelfMap.from_values(X2, [1, 0]), SelfMap.identity(X2)) == []
    assert coincidence_points(S_EX, T_EX) == [(0,), (2,)]


def test_weak_compatibility_examples():
    X2 = interval(0, 1)
    assert is_weakly_compatible(SelfMap.from_values(X2, [1, 0]), SelfMap.identity(X2)) == (True, None)
    assert is_weakly_compatible(S_EX, S_EX)[0]
    assert is_weakly_compatible(S_EX, T_EX) == (False, (0,))


def test_report_examples():
    I = SelfMap.identity(X3)
    rep = compatibility_report(I, I, L1)
    assert all([rep.weakly_compatible, rep.compatible, rep.type_A, rep.type_P, rep.occasionally_weakly_compatible])
    rep = compatibility_report(S_EX, T_EX, L1)
    assert rep.line() == "wc=false compat=false typeA=false typeP=false owc=true coincidence=0;2"
    assert rep.failing_witness == ((0,), 2)
    X2 = interval(0, 1)
    rep = compatibility_report(SelfMap.from_values(X2, [1, 0]), SelfMap.identity(X2), LpMetric(X2, 1))
    assert rep.compatible and not rep.occasionally_weakly_compatible and rep.vacuous
    assert rep.line().endswith("coincidence=-")


def test_report_rejects_mismatched_inputs():
    with pytest.raises(CompatibilityError):
        compatibility_report(S_EX, T_EX, LpMetric(interval(0, 3), 1))
    with pytest.raises(CompatibilityError):
        coincidence_points(S_EX, SelfMap.identity(interval(0, 3)))


def _limit_oracle(S, T, d):
    """Each notion straight from its sequence definition, on covering tails."""
    rng = random.Random(0)
    compat = typeA = typeP = True
    for t, seq, m in qualifying_prefixes(S, T, rng):
        for x in seq[m:]:
            if d(S(T(x)), T(S(x))) != 0:
                compat = False
            if d(S(T(x)), T(T(x))) != 0 or d(T(S(x)), S(S(x))) != 0:
                typeA = False
            if d(S(S(x)), T(T(x))) != 0:
                typeP = False
    return compat, typeA, typeP


def test_equivalence_exhaustive_on_interval():
    maps = list(all_self_maps(X3))
    for S, T in itertools.product(maps, repeat=2):
        rep = compatibility_report(S, T, L1)
        assert rep.compatible == rep.type_A == rep.type_P
        assert (rep.compatible, rep.type_A, rep.type_P) == _limit_oracle(S, T, L1)
        if rep.compatible:
            assert rep.weakly_compatible
        if rep.occasionally_weakly_compatible:
            assert rep.coincidence_points
        if rep.weakly_compatible and rep.coincidence_points:
            assert rep.occasionally_weakly_compatible


@pytest.mark.parametrize("X", [interval(0, 1), DigitalImage.from_points([(0,), (5,), (6,)]),
                               rectangle(1, 0)], ids=["I2", "gap", "strip"])
def test_equivalence_other_small_images(X):
    d = LpMetric(X, 2)
    maps = list(all_self_maps(X))
    for S, T in itertools.product(maps, repeat=2):
        rep = compatibility_report(S, T, d)
        assert (rep.compatible, rep.type_A, rep.type_P) == _limit_oracle(S, T, d)


@given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_owc_is_existential(s, t):
    X = interval(0, 3)
    S, T = SelfMap(X, s), SelfMap(X, t)
    want = any(S(x) == T(x) and S(T(x)) == T(S(x)) for x in X.points)
    assert is_occasionally_weakly_compatible(S, T) == want


def test_limit_check_examples():
    I = SelfMap.identity(X3)
    assert compat_limit_check(I, I, [(0,), (2,), (1,), (1,)], L1)
    S = SelfMap.constant(X3, 1)
    res = compat_limit_check(S, S, [(0,), (0,)], L1)
    assert res.holds and res.limit == (1,)
    res = compat_limit_check(S_EX, T_EX, [(1,), (0,), (0,)], L1)
    assert not res.holds and res.witness_index == 1 and not res.compatible and res.notes
    with pytest.raises(HypothesisError):
        compat_limit_check(I, I, [(0,), (1,), (2,)], L1)
    # both tails are constant but settle at different points
    with pytest.raises(HypothesisError):
        compat_limit_check(S_EX, SelfMap.constant(X3, 0), [(1,), (1,)], L1)


def test_limit_check_on_random_prefixes():
    rng = random.Random(11)
    maps = list(all_self_maps(X3))
    done = 0
    while done < 100:
        S, T = rng.choice(maps), rng.choice(maps)
        rep = compatibility_report(S, T, L1)
        for t, seq, _ in qualifying_prefixes(S, T, rng):
            res = compat_limit_check(S, T, seq, L1)
            assert res.limit == t
            if rep.compatible:
                assert res.holds
            done += 1
