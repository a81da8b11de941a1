import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsemi.lattice import OrderMode, add, min_vec
from gsemi.semigroup import GoodSemigroup, first_nonempty_layer, indices

# -- independent sieve oracle for numerical semigroups --------------------


def sieve(gens: list[int], upto: int) -> set[int]:
    reach = {0}
    changed = True
    while changed:
        changed = False
        for g in gens:
            for x in list(reach):
                y = x + g
                if y <= upto and y not in reach:
                    reach.add(y)
                    changed = True
    return reach


gen_sets = st.lists(
    st.integers(min_value=2, max_value=15), min_size=2, max_size=4, unique=True
).filter(lambda gs: math.gcd(*gs) == 1)


@given(gen_sets)
def test_from_generators_matches_sieve(gens):
    S = GoodSemigroup.from_generators(gens)
    upto = S.conductor[0] + 2 * max(gens)
    reach = sieve(sorted(gens), upto)
    for x in range(upto + 1):
        assert S.membership((x,)) == (x in reach), (gens, x)
    assert S.validate().valid


@given(gen_sets)
def test_conductor_is_exact(gens):
    S = GoodSemigroup.from_generators(gens)
    c = S.conductor[0]
    assert S.membership((c,))
    if c > 0:
        assert not S.membership((c - 1,))


def test_from_generators_rejects_non_coprime():
    with pytest.raises(ValueError):
        GoodSemigroup.from_generators([4, 6])


# -- membership truncation law -------------------------------------------


@given(gen_sets, st.integers(min_value=-5, max_value=60))
def test_truncation_law(gens, x):
    S = GoodSemigroup.from_generators(gens)
    v = (x,)
    if x < 0:
        assert not S.membership(v)
    else:
        assert S.membership(v) == S.membership(min_vec(v, S.conductor))


def test_membership_multibranch():
    S = GoodSemigroup(
        branches=2,
        conductor=(1, 1),
        small=frozenset({(0, 0), (1, 1)}),
        name="node",
    )
    assert S.membership((0, 0))
    assert not S.membership((1, 0))
    assert not S.membership((0, 7))
    assert S.membership((3, 1))
    assert S.membership((5, 9))
    assert not S.membership((-1, 2))


# -- validation codes ------------------------------------------------------


def _mk(small, conductor, branches=2):
    return GoodSemigroup(
        branches=branches, conductor=conductor, small=frozenset(small)
    )


def test_validate_flags_zero_missing():
    rep = _mk([(1, 1), (2, 2)], (2, 2)).validate()
    assert not rep.valid
    assert "zero-missing" in {v.code for v in rep.violations}


def test_validate_flags_conductor_missing():
    rep = _mk([(0, 0)], (2, 2)).validate()
    assert "conductor-missing" in {v.code for v in rep.violations}


def test_validate_flags_locality():
    rep = _mk([(0, 0), (1, 0), (2, 2)], (2, 2)).validate()
    assert "locality" in {v.code for v in rep.violations}


def test_validate_flags_box():
    rep = _mk([(0, 0), (5, 5), (2, 2)], (2, 2)).validate()
    assert "box" in {v.code for v in rep.violations}


def test_validate_flags_min_closure():
    # (2,3) and (3,2) present, min (2,2) missing
    small = [(0, 0), (2, 3), (3, 2), (3, 3)]
    rep = _mk(small, (3, 3)).validate()
    assert "min-closure" in {v.code for v in rep.violations}


def test_validate_flags_additive_closure():
    # 1+1=2 missing below the conductor
    rep = _mk([(0,), (1,), (4,)], (4,), branches=1).validate()
    assert "additive-closure" in {v.code for v in rep.violations}


def test_validate_flags_exchange():
    # (1,2) and (2,1) in S force some element with first coordinate 1 and
    # second > 2 (or symmetric); leaving the slot empty breaks exchange
    small = [(0, 0), (1, 2), (2, 1), (1, 1), (3, 3), (2, 2), (1, 3), (3, 1)]
    bad = [p for p in small if p != (1, 3)]
    rep = _mk(bad, (3, 3)).validate()
    assert not rep.valid


def test_validate_flags_conductor_minimality():
    # everything from (1,) on is present: true conductor is 1, not 2
    rep = _mk([(0,), (1,), (2,)], (2,), branches=1).validate()
    assert "conductor-minimality" in {v.code for v in rep.violations}


def test_node_and_axes_validate():
    node = _mk([(0, 0), (1, 1)], (1, 1))
    assert node.validate().valid
    axes = GoodSemigroup(
        branches=3, conductor=(1, 1, 1), small=frozenset({(0, 0, 0), (1, 1, 1)})
    )
    assert axes.validate().valid


# -- indices ----------------------------------------------------------------


FROZEN_INDICES = {
    # gens -> (beta, m, r, n)
    (2, 3): (2, 0, 0, None),
    (3, 4, 5): (3, 0, 0, None),
    (3, 5, 7): (5, 0, 1, None),
    (4, 9, 10, 11): (8, 1, 1, None),
    (5, 6, 7, 8, 9): (5, 0, 0, None),
    (3, 7, 8): (6, 1, 1, None),
    (4, 6, 9, 11): (8, 1, 1, 2),
}


@pytest.mark.parametrize("gens", sorted(FROZEN_INDICES))
def test_indices_frozen_values(gens):
    beta, m, r, n = FROZEN_INDICES[gens]
    S = GoodSemigroup.from_generators(list(gens))
    assert S.conductor == (beta,)
    idx = indices(S, OrderMode.LT_NEQ)
    assert idx.m == m and idx.r == r and idx.n == n
    assert idx.gamma == (beta - 1,)
    assert add(idx.gamma, (1,)) == S.conductor


def test_indices_node():
    S = _mk([(0, 0), (1, 1)], (1, 1))
    idx = indices(S, OrderMode.LT_NEQ)
    assert idx.alpha == (1, 1) and idx.m == 0 and idx.r == 0
    assert idx.n is None and idx.d is None


def test_indices_d_value():
    S = GoodSemigroup.from_generators([4, 6, 9, 11])
    idx = indices(S, OrderMode.LT_NEQ)
    assert idx.d == (6,)


def test_indices_degenerate():
    S = GoodSemigroup.from_generators([1])
    assert S.conductor == (0,)
    idx = indices(S, OrderMode.LT_NEQ)
    assert idx.degenerate
    assert idx.alpha == (1,)


def test_first_nonempty_layer_tacnode():
    tac = _mk([(0, 0), (1, 1), (2, 2)], (2, 2))
    idx = indices(tac, OrderMode.LT_NEQ)
    assert idx.m == 1 and idx.n is None
    assert first_nonempty_layer(tac, idx, OrderMode.LT_NEQ) == 3


def test_indices_rejects_invalid():
    broken = _mk([(0, 0), (1, 0), (2, 2)], (2, 2))
    with pytest.raises(ValueError):
        indices(broken, OrderMode.LT_NEQ)


# -- serialization round trip ----------------------------------------------


@given(gen_sets)
def test_json_roundtrip(gens):
    S = GoodSemigroup.from_generators(gens)
    T = GoodSemigroup.from_json(S.to_json())
    assert S == T


def test_from_dict_requires_one_form():
    with pytest.raises(ValueError):
        GoodSemigroup.from_dict(
            {"generators": [2, 3], "conductor": [2], "small": [[0], [2]]}
        )
    with pytest.raises(ValueError):
        GoodSemigroup.from_dict({"branches": 1})


def test_from_dict_branch_crosscheck():
    with pytest.raises(ValueError):
        GoodSemigroup.from_dict(
            {"branches": 3, "conductor": [1, 1], "small": [[0, 0], [1, 1]]}
        )
