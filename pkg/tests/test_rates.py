"""Rate formula tests: entropy anchors, labeling search, typicality."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dihedral_codes.channels import Channel, builtin_channel, default_labeling, relabel
from dihedral_codes.group import ROTATION_COSET, Z6_INDEX2, Z6_INDEX3
from dihedral_codes.rates import (
    TypicalityParams,
    abelian_rate,
    best_labeling,
    conditional_entropy,
    count_occurrences,
    is_jointly_typical,
    pseudo_group_rate,
    rate_breakdown,
    symmetric_capacity,
)

LOG6 = math.log2(6)
LOG3 = math.log2(3)

IDENT = builtin_channel("identity")
USELESS = builtin_channel("useless")
ROT = builtin_channel("rotation-revealing")


def random_channel(rng, outputs=None):
    outputs = outputs or int(rng.integers(2, 9))
    return Channel(3, rng.dirichlet(np.ones(outputs), size=6))


def test_conditional_entropy_anchors():
    assert conditional_entropy(IDENT) == pytest.approx(0.0, abs=1e-12)
    assert conditional_entropy(USELESS) == pytest.approx(LOG6, abs=1e-12)
    assert conditional_entropy(USELESS, partition=ROTATION_COSET) == pytest.approx(
        LOG3, abs=1e-12
    )
    assert conditional_entropy(ROT) == pytest.approx(1.0, abs=1e-12)
    assert conditional_entropy(ROT, partition=ROTATION_COSET) == pytest.approx(
        0.0, abs=1e-12
    )


def test_pseudo_group_rate_anchors():
    assert pseudo_group_rate(IDENT).r_star == pytest.approx(LOG6, abs=1e-12)
    assert pseudo_group_rate(USELESS).r_star == pytest.approx(0.0, abs=1e-12)
    br = pseudo_group_rate(ROT)
    assert br.term_full == pytest.approx(LOG3, abs=1e-9)
    assert br.term_coset == pytest.approx(LOG6, abs=1e-9)
    assert br.r_star == pytest.approx(1.584963, abs=1e-6)


def test_abelian_rate_anchors():
    assert abelian_rate(IDENT).r_abelian == pytest.approx(LOG6, abs=1e-12)
    assert abelian_rate(USELESS).r_abelian == pytest.approx(0.0, abs=1e-12)
    br = abelian_rate(ROT)
    # the mod-3 coset term collapses: H(X|[X]_2 Y) = 1, so the term is 0 and
    # Z6 group codes are useless on this channel while r_star = log2(3)
    assert conditional_entropy(ROT, partition=Z6_INDEX2) == pytest.approx(1.0, abs=1e-12)
    assert br.abelian_term3 == pytest.approx(0.0, abs=1e-12)
    assert br.r_abelian == pytest.approx(0.0, abs=1e-12)
    assert pseudo_group_rate(ROT).r_star > 1.5


def test_symmetric_capacity_anchors():
    assert symmetric_capacity(IDENT) == pytest.approx(LOG6, abs=1e-12)
    assert symmetric_capacity(USELESS) == pytest.approx(0.0, abs=1e-12)
    assert symmetric_capacity(ROT) == pytest.approx(LOG6 - 1.0, abs=1e-12)


def test_rate_breakdown_consistency():
    rng = np.random.default_rng(0)
    for _ in range(50):
        br = rate_breakdown(random_channel(rng))
        assert br.r_star == min(br.term_full, br.term_coset)
        assert br.r_abelian == min(
            br.term_full, br.abelian_term_coset3, br.abelian_term3
        )


def test_coset3_term_equals_rotation_term():
    # the CRT welding keeps {0,2,4} on the rotations for every labeling
    rng = np.random.default_rng(1)
    for _ in range(20):
        ch = random_channel(rng)
        br = rate_breakdown(ch)
        assert br.abelian_term_coset3 == pytest.approx(br.term_coset, abs=1e-12)


def test_term_dominance_random_channels():
    rng = np.random.default_rng(2)
    for _ in range(200):
        br = rate_breakdown(random_channel(rng))
        assert br.r_abelian <= br.r_star + 1e-12


def test_entropy_sandwich():
    rng = np.random.default_rng(3)
    for _ in range(100):
        ch = random_channel(rng)
        h_y = conditional_entropy(ch)
        h_rot = conditional_entropy(ch, partition=ROTATION_COSET)
        assert -1e-12 <= h_rot <= min(h_y, LOG3) + 1e-12
        assert h_y <= LOG6 + 1e-12


def test_pseudo_group_rate_rejects_other_p():
    ch5 = Channel(5, np.eye(10))
    with pytest.raises(ValueError):
        pseudo_group_rate(ch5)


def test_best_labeling_identity_all_tie():
    for objective in ("r_star", "r_abelian", "symmetric"):
        lab, value = best_labeling(IDENT, objective)
        assert value == pytest.approx(LOG6, abs=1e-12)
        assert lab.elements == tuple(range(6))  # lexicographically smallest


def test_best_labeling_rotation_revealing():
    # a labeling can split every posterior pair across both the rotation
    # coset and the mod-3 classes, so the Abelian max climbs to log2(3)
    lab, value = best_labeling(ROT, "r_abelian")
    assert value == pytest.approx(LOG3, abs=1e-9)
    _, v_star = best_labeling(ROT, "r_star")
    assert v_star == pytest.approx(LOG3, abs=1e-9)
    assert symmetric_capacity(ROT) == pytest.approx(LOG3, abs=1e-9)


def test_best_labeling_orbit_invariance():
    rng = np.random.default_rng(4)
    ch = random_channel(rng, outputs=4)
    perm = list(rng.permutation(6))
    for objective in ("r_star", "r_abelian", "symmetric"):
        _, v1 = best_labeling(ch, objective)
        _, v2 = best_labeling(relabel(ch, perm), objective)
        assert v1 == pytest.approx(v2, abs=1e-12)


def test_relabel_changes_coset_entropy():
    # swapping the physical rows that carry x and y moves an input across the
    # rotation coset, so the coset no longer resolves the posterior pairs
    assert conditional_entropy(ROT, partition=ROTATION_COSET) == pytest.approx(
        0.0, abs=1e-12
    )
    swapped = relabel(ROT, [0, 1, 2, 4, 3, 5])
    assert conditional_entropy(swapped, partition=ROTATION_COSET) > 0.5


def test_symmetric_capacity_labeling_invariant():
    rng = np.random.default_rng(5)
    ch = random_channel(rng)
    perm = list(rng.permutation(6))
    assert symmetric_capacity(relabel(ch, perm)) == pytest.approx(
        symmetric_capacity(ch), abs=1e-12
    )


def test_count_occurrences():
    assert count_occurrences(1, 2, [1, 1, 0], [2, 3, 2]) == 1
    assert count_occurrences("a", "b", ["a"], ["b"]) == 1
    with pytest.raises(ValueError):
        count_occurrences(0, 0, [1, 2], [1])


def test_typicality_identity_pairs():
    # matched balanced sequences hit every diagonal pair at exactly 1/6, so
    # they are typical at every epsilon; unbalanced ones need eps > deviation
    joint = np.eye(6) / 6
    for n in (6, 12, 36):
        xn = [i % 6 for i in range(n)]
        for eps in (1e-12, 0.5, 3.0):
            assert is_jointly_typical(xn, xn, joint, eps)
    assert not is_jointly_typical([0], [0], joint, 0.5)
    assert is_jointly_typical([0], [0], joint, 36.0)


def test_typicality_zero_probability_pair_disqualifies():
    joint = np.eye(2) / 2
    assert not is_jointly_typical([0, 1], [1, 1], joint, 100.0)


def test_typicality_exact_uniform_hit():
    # n = 6, uniform joint on matched symbols, each hit exactly once
    joint = np.eye(6) / 6
    xn = list(range(6))
    for eps in (1e-9, 0.01, 0.3):
        assert is_jointly_typical(xn, xn, joint, eps)


@given(st.data())
def test_typicality_matches_literal_definition(data):
    # dual route: the vectorized check against the definition spelled out
    # with count_occurrences
    nx, ny = data.draw(st.integers(2, 4)), data.draw(st.integers(2, 4))
    weights = data.draw(
        st.lists(st.integers(0, 5), min_size=nx * ny, max_size=nx * ny).filter(
            lambda w: sum(w) > 0
        )
    )
    joint = np.array(weights, dtype=float).reshape(nx, ny)
    joint /= joint.sum()
    n = data.draw(st.integers(1, 12))
    xn = data.draw(st.lists(st.integers(0, nx - 1), min_size=n, max_size=n))
    yn = data.draw(st.lists(st.integers(0, ny - 1), min_size=n, max_size=n))
    eps = data.draw(st.floats(0.01, 5.0))
    literal = all(
        abs(count_occurrences(a, b, xn, yn) / n - joint[a, b]) <= eps / (nx * ny)
        for a in range(nx)
        for b in range(ny)
    ) and not any(
        joint[a, b] == 0 and count_occurrences(a, b, xn, yn) > 0
        for a in range(nx)
        for b in range(ny)
    )
    assert is_jointly_typical(xn, yn, joint, eps) == literal


def test_typicality_monotone_in_epsilon():
    rng = np.random.default_rng(6)
    joint = rng.dirichlet(np.ones(12)).reshape(3, 4)
    for _ in range(200):
        n = int(rng.integers(2, 30))
        xn = rng.integers(0, 3, size=n)
        yn = rng.integers(0, 4, size=n)
        eps = float(rng.uniform(0.01, 2.0))
        if is_jointly_typical(xn, yn, joint, eps):
            assert is_jointly_typical(xn, yn, joint, eps * 1.5)


def test_typicality_params_validation():
    with pytest.raises(ValueError):
        TypicalityParams(epsilon=0.0, n=4)
    with pytest.raises(ValueError):
        TypicalityParams(epsilon=0.1, n=0)
    params = TypicalityParams(epsilon=0.5, n=6)
    joint = np.eye(6) / 6
    assert is_jointly_typical(list(range(6)), list(range(6)), joint, params)
