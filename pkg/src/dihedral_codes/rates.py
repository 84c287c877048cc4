"""Achievable-rate and entropy computations for D6-input channels.

With X uniform over the six channel inputs, the dihedral ensemble achieves

    r_star = min( log2(6) - H(X|Y),
                  (log2(6)/log2(3)) * (log2(3) - H(X|[X] Y)) )

where [X] is the coset of the rotation subgroup.  Abelian group codes over Z6
achieve the same minimum extended by a third term using the cosets of {0, 3}:

    r_abelian = min( log2(6) - H(X|Y),
                     (log2(6)/log2(3)) * (log2(3) - H(X|[X]_3 Y)),
                     log2(6) * (1 - H(X|[X]_2 Y)) )

with [X]_3 / [X]_2 the cosets of {0,2,4} / {0,3} in the integer labels.  Under
the default labeling [X]_3 coincides with the rotation coset, so the Abelian
minimum runs over a superset of terms and never exceeds r_star.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence, Union

import numpy as np

from .channels import Channel, Labeling, default_labeling
from .group import ROTATION_COSET, Z6_INDEX2, Z6_INDEX3, coset_label

OBJECTIVES = ("r_star", "r_abelian", "symmetric")


@dataclass(frozen=True)
class RateBreakdown:
    """All min-terms of both rate formulas, in bits per channel use."""

    term_full: float
    term_coset: float
    r_star: float
    abelian_term_coset3: float
    abelian_term3: float
    r_abelian: float


@dataclass(frozen=True)
class TypicalityParams:
    epsilon: float
    n: int

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")


def _entropy_bits(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float).ravel()
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def _joint(channel: Channel) -> np.ndarray:
    # X uniform over the 2p inputs
    return channel.transition / channel.input_size


def _partition_of_inputs(
    channel: Channel, labeling: Labeling, partition: str
) -> np.ndarray:
    # the code alphabet is welded to Z6 by the fixed CRT correspondence
    # (z = alpha mod p, z = beta mod 2); the labeling only decides which
    # physical input carries which symbol, so a row's partition class comes
    # from the element it carries, not from its row index
    return np.array(
        [
            coset_label(labeling.element_of_input(m), partition, p=channel.p).value
            for m in range(channel.input_size)
        ]
    )


def conditional_entropy(
    channel: Channel,
    labeling: Optional[Labeling] = None,
    partition: Optional[str] = None,
) -> float:
    """H(X|Y), or H(X|[X]_partition, Y) when a partition id is given.

    Exact from the joint p(x, y) = W(y|x) / (2p) with the 0 log 0 = 0
    convention; conditioning on a function of X uses
    H(X | f(X), Y) = H(X, Y) - H(f(X), Y).
    """
    labeling = labeling or default_labeling(channel.p)
    joint = _joint(channel)
    h_xy = _entropy_bits(joint)
    if partition is None:
        return h_xy - _entropy_bits(joint.sum(axis=0))
    labels = _partition_of_inputs(channel, labeling, partition)
    collapsed = np.zeros((labels.max() + 1, channel.output_size))
    np.add.at(collapsed, labels, joint)
    return h_xy - _entropy_bits(collapsed)


def rate_breakdown(channel: Channel, labeling: Optional[Labeling] = None) -> RateBreakdown:
    """Every term of both formulas in one pass (four conditional entropies)."""
    if channel.input_size != 6:
        raise ValueError("rate formulas are implemented for 6-element inputs only")
    labeling = labeling or default_labeling(channel.p)
    log6 = math.log2(6)
    log3 = math.log2(3)
    h_y = conditional_entropy(channel, labeling)
    h_rot = conditional_entropy(channel, labeling, ROTATION_COSET)
    h_z3 = conditional_entropy(channel, labeling, Z6_INDEX3)
    h_z2 = conditional_entropy(channel, labeling, Z6_INDEX2)
    term_full = log6 - h_y
    term_coset = log6 / log3 * (log3 - h_rot)
    abelian_coset3 = log6 / log3 * (log3 - h_z3)
    abelian_term3 = log6 * (1.0 - h_z2)
    return RateBreakdown(
        term_full=term_full,
        term_coset=term_coset,
        r_star=min(term_full, term_coset),
        abelian_term_coset3=abelian_coset3,
        abelian_term3=abelian_term3,
        r_abelian=min(term_full, abelian_coset3, abelian_term3),
    )


def pseudo_group_rate(channel: Channel, labeling: Optional[Labeling] = None) -> RateBreakdown:
    """Dihedral-ensemble achievable rate r_star (D6 inputs only).

    Negative terms are reported as-is; the achieved rate in summaries is
    max(0, r_star).
    """
    if channel.p != 3:
        raise ValueError("the rate formula is validated for p = 3 only")
    return rate_breakdown(channel, labeling)


def abelian_rate(channel: Channel, labeling: Optional[Labeling] = None) -> RateBreakdown:
    """Best Z6 group-code rate r_abelian (three min-terms)."""
    return rate_breakdown(channel, labeling)


def symmetric_capacity(channel: Channel, labeling: Optional[Labeling] = None) -> float:
    """Uniform-input mutual information log2(2p) - H(X|Y)."""
    return math.log2(channel.input_size) - conditional_entropy(channel, labeling)


def _objective_value(channel: Channel, labeling: Labeling, objective: str) -> float:
    if objective == "r_star":
        return rate_breakdown(channel, labeling).r_star
    if objective == "r_abelian":
        return rate_breakdown(channel, labeling).r_abelian
    if objective == "symmetric":
        return symmetric_capacity(channel, labeling)
    raise ValueError(f"unknown objective {objective!r}; choose from {OBJECTIVES}")


def best_labeling(channel: Channel, objective: str = "r_star") -> tuple[Labeling, float]:
    """Exhaustive max over all 720 labelings; ties keep the lexicographically
    smallest permutation (permutations enumerate in lex order)."""
    if channel.input_size != 6:
        raise ValueError("labeling search is implemented for 6-element inputs only")
    best: Optional[tuple[Labeling, float]] = None
    for perm in permutations(range(6)):
        lab = Labeling(p=channel.p, elements=perm)
        value = _objective_value(channel, lab, objective)
        if best is None or value > best[1]:
            best = (lab, value)
    assert best is not None
    return best


def count_occurrences(a, b, xn: Sequence, yn: Sequence) -> int:
    """N(a, b | x^n, y^n): occurrences of the symbol pair in the sequence pair."""
    if len(xn) != len(yn):
        raise ValueError("sequences must have equal length")
    return sum(1 for xi, yi in zip(xn, yn) if xi == a and yi == b)


def is_jointly_typical(
    xn: Sequence[int],
    yn: Sequence[int],
    p_xy: np.ndarray,
    params: Union[TypicalityParams, float],
) -> bool:
    """Joint typicality of integer-symbol sequences against p_xy.

    Requires |N(a,b)/n - p(a,b)| <= eps / (|X||Y|) for every pair, and that no
    zero-probability pair occurs.
    """
    if len(xn) != len(yn):
        raise ValueError("sequences must have equal length")
    eps = params.epsilon if isinstance(params, TypicalityParams) else float(params)
    p_xy = np.asarray(p_xy, dtype=float)
    nx, ny = p_xy.shape
    n = len(xn)
    xn = np.asarray(xn, dtype=np.intp)
    yn = np.asarray(yn, dtype=np.intp)
    counts = np.bincount(xn * ny + yn, minlength=nx * ny).reshape(nx, ny)
    if np.any(counts[p_xy == 0] > 0):
        return False
    return bool(np.all(np.abs(counts / n - p_xy) <= eps / (nx * ny)))
