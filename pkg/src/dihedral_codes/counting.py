"""Exact collision counting for the generator-pair ensemble.

For messages u != u~ the conditional probability that a random code maps u~
to c~ given that it maps u to c depends only on the difference statistics

    m1 = #{j : b_j != b~_j}           (reflection digits differ)
    m2 = #{j : b_j = b~_j, a_j != a~_j}
    n1, n2, n3 = #reflection / #non-identity-rotation / #identity
                 coordinates of theta = c * c~^-1

and factors over coordinates as

    P(theta_i) = A(m1) / (3 * 10^m1)   if theta_i is a reflection
                 B(m1, m2) / (3 * 10^m1)   if theta_i = 1
                 C(m1, m2) / (3 * 10^m1)   otherwise,

with A, B, C the counting functions below (general p: 10 -> p^2 + 1, 9 -> p^2,
3 -> p).  Everything here is exact rational arithmetic; the brute-force
enumerator over all (p^2+1)^k per-coordinate generator choices is the
independent ground truth the closed forms are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

import numpy as np

from .group import D6, IDENTITY, DihedralElement, DihedralGroup
from .ensemble import admissible_pairs

THETA_REFLECTION = "reflection"
THETA_IDENTITY = "identity"
THETA_ROTATION = "nonidentity-rotation"

BRUTE_FORCE_CAP = 10**6

RationalLike = Union[int, str, Fraction]


@dataclass(frozen=True)
class DifferenceType:
    """Joint type of a message pair and a codeword ratio theta."""

    m1: int
    m2: int
    m3: int
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if min(self.m1, self.m2, self.m3, self.n1, self.n2, self.n3) < 0:
            raise ValueError("type counts must be >= 0")

    @property
    def k(self) -> int:
        return self.m1 + self.m2 + self.m3

    @property
    def n(self) -> int:
        return self.n1 + self.n2 + self.n3


@dataclass(frozen=True)
class BoundParams:
    """Slack parameters delta, delta' in (0, 1), kept as exact rationals."""

    delta: Fraction
    delta_prime: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "delta_prime", Fraction(self.delta_prime))
        if not (0 < self.delta < 1 and 0 < self.delta_prime < 1):
            raise ValueError("delta and delta_prime must lie in (0, 1)")


def _even_sum(m1: int, q: int = 9) -> int:
    return sum(comb(m1, l) * q**l for l in range(2, m1 + 1, 2))


def abc_functions(m1: int, m2: int) -> tuple[Fraction, Fraction, Fraction]:
    """The exact counting functions (A(m1), B(m1, m2), C(m1, m2)).

    A(m1) = sum over odd l of C(m1, l) 9^l, zero at m1 = 0;
    B has the (10^m2 + 2)/10^m2 head, C the (10^m2 - 1)/10^m2 head, both plus
    the even-l tail of the same binomial sum.
    """
    if m1 < 0 or m2 < 0:
        raise ValueError("m1 and m2 must be >= 0")
    a = sum(comb(m1, l) * 9**l for l in range(1, m1 + 1, 2))
    tail = _even_sum(m1)
    b = Fraction(10**m2 + 2, 10**m2) + tail
    c = Fraction(10**m2 - 1, 10**m2) + tail
    return Fraction(a), b, c


def a_closed_form(m1: int) -> Fraction:
    """A(m1) = (10^m1 - (-8)^m1) / 2, from the binomial theorem at 1 +- 9."""
    return Fraction(10**m1 - (-8) ** m1, 2)


def even_tail_closed_form(m1: int) -> Fraction:
    """sum over even l >= 2 of C(m1, l) 9^l = (10^m1 + (-8)^m1)/2 - 1."""
    return Fraction(10**m1 + (-8) ** m1, 2) - 1


def theta_class(theta: DihedralElement) -> str:
    if theta.beta == 1:
        return THETA_REFLECTION
    return THETA_IDENTITY if theta.alpha == 0 else THETA_ROTATION


def per_coordinate_prob(m1: int, m2: int, theta_cls: str) -> Fraction:
    """Probability that one coordinate of c * c~^-1 falls in the given class."""
    if (m1, m2) == (0, 0):
        raise ValueError("(m1, m2) = (0, 0) means u~ = u, which is excluded")
    a, b, c = abc_functions(m1, m2)
    den = 3 * 10**m1
    if theta_cls == THETA_REFLECTION:
        return a / den
    if theta_cls == THETA_IDENTITY:
        return b / den
    if theta_cls == THETA_ROTATION:
        return c / den
    raise ValueError(f"unknown theta class {theta_cls!r}")


def message_type(
    u: Sequence[DihedralElement], u_tilde: Sequence[DihedralElement]
) -> tuple[int, int, int]:
    if len(u) != len(u_tilde):
        raise ValueError("messages must have equal length")
    m1 = sum(1 for a, b in zip(u, u_tilde) if a.beta != b.beta)
    m2 = sum(1 for a, b in zip(u, u_tilde) if a.beta == b.beta and a.alpha != b.alpha)
    return m1, m2, len(u) - m1 - m2


def codeword_type(theta: Sequence[DihedralElement]) -> tuple[int, int, int]:
    n1 = sum(1 for t in theta if t.beta == 1)
    n2 = sum(1 for t in theta if t.beta == 0 and t.alpha != 0)
    return n1, n2, len(theta) - n1 - n2


def difference_type(
    u: Sequence[DihedralElement],
    u_tilde: Sequence[DihedralElement],
    theta: Sequence[DihedralElement],
) -> DifferenceType:
    m1, m2, m3 = message_type(u, u_tilde)
    n1, n2, n3 = codeword_type(theta)
    return DifferenceType(m1, m2, m3, n1, n2, n3)


def pairwise_collision_prob(
    u: Sequence[DihedralElement],
    u_tilde: Sequence[DihedralElement],
    theta: Sequence[DihedralElement],
) -> Fraction:
    """P(code maps u~ to c~ | it maps u to c) for theta = c * c~^-1.

    Exact rational; depends on (u, u~) only through (m1, m2) and on theta only
    through its coordinate classes.
    """
    if tuple(u) == tuple(u_tilde):
        raise ValueError("u~ must differ from u")
    m1, m2, _ = message_type(u, u_tilde)
    prob = Fraction(1)
    for t in theta:
        prob *= per_coordinate_prob(m1, m2, theta_class(t))
    return prob


# brute-force oracle: literal enumeration of all 10^k per-coordinate tables

def _pair_elements(group: DihedralGroup) -> list[tuple[DihedralElement, DihedralElement]]:
    return [(pr.g, pr.h) for pr in admissible_pairs(group)]


@lru_cache(maxsize=None)
def _sandwich_maps(digit: tuple[int, int], digit_tilde: tuple[int, int]) -> np.ndarray:
    """For one digit pair, the 10 maps m -> g^a h^b * m * h^b~ g^-a~.

    Returned as a (10, 2p) index array; composing these maps over digits k..1
    enumerates G_i(u) * G_i(u~)^-1 over every per-coordinate table choice.
    """
    group = D6
    a, b = digit
    at, bt = digit_tilde
    maps = np.empty((len(_pair_elements(group)), group.order), dtype=np.intp)
    for t, (g, h) in enumerate(_pair_elements(group)):
        left = group.mul(group.power(g, a), group.power(h, b))
        right = group.mul(group.power(h, bt), group.power(g, -at))
        for m_idx in range(group.order):
            mid = group.from_index(m_idx)
            out = group.mul(group.mul(left, mid), right)
            maps[t, m_idx] = group.index(out)
    return maps


@lru_cache(maxsize=None)
def _theta_distribution(
    u: tuple[DihedralElement, ...], u_tilde: tuple[DihedralElement, ...]
) -> tuple[Fraction, ...]:
    """Exact per-coordinate distribution of G_i(u) G_i(u~)^-1 by enumeration.

    Enumerates all 10^k generator choices for one coordinate (staged over
    digits, innermost first) and returns the 6 probabilities in element index
    order.
    """
    group = D6
    k = len(u)
    total = (group.p**2 + 1) ** k
    if total > BRUTE_FORCE_CAP:
        raise ValueError(f"10^{k} = {total} exceeds enumeration cap {BRUTE_FORCE_CAP}")
    states = np.array([group.index(IDENTITY)], dtype=np.intp)
    for d in range(k - 1, -1, -1):
        maps = _sandwich_maps(
            (u[d].alpha, u[d].beta), (u_tilde[d].alpha, u_tilde[d].beta)
        )
        states = maps[:, states].reshape(-1)
    counts = np.bincount(states, minlength=group.order)
    return tuple(Fraction(int(c), total) for c in counts)


def brute_force_theta_distribution(
    u: Sequence[DihedralElement], u_tilde: Sequence[DihedralElement]
) -> dict[DihedralElement, Fraction]:
    dist = _theta_distribution(tuple(u), tuple(u_tilde))
    return {D6.from_index(i): pr for i, pr in enumerate(dist)}


def brute_force_collision_prob(
    u: Sequence[DihedralElement],
    u_tilde: Sequence[DihedralElement],
    theta: Sequence[DihedralElement],
) -> Fraction:
    """Ground-truth collision probability by exhaustive table enumeration.

    Coordinates are independent by construction, so the 10^(k n) table space
    factors into n independent 10^k per-coordinate enumerations.
    """
    if tuple(u) == tuple(u_tilde):
        raise ValueError("u~ must differ from u")
    dist = _theta_distribution(tuple(u), tuple(u_tilde))
    prob = Fraction(1)
    for t in theta:
        prob *= dist[D6.index(t)]
    return prob


def count_message_types(k: int, m1: int, m2: int) -> int:
    """|T_(m1,m2)(u)| = C(k, m1) C(k - m1, m2) 3^m1 2^m2, independent of u."""
    if m1 < 0 or m2 < 0 or m1 + m2 > k:
        raise ValueError("require m1, m2 >= 0 and m1 + m2 <= k")
    return comb(k, m1) * comb(k - m1, m2) * 3**m1 * 2**m2


# threshold claims: both are read as thresholds on m1, holding for every m2
# (B decreases in m2 from its m2 = 0 maximum; C increases strictly toward
# 1 + even tail without reaching it, so "C < bound for all m2" is exactly
# "limit <= bound")

def _claim_holds(m1: int, a_bound: Fraction, bc_bound: Fraction) -> bool:
    a = a_closed_form(m1)
    b_max = Fraction(3) + even_tail_closed_form(m1)  # B(m1, 0)
    c_sup = Fraction(1) + even_tail_closed_form(m1)  # lim_(m2) C(m1, m2)
    return a < a_bound and b_max < bc_bound and c_sup <= bc_bound


def claim1_holds(m1: int, delta: RationalLike) -> bool:
    """A(m1), B(m1, m2), C(m1, m2) < 10^m1 / (2(1 - delta)) for every m2."""
    bound = Fraction(10**m1) / (2 * (1 - Fraction(delta)))
    return _claim_holds(m1, bound, bound)


def claim2_holds(m1: int, delta_prime: RationalLike) -> bool:
    """A < (10^m1 - 8^m1)/(2(1 - d')) and B, C < (10^m1 + 8^m1)/(2(1 - d'))."""
    dp = Fraction(delta_prime)
    a_bound = Fraction(10**m1 - 8**m1) / (2 * (1 - dp))
    bc_bound = Fraction(10**m1 + 8**m1) / (2 * (1 - dp))
    return _claim_holds(m1, a_bound, bc_bound)


def thresholds(params: BoundParams, search_cap: int = 40) -> tuple[int, int]:
    """Minimal (M1, M2) with claim 1 / claim 2 holding for all m1 >= Mi.

    Verified exactly up to search_cap; raises if either claim still fails at
    the cap, which would falsify the claim.
    """
    out = []
    for holds in (
        lambda m: claim1_holds(m, params.delta),
        lambda m: claim2_holds(m, params.delta_prime),
    ):
        threshold = None
        for m1 in range(search_cap, -1, -1):
            if not holds(m1):
                threshold = m1 + 1
                break
        else:
            threshold = 0
        if threshold > search_cap:
            raise RuntimeError(
                f"no threshold found below cap {search_cap}; claim falsified"
            )
        out.append(threshold)
    return out[0], out[1]
