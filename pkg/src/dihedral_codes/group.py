"""Exact arithmetic in dihedral groups D_2p, p an odd prime.

Every element is kept in the canonical form x^alpha * y^beta with
0 <= alpha < p and beta in {0, 1}, where x is the order-p rotation and y a
reflection.  All operations are pure functions on immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

ROTATION_COSET = "rotation-coset"
Z6_INDEX3 = "z6-index3"
Z6_INDEX2 = "z6-index2"
PARTITION_IDS = (ROTATION_COSET, Z6_INDEX3, Z6_INDEX2)

_ELEMENT_RE = re.compile(r"(?:x(?:\^(-?\d+))?)?\s*(y)?")


@dataclass(frozen=True)
class DihedralElement:
    """Canonical x^alpha y^beta form; beta = 1 marks a reflection."""

    alpha: int
    beta: int

    def is_rotation(self) -> bool:
        return self.beta == 0

    def is_reflection(self) -> bool:
        return self.beta == 1


IDENTITY = DihedralElement(0, 0)


@dataclass(frozen=True)
class PartitionLabel:
    """Coset index of an element under one of the supported partitions."""

    partition_id: str
    value: int


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class DihedralGroup:
    """D_2p = <x, y | x^p = 1, y^2 = 1, xyxy = 1> for an odd prime p.

    Elements are indexed 0..2p-1 in the order 1, x, ..., x^(p-1), y, xy, ...,
    x^(p-1)y, i.e. index = alpha + p*beta.
    """

    def __init__(self, p: int):
        if not _is_odd_prime(p):
            raise ValueError(f"p must be an odd prime >= 3, got {p}")
        self.p = p
        self.order = 2 * p

    def __repr__(self) -> str:
        return f"DihedralGroup(p={self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, DihedralGroup) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("DihedralGroup", self.p))

    @property
    def identity(self) -> DihedralElement:
        return IDENTITY

    def element(self, alpha: int, beta: int) -> DihedralElement:
        """Build the canonical element x^(alpha mod p) y^(beta mod 2)."""
        return DihedralElement(alpha % self.p, beta % 2)

    def elements(self) -> tuple[DihedralElement, ...]:
        """All 2p elements, rotations first, in index order."""
        return tuple(
            DihedralElement(a, b) for b in (0, 1) for a in range(self.p)
        )

    def check(self, a: DihedralElement) -> DihedralElement:
        if not (0 <= a.alpha < self.p and a.beta in (0, 1)):
            raise ValueError(f"{a} is not canonical for p={self.p}")
        return a

    def index(self, a: DihedralElement) -> int:
        self.check(a)
        return a.alpha + self.p * a.beta

    def from_index(self, i: int) -> DihedralElement:
        if not 0 <= i < self.order:
            raise ValueError(f"element index {i} out of range for p={self.p}")
        return DihedralElement(i % self.p, i // self.p)

    def mul(self, a: DihedralElement, b: DihedralElement) -> DihedralElement:
        """Group product: x^s y^t * x^u y^v = x^(s + (-1)^t u) y^(t xor v)."""
        self.check(a)
        self.check(b)
        alpha = (a.alpha + (b.alpha if a.beta == 0 else -b.alpha)) % self.p
        return DihedralElement(alpha, a.beta ^ b.beta)

    def inv(self, a: DihedralElement) -> DihedralElement:
        """Reflections are involutions; rotations invert by negating alpha."""
        self.check(a)
        if a.beta == 1:
            return a
        return DihedralElement(-a.alpha % self.p, 0)

    def power(self, a: DihedralElement, e: int) -> DihedralElement:
        """a**e for any signed integer e; a**0 is the identity.

        Exponents reduce mod p on rotations and mod 2 through the reflection
        part, so negative exponents are handled exactly.
        """
        self.check(a)
        if a.beta == 0:
            return DihedralElement((a.alpha * e) % self.p, 0)
        return a if e % 2 else IDENTITY

    def prod(self, items) -> DihedralElement:
        """Left-to-right product of a sequence of elements."""
        acc = IDENTITY
        for it in items:
            acc = self.mul(acc, it)
        return acc

    def verify_presentation(self, g: DihedralElement, h: DihedralElement) -> bool:
        """True iff g^p = 1, h^2 = 1 and ghgh = 1.

        Exactly the p^2 + 1 pairs {rotations} x {reflections} plus (1, 1)
        satisfy all three relations.
        """
        if self.power(g, self.p) != IDENTITY:
            return False
        if self.mul(h, h) != IDENTITY:
            return False
        gh = self.mul(g, h)
        return self.mul(gh, gh) == IDENTITY

    def render(self, a: DihedralElement) -> str:
        """Text form: "1", "x", "x^2", "y", "xy", "x^2y", ..."""
        self.check(a)
        if a.alpha == 0:
            return "y" if a.beta else "1"
        xs = "x" if a.alpha == 1 else f"x^{a.alpha}"
        return xs + ("y" if a.beta else "")

    def parse(self, text: str) -> DihedralElement:
        """Parse the render() grammar; exponents may be signed and reduce mod p."""
        s = text.strip()
        if s == "1":
            return IDENTITY
        m = _ELEMENT_RE.fullmatch(s)
        if m is None or not s:
            raise ValueError(f"cannot parse dihedral element from {text!r}")
        if m.group(1) is not None:
            alpha = int(m.group(1))
        elif s.startswith("x"):
            alpha = 1
        else:
            alpha = 0
        return self.element(alpha, 1 if m.group(2) else 0)


D6 = DihedralGroup(3)


def crt_index(a: DihedralElement, p: int = 3) -> int:
    """The unique z in 0..2p-1 with z = alpha (mod p) and z = beta (mod 2).

    This is the integer-alphabet label matching the default channel labeling
    m <-> x^(m mod p) y^(m mod 2); for p = 3 it identifies D6 with Z6 as sets,
    sending the rotation subgroup onto {0, 2, 4}.
    """
    u = (p + 1) // 2  # inverse of 2 mod p
    return (2 * u * a.alpha + p * a.beta) % (2 * p)


def coset_label(
    a: DihedralElement,
    partition_id: str,
    labeling=None,
    p: int = 3,
) -> PartitionLabel:
    """Coset index of `a` under the named partition.

    `rotation-coset` is element-intrinsic (the index is beta).  The two Z6
    partitions go through the element's integer label z: by default the fixed
    correspondence z = crt_index(a) (which is what the default channel
    labeling realizes), or z = labeling.input_of_element(a) when a labeling
    object is supplied.  `z6-index3` is the coset of {0,2,4} (index z mod 2),
    `z6-index2` the coset of {0,3} (index z mod 3).
    """
    if partition_id == ROTATION_COSET:
        return PartitionLabel(partition_id, a.beta)
    if partition_id not in (Z6_INDEX3, Z6_INDEX2):
        raise ValueError(f"unknown partition_id {partition_id!r}")
    z = crt_index(a, p) if labeling is None else labeling.input_of_element(a)
    value = z % 2 if partition_id == Z6_INDEX3 else z % 3
    return PartitionLabel(partition_id, value)
