"""Random code ensemble over D_2p: generator-pair tables, dither, encoders.

A code maps a message u = (u_1 .. u_k) of group digits u_j = x^(a_j) y^(b_j)
to the codeword c with

    c_i = g_i1^(a_1) h_i1^(b_1) ... g_ik^(a_k) h_ik^(b_k) * B_i

where each (g_ij, h_ij) is drawn uniformly from the p^2 + 1 admissible
generator pairs ({rotations} x {reflections}, plus the identity pair) and the
dither B_i is uniform over the group.  The admissible pairs are exactly those
satisfying the defining relations g^p = h^2 = ghgh = 1, so each per-digit map
u_j -> g^(a_j) h^(b_j) lands in a dihedral subgroup.

The joint generator-pair distribution is reconstructed as uniform over the
admissible pairs; see README for why this is the unique consistent choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence, Union

import numpy as np

from .group import D6, IDENTITY, DihedralElement, DihedralGroup

MessageWord = tuple[DihedralElement, ...]
Codeword = tuple[DihedralElement, ...]

DEFAULT_CODEBOOK_CAP = 6**8

RngLike = Union[int, np.random.Generator]


def _as_rng(seed: RngLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class GeneratorPair:
    """An admissible (g, h): g a rotation, h a reflection, or both identity."""

    g: DihedralElement
    h: DihedralElement

    def __post_init__(self):
        if self.g.beta != 0:
            raise ValueError(f"g must be a rotation, got {self.g}")
        if self.h.beta != 1 and not (self.g == IDENTITY and self.h == IDENTITY):
            raise ValueError(f"inadmissible pair ({self.g}, {self.h})")


def admissible_pairs(group: DihedralGroup = D6) -> tuple[GeneratorPair, ...]:
    """The p^2 + 1 admissible pairs; index 0 is (1, 1), then the full grid.

    Pair 1 + a*p + c is (x^a, x^c y).  Sampling draws indices uniformly, so
    this ordering is part of the serialization contract.
    """
    pairs = [GeneratorPair(IDENTITY, IDENTITY)]
    for a in range(group.p):
        for c in range(group.p):
            pairs.append(
                GeneratorPair(DihedralElement(a, 0), DihedralElement(c, 1))
            )
    return tuple(pairs)


_PAIRS_D6 = None


def _pairs_cached(group: DihedralGroup) -> tuple[GeneratorPair, ...]:
    global _PAIRS_D6
    if group.p == 3:
        if _PAIRS_D6 is None:
            _PAIRS_D6 = admissible_pairs(group)
        return _PAIRS_D6
    return admissible_pairs(group)


def pair_index(pair: GeneratorPair, group: DihedralGroup = D6) -> int:
    if pair.h == IDENTITY:
        return 0
    return 1 + pair.g.alpha * group.p + pair.h.alpha


@dataclass(frozen=True)
class GeneratorTable:
    """n x k grid of pairs; entry (i, j) drives digit j of coordinate i."""

    entries: tuple[tuple[GeneratorPair, ...], ...]

    def __post_init__(self):
        if self.entries and any(len(r) != len(self.entries[0]) for r in self.entries):
            raise ValueError("generator table rows must all have the same length")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return len(self.entries[0]) if self.entries else 0


@dataclass(frozen=True)
class PseudoGroupCode:
    """One sampled code: generator table, dither, and its parameters."""

    group: DihedralGroup
    table: GeneratorTable
    dither: tuple[DihedralElement, ...]
    seed: Optional[int] = None

    def __post_init__(self):
        if len(self.dither) != self.table.n:
            raise ValueError("dither length must equal the block length n")

    @property
    def k(self) -> int:
        return self.table.k

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def rate(self) -> float:
        """(k/n) * log2(2p) bits per channel use."""
        return self.k / self.n * float(np.log2(self.group.order))


@dataclass(frozen=True)
class ConstructionSpec:
    """Windowed-encoder parameters: memory nu and the subgroup chain.

    The chain is recorded as subgroup orders; the construction used here is
    the fixed chain 1 < 1 < ... < 1 < D_2p (all granules trivial except the
    top one), which is what the full-group-per-digit encoder realizes.
    """

    nu: int
    series: tuple[int, ...] = ()
    group: DihedralGroup = D6

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("nu must be >= 0")
        if not self.series:
            object.__setattr__(
                self, "series", (1,) * self.nu + (self.group.order,)
            )
        expected = (1,) * self.nu + (self.group.order,)
        if self.series != expected:
            raise ValueError(f"series must be {expected}, got {self.series}")


def sample_generator_pair(rng: RngLike, group: DihedralGroup = D6) -> GeneratorPair:
    """Draw one pair uniformly over the p^2 + 1 admissible pairs."""
    pairs = _pairs_cached(group)
    return pairs[int(_as_rng(rng).integers(len(pairs)))]


def sample_code(
    k: int,
    n: int,
    seed: RngLike,
    group: DihedralGroup = D6,
) -> PseudoGroupCode:
    """Sample a code: n*k independent pairs plus n uniform dither symbols.

    Deterministic given an integer seed (the seed is then stored on the code);
    a Generator may be passed instead to draw from an existing stream.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    rng = _as_rng(seed)
    pairs = _pairs_cached(group)
    table_idx = rng.integers(len(pairs), size=(n, k))
    dither_idx = rng.integers(group.order, size=n)
    entries = tuple(
        tuple(pairs[int(t)] for t in row) for row in table_idx
    )
    dither = tuple(group.from_index(int(d)) for d in dither_idx)
    return PseudoGroupCode(
        group=group,
        table=GeneratorTable(entries),
        dither=dither,
        seed=int(seed) if isinstance(seed, (int, np.integer)) else None,
    )


def _digits(u: MessageWord) -> list[tuple[int, int]]:
    return [(d.alpha, d.beta) for d in u]


def encode(code: PseudoGroupCode, u: MessageWord) -> Codeword:
    """c_i = g_i1^(a_1) h_i1^(b_1) ... g_ik^(a_k) h_ik^(b_k) * B_i.

    The product is taken left to right in message-digit order; the group is
    non-Abelian, so the order is part of the contract.
    """
    g = code.group
    if len(u) != code.k:
        raise ValueError(f"message length {len(u)} != k = {code.k}")
    for d in u:
        g.check(d)
    out = []
    for i, row in enumerate(code.table.entries):
        acc = IDENTITY
        for pair, digit in zip(row, u):
            acc = g.mul(acc, g.power(pair.g, digit.alpha))
            acc = g.mul(acc, g.power(pair.h, digit.beta))
        out.append(g.mul(acc, code.dither[i]))
    return tuple(out)


def all_messages(k: int, group: DihedralGroup = D6):
    """All (2p)^k messages in lexicographic digit order (index order per digit)."""
    return product(group.elements(), repeat=k)


def enumerate_codebook(
    code: PseudoGroupCode, cap: int = DEFAULT_CODEBOOK_CAP
) -> list[tuple[MessageWord, Codeword]]:
    """All (message, codeword) pairs, messages in lexicographic digit order."""
    size = code.group.order**code.k
    if size > cap:
        raise ValueError(f"codebook size {size} exceeds cap {cap}")
    return [(u, encode(code, u)) for u in all_messages(code.k, code.group)]


def encode_windowed(
    spec: ConstructionSpec,
    rows: Sequence[Sequence[GeneratorPair]],
    u: MessageWord,
    tail_biting: bool = True,
) -> Codeword:
    """Windowed (convolutional) encoder: output i multiplies the taps of the
    nu+1 most recent digits.

    rows[t][j] is the pair applied to digit t in output t+j (age j).  With
    tail biting the digit indices wrap mod k and there are k outputs;
    otherwise only the k - nu full windows produce outputs.  Factors multiply
    in ascending digit order (identical to oldest-first whenever the window
    does not wrap); the full-window case nu = k-1 then coincides with the
    block encoder of `encode` at dither 1.
    """
    g = spec.group
    k = len(u)
    nu = spec.nu
    if len(rows) != k or any(len(r) != nu + 1 for r in rows):
        raise ValueError("rows must be k sequences of nu + 1 pairs")
    if tail_biting:
        if nu > k:
            raise ValueError(f"nu = {nu} exceeds message length k = {k}")
        out_range = range(k)
    else:
        if nu >= k:
            raise ValueError(
                f"window nu + 1 = {nu + 1} exceeds message length {k} "
                "without tail biting"
            )
        out_range = range(nu, k)
    digits = _digits(u)
    out = []
    for i in out_range:
        window = [((i - j) % k if tail_biting else i - j, j) for j in range(nu, -1, -1)]
        # ascending digit index; coincident indices (nu = k only) older tap first
        window.sort(key=lambda tj: (tj[0], -tj[1]))
        acc = IDENTITY
        for t, j in window:
            a, b = digits[t]
            pair = rows[t][j]
            acc = g.mul(acc, g.power(pair.g, a))
            acc = g.mul(acc, g.power(pair.h, b))
        out.append(acc)
    return tuple(out)


def beta_profile(
    code: PseudoGroupCode, u: MessageWord, include_dither: bool = False
) -> tuple[int, ...]:
    """Reflection bits (beta(c_1), ..., beta(c_n)) of the encoded message.

    Betas add mod 2 through every product, so with the dither removed this is
    the GF(2)-linear map b -> M b with M_ij = [h_ij is a reflection]; with
    include_dither the bits beta(B_i) are added on top.
    """
    if len(u) != code.k:
        raise ValueError(f"message length {len(u)} != k = {code.k}")
    out = []
    for i, row in enumerate(code.table.entries):
        bit = sum(pair.h.beta * d.beta for pair, d in zip(row, u)) % 2
        if include_dither:
            bit ^= code.dither[i].beta
        out.append(bit)
    return tuple(out)


# serialization: ints only, so round-trips are bit-exact

def code_to_json_dict(code: PseudoGroupCode) -> dict:
    """Flat record {p, k, n, generators, dither, seed}.

    Each generator pair is [g_alpha, h_code] with h_code = -1 for the identity
    pair and h_code = alpha(h) when h = x^alpha y.  Dither entries are
    [alpha, beta].
    """
    def pair_rec(pair: GeneratorPair) -> list[int]:
        h_code = -1 if pair.h == IDENTITY else pair.h.alpha
        return [pair.g.alpha, h_code]

    return {
        "p": code.group.p,
        "k": code.k,
        "n": code.n,
        "generators": [[pair_rec(pr) for pr in row] for row in code.table.entries],
        "dither": [[d.alpha, d.beta] for d in code.dither],
        "seed": code.seed,
    }


def code_from_json_dict(rec: dict) -> PseudoGroupCode:
    group = DihedralGroup(int(rec["p"]))

    def pair_from(ga: int, hc: int) -> GeneratorPair:
        if hc < 0:
            if ga != 0:
                raise ValueError("identity h requires g = 1")
            return GeneratorPair(IDENTITY, IDENTITY)
        return GeneratorPair(
            group.check(DihedralElement(ga, 0)),
            group.check(DihedralElement(hc, 1)),
        )

    entries = tuple(
        tuple(pair_from(int(ga), int(hc)) for ga, hc in row)
        for row in rec["generators"]
    )
    dither = tuple(
        group.check(DihedralElement(int(a), int(b))) for a, b in rec["dither"]
    )
    table = GeneratorTable(entries)
    if table.n != int(rec["n"]) or table.k != int(rec["k"]):
        raise ValueError("generator grid does not match the declared (k, n)")
    seed = rec.get("seed")
    return PseudoGroupCode(
        group=group,
        table=table,
        dither=dither,
        seed=None if seed is None else int(seed),
    )


def code_to_json(code: PseudoGroupCode) -> str:
    return json.dumps(code_to_json_dict(code), sort_keys=True)


def code_from_json(text: str) -> PseudoGroupCode:
    return code_from_json_dict(json.loads(text))
