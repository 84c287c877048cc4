"""Monte Carlo end-to-end transmission over the random code ensemble.

Each trial draws a fresh code (generator table plus dither), encodes a uniform
message, pushes the codeword through the channel, and decodes either by
maximum likelihood over the enumerated codebook or by the unique-joint-
typicality rule.  Reported error rates are therefore ensemble averages, and
identical seeds reproduce reports bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channels import Channel, Labeling, default_labeling
from .ensemble import (
    DEFAULT_CODEBOOK_CAP,
    MessageWord,
    PseudoGroupCode,
    enumerate_codebook,
)
from .group import DihedralElement
from .rates import is_jointly_typical

Z_95 = 1.959963984540054

# admissible-pair lookup tables in sampling-index order: 0 is the identity
# pair, 1 + a*3 + c is (x^a, x^c y)
_PAIR_GA = np.array([0] + [a for a in range(3) for _ in range(3)])
_PAIR_HA = np.array([0] + [c for _ in range(3) for c in range(3)])
_PAIR_HB = np.array([0] + [1] * 9)

DEFAULT_EPSILON = 0.2


@dataclass(frozen=True)
class TrialReport:
    """Outcome of one Monte Carlo run, with a 95% Wilson score interval."""

    trials: int
    errors: int
    error_rate: float
    ci_low: float
    ci_high: float
    decoder: str
    k: int
    n: int
    rate: float
    seed: Optional[int]

    def __post_init__(self):
        if not 0 <= self.errors <= self.trials:
            raise ValueError("errors must lie in 0..trials")


def wilson_interval(errors: int, trials: int, z: float = Z_95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    phat = errors / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if errors == 0 else max(0.0, center - half)
    hi = 1.0 if errors == trials else min(1.0, center + half)
    return lo, hi


def _log_transition(channel: Channel) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(channel.transition)


def _codeword_inputs(
    codeword: Sequence[DihedralElement], labeling: Labeling
) -> np.ndarray:
    return np.array([labeling.input_of_element(c) for c in codeword])


def ml_decode(
    y: Sequence[int],
    codebook: Sequence[tuple[MessageWord, Sequence[DihedralElement]]],
    channel: Channel,
    labeling: Optional[Labeling] = None,
) -> MessageWord:
    """argmax over messages of prod_i W(y_i | c_i); first index wins ties."""
    labeling = labeling or default_labeling(channel.p)
    logw = _log_transition(channel)
    y = np.asarray(y, dtype=np.intp)
    scores = np.array(
        [logw[_codeword_inputs(cw, labeling), y].sum() for _, cw in codebook]
    )
    return codebook[int(np.argmax(scores))][0]


def typicality_decode(
    y: Sequence[int],
    code: PseudoGroupCode,
    epsilon: float,
    channel: Channel,
    labeling: Optional[Labeling] = None,
) -> Optional[MessageWord]:
    """The unique message whose codeword is jointly typical with y, if any.

    Zero or multiple typical candidates decode to None (a failure outcome,
    not an exception).
    """
    labeling = labeling or default_labeling(channel.p)
    joint = channel.transition / channel.input_size
    hits = []
    for u, cw in enumerate_codebook(code):
        xs = _codeword_inputs(cw, labeling)
        if is_jointly_typical(xs, y, joint, epsilon):
            hits.append(u)
            if len(hits) > 1:
                return None
    return hits[0] if len(hits) == 1 else None


def _message_digit_arrays(k: int) -> tuple[np.ndarray, np.ndarray]:
    """(a, b) digit arrays of all 6^k messages in lexicographic digit order."""
    m = 6**k
    idx = np.arange(m)
    a = np.empty((m, k), dtype=np.int64)
    b = np.empty((m, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        digit = idx % 6
        a[:, j] = digit % 3
        b[:, j] = digit // 3
        idx = idx // 6
    return a, b


def message_from_index(index: int, k: int) -> MessageWord:
    digits = []
    for _ in range(k):
        index, d = divmod(index, 6)
        digits.append(DihedralElement(d % 3, d // 3))
    return tuple(reversed(digits))


def _codebook_labels(
    tables: np.ndarray,
    dithers: np.ndarray,
    labeling: Labeling,
) -> np.ndarray:
    """Input labels of every codeword for a batch of codes.

    tables: (T, n, k) admissible-pair indices; dithers: (T, n) element
    indices.  Returns (T, 6^k, n) channel-input labels.  This is the
    vectorized twin of ensemble.encode and is tested against it.
    """
    t_cnt, n, k = tables.shape
    a, b = _message_digit_arrays(k)
    m = a.shape[0]
    acc_alpha = np.zeros((t_cnt, m, n), dtype=np.int64)
    acc_beta = np.zeros((t_cnt, m, n), dtype=np.int64)
    for j in range(k):
        pairs = tables[:, :, j]  # (T, n)
        ga = _PAIR_GA[pairs][:, None, :]
        ha = _PAIR_HA[pairs][:, None, :]
        hb = _PAIR_HB[pairs][:, None, :]
        aj = a[None, :, j, None]
        bj = b[None, :, j, None]
        term_alpha = (ga * aj + ha * bj) % 3
        term_beta = hb * bj
        sign = 1 - 2 * acc_beta
        acc_alpha = (acc_alpha + sign * term_alpha) % 3
        acc_beta ^= term_beta
    d_alpha = (dithers % 3)[:, None, :]
    d_beta = (dithers // 3)[:, None, :]
    sign = 1 - 2 * acc_beta
    acc_alpha = (acc_alpha + sign * d_alpha) % 3
    acc_beta ^= d_beta
    elem = acc_alpha + 3 * acc_beta
    input_of_elem = np.argsort(np.array(labeling.elements))  # elem idx -> label
    return input_of_elem[elem]


def estimate_error(
    channel: Channel,
    rate: float,
    n: int,
    decoder: str = "ml",
    trials: int = 1000,
    seed: int = 0,
    epsilon: float = DEFAULT_EPSILON,
    labeling: Optional[Labeling] = None,
    codebook_cap: int = DEFAULT_CODEBOOK_CAP,
) -> TrialReport:
    """Ensemble-average block error rate at target rate R over block length n.

    k = round(R n / log2 6); R = 0 yields the singleton codebook (k = 0).
    Every trial samples a fresh code and a uniform message.  A typicality
    decode counts as an error when it is wrong or fails to be unique.
    """
    if decoder not in ("ml", "typicality", "typ"):
        raise ValueError(f"unknown decoder {decoder!r}")
    decoder = "typicality" if decoder.startswith("typ") else "ml"
    if channel.p != 3:
        raise ValueError("simulation is implemented for p = 3")
    labeling = labeling or default_labeling(channel.p)
    k = int(round(rate * n / math.log2(6)))
    if k == 0 and rate > 0:
        raise ValueError(f"rate {rate} rounds to k = 0 at n = {n}; increase n")
    m = 6**k
    if m > codebook_cap:
        raise ValueError(f"codebook size {m} exceeds cap {codebook_cap}")

    rng = np.random.default_rng(seed)
    tables = rng.integers(10, size=(trials, n, k))
    dithers = rng.integers(6, size=(trials, n))
    msgs = rng.integers(m, size=trials)
    unifs = rng.random((trials, n))

    logw = _log_transition(channel)
    joint = channel.transition / channel.input_size
    ny = channel.output_size
    cum = np.cumsum(channel.transition, axis=1)
    slack = epsilon / (channel.input_size * ny)
    zero_pairs = (joint == 0).ravel()

    cell = m * n if decoder == "ml" else m * max(n, 6 * ny)
    chunk = max(1, min(trials, (1 << 21) // max(1, cell)))
    errors = 0
    for start in range(0, trials, chunk):
        stop = min(start + chunk, trials)
        cb = _codebook_labels(tables[start:stop], dithers[start:stop], labeling)
        t_cnt = stop - start
        rows = np.arange(t_cnt)
        sent = cb[rows, msgs[start:stop]]  # (T, n) input labels
        y = (unifs[start:stop, :, None] >= cum[sent]).sum(axis=2)
        y = np.minimum(y, ny - 1)
        if decoder == "ml":
            scores = logw[cb, y[:, None, :]].sum(axis=2)  # (T, M)
            decoded = scores.argmax(axis=1)
            errors += int((decoded != msgs[start:stop]).sum())
        else:
            pair = cb * ny + y[:, None, :]
            offset = (rows[:, None] * m + np.arange(m)[None, :]) * (6 * ny)
            counts = np.bincount(
                (pair + offset[:, :, None]).ravel(), minlength=t_cnt * m * 6 * ny
            ).reshape(t_cnt, m, 6 * ny)
            typical = np.all(
                np.abs(counts / n - joint.ravel()[None, None, :]) <= slack, axis=2
            )
            typical &= ~np.any(counts[:, :, zero_pairs] > 0, axis=2)
            unique = typical.sum(axis=1) == 1
            correct = unique & typical[rows, msgs[start:stop]]
            errors += int((~correct).sum())

    lo, hi = wilson_interval(errors, trials)
    return TrialReport(
        trials=trials,
        errors=errors,
        error_rate=errors / trials if trials else 0.0,
        ci_low=lo,
        ci_high=hi,
        decoder=decoder,
        k=k,
        n=n,
        rate=k / n * math.log2(6),
        seed=seed if isinstance(seed, int) else None,
    )
