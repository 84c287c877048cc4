"""Discrete memoryless channels with group-valued inputs.

A channel is a row-stochastic matrix W(y|m) over integer input labels
m = 0..2p-1 and an arbitrary finite output alphabet.  A Labeling ties group
elements to input labels; the default labeling m <-> x^(m mod p) y^(m mod 2)
makes the rotation subgroup sit on the even labels {0, 2, 4} for p = 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .group import D6, DihedralElement, DihedralGroup, crt_index

ROW_SUM_TOL = 1e-12

BUILTIN_CHANNELS = (
    "identity",
    "useless",
    "rotation-revealing",
    "reflection-revealing",
    "group-noise",
    "three-eps",
)


class ChannelFormatError(ValueError):
    """Malformed channel file; carries a line/column when one is known."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}" + (f" column {col}" if col is not None else "") + f": {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Channel:
    """(G, Y, W): 2p input labels, |Y| outputs, row-stochastic transition."""

    p: int
    transition: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.transition, dtype=float)
        if w.ndim != 2 or w.shape[0] != 2 * self.p:
            raise ValueError(f"transition must have {2 * self.p} rows, got shape {w.shape}")
        if np.any(w < 0):
            raise ValueError("transition probabilities must be >= 0")
        sums = w.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            bad = int(np.argmax(np.abs(sums - 1.0)))
            raise ValueError(f"row {bad} sums to {sums[bad]!r}, not 1 within {ROW_SUM_TOL}")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "transition", w)

    @property
    def input_size(self) -> int:
        return 2 * self.p

    @property
    def output_size(self) -> int:
        return self.transition.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Channel)
            and other.p == self.p
            and other.transition.shape == self.transition.shape
            and bool(np.array_equal(other.transition, self.transition))
        )


@dataclass(frozen=True)
class Labeling:
    """Bijection input label -> group element, stored as element indices.

    elements[m] is the canonical index (alpha + p*beta) of the group element
    carrying input label m.
    """

    p: int = 3
    elements: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.elements:
            object.__setattr__(self, "elements", _default_perm(self.p))
        if sorted(self.elements) != list(range(2 * self.p)):
            raise ValueError(f"labeling must be a permutation of 0..{2 * self.p - 1}")

    @property
    def group(self) -> DihedralGroup:
        return DihedralGroup(self.p)

    def element_of_input(self, m: int) -> DihedralElement:
        return self.group.from_index(self.elements[m])

    def input_of_element(self, a: DihedralElement) -> int:
        idx = self.group.index(a)
        return self.elements.index(idx)


def _default_perm(p: int) -> tuple[int, ...]:
    # label m carries x^(m mod p) y^(m mod 2); element index is alpha + p*beta
    return tuple((m % p) + p * (m % 2) for m in range(2 * p))


def default_labeling(p: int = 3) -> Labeling:
    return Labeling(p=p)


def transmit(
    channel: Channel,
    codeword: Sequence[DihedralElement],
    labeling: Optional[Labeling] = None,
    rng: Union[int, np.random.Generator, None] = None,
) -> np.ndarray:
    """Sample y_i ~ W(.|label(c_i)) independently; returns output indices."""
    labeling = labeling or default_labeling(channel.p)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    inputs = np.array([labeling.input_of_element(c) for c in codeword])
    cum = np.cumsum(channel.transition, axis=1)[inputs]
    u = gen.random(len(inputs))
    y = (u[:, None] >= cum).sum(axis=1)
    return np.minimum(y, channel.output_size - 1)


def relabel(channel: Channel, perm: Sequence[int]) -> Channel:
    """Permute the input rows: new row m is the old row perm[m]."""
    perm = list(perm)
    if sorted(perm) != list(range(channel.input_size)):
        raise ValueError(f"perm must be a permutation of 0..{channel.input_size - 1}")
    return Channel(channel.p, channel.transition[perm])


def group_noise_channel(noise: Sequence[float], p: int = 3) -> Channel:
    """Y = X * Z with Z ~ noise over the group (canonical element index order).

    Inputs and outputs are both labeled by the default labeling, so
    W(y|m) = noise[element(m)^-1 * element(y)].
    """
    group = DihedralGroup(p)
    z = np.asarray(noise, dtype=float)
    if z.shape != (2 * p,):
        raise ValueError(f"noise must have {2 * p} entries")
    if np.any(z < 0) or abs(z.sum() - 1.0) > ROW_SUM_TOL:
        raise ValueError("noise must be a probability distribution")
    lab = default_labeling(p)
    w = np.empty((2 * p, 2 * p))
    for m in range(2 * p):
        x = lab.element_of_input(m)
        for y in range(2 * p):
            prod = group.mul(group.inv(x), lab.element_of_input(y))
            w[m, y] = z[group.index(prod)]
    return Channel(p, w)


def builtin_channel(name: str, **params) -> Channel:
    """Built-in families, all defined under the default labeling.

    identity             - Y = X (6 outputs, W = I)
    useless              - every row uniform over `outputs` (default 6)
    rotation-revealing   - Y = alpha(X) in {0..p-1}, deterministic
    reflection-revealing - Y = beta(X) in {0, 1}, deterministic
    group-noise          - Y = X*Z, Z given by `noise` (6 probabilities)
    three-eps            - group-noise with Z built from (eps1, eps2, eps3):
                           P(x) = P(x^2) = eps1/2, P(y) = eps2,
                           P(xy) = P(x^2 y) = eps3/2, rest on the identity.
                           A placeholder symmetric family for experiments, not
                           a canonical channel from any reference.
    """
    p = int(params.pop("p", 3))
    group = DihedralGroup(p)
    lab = default_labeling(p)
    if name == "identity":
        _reject_extra(name, params)
        return Channel(p, np.eye(2 * p))
    if name == "useless":
        outputs = int(params.pop("outputs", 2 * p))
        _reject_extra(name, params)
        if outputs < 1:
            raise ValueError("outputs must be >= 1")
        return Channel(p, np.full((2 * p, outputs), 1.0 / outputs))
    if name == "rotation-revealing":
        _reject_extra(name, params)
        w = np.zeros((2 * p, p))
        for m in range(2 * p):
            w[m, lab.element_of_input(m).alpha] = 1.0
        return Channel(p, w)
    if name == "reflection-revealing":
        _reject_extra(name, params)
        w = np.zeros((2 * p, 2))
        for m in range(2 * p):
            w[m, lab.element_of_input(m).beta] = 1.0
        return Channel(p, w)
    if name == "group-noise":
        noise = params.pop("noise")
        _reject_extra(name, params)
        return group_noise_channel(noise, p)
    if name == "three-eps":
        eps1 = float(params.pop("eps1"))
        eps2 = float(params.pop("eps2"))
        eps3 = float(params.pop("eps3"))
        _reject_extra(name, params)
        if min(eps1, eps2, eps3) < 0 or eps1 + eps2 + eps3 > 1:
            raise ValueError("eps parameters must be >= 0 and sum to <= 1")
        noise = np.zeros(2 * p)
        noise[group.index(DihedralElement(0, 0))] = 1.0 - eps1 - eps2 - eps3
        noise[group.index(DihedralElement(1, 0))] = eps1 / 2
        noise[group.index(DihedralElement(2, 0))] = eps1 / 2
        noise[group.index(DihedralElement(0, 1))] = eps2
        noise[group.index(DihedralElement(1, 1))] = eps3 / 2
        noise[group.index(DihedralElement(2, 1))] = eps3 / 2
        return group_noise_channel(noise, p)
    raise ValueError(f"unknown builtin channel {name!r}; choose from {BUILTIN_CHANNELS}")


def _reject_extra(name: str, params: dict):
    if params:
        raise ValueError(f"unexpected parameters for {name!r}: {sorted(params)}")


# file I/O

def channel_to_json_dict(channel: Channel, labeling: Optional[Labeling] = None) -> dict:
    rec = {
        "p": channel.p,
        "outputs": channel.output_size,
        "rows": [[float(v) for v in row] for row in channel.transition],
    }
    if labeling is not None:
        rec["labels"] = list(labeling.elements)
    return rec


def channel_from_json_dict(rec: dict) -> tuple[Channel, Optional[Labeling]]:
    try:
        p = int(rec["p"])
        outputs = int(rec["outputs"])
        rows = rec["rows"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ChannelFormatError(f"bad channel record: {exc}") from exc
    if len(rows) != 2 * p or any(len(r) != outputs for r in rows):
        raise ChannelFormatError(
            f"rows must form a {2 * p} x {outputs} matrix"
        )
    try:
        channel = Channel(p, np.asarray(rows, dtype=float))
    except ValueError as exc:
        raise ChannelFormatError(str(exc)) from exc
    labeling = None
    if rec.get("labels") is not None:
        try:
            labeling = Labeling(p=p, elements=tuple(int(v) for v in rec["labels"]))
        except (TypeError, ValueError) as exc:
            raise ChannelFormatError(f"bad labels: {exc}") from exc
    return channel, labeling


def load_channel_json(text: str) -> tuple[Channel, Optional[Labeling]]:
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelFormatError(exc.msg, line=exc.lineno, col=exc.colno) from exc
    return channel_from_json_dict(rec)


def load_channel_tsv(text: str, p: int = 3) -> tuple[Channel, Optional[Labeling]]:
    """One tab-separated row of W(.|m) per input, in label order."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            row = [float(v) for v in line.split("\t")]
        except ValueError as exc:
            raise ChannelFormatError(str(exc), line=lineno) from exc
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ChannelFormatError(
                f"expected {width} columns, got {len(row)}", line=lineno
            )
        rows.append(row)
    if len(rows) != 2 * p:
        raise ChannelFormatError(f"expected {2 * p} rows, got {len(rows)}")
    try:
        return Channel(p, np.asarray(rows)), None
    except ValueError as exc:
        raise ChannelFormatError(str(exc)) from exc


def load_channel(path: str, p: int = 3) -> tuple[Channel, Optional[Labeling]]:
    """Load a channel file; .tsv/.txt parse as TSV, everything else as JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith((".tsv", ".txt")):
        return load_channel_tsv(text, p=p)
    return load_channel_json(text)


def save_channel(path: str, channel: Channel, labeling: Optional[Labeling] = None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(channel_to_json_dict(channel, labeling), fh, indent=1)
        fh.write("\n")
