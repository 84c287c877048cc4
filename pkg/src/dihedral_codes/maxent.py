"""Constrained entropy maximization and typical-set intersection counts.

The core object is the maximum of H(X, W) over joint pmfs p on D6 x D6 with
both "marginals" pinned to a given P_X (the plain X-marginal and the marginal
of X*W) and a prescribed mass alpha on the rotation-w block.  For
alpha >= |1 - 2p|, p = P_X(rotations), the optimum has the closed form

    p(x, w) = coef(block) * P_X(x) * P_X(x*w)

with block coefficients (2p-1+alpha)/(2p^2), (1-2p+alpha)/(2(1-p)^2) and
(1-alpha)/(2p(1-p)), and optimal value

    2 H(X) + h((2p-1+alpha)/2, (1-2p+alpha)/2, (1-alpha)/2, (1-alpha)/2) - 2 h(p).

`numeric_entropy_max` solves the same program with an exponential-cone solver
and is the independent oracle the closed form is tested against.
"""

from __future__ import annotations

import math
from math import comb
from typing import Optional, Sequence

import numpy as np

from .channels import Channel, Labeling, default_labeling
from .group import D6, DihedralElement

ALPHA_TOL = 1e-12
CHUNK = 1 << 17
MAX_EXACT_N = 12


def entropy_bits(p: Sequence[float]) -> float:
    """Shannon entropy in bits with 0 log 0 = 0."""
    v = np.asarray(p, dtype=float).ravel()
    v = v[v > 0]
    return float(-(v * np.log2(v)).sum())


def binary_entropy(q: float) -> float:
    return entropy_bits([q, 1.0 - q])


def _check_px(p_x: Sequence[float]) -> np.ndarray:
    p_x = np.asarray(p_x, dtype=float)
    if p_x.shape != (6,):
        raise ValueError("P_X must have 6 entries (canonical element order)")
    if np.any(p_x < 0) or abs(p_x.sum() - 1.0) > 1e-9:
        raise ValueError("P_X must be a probability distribution")
    return p_x


def _mul_index(x: int, w: int) -> int:
    return D6.index(D6.mul(D6.from_index(x), D6.from_index(w)))


def optimal_joint_pmf(p_x: Sequence[float], alpha: float) -> np.ndarray:
    """The entropy-maximizing joint pmf, as a 6x6 array over (x, w).

    Rows and columns follow the canonical element order 1, x, x^2, y, xy,
    x^2 y.  Valid for alpha >= |1 - 2p| with p the rotation mass of P_X.
    """
    p_x = _check_px(p_x)
    p = float(p_x[:3].sum())
    if alpha < abs(1 - 2 * p) - ALPHA_TOL or alpha > 1 + ALPHA_TOL:
        raise ValueError(
            f"alpha = {alpha} outside the valid range [|1-2p|, 1] = "
            f"[{abs(1 - 2 * p)}, 1]"
        )

    def coef(num: float, den: float) -> float:
        # blocks with zero P_X mass contribute zero cells; avoid 0/0 there
        return num / den if den > 0 else 0.0

    c_rr = coef(2 * p - 1 + alpha, 2 * p * p)
    c_fr = coef(1 - 2 * p + alpha, 2 * (1 - p) * (1 - p))
    c_wf = coef(1 - alpha, 2 * p * (1 - p))
    pmf = np.zeros((6, 6))
    for x in range(6):
        for w in range(6):
            cell = p_x[x] * p_x[_mul_index(x, w)]
            if cell == 0.0:
                continue
            if w < 3:
                pmf[x, w] = (c_rr if x < 3 else c_fr) * cell
            else:
                pmf[x, w] = c_wf * cell
    return pmf


def constraint_system(p_x: Sequence[float], alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """The program's equality constraints as (A, b) over vec(p), row-major.

    Rows: 6 X-marginal constraints, 6 X*W-marginal constraints, then the
    rotation-w block mass alpha.
    """
    p_x = _check_px(p_x)
    a = np.zeros((13, 36))
    b = np.zeros(13)
    for g in range(6):
        for w in range(6):
            a[g, g * 6 + w] = 1.0
        b[g] = p_x[g]
    for g in range(6):
        for w in range(6):
            x = _mul_index(g, D6.index(D6.inv(D6.from_index(w))))
            a[6 + g, x * 6 + w] = 1.0
        b[6 + g] = p_x[g]
    a[12, :] = np.tile([1.0] * 3 + [0.0] * 3, 6)
    b[12] = alpha
    return a, b


def constraint_residuals(pmf: np.ndarray, p_x: Sequence[float], alpha: float) -> dict[str, float]:
    """Max absolute violation per constraint family (plus negativity)."""
    pmf = np.asarray(pmf, dtype=float)
    a, b = constraint_system(p_x, alpha)
    res = a @ pmf.ravel() - b
    return {
        "x_marginal": float(np.abs(res[:6]).max()),
        "xw_marginal": float(np.abs(res[6:12]).max()),
        "alpha_block": float(abs(res[12])),
        "negativity": float(max(0.0, -pmf.min())),
        "total": float(abs(pmf.sum() - 1.0)),
    }


def closed_form_entropy(p_x: Sequence[float], alpha: float) -> float:
    """Optimal joint entropy 2H(X) + h(quad) - 2h(p), in bits."""
    p_x = _check_px(p_x)
    p = float(p_x[:3].sum())
    if alpha < abs(1 - 2 * p) - ALPHA_TOL or alpha > 1 + ALPHA_TOL:
        raise ValueError(
            f"alpha = {alpha} outside the valid range [|1-2p|, 1] = "
            f"[{abs(1 - 2 * p)}, 1]"
        )
    quad = [
        (2 * p - 1 + alpha) / 2,
        (1 - 2 * p + alpha) / 2,
        (1 - alpha) / 2,
        (1 - alpha) / 2,
    ]
    return 2 * entropy_bits(p_x) + entropy_bits(quad) - 2 * binary_entropy(p)


def numeric_entropy_max(
    p_x: Sequence[float],
    alpha: float,
    tolerance: float = 1e-8,
) -> tuple[float, np.ndarray]:
    """Maximize the joint entropy over the constraint polytope numerically.

    Uses an exponential-cone interior-point solve (entropy is strictly
    concave, so the optimum is unique and the solver's duality gap certifies
    the value).  Returns (bits, argmax pmf).  Raises ValueError when the
    constraints are infeasible.
    """
    import cvxpy as cp

    p_x = _check_px(p_x)
    a, b = constraint_system(p_x, alpha)
    var = cp.Variable(36, nonneg=True)
    problem = cp.Problem(cp.Maximize(cp.sum(cp.entr(var))), [a @ var == b])
    scs_eps = min(tolerance * 1e-2, 1e-9)
    for solver, kwargs in (("CLARABEL", {}), ("SCS", {"eps": scs_eps})):
        try:
            problem.solve(solver=solver, **kwargs)
        except cp.error.SolverError:
            continue
        if problem.status == cp.OPTIMAL:
            break
        if problem.status in (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE):
            raise ValueError("infeasible constraints")
    if problem.status != cp.OPTIMAL:
        raise RuntimeError(f"entropy maximization did not converge: {problem.status}")
    pmf = np.asarray(var.value, dtype=float).reshape(6, 6)
    pmf = np.maximum(pmf, 0.0)
    return float(problem.value / math.log(2)), pmf


def entropy_inequality_check(p: float, alpha: float) -> tuple[float, float, bool]:
    """h(quad) <= h(alpha) + h(p) on the valid region alpha >= |1 - 2p|."""
    if not (0 <= p <= 1 and 0 <= alpha <= 1):
        raise ValueError("p and alpha must lie in [0, 1]")
    if alpha < abs(1 - 2 * p) - ALPHA_TOL:
        raise ValueError(f"alpha = {alpha} below validity threshold |1-2p| = {abs(1 - 2 * p)}")
    lhs = entropy_bits(
        [
            (2 * p - 1 + alpha) / 2,
            (1 - 2 * p + alpha) / 2,
            (1 - alpha) / 2,
            (1 - alpha) / 2,
        ]
    )
    rhs = binary_entropy(alpha) + binary_entropy(p)
    return lhs, rhs, lhs <= rhs + 1e-12


def chord_inequality_check(p: float, alpha: float) -> tuple[float, float, bool]:
    """The chord step alpha*h((2p-1+alpha)/(2 alpha)) + (1-alpha) <= h(p).

    This is the one-line inequality the quad bound reduces to; alpha = 0 is
    excluded (the full statement is trivial there).
    """
    if alpha <= 0:
        raise ValueError("the chord step needs alpha > 0")
    if alpha < abs(1 - 2 * p) - ALPHA_TOL or alpha > 1 + ALPHA_TOL:
        raise ValueError(f"alpha = {alpha} outside the valid region")
    lhs = alpha * binary_entropy((2 * p - 1 + alpha) / (2 * alpha)) + (1 - alpha)
    rhs = binary_entropy(p)
    return lhs, rhs, lhs <= rhs + 1e-12


# typical-set intersection counting

def intersection_bound(n: int, n1: int, h_val: float, epsilon: float) -> float:
    """C(n, n1) * 2^(n h + eps n log2 6): the counting bound with explicit
    slack eps * n * log2(6) in place of the vanishing-in-eps term."""
    return comb(n, n1) * 2.0 ** (n * h_val + epsilon * n * math.log2(6))


def typical_intersection_table(
    c: Sequence[DihedralElement],
    y: Sequence[int],
    channel: Channel,
    epsilon: float,
    labeling: Optional[Labeling] = None,
) -> np.ndarray:
    """Count conditionally typical candidates by exact difference type.

    Returns an (n+1) x (n+1) table T with T[n1, n2] the number of sequences
    x^n in the conditional typical set whose ratio against c has n1
    reflection and n2 non-identity-rotation coordinates.  Enumerates every
    candidate, pruning per-coordinate values that would hit a zero-probability
    (x, y) pair.
    """
    labeling = labeling or default_labeling(channel.p)
    n = len(c)
    if n > MAX_EXACT_N:
        raise ValueError(f"exact counting capped at n = {MAX_EXACT_N}")
    if len(y) != n:
        raise ValueError("c and y must have equal length")
    joint = channel.transition / channel.input_size
    ny = channel.output_size
    y = np.asarray(y, dtype=np.intp)
    allowed = [np.flatnonzero(joint[:, yi] > 0) for yi in y]
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    sizes = np.array([len(av) for av in allowed], dtype=np.int64)
    if np.any(sizes == 0):
        return table

    elem_of_input = np.array(
        [labeling.elements[m] for m in range(channel.input_size)], dtype=np.intp
    )
    c_elem = np.array([e.alpha + channel.p * e.beta for e in c], dtype=np.intp)
    c_beta = c_elem // channel.p
    slack = epsilon / (channel.input_size * ny)
    flat_joint = joint.ravel()

    total = int(np.prod(sizes))
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        cand = np.empty((len(idx), n), dtype=np.intp)
        rem = idx
        for i in range(n - 1, -1, -1):
            cand[:, i] = allowed[i][rem % sizes[i]]
            rem = rem // sizes[i]
        # per-candidate (input, output) pair counts; the pruning above already
        # enforces the no-zero-probability-pair rule
        pair = cand * ny + y[None, :]
        offset = np.arange(len(idx), dtype=np.int64)[:, None] * (channel.input_size * ny)
        counts = np.bincount(
            (pair + offset).ravel(), minlength=len(idx) * channel.input_size * ny
        ).reshape(len(idx), -1)
        typical = np.all(np.abs(counts / n - flat_joint[None, :]) <= slack, axis=1)
        if not typical.any():
            continue
        elems = elem_of_input[cand[typical]]
        betas = elems // channel.p
        n1 = (betas != c_beta[None, :]).sum(axis=1)
        n2 = ((betas == c_beta[None, :]) & (elems != c_elem[None, :])).sum(axis=1)
        np.add.at(table, (n1, n2), 1)
    return table


def typical_intersection_count(
    c: Sequence[DihedralElement],
    y: Sequence[int],
    n1: int,
    n2: int,
    channel: Channel,
    epsilon: float,
    labeling: Optional[Labeling] = None,
) -> int:
    """Exact size of the type-(n1, n2) candidate set inside the conditional
    typical set: sequences agreeing with c except for n1 coset-flipped and n2
    rotated coordinates, over all placements."""
    table = typical_intersection_table(c, y, channel, epsilon, labeling)
    if not (0 <= n1 <= len(c) and 0 <= n2 <= len(c)):
        raise ValueError("n1 and n2 must lie in 0..n")
    return int(table[n1, n2])
