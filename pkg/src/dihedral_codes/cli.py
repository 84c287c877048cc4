"""Command-line surface: rate reports, simulation, verification sweeps, and
channel tooling.

Exit status: 0 on success, 1 when a verification sweep finds any mismatch,
2 on usage errors (including malformed channel files, reported with a
line/column diagnostic).  All subcommands are deterministic given --seed,
which defaults to $DIHEDRAL_CODES_SEED or 12345.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import channels as ch
from . import counting, maxent, rates, simulate
from .ensemble import all_messages
from .group import D6

DEFAULT_SEED = 12345
SEED_ENV_VAR = "DIHEDRAL_CODES_SEED"

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    return int(env) if env else DEFAULT_SEED


def _emit_rows(rows: list[dict], fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(rows, out, indent=1, sort_keys=True)
        out.write("\n")
        return
    if not rows:
        return
    cols = list(rows[0].keys())
    out.write("\t".join(cols) + "\n")
    for row in rows:
        out.write("\t".join(_fmt(row[c]) for c in cols) + "\n")


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _load_channel(path: str, p: int = 3):
    try:
        return ch.load_channel(path, p=p)
    except FileNotFoundError:
        raise SystemExit(_usage_error(f"channel file not found: {path}"))
    except ch.ChannelFormatError as exc:
        raise SystemExit(_usage_error(f"{path}: {exc}"))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# rate

def _cmd_rate(args) -> int:
    channel, labeling = _load_channel(args.channel)
    labeling = labeling or ch.default_labeling(channel.p)
    br = rates.rate_breakdown(channel, labeling)
    rows = [
        {"quantity": "term_full", "bits": br.term_full,
         "source": "log2(6) - H(X|Y)"},
        {"quantity": "term_coset", "bits": br.term_coset,
         "source": "(log2(6)/log2(3)) * (log2(3) - H(X|[X]Y)), [X] = rotation coset"},
        {"quantity": "r_star", "bits": br.r_star,
         "source": "min(term_full, term_coset); achieved rate is max(0, r_star)"},
        {"quantity": "abelian_term_coset3", "bits": br.abelian_term_coset3,
         "source": "(log2(6)/log2(3)) * (log2(3) - H(X|[X]_3 Y)), cosets of {0,2,4}"},
        {"quantity": "abelian_term3", "bits": br.abelian_term3,
         "source": "log2(6) * (1 - H(X|[X]_2 Y)), cosets of {0,3}"},
        {"quantity": "r_abelian", "bits": br.r_abelian,
         "source": "min(term_full, abelian_term_coset3, abelian_term3)"},
        {"quantity": "achieved_rate", "bits": max(0.0, br.r_star),
         "source": "max(0, r_star); raw negative terms are kept above for debugging"},
        {"quantity": "achieved_rate_abelian", "bits": max(0.0, br.r_abelian),
         "source": "max(0, r_abelian)"},
        {"quantity": "symmetric_capacity", "bits": rates.symmetric_capacity(channel, labeling),
         "source": "log2(6) - H(X|Y) at uniform input"},
    ]
    for objective in rates.OBJECTIVES:
        lab, value = rates.best_labeling(channel, objective)
        rows.append(
            {
                "quantity": f"best_labeling_{objective}",
                "bits": value,
                "source": "labels->elements " + ",".join(str(e) for e in lab.elements),
            }
        )
    _emit_rows(rows, args.format)
    return EXIT_OK


# simulate

def _cmd_simulate(args) -> int:
    channel, labeling = _load_channel(args.channel)
    try:
        n_list = [int(v) for v in args.n.split(",") if v]
    except ValueError:
        return _usage_error(f"bad --n list: {args.n!r}")
    rows = []
    for n in n_list:
        report = simulate.estimate_error(
            channel,
            rate=args.rate,
            n=n,
            decoder=args.decoder,
            trials=args.trials,
            seed=args.seed,
            epsilon=args.epsilon,
            labeling=labeling,
        )
        rows.append(
            {
                "n": report.n,
                "k": report.k,
                "trials": report.trials,
                "errors": report.errors,
                "error_rate": report.error_rate,
                "ci_low": report.ci_low,
                "ci_high": report.ci_high,
            }
        )
    _emit_rows(rows, args.format)
    return EXIT_OK


# verify-lemma1

def _cmd_verify_lemma1(args) -> int:
    failures = 0
    for k in range(1, args.k + 1):
        mismatches = []
        checked = 0
        combos = set()
        msgs = list(all_messages(k))
        for u in msgs:
            for ut in msgs:
                if u == ut:
                    continue
                m1, m2, _ = counting.message_type(u, ut)
                dist = counting.brute_force_theta_distribution(u, ut)
                for theta, oracle in dist.items():
                    cls = counting.theta_class(theta)
                    formula = counting.per_coordinate_prob(m1, m2, cls)
                    combos.add((m1, m2, cls))
                    checked += 1
                    if formula != oracle:
                        mismatches.append((u, ut, theta, formula, oracle))
        status = "PASS" if not mismatches else "FAIL"
        print(
            f"{status} k={k}: {len(combos)} types x classes, "
            f"{checked} exact checks, {len(mismatches)} mismatches"
        )
        for u, ut, theta, formula, oracle in mismatches[:20]:
            ru = " ".join(D6.render(d) for d in u)
            rt = " ".join(D6.render(d) for d in ut)
            print(
                f"  counterexample u=({ru}) u~=({rt}) "
                f"theta={D6.render(theta)} formula={formula} oracle={oracle}"
            )
        failures += len(mismatches)

    norm_bad = 0
    for m1 in range(0, 13):
        for m2 in range(0, 13):
            a, b, c = counting.abc_functions(m1, m2)
            if 3 * a + b + 2 * c != 3 * 10**m1:
                norm_bad += 1
    closed_bad = sum(
        1
        for m1 in range(0, 21)
        if counting.abc_functions(m1, 0)[0] != counting.a_closed_form(m1)
    )
    type_bad = 0
    for k in range(1, 7):
        total = sum(
            counting.count_message_types(k, m1, m2)
            for m1 in range(k + 1)
            for m2 in range(k - m1 + 1)
        )
        if total != 6**k:
            type_bad += 1
    print(f"{'PASS' if not norm_bad else 'FAIL'} normalization 3A+B+2C = 3*10^m1 (m1, m2 <= 12)")
    print(f"{'PASS' if not closed_bad else 'FAIL'} closed form A(m1) = (10^m1 - (-8)^m1)/2 (m1 <= 20)")
    print(f"{'PASS' if not type_bad else 'FAIL'} type counts sum to 6^k (k <= 6)")
    failures += norm_bad + closed_bad + type_bad
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


# verify-entropy

def _cmd_verify_entropy(args) -> int:
    rng = np.random.default_rng(args.seed)
    rows = []
    worst_gap = 0.0
    worst_residual = 0.0
    for _ in range(args.samples):
        p_x = rng.dirichlet(np.ones(6))
        p = float(p_x[:3].sum())
        lo = abs(1 - 2 * p)
        alpha = lo + (1 - lo) * float(rng.random())
        closed = maxent.closed_form_entropy(p_x, alpha)
        numeric, _ = maxent.numeric_entropy_max(p_x, alpha)
        gap = abs(closed - numeric)
        pmf = maxent.optimal_joint_pmf(p_x, alpha)
        res = max(maxent.constraint_residuals(pmf, p_x, alpha).values())
        worst_gap = max(worst_gap, gap)
        worst_residual = max(worst_residual, res)
        rows.append(
            {"p": p, "alpha": alpha, "closed_form": closed, "numeric": numeric, "gap": gap}
        )
    _emit_rows(rows, args.format)

    grid = args.grid
    violations = 0
    for i in range(grid):
        p = i / (grid - 1)
        for j in range(grid):
            alpha = abs(1 - 2 * p) + (1 - abs(1 - 2 * p)) * j / (grid - 1)
            lhs, rhs, holds = maxent.entropy_inequality_check(p, alpha)
            if not holds:
                violations += 1
    eq_lhs, eq_rhs, _ = maxent.entropy_inequality_check(0.5, 0.5)
    equality_ok = abs(eq_lhs - 2.0) < 1e-12 and abs(eq_rhs - 2.0) < 1e-12

    gap_ok = worst_gap < 1e-6
    res_ok = worst_residual < 1e-12
    grid_ok = not violations
    print(
        f"{'PASS' if gap_ok else 'FAIL'} closed form vs numeric optimum: "
        f"max gap {worst_gap!r} (< 1e-06)"
    )
    print(
        f"{'PASS' if res_ok else 'FAIL'} optimal pmf constraint residuals: "
        f"max {worst_residual!r} (< 1e-12)"
    )
    print(
        f"{'PASS' if grid_ok else 'FAIL'} entropy inequality on "
        f"{grid}x{grid} grid: {violations} violations"
    )
    print(
        f"{'PASS' if equality_ok else 'FAIL'} equality "
        "h(quad) = h(alpha)+h(p) = 2 at (1/2, 1/2)"
    )
    ok = gap_ok and res_ok and not violations and equality_ok
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


# labelings

def _cmd_labelings(args) -> int:
    channel, _ = _load_channel(args.channel)
    objectives = rates.OBJECTIVES if args.objective == "all" else (args.objective,)
    rows = []
    for objective in objectives:
        lab, value = rates.best_labeling(channel, objective)
        rows.append(
            {
                "objective": objective,
                "best_bits": value,
                "labeling": ",".join(str(e) for e in lab.elements),
                "rendered": " ".join(D6.render(lab.element_of_input(m)) for m in range(6)),
            }
        )
    _emit_rows(rows, args.format)
    return EXIT_OK


# channel

def _cmd_channel(args) -> int:
    if (args.builtin is None) == (args.infile is None):
        return _usage_error("channel needs exactly one of --builtin or --in")
    labeling = None
    if args.builtin is not None:
        params = {}
        if args.outputs is not None:
            params["outputs"] = args.outputs
        if args.noise is not None:
            params["noise"] = [float(v) for v in args.noise.split(",")]
        for name in ("eps1", "eps2", "eps3"):
            value = getattr(args, name)
            if value is not None:
                params[name] = value
        try:
            channel = ch.builtin_channel(args.builtin, **params)
        except (ValueError, KeyError) as exc:
            return _usage_error(str(exc))
    else:
        channel, labeling = _load_channel(args.infile, p=args.p)
    rec = ch.channel_to_json_dict(channel, labeling)
    text = json.dumps(rec, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-codes",
        description="Dihedral-group channel codes: rates, simulation, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
        sp.add_argument("--seed", type=int, default=_default_seed())

    sp = sub.add_parser("rate", help="achievable-rate breakdown for a channel file")
    sp.add_argument("--channel", required=True)
    add_common(sp)
    sp.set_defaults(func=_cmd_rate)

    sp = sub.add_parser("simulate", help="Monte Carlo block error estimation")
    sp.add_argument("--channel", required=True)
    sp.add_argument("--rate", type=float, required=True)
    sp.add_argument("--n", required=True, help="comma-separated block lengths")
    sp.add_argument("--decoder", choices=("ml", "typ"), default="ml")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--epsilon", type=float, default=simulate.DEFAULT_EPSILON)
    add_common(sp)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("verify-lemma1", help="exact collision-probability sweep")
    sp.add_argument("--k", type=int, default=3)
    add_common(sp)
    sp.set_defaults(func=_cmd_verify_lemma1)

    sp = sub.add_parser("verify-entropy", help="entropy optimum and inequality sweeps")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--grid", type=int, default=100)
    add_common(sp)
    sp.set_defaults(func=_cmd_verify_entropy)

    sp = sub.add_parser("labelings", help="exhaustive labeling search")
    sp.add_argument("--channel", required=True)
    sp.add_argument(
        "--objective", choices=rates.OBJECTIVES + ("all",), default="all"
    )
    add_common(sp)
    sp.set_defaults(func=_cmd_labelings)

    sp = sub.add_parser("channel", help="build, validate, and normalize channel files")
    sp.add_argument("--builtin", choices=ch.BUILTIN_CHANNELS)
    sp.add_argument("--in", dest="infile")
    sp.add_argument("--out")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--outputs", type=int)
    sp.add_argument("--noise", help="comma-separated distribution over the 6 elements")
    sp.add_argument("--eps1", type=float)
    sp.add_argument("--eps2", type=float)
    sp.add_argument("--eps3", type=float)
    add_common(sp)
    sp.set_defaults(func=_cmd_channel)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ValueError as exc:
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
