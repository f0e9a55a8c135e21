"""Command line interface.

Exit codes: 0 for definite answers, 2 for "unknown" (enumeration budget or
uncertified lattice), 1 for errors.  ``report`` writes a delimited summary
plus rendered figures for a batch of group files.
"""

import argparse
import csv
import json
import os
import sys
import time

from .errors import (
    GroupRankError,
    InfiniteRankError,
    SchemaError,
    UncertifiedError,
    UnknownVerdict,
)
from .congruence import DEFAULT_BUDGET
from .groupfile import dump_group, group_to_obj, load_group
from .structure import completely_reducible_part, is_solvable_by_finite
from .toolkit import GroupAnalysis, analyze

ENV_BUDGET = "GROUPRANK_BUDGET"


def _ladder(start):
    return (start, 2 * start, 4 * start)


def _common_kwargs(args):
    return dict(prime=args.prime, budget=args.budget,
                precision_ladder=_ladder(args.precision))


def _emit(args, payload, human_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _cmd_is_finite_rank(args):
    spec, gens, _ = load_group(args.group)
    verdict = is_solvable_by_finite(gens, spec, prime=args.prime, budget=args.budget)
    if verdict.is_unknown:
        _emit(args, {"finite_rank": None, "reason": "budget",
                     "budget_info": verdict.budget_info},
              ["finite rank: unknown (budget %r)" % (verdict.budget_info,)])
        return 2
    payload = {"finite_rank": verdict.is_true}
    if verdict.site is not None:
        payload["prime_used"] = verdict.site.p
    if verdict.is_true:
        payload["block_sizes"] = list(verdict.witness.block_sizes)
    _emit(args, payload, ["finite rank: %s" % ("true" if verdict.is_true else "false")])
    return 0


def _run_report(args, want_bound):
    spec, gens, _ = load_group(args.group)
    ga = GroupAnalysis(gens, spec, **_common_kwargs(args))
    h = ga.hirsch
    payload = {"result": h, "hirsch": h, "prime_used": ga.prime_used}
    lines = ["hirsch number: %d" % h]
    if want_bound:
        payload["prufer_upper_bound"] = ga.rank_bound
        lines.append("prufer rank bound: %d" % ga.rank_bound)
    if args.verify:
        certs = ga.certificates(verify=True)
        payload["certificates"] = certs
        lines.append("certificates: %d checked, %d failures"
                     % (certs["verified"]["checked"], certs["verified"]["failures"]))
        if certs["verified"]["failures"]:
            raise GroupRankError("certificate verification failed")
    payload["timings"] = {k: round(v, 6) for k, v in ga.timings.items()}
    _emit(args, payload, lines)
    return 0


def _cmd_hirsch(args):
    return _run_report(args, want_bound=False)


def _cmd_rank_bound(args):
    return _run_report(args, want_bound=True)


def _cmd_finite_index(args):
    spec_g, gens_g, _ = load_group(args.group)
    spec_h, gens_h, _ = load_group(args.subgroup)
    if spec_g.minpoly != spec_h.minpoly:
        raise GroupRankError("the two groups live over different fields")
    ga = GroupAnalysis(gens_g, spec_g, **_common_kwargs(args))
    gh = GroupAnalysis(gens_h, spec_g, **_common_kwargs(args))
    result = ga.hirsch == gh.hirsch
    _emit(args, {"finite_index": result,
                 "hirsch_group": ga.hirsch, "hirsch_subgroup": gh.hirsch},
          ["finite index: %s (hirsch %d vs %d)" % (str(result).lower(), ga.hirsch, gh.hirsch)])
    return 0


def _cmd_cr_part(args):
    spec, gens, _ = load_group(args.group)
    crp = completely_reducible_part(gens, spec, prime=args.prime, budget=args.budget)
    if args.verify and not crp.blockform.verify(gens):
        raise GroupRankError("certificate verification failed")
    payload = {
        "block_sizes": list(crp.blockform.block_sizes),
        "basis_change": group_to_obj(spec, [crp.blockform.basis_change])["generators"][0],
        "cr_part": group_to_obj(spec, crp.gens, name="cr-part"),
    }
    if args.out:
        dump_group(spec, crp.gens, args.out, name="cr-part")
    _emit(args, payload, [
        "block sizes: %s" % (list(crp.blockform.block_sizes),),
        "wrote completely reducible part to %s" % args.out if args.out
        else "completely reducible part has %d generators" % len(crp.gens),
    ])
    return 0


def _cmd_unipotent_rank(args):
    spec, gens, _ = load_group(args.group)
    ga = GroupAnalysis(gens, spec, **_common_kwargs(args))
    rank, witness = ga.radical
    payload = {"unipotent_radical_rank": rank, "witness_size": len(witness),
               "prime_used": ga.prime_used,
               "timings": {k: round(v, 6) for k, v in ga.timings.items()}}
    _emit(args, payload, ["unipotent radical rank: %d (witness of %d generators)"
                          % (rank, len(witness))])
    return 0


_REPORT_STAGES = ("finite_rank_test", "cr_part", "cr_kernel", "cr_rank",
                  "cr_presentation", "unipotent_radical")


def _cmd_report(args):
    os.makedirs(args.out, exist_ok=True)
    rows = []
    for path in args.groups:
        spec, gens, name = load_group(path)
        label = name or os.path.splitext(os.path.basename(path))[0]
        t0 = time.perf_counter()
        rep = analyze(gens, spec, prime=args.prime, budget=args.budget,
                      precision_ladder=_ladder(args.precision), verify=args.verify)
        total = time.perf_counter() - t0
        rows.append({
            "name": label,
            "file": path,
            "n": gens[0].n,
            "m": spec.degree,
            "status": rep.status,
            "finite_rank": rep.finite_rank,
            "hirsch": rep.hirsch,
            "prufer_upper_bound": rep.prufer_upper_bound,
            "prime_used": rep.prime_used,
            "total_seconds": round(total, 6),
            **{stage: round(rep.timings.get(stage, 0.0), 6) for stage in _REPORT_STAGES},
        })
    csv_path = os.path.join(args.out, "report.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    figures = _render_figures(rows, args.out)
    payload = {"csv": csv_path, "figures": figures, "groups": len(rows)}
    _emit(args, payload, ["wrote %s and %d figures for %d groups"
                          % (csv_path, len(figures), len(rows))])
    return 0


def _render_figures(rows, outdir):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    pts = [(r["n"] * r["m"], r["hirsch"], r["name"]) for r in rows
           if r["hirsch"] is not None]
    if pts:
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], zorder=3)
        dmax = max(p[0] for p in pts)
        ds = list(range(1, dmax + 1))
        ax.plot(ds, [d * (d + 1) // 2 for d in ds], "--", color="gray",
                label="d(d+1)/2 cap (integral entries)")
        ax.legend(frameon=False)
    ax.set_xlabel("d = n*m")
    ax.set_ylabel("Hirsch number")
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    path1 = os.path.join(outdir, "hirsch_vs_bound.png")
    fig.savefig(path1, bbox_inches="tight", dpi=150)
    plt.close(fig)
    written.append(path1)

    fig, ax = plt.subplots(figsize=(6.5, max(2.0, 0.35 * len(rows))))
    names = [r["name"] for r in rows]
    left = [0.0] * len(rows)
    for stage in _REPORT_STAGES:
        vals = [r.get(stage, 0.0) for r in rows]
        ax.barh(names, vals, left=left, label=stage)
        left = [a + b for a, b in zip(left, vals)]
    ax.set_xlabel("seconds")
    ax.legend(frameon=False, fontsize=7)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    path2 = os.path.join(outdir, "stage_times.png")
    fig.savefig(path2, bbox_inches="tight", dpi=150)
    plt.close(fig)
    written.append(path2)
    return written


def build_parser():
    parser = argparse.ArgumentParser(
        prog="grouprank",
        description="Exact rank computations for finitely generated matrix groups "
                    "over the rationals and algebraic number fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, groups=1):
        if groups == 1:
            p.add_argument("group", help="group file (JSON, schema 1)")
        p.add_argument("--prime", type=int, default=None,
                       help="override the congruence prime (validated)")
        p.add_argument("--budget", type=int,
                       default=int(os.environ.get(ENV_BUDGET, DEFAULT_BUDGET)),
                       help="congruence image enumeration cap")
        p.add_argument("--precision", type=int, default=128,
                       help="starting log-embedding precision in bits")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--verify", action="store_true",
                       help="re-run all exact certificate checks")

    p = sub.add_parser("is-finite-rank", help="decide finite Prufer rank")
    common(p)
    p.set_defaults(func=_cmd_is_finite_rank)

    p = sub.add_parser("hirsch", help="compute the Hirsch number")
    common(p)
    p.set_defaults(func=_cmd_hirsch)

    p = sub.add_parser("rank-bound", help="Hirsch number plus a Prufer rank bound")
    common(p)
    p.set_defaults(func=_cmd_rank_bound)

    p = sub.add_parser("finite-index", help="decide |G:H| < oo for H <= G")
    p.add_argument("group", help="group file for G")
    p.add_argument("subgroup", help="group file for H (must satisfy H <= G)")
    common(p, groups=0)
    p.set_defaults(func=_cmd_finite_index)

    p = sub.add_parser("cr-part", help="compute a completely reducible part")
    common(p)
    p.add_argument("--out", default=None, help="write the part as a group file")
    p.set_defaults(func=_cmd_cr_part)

    p = sub.add_parser("unipotent-rank", help="rank of the unipotent radical")
    common(p)
    p.set_defaults(func=_cmd_unipotent_rank)

    p = sub.add_parser("report", help="batch analysis: CSV plus figures")
    p.add_argument("groups", nargs="+", help="group files")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--budget", type=int,
                   default=int(os.environ.get(ENV_BUDGET, DEFAULT_BUDGET)))
    p.add_argument("--precision", type=int, default=128)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print("schema error: %s" % exc, file=sys.stderr)
        return 1
    except (UnknownVerdict, UncertifiedError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({"status": "unknown", "detail": str(exc)}))
        else:
            print("unknown: %s" % exc, file=sys.stderr)
        return 2
    except InfiniteRankError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except GroupRankError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
