"""Command-line front end: generate networks, rank them classically and
quantum-mechanically, sweep the interpolation parameter, and compare
degeneracy counts over seeded ensembles."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import graphs as gr
from .operators import DEFAULT_ALPHA, DEFAULT_GAMMA
from .ranking import (
    DEFAULT_OMEGA_GRID,
    DEFAULT_RANK_TF,
    DEFAULT_SIG_DIGITS,
    DEFAULT_SWEEP_TF,
    DEFAULT_TOL,
    cpr_report,
    qpr,
    sweep_omega,
)

SCHEMA_VERSION = 1

# omega used per network family when comparing degeneracy counts
FAMILY_OMEGA = {
    "bernoulli": 0.9,
    "zachary": 0.9,
    "ws": 0.4,
    "ba": 0.9,
    "price": 0.9,
}


def _build_family(family, args, seed):
    if family == "bernoulli":
        return gr.gen_bernoulli(args.n, args.p, seed)
    if family == "ws":
        return gr.gen_watts_strogatz(args.n, args.p, args.k, seed)
    if family == "ba":
        return gr.gen_barabasi_albert(args.n, args.k, seed)
    if family == "price":
        return gr.gen_price(args.n, args.k, args.a, seed)
    if family == "spatial":
        return gr.gen_spatial(args.n, args.r, seed)
    if family == "zachary":
        return gr.zachary()
    if family == "eight":
        return gr.eight_vertex()
    raise ValueError(f"unknown family {family!r}")


def _spatial_omega(r):
    # sparse spatial networks rank best at omega 0.8, denser ones at 0.9
    return 0.8 if r <= 0.5 else 0.9


def _directed_for_ranking(g, orient, seed):
    if g.directed:
        return g
    if orient == "bidirected":
        return g
    return gr.random_orientation(g, seed)


def cmd_generate(args):
    g = _build_family(args.family, args, args.seed)
    gr.save_edgelist(g, args.output)
    print(f"vertices={g.vertex_count} edges={g.edge_count} seed={args.seed}")
    return 0


def _rank_payload(g, args):
    directed = _directed_for_ranking(g, args.orient, args.seed)
    reports = {
        "cpr": cpr_report(directed, args.alpha, sig_digits=args.sig_digits,
                          seed=args.seed),
        "qpr_oi": qpr(directed, "OI", args.omega, args.tf, args.alpha,
                      args.gamma, args.sig_digits, args.seed),
        "qpr_di": qpr(directed, "DI", args.omega, args.tf, args.alpha,
                      args.gamma, args.sig_digits, args.seed),
    }
    methods = {}
    for key, rep in reports.items():
        methods[key] = {
            "scores": [float(x) for x in rep.ranks.entries],
            "rounded": list(rep.rounded),
            "order": list(rep.order),
            "degeneracy": rep.degeneracy,
        }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "graph": {
            "m": directed.vertex_count,
            "edges": sorted(list(e) for e in directed.edges),
            "seed": args.seed,
        },
        "params": {
            "alpha": args.alpha,
            "gamma": args.gamma,
            "omega": args.omega,
            "tf": args.tf,
        },
        "methods": methods,
    }
    return payload


def cmd_rank(args):
    g = gr.load_edgelist(args.graph)
    payload = _rank_payload(g, args)
    if args.format == "csv":
        with open(args.output, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex", "cpr", "qpr_oi", "qpr_di"])
            order = payload["methods"]["cpr"]["order"]
            for v in order:
                w.writerow([
                    v,
                    payload["methods"]["cpr"]["scores"][v - 1],
                    payload["methods"]["qpr_oi"]["scores"][v - 1],
                    payload["methods"]["qpr_di"]["scores"][v - 1],
                ])
    else:
        with open(args.output, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"wrote {args.output}")
    return 0


def _write_sweep_svg(path, omegas, oi_ratio, di_ratio):
    """Minimal static line plot of the ratio curves against omega."""
    width, height, pad = 480, 320, 50
    ys = list(oi_ratio) + list(di_ratio)
    y_max = max(max(ys), 1.0) * 1.05
    x_min, x_max = min(omegas), max(omegas)

    def sx(x):
        return pad + (x - x_min) / (x_max - x_min) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y / y_max) * (height - 2 * pad)

    def polyline(vals, color):
        pts = " ".join(f"{sx(w):.1f},{sy(v):.1f}" for w, v in zip(omegas, vals))
        return (f'<polyline fill="none" stroke="{color}" stroke-width="2" '
                f'points="{pts}"/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}">',
        f'<line x1="{pad}" y1="{height-pad}" x2="{width-pad}" '
        f'y2="{height-pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height-pad}" '
        f'stroke="black"/>',
        polyline(oi_ratio, "#1f77b4"),
        polyline(di_ratio, "#d62728"),
        f'<text x="{width//2}" y="{height-10}" text-anchor="middle">'
        "ω</text>",
        f'<text x="14" y="{height//2}" text-anchor="middle" '
        f'transform="rotate(-90 14 {height//2})">'
        "τ_QPR/τ_CPR</text>",
    ]
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def cmd_sweep(args):
    if args.graph:
        g = gr.load_edgelist(args.graph)
        if not g.directed and args.orient == "bidirected":
            # symmetric edge set marked directed so no orientation happens
            source = gr.Graph(g.vertex_count, g.edges, True, g.coords)
        else:
            source = g
    else:
        def source(seed, _args=args):
            return _build_family(_args.family, _args, seed)

    grid = DEFAULT_OMEGA_GRID
    result = sweep_omega(
        source, grid=grid, tf=args.tf, tol=args.tol, alpha=args.alpha,
        gamma=args.gamma, replicates=args.replicates, seed=args.seed,
    )
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["omega", "tau_oi_ratio", "tau_di_ratio", "replicates"])
        for i, om in enumerate(result.omegas):
            w.writerow([
                om,
                repr(float(result.tau_ratio["OI"][i])),
                repr(float(result.tau_ratio["DI"][i])),
                result.replicates,
            ])
    if args.svg:
        _write_sweep_svg(args.svg, result.omegas, result.tau_ratio["OI"],
                         result.tau_ratio["DI"])
    print(f"wrote {args.output}")
    return 0


def cmd_compare(args):
    if args.omega is not None:
        omega = args.omega
    elif args.family in FAMILY_OMEGA:
        omega = FAMILY_OMEGA[args.family]
    elif args.family == "spatial":
        omega = _spatial_omega(args.r)
    else:
        omega = 0.9
    rows = []
    for i in range(args.replicates):
        seed = args.seed + 1000 * i
        g = _build_family(args.family, args, seed)
        directed = _directed_for_ranking(g, args.orient, seed)
        c = cpr_report(directed, args.alpha, sig_digits=args.sig_digits)
        oi = qpr(directed, "OI", omega, args.tf, args.alpha, args.gamma,
                 args.sig_digits)
        di = qpr(directed, "DI", omega, args.tf, args.alpha, args.gamma,
                 args.sig_digits)
        rows.append((i + 1, seed, c.degeneracy, oi.degeneracy, di.degeneracy))
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["network", "seed", "cpr_degeneracy", "qpr_oi_degeneracy",
                    "qpr_di_degeneracy"])
        for row in rows:
            w.writerow(row)
    print(f"wrote {args.output}")
    return 0


def _add_common(p):
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--sig-digits", dest="sig_digits", type=int,
                   default=DEFAULT_SIG_DIGITS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orient", choices=["random", "bidirected"],
                   default="random",
                   help="how to direct undirected inputs before ranking")


def _add_family(p):
    p.add_argument("--family",
                   choices=["bernoulli", "ws", "ba", "price", "spatial",
                            "zachary", "eight"])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--r", type=float, default=0.35)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qswrank",
        description="Rank network vertices with classical and quantum-walk "
                    "PageRank and measure degeneracies and convergence times.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a network edge-list file")
    _add_family(p)
    _add_common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("rank", help="rank the vertices of a graph file")
    p.add_argument("--graph", required=True, help="edge-list input path")
    p.add_argument("--omega", type=float, default=0.9)
    p.add_argument("--tf", type=float, default=DEFAULT_RANK_TF)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("sweep", help="convergence-time ratio vs omega")
    p.add_argument("--graph", help="edge-list input path")
    _add_family(p)
    p.add_argument("--tf", type=float, default=DEFAULT_SWEEP_TF)
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--svg", help="optional SVG plot output path")
    _add_common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="degeneracy counts over an ensemble")
    _add_family(p)
    p.add_argument("--omega", type=float, default=None,
                   help="override the family's default omega")
    p.add_argument("--tf", type=float, default=DEFAULT_RANK_TF)
    p.add_argument("--replicates", type=int, default=5)
    _add_common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (gr.GraphError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
