"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 resource guard, 4 a mathematical
inconsistency was detected.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .certify import CONSISTENT, certify, check_guards, is_buildable
from .errors import PolarGraphError, ResourceLimit
from .families import (
    FAMILY_ALIASES,
    Family,
    build_family,
    family_lambda,
    family_params,
    parse_family,
    predict_verdict,
    prime_powers,
    proof_inequality,
)
from .graphs import export_adjlist, export_graph6
from .spectral import (
    exact_spectrum,
    mixing_test,
    ramanujan_verdict,
    second_eigenvalue,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_INCONSISTENT = 4

TABLE_BUILD_MAX_N = 1500


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=sorted(FAMILY_ALIASES),
                   help="no+, no-, no-odd (aliases gq, gamma-q, gamma-w) or nu")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, default=2)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polargraphs",
        description="Tangent graphs of finite polar spaces and their Ramanujan property.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a graph and write it out")
    _add_instance_args(p)
    p.add_argument("--format", choices=("graph6", "adjlist"), default="graph6")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="certify one instance against the closed forms")
    _add_instance_args(p)
    p.add_argument("--format", choices=("json-certificate", "text"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("table", help="classification table over families, m and q")
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--q-max", type=int, default=3)
    p.add_argument("--format", choices=("text-table",), default="text-table")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("mixing", help="expander mixing lemma fuzzer")
    _add_instance_args(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("params", help="closed-form parameters of one instance")
    _add_instance_args(p)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_build(args) -> int:
    family = parse_family(args.family)
    family_params(family, args.m, args.q)
    check_guards(family, args.m, args.q)
    G = build_family(family, args.m, args.q)
    if args.format == "graph6":
        text = export_graph6(G).decode("ascii") + "\n"
    else:
        text = export_adjlist(G)
    stats = f"n: {G.n}\nd: {G.regular_degree()}\nedges: {G.edge_count}\n"
    if args.out is None:
        sys.stdout.write(text)
        sys.stderr.write(stats)
    else:
        _emit(text, args.out)
        sys.stdout.write(stats)
    return EXIT_OK


def cmd_verify(args) -> int:
    result = certify(args.family, args.m, args.q)
    cert = result.certificate
    if args.format == "json-certificate":
        doc = cert.to_dict()
        doc["problems"] = result.problems
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = cert.to_text() + "".join(f"problem: {p}\n" for p in result.problems)
    _emit(text, args.out)
    return EXIT_OK if cert.status == CONSISTENT else EXIT_INCONSISTENT


def table_rows(m_max: int, q_max: int, build_max_n: int = TABLE_BUILD_MAX_N) -> list[dict]:
    rows = []
    instances = [(f, m, 2) for f in (Family.NO_PLUS, Family.NO_MINUS, Family.NO_ODD)
                 for m in range(1, m_max + 1)]
    instances += [(Family.NU, m, q) for q in prime_powers(2, q_max) for m in range(2, m_max + 1)]
    for family, m, q in instances:
        p = family_params(family, m, q)
        predicted = predict_verdict(family, m, q)
        row = {"family": family.value, "m": m, "q": q, "n": p.n, "d": p.d,
               "lambda2": p.lambda2, "lambda3": p.lambda3,
               "lambda": None if p.degenerate else family_lambda(family, m, q).value,
               "bound": None if p.d < 1 else 2 * math.sqrt(p.d - 1),
               "verdict": predicted.value, "source": "predicted", "consistent": True}
        if is_buildable(family, m, q, max_n=build_max_n):
            verdict = ramanujan_verdict(build_family(family, m, q))
            row["verdict"] = verdict.cls.value
            row["source"] = "verified"
            row["consistent"] = verdict.cls is predicted
        rows.append(row)
    return rows


def format_table(rows: list[dict]) -> str:
    header = ("family", "m", "q", "n", "d", "lambda2", "lambda3", "lambda", "bound", "verdict", "source")

    def cell(row, key):
        v = row[key]
        if v is None:
            return "-"
        if key == "bound":
            return f"{v:.6f}"
        return str(v)

    body = [[cell(r, k) for k in header] for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(b, widths)) for b in body]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_table(args) -> int:
    if not 1 <= args.m_max <= 12:
        raise PolarGraphError("--m-max must be between 1 and 12")
    if args.q_max < 2:
        raise PolarGraphError("--q-max must be at least 2")
    rows = table_rows(args.m_max, args.q_max)
    _emit(format_table(rows), args.out)
    return EXIT_OK if all(r["consistent"] for r in rows) else EXIT_INCONSISTENT


def cmd_mixing(args) -> int:
    if args.samples < 1:
        raise PolarGraphError("--samples must be positive")
    family = parse_family(args.family)
    family_params(family, args.m, args.q)
    check_guards(family, args.m, args.q)
    G = build_family(family, args.m, args.q)
    spectrum, _ = exact_spectrum(G)
    lam = second_eigenvalue(spectrum, bipartite=False)
    report = mixing_test(G, float(lam), args.samples, args.seed)
    sys.stdout.write(f"graph: {G.name}\nn: {G.n}\nd: {G.regular_degree()}\nlambda: {lam}\n{report}\n")
    return EXIT_OK if report.violations == 0 else EXIT_INCONSISTENT


def cmd_params(args) -> int:
    family = parse_family(args.family)
    p = family_params(family, args.m, args.q)
    lines = [f"family: {family.value}", f"m: {args.m}", f"q: {args.q}", f"n: {p.n}", f"d: {p.d}",
             f"epsilon: {p.epsilon}", f"lambda2: {p.lambda2}", f"lambda3: {p.lambda3}"]
    if not p.degenerate:
        lam = family_lambda(family, args.m, args.q)
        lines.append(f"lambda: {lam.value}{'' if lam.lemma else ' (no closed form)'}")
    lines.append(f"predicted: {predict_verdict(family, args.m, args.q).value}")
    if family is not Family.NU or args.q == 2:
        try:
            ineq = proof_inequality(family, args.m)
        except PolarGraphError:
            pass
        else:
            lines.append(f"inequality: {ineq.polynomial} at x={ineq.x}: value {ineq.value}, "
                         f"holds {str(ineq.holds).lower()}, root {ineq.threshold:.6f}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "table": cmd_table,
            "mixing": cmd_mixing, "params": cmd_params}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ResourceLimit as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_GUARD
    except PolarGraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
