"""Command line interface.

Usage::

    gaingraph spectrum graph.json
    gaingraph charpoly graph.json --format json
    gaingraph compare phi1.json phi2.json
    gaingraph check graph.txt --tol 1e-9 --max-n 14
    gaingraph generate --family gnp --n 8 --gains fourth-roots --seed 3 -o g.json

Exit status: 0 ok, 1 an assertion failed, 2 bad input, 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .analysis import (
    RHO_TOL,
    bounds_report,
    complete_bipartite_check,
    complete_bipartite_parts,
    rho_comparison,
    symmetry_analysis,
)
from .combinatorics import (
    char_coeffs_combinatorial,
    perm_coeffs_combinatorial,
    unicyclic_char_poly,
    unicyclic_perm_poly,
)
from .core import (
    GainGraph,
    fundamental_cycle_gains,
    is_balanced,
    is_connected,
    negate,
    switching_equivalent,
)
from .errors import CapExceededError, GainGraphError, GraphFileError
from .families import FAMILIES, GAIN_MODES, generate
from .linalg import (
    PERM_POLY_CAP,
    RYSER_CAP,
    RealPolynomial,
    adjacency_matrix,
    char_poly_numeric,
    perm_poly_numeric,
    permanent,
    spectra_equal,
    spectrum,
)

COMMANDS = ("spectrum", "charpoly", "permpoly", "balance", "bounds", "compare", "check", "generate")

EXIT_OK, EXIT_ASSERTION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

POLY_TOL = 1e-8


def _poly_close(p: RealPolynomial, q: RealPolynomial, tol: float = POLY_TOL) -> tuple[float, bool]:
    diff = p.max_abs_diff(q)
    scale = max([1.0] + [abs(c) for c in p.coeffs])
    return diff, diff <= tol * scale


def _angles(psi) -> list[float] | None:
    return None if psi is None else [z.theta_pi for z in psi]


class Report:
    """Accumulates results and named pass/fail assertions for one command."""

    def __init__(self, command: str, tol: float):
        self.command = command
        self.tol = tol
        self.inputs: list[dict] = []
        self.results: dict = {}
        self.assertions: dict[str, bool] = {}
        self.skipped: dict[str, str] = {}

    def add_input(self, path, graph: GainGraph) -> None:
        self.inputs.append({"path": str(path), "n": graph.n, "m": graph.m, "digest": io.digest(graph)})

    def check(self, name: str, passed) -> None:
        self.assertions[name] = bool(passed)

    @property
    def ok(self) -> bool:
        return all(self.assertions.values())

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "tolerance": self.tol,
            "results": self.results,
            "assertions": self.assertions,
        }
        if self.skipped:
            out["skipped"] = self.skipped
        out["ok"] = self.ok
        return out


def _spectrum_results(graph: GainGraph) -> dict:
    s = spectrum(graph)
    return {"eigenvalues": list(s.eigenvalues), "rho": s.rho}


def _charpoly(report: Report, graph: GainGraph, max_n: int) -> None:
    numeric = char_poly_numeric(graph)
    comb = char_coeffs_combinatorial(graph, cap=max_n)
    diff, ok = _poly_close(comb, numeric)
    report.results["charpoly"] = {
        "numeric": numeric.tolist(),
        "combinatorial": comb.tolist(),
        "max_discrepancy": diff,
    }
    report.check("characteristic coefficients: combinatorial == numeric", ok)


def _permpoly(report: Report, graph: GainGraph, max_n: int) -> None:
    comb = perm_coeffs_combinatorial(graph, cap=max_n)
    numeric = perm_poly_numeric(graph)
    diff, ok = _poly_close(comb, numeric)
    report.results["permpoly"] = {
        "numeric": numeric.tolist(),
        "combinatorial": comb.tolist(),
        "max_discrepancy": diff,
    }
    report.check("permanental coefficients: combinatorial == numeric", ok)


def _balance(report: Report, graph: GainGraph) -> None:
    balanced, psi = is_balanced(graph)
    res = {
        "balanced": balanced,
        "antibalanced": is_balanced(negate(graph))[0],
        "potential": _angles(psi),
        "fundamental_cycles": [
            {"cycle": list(c), "gain_theta_pi": g.theta_pi} for c, g in fundamental_cycle_gains(graph)
        ],
    }
    if graph.n and is_connected(graph):
        br = rho_comparison(graph, RHO_TOL)
        res.update(
            rho_phi=br.rho_phi,
            rho_g=br.rho_g,
            rho_equal=br.rho_equal,
            cospectral_with_underlying=br.cospectral_with_underlying,
        )
        report.check("rho(Phi) <= rho(G)", br.rho_dominated)
        report.check("rho(Phi) == rho(G) iff balanced or antibalanced", br.rho_equality_consistent)
        report.check("spectrum(Phi) == spectrum(G) iff balanced", br.cospectrality_consistent)
    report.results["balance"] = res


def _bounds(report: Report, graph: GainGraph, tol: float) -> None:
    if graph.n < 2:
        report.skipped["bounds"] = "needs at least 2 vertices"
        return
    br = bounds_report(graph, slack=tol)
    report.results["bounds"] = {
        "lambda1_interval": list(br.lambda1_interval),
        "lambdaN_interval": list(br.lambdaN_interval),
        "triangle_lower_bound": br.triangle_lower_bound,
        "degree_pair_lower_bound": br.degree_pair_lower_bound,
        "observed": {"lambda_1": br.observed[0], "lambda_n": br.observed[1], "sigma": br.observed[2]},
        "all_satisfied": br.all_satisfied,
    }
    for name, ok in br.checks.items():
        report.check(name, ok)


def _check(report: Report, graph: GainGraph, tol: float, max_n: int) -> None:
    s = spectrum(graph)
    report.results["spectrum"] = {"eigenvalues": list(s.eigenvalues), "rho": s.rho}
    total, squares = float(np.sum(s.eigenvalues)), float(np.sum(np.square(s.eigenvalues)))
    report.check("sum of eigenvalues == 0", abs(total) <= 1e-9 * max(1.0, graph.n))
    report.check("sum of squared eigenvalues == 2m", abs(squares - 2 * graph.m) <= 1e-8 * max(1.0, graph.m))
    _bounds(report, graph, tol)
    _balance(report, graph)

    if graph.n > max_n:
        report.skipped["combinatorial coefficients"] = f"n={graph.n} exceeds enumeration cap {max_n}"
    else:
        _charpoly(report, graph, max_n)
        a = char_coeffs_combinatorial(graph, cap=max_n)
        det = float(np.prod(s.eigenvalues)) if graph.n else 1.0
        sign = (-1) ** graph.n
        report.check("det A == (-1)^n a_n", abs(sign * a[graph.n] - det) <= 1e-9 * max(1.0, abs(det)))
        if graph.n <= min(PERM_POLY_CAP, max_n):
            _permpoly(report, graph, max_n)
        else:
            report.skipped["permanental polynomial"] = f"n={graph.n} exceeds cap {min(PERM_POLY_CAP, max_n)}"
        if graph.n <= RYSER_CAP:
            b = perm_coeffs_combinatorial(graph, cap=max_n)
            per = permanent(adjacency_matrix(graph))
            report.check("per A == (-1)^n b_n", abs(sign * b[graph.n] - per.real) <= 1e-9 * max(1.0, abs(per)))
        sym = symmetry_analysis(graph, tol, max_n, spec=s)
        report.results["symmetry"] = {
            "symmetric": sym.symmetric,
            "bipartite": sym.bipartite,
            "odd_cycle_sums": {str(k): v for k, v in sym.odd_cycle_sums.items()},
            "hypothesis_holds": sym.hypothesis_holds,
        }
        report.check("bipartite => symmetric spectrum", sym.bipartite_implies_symmetric)
        report.check("symmetric spectrum and nonzero odd cycle sums => bipartite", sym.sufficiency_holds)

        connected = graph.n > 0 and is_connected(graph)
        if connected and graph.m == graph.n - 1:
            under = graph.underlying()
            _, ok_p = _poly_close(char_coeffs_combinatorial(graph), char_coeffs_combinatorial(under), 1e-10)
            _, ok_q = _poly_close(perm_coeffs_combinatorial(graph), perm_coeffs_combinatorial(under), 1e-10)
            report.check("tree: P_Phi == P_G", ok_p)
            report.check("tree: Q_Phi == Q_G", ok_q)
        if connected and graph.m == graph.n and graph.n >= 3:
            _, ok_p = _poly_close(unicyclic_char_poly(graph), a, 1e-10)
            _, ok_q = _poly_close(unicyclic_perm_poly(graph), perm_coeffs_combinatorial(graph), 1e-10)
            report.check("unicyclic characteristic formula", ok_p)
            report.check("unicyclic permanental formula", ok_q)

    if complete_bipartite_parts(graph) is not None:
        kpq = complete_bipartite_check(graph, tol)
        report.results["complete_bipartite"] = {
            "p": kpq.p,
            "q": kpq.q,
            "bound": kpq.bound,
            "lambda_1": kpq.lambda_1,
            "equality": kpq.equality,
            "balanced": kpq.balanced,
        }
        report.check("K_pq: lambda_1 <= sqrt(pq)", kpq.within_bound)
        report.check("K_pq: equality iff balanced", kpq.equality == kpq.balanced)


def run_command(args: argparse.Namespace) -> Report:
    """Execute one parsed command and return its report."""
    report = Report(args.command, args.tol)
    if args.command == "generate":
        rng = np.random.default_rng(args.seed)
        value = args.value / 180.0 if args.degrees else args.value
        graph = generate(args.family, rng, n=args.n, p=args.p, q=args.q, mode=args.gains, value=value)
        text = io.dumps(graph, "plain" if args.output_format == "plain" else "json")
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        report.results["generated"] = {
            "family": args.family,
            "gains": args.gains,
            "seed": args.seed,
            "output": args.output,
            "n": graph.n,
            "m": graph.m,
            "digest": io.digest(graph),
        }
        if not args.output:
            report.results["graph"] = io.GraphDocument.from_graph(graph).to_dict()
        return report

    graphs = []
    for path in args.graphs:
        g = io.load_graph(path, args.input_format, args.degrees)
        report.add_input(path, g)
        graphs.append(g)
    expected = 2 if args.command == "compare" else 1
    if len(graphs) != expected:
        raise GraphFileError(f"'{args.command}' takes {expected} graph file(s), got {len(graphs)}")
    graph = graphs[0]

    if args.command == "spectrum":
        report.results["spectrum"] = _spectrum_results(graph)
    elif args.command == "charpoly":
        _charpoly(report, graph, args.max_n)
    elif args.command == "permpoly":
        _permpoly(report, graph, args.max_n)
    elif args.command == "balance":
        _balance(report, graph)
    elif args.command == "bounds":
        _bounds(report, graph, args.tol)
    elif args.command == "compare":
        g1, g2 = graphs
        if g1.n != g2.n:
            raise GainGraphError("graphs have different vertex counts")
        s1, s2 = spectrum(g1), spectrum(g2)
        same_graph = g1.edge_set() == g2.edge_set()
        witness = switching_equivalent(g1, g2) if same_graph else None
        report.results["compare"] = {
            "spectra_equal": spectra_equal(s1, s2, args.tol),
            "same_underlying_graph": same_graph,
            "switching_equivalent": witness is not None,
            "witness": _angles(witness),
        }
        if witness is not None:
            report.check("switching equivalent => cospectral", report.results["compare"]["spectra_equal"])
    elif args.command == "check":
        _check(report, graph, args.tol, args.max_n)
    return report


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, float)) for x in v):
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_fmt(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_fmt(v)}")
    else:
        lines.append(pad + _fmt(value))
    return lines


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def render(report: Report, fmt: str) -> str:
    data = report.to_dict()
    if fmt == "json":
        return json.dumps(data, indent=2, allow_nan=False)
    lines = [f"command: {data['command']}"]
    for inp in data["inputs"]:
        lines.append(f"input: {inp['path']} (n={inp['n']}, m={inp['m']}, sha256={inp['digest'][:16]})")
    lines.append(f"tolerance: {data['tolerance']:g}")
    lines += _render_text(data["results"])
    for name, ok in data["assertions"].items():
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
    for name, why in data.get("skipped", {}).items():
        lines.append(f"[SKIP] {name}: {why}")
    lines.append("ok" if data["ok"] else "FAILED")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="spectral tolerance, scaled by max(1, rho)")
    common.add_argument("--max-n", type=int, default=14, help="cap on n for subgraph enumeration")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    common.add_argument("--degrees", action="store_true", help="gains are given in degrees, not units of pi")
    common.add_argument("--input-format", choices=io.FORMATS, default="auto")

    parser = argparse.ArgumentParser(prog="gaingraph", description="Spectral analysis of complex unit gain graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "eigenvalues of A(Phi)",
        "charpoly": "characteristic polynomial, numeric and combinatorial",
        "permpoly": "permanental polynomial, numeric and combinatorial",
        "balance": "balance, potential function and spectral radius comparison",
        "bounds": "eigenvalue bounds",
        "check": "run every applicable theorem check",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("graphs", nargs=1, metavar="GRAPH")
    p = sub.add_parser("compare", parents=[common], help="cospectrality and switching equivalence")
    p.add_argument("graphs", nargs=2, metavar="GRAPH")
    p = sub.add_parser("generate", parents=[common], help="write a random instance")
    p.add_argument("--family", choices=FAMILIES, default="gnp")
    p.add_argument("--n", type=int, default=6, help="vertices (gnp, tree, cycle, complete), p of K_pq, triangles")
    p.add_argument("--q", type=int, default=None, help="second part size for complete-bipartite")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for gnp")
    p.add_argument("--gains", choices=GAIN_MODES, default="uniform")
    p.add_argument("--value", type=float, default=0.0, help="angle for --gains constant")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--output-format", choices=("json", "plain"), default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run_command(args)
    except CapExceededError as exc:
        print(f"error: {exc} (cap {exc.cap})", file=sys.stderr)
        return EXIT_CAP
    except (GraphFileError, GainGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(report, args.format))
    return EXIT_OK if report.ok else EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
