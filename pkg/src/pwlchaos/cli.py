"""Command-line entry point (``pwlchaos <subcommand>``).

Exit codes: 0 success, 2 parse error, 3 resource cap, 4 invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, covering, dynamics
from .formats import FormatError, dump_network, dump_pwl, parse_interval, parse_network
from .maps import golden_ratio_above, parse_map_spec
from .pwl import DEFAULT_PIECE_CAP, Interval, ResourceLimitExceeded, as_rational, format_rational, iterates, tent
from .relu import compile_tent, extract_pwl, stack

EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_INVARIANT = 4


class Output:
    """Collects report lines; written once at the end so output order is fixed."""

    def __init__(self, approximate: bool = False, fmt: str = "text"):
        self.lines: list[str] = []
        if approximate:
            self.lines.append("# approximate=true" if fmt == "csv" else "approximate: true")

    def add(self, line: str = ""):
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_map(text: str):
    spec = parse_map_spec(text)
    return spec, spec.build()


def _fmt_iv(iv: Interval) -> str:
    return str(iv)


def _regime(pp, cert) -> str:
    if cert is not None:
        return "exponential crossings"
    if pp.key is not None and pp.key.power_of_two:
        return "at most polynomial (no odd-period certificate; power-of-two prime period)"
    return "undetermined (no period found up to cap)"


def cmd_analyze(args) -> int:
    spec, f = _load_map(args.map)
    out = Output(spec.approximate)
    out.add(f"map: {spec.text}")
    out.add(f"domain: {_fmt_iv(f.domain)} pieces={f.pieces}")
    pp, cert = covering.certificate_for(f, args.max_period, args.cap)
    out.add(f"prime_period: {pp.describe()}")
    for n in range(1, args.max_period + 1):
        try:
            cyc = dynamics.find_cycles(f, n, args.cap)
        except ResourceLimitExceeded:
            out.add(f"period {n}: skipped (piece cap)")
            continue
        if not cyc:
            out.add(f"period {n}: none")
            continue
        out.add(f"period {n}: {len(cyc)} cycle(s); first {cyc[0].format()}")
        if any(c.family is not None for c in cyc):
            out.add(f"period {n}: uncountably many periodic points (segment of f^{n} on the diagonal)")
    if cert is not None:
        g = cert.graph
        out.add(f"certificate: f^{cert.m} cycle " + ",".join(format_rational(p) for p in cert.cycle.points))
        out.add("intervals: " + " ".join(f"I{i}={_fmt_iv(iv)}" for i, iv in enumerate(g.intervals)))
        out.add("edges: " + " ".join(f"I{i}->I{j}" for i, j in sorted(g.edges)))
        out.add(
            "chain: "
            + " ".join(f"J{k}=I{i}{_fmt_iv(g.intervals[i])}" for k, i in enumerate(cert.chain.chain))
        )
        out.add(f"r: {cert.r}")
        out.add(f"rho: {covering.rho(cert.r, args.tol):.12g}")
    out.add(f"regime: {_regime(pp, cert)}")
    _emit(args, out.text())
    return 0


def cmd_iterate(args) -> int:
    spec, f = _load_map(args.map)
    out = Output(spec.approximate, args.format)
    r = None
    if args.interval:
        intervals = [parse_interval(args.interval)]
        g = f
    else:
        _, cert = covering.certificate_for(f, args.max_period, args.cap)
        if cert is not None:
            intervals = list(cert.chain.intervals)
            g = cert.base
            r = cert.r
            if cert.m > 1:
                out.add(f"# step=f^{cert.m}")
        else:
            intervals = [f.range]
            g = f
    rate = covering.rho(r, args.tol) if r is not None else None
    cols = ",".join(f"delta_{i}" for i in range(len(intervals)))
    if args.format == "csv":
        out.add(f"t,{cols},lower_bound,pieces")
    status = 0
    t = 0
    try:
        for t, h in iterates(g, args.t_max, args.cap):
            delta = covering.crossing_counts(h, intervals)
            lb = f"{rate ** t:.12g}" if rate is not None else ""
            if args.format == "csv":
                out.add(f"{t}," + ",".join(map(str, delta)) + f",{lb},{h.pieces}")
            else:
                out.add(f"t={t} pieces={h.pieces} delta=({','.join(map(str, delta))}) lower_bound={lb or '-'}")
    except ResourceLimitExceeded as exc:
        sys.stderr.write(f"resource cap: stopped after t={t}: {exc}\n")
        status = EXIT_CAP
    _emit(args, out.text())
    return status


def cmd_cycles(args) -> int:
    spec, f = _load_map(args.map)
    out = Output(spec.approximate)
    cyc = dynamics.find_cycles(f, args.period, args.cap)
    text = dynamics.format_cycle_report(cyc)
    if text:
        out.add(text.rstrip("\n"))
    else:
        out.add(f"no cycles of period {args.period}")
    _emit(args, out.text())
    return 0


def cmd_covering(args) -> int:
    spec, f = _load_map(args.map)
    out = Output(spec.approximate)
    if args.period:
        cert = covering.odd_certificate(f, args.period, args.cap)
        if cert is None:
            cyc = dynamics.find_cycles(f, args.period, args.cap)
            if not cyc:
                out.add(f"no cycle of period {args.period}")
                _emit(args, out.text())
                return 0
            g = covering.build_covering_graph(f, cyc[0])
            out.add("intervals: " + " ".join(f"I{i}={iv}" for i, iv in enumerate(g.intervals)))
            out.add("edges: " + " ".join(f"I{i}->I{j}" for i, j in sorted(g.edges)))
            out.add("adjacency: " + ";".join(",".join(map(str, row)) for row in g.adjacency()))
            out.add("chain: none (period has no odd factor > 1)")
            _emit(args, out.text())
            return 0
    else:
        _, cert = covering.certificate_for(f, args.max_period, args.cap)
        if cert is None:
            out.add("chain: none (no odd-period certificate up to cap)")
            _emit(args, out.text())
            return 0
    g = cert.graph
    out.add(f"cycle: period={cert.key.n} via f^{cert.m}: " + ",".join(format_rational(p) for p in cert.cycle.points))
    out.add("intervals: " + " ".join(f"I{i}={iv}" for i, iv in enumerate(g.intervals)))
    out.add("edges: " + " ".join(f"I{i}->I{j}" for i, j in sorted(g.edges)))
    out.add("chain: " + " ".join(f"J{k}=I{i}" for k, i in enumerate(cert.chain.chain)))
    out.add(f"r: {cert.r}")
    out.add("matrix_a: " + ";".join(",".join(map(str, row)) for row in cert.chain.matrix_a))
    out.add(f"rho: {covering.rho(cert.r, args.tol):.12g}")
    _emit(args, out.text())
    return 0


def cmd_rho(args) -> int:
    out = Output()
    out.add(f"{covering.rho(args.r, args.tol):.12g}")
    _emit(args, out.text())
    return 0


def cmd_compile(args) -> int:
    net = stack(compile_tent(as_rational(args.mu)), args.k)
    pieces = extract_pwl(net).pieces
    stats = f"depth={net.depth} width={net.width} pieces={pieces}\n"
    if args.out:
        Path(args.out).write_text(dump_network(net))
        sys.stdout.write(stats)
    else:
        sys.stdout.write(dump_network(net))
        sys.stderr.write(stats)
    return 0


def cmd_extract(args) -> int:
    net = parse_network(Path(args.network).read_text())
    domain = parse_interval(args.domain) if args.domain else Interval(0, 1)
    _emit(args, dump_pwl(extract_pwl(net, domain)))
    return 0


def cmd_dataset(args) -> int:
    spec, f = _load_map(args.map)
    _, cert = covering.certificate_for(f, args.max_period, args.cap)
    if cert is None:
        raise ValueError("map has no odd-period certificate up to cap; dataset undefined")
    iv = parse_interval(args.interval) if args.interval else cert.chain.intervals[0]
    d = bounds.build_alternating_dataset(f, cert.m, cert.key.odd, args.k, iv.lo, iv.hi, args.cap)
    out = Output(spec.approximate, "csv")
    out.add(f"# n={d.n} threshold={format_rational(d.threshold)}")
    out.add(d.lines().rstrip("\n"))
    _emit(args, out.text())
    return 0


def cmd_tradeoff(args) -> int:
    rows = bounds.tradeoff_table(args.p, args.k, range(1, args.k + 1))
    text = bounds.tradeoff_csv(rows) if args.format == "csv" else bounds.tradeoff_text(rows)
    _emit(args, text)
    return 0


def bias_experiment(epsilon: Fraction) -> list[str]:
    phi_hat = golden_ratio_above()
    if not 0 <= epsilon < phi_hat:
        raise ValueError("epsilon must lie in [0, phi_hat)")
    lines = [f"phi_hat={format_rational(phi_hat)}", f"epsilon={format_rational(epsilon)}"]
    for label, mu in (("tent(phi_hat)", phi_hat), ("tent(phi_hat - epsilon)", phi_hat - epsilon)):
        cyc = dynamics.find_cycles(tent(mu), 3)
        state = f"period 3 present ({len(cyc)} cycle(s))" if cyc else "period 3 absent"
        lines.append(f"{label}: {state}")
    return lines


def cmd_bias(args) -> int:
    out = Output()
    for line in bias_experiment(as_rational(args.epsilon)):
        out.add(line)
    _emit(args, out.text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_PIECE_CAP, help="breakpoint cap for compositions")
    common.add_argument("--tol", type=float, default=1e-15, help="bracket width at which rho bisection stops")
    common.add_argument("--format", choices=("csv", "text"), default="csv")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--max-period", type=int, default=8, help="largest period searched")

    parser = argparse.ArgumentParser(prog="pwlchaos", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="periods, covering chain, growth regime")
    p.add_argument("map")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("iterate", parents=[common], help="crossing counts of f^t")
    p.add_argument("map")
    p.add_argument("t_max", type=int)
    p.add_argument("--interval", help="lo,hi instead of the covering chain")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("cycles", parents=[common], help="cycles of least period n")
    p.add_argument("map")
    p.add_argument("period", type=int)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("covering", parents=[common], help="covering graph and chain")
    p.add_argument("map")
    p.add_argument("--period", type=int)
    p.set_defaults(func=cmd_covering)

    p = sub.add_parser("rho", parents=[common], help="growth rate for chain length r")
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("compile", parents=[common], help="tent map network stacked k times")
    p.add_argument("mu")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("extract", parents=[common], help="exact PWL function of a network file")
    p.add_argument("network")
    p.add_argument("--domain", help="lo,hi (default 0,1)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("dataset", parents=[common], help="alternating-point dataset for f^(k m)")
    p.add_argument("map")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--interval", help="lo,hi (default: chain interval J0)")
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("tradeoff", parents=[common], help="width threshold per depth")
    p.add_argument("p", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("bias-experiment", parents=[common], help="period 3 of tent maps near the golden ratio")
    p.add_argument("epsilon")
    p.set_defaults(func=cmd_bias)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except AssertionError as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except (FormatError, ValueError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
