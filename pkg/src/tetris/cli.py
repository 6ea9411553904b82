"""Command-line driver.

    tetris compile --input k.txt --topology heavyhex --qasm-out out.qasm
    tetris gen-ucc --n 10 --seed 1 --out ucc10.txt
    tetris gen-qaoa --kind regular --n 16 --out reg16.txt
    tetris report --input ucc10.txt --input reg16.txt --topology heavyhex --out-dir figs
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .bench import gen_qaoa, gen_ucc
from .compiler import MODES, CompileOptions, CompileResult, compile_kernel
from .metrics import MetricsReport
from .pauli import format_kernel, parse_kernel
from .topology import topology_from_name


@dataclass(frozen=True)
class RunSpec:
    input: Path
    topology: str = "heavyhex"
    options: CompileOptions = field(default_factory=CompileOptions)
    qasm_out: Path | None = None
    report_out: Path | None = None
    csv_out: Path | None = None


def parse_layout(text: str) -> dict[int, int]:
    """One ``logical physical`` pair per line; ``#`` comments allowed."""
    layout = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            q, p = (int(x) for x in line.split())
        except ValueError:
            raise ValueError(f"layout line {lineno}: expected 'logical physical'") from None
        if q in layout:
            raise ValueError(f"layout line {lineno}: logical qubit {q} placed twice")
        layout[q] = p
    return layout


def compile_spec(spec: RunSpec) -> CompileResult:
    kernel = parse_kernel(Path(spec.input).read_text())
    graph = None if spec.options.mode == "max_cancel" else topology_from_name(spec.topology)
    return compile_kernel(kernel, graph, spec.options)


def _csv_row(spec: RunSpec, res: CompileResult) -> str:
    m = res.metrics
    head = "input,mode,topology,w,k,bridge,seed,gcr,logical_cnots,swap_induced_cnots,cnot_count,depth,duration,fidelity_proxy"
    gcr = "" if m.gcr is None else f"{m.gcr:.6f}"
    o = spec.options
    row = (f"{Path(spec.input).name},{o.mode},{res.graph_name},{o.swap_weight:g},{o.lookahead_k},"
           f"{'on' if o.bridging else 'off'},{o.seed},{gcr},{m.logical_cnots},{m.swap_induced_cnots},"
           f"{m.cnot_count},{m.depth},{m.duration:g},{m.fidelity_proxy:.6g}")
    return head + "\n" + row + "\n"


def run_compile(spec: RunSpec) -> tuple[str, MetricsReport]:
    """Compile one kernel file and write whichever outputs ``spec`` requests."""
    res = compile_spec(spec)
    qasm = res.qasm()
    if spec.qasm_out:
        Path(spec.qasm_out).write_text(qasm)
    if spec.report_out:
        out = Path(spec.report_out)
        out.write_text(res.metrics.to_json() if out.suffix == ".json" else res.metrics.to_text())
    if spec.csv_out:
        Path(spec.csv_out).write_text(_csv_row(spec, res))
    return qasm, res.metrics


def _options(args: argparse.Namespace, mode: str | None = None) -> CompileOptions:
    layout = parse_layout(Path(args.layout).read_text()) if getattr(args, "layout", None) else None
    return CompileOptions(
        mode=mode or args.mode,
        swap_weight=args.w,
        lookahead_k=args.k,
        bridging=args.bridge == "on",
        leaf_trees=args.leaf_trees,
        reclaim=getattr(args, "reclaim", False),
        seed=args.seed,
        layout=layout,
    )


def _add_compile_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", default="heavyhex",
                   help="linear:N, grid:RxC, heavyhex[:RxC], sycamore:RxC or a coupling-graph file")
    p.add_argument("--w", type=float, default=3.0, help="SWAP weight in the leaf score (default 3)")
    p.add_argument("--k", type=int, default=10, help="scheduler lookahead (default 10)")
    p.add_argument("--bridge", choices=("on", "off"), default="off")
    p.add_argument("--leaf-trees", choices=("adaptive", "single"), default="adaptive")
    p.add_argument("--seed", type=int, default=0, help="seed for parameter bindings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tetris", description="Pauli-string block compiler")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a kernel file")
    c.add_argument("--input", required=True)
    _add_compile_flags(c)
    c.add_argument("--mode", choices=MODES, default="tetris")
    c.add_argument("--layout", help="initial layout file (logical physical per line)")
    c.add_argument("--reclaim", action="store_true", help="reset qubits after their last block")
    c.add_argument("--qasm-out")
    c.add_argument("--report-out", help="metrics record (.json for JSON, else key=value)")
    c.add_argument("--csv-out")

    u = sub.add_parser("gen-ucc", help="synthetic UCC kernel")
    u.add_argument("--n", type=int, required=True)
    u.add_argument("--blocks", type=int, help="number of blocks (default n^2)")
    u.add_argument("--singles", action="store_true", help="also sample single excitations")
    u.add_argument("--seed", type=int, default=0)
    u.add_argument("--out")

    q = sub.add_parser("gen-qaoa", help="QAOA cost-layer kernel")
    q.add_argument("--kind", choices=("random", "regular"), required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")

    r = sub.add_parser("report", help="compare modes; write CSV tables and PNG charts")
    r.add_argument("--input", action="append", required=True)
    _add_compile_flags(r)
    r.add_argument("--out-dir", required=True)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compile":
            spec = RunSpec(Path(args.input), args.topology, _options(args),
                           args.qasm_out, args.report_out, args.csv_out)
            qasm, report = run_compile(spec)
            if not args.qasm_out:
                sys.stdout.write(qasm)
            if not args.report_out:
                sys.stderr.write(report.to_text())
        elif args.command == "gen-ucc":
            _emit(format_kernel(gen_ucc(args.n, args.blocks, args.seed, args.singles)), args.out)
        elif args.command == "gen-qaoa":
            _emit(format_kernel(gen_qaoa(args.kind, args.n, args.seed)), args.out)
        elif args.command == "report":
            from .report import collect, plot, write_csvs

            benches = [(Path(p).stem, parse_kernel(Path(p).read_text())) for p in args.input]
            rows = collect(benches, topology_from_name(args.topology), _options(args, "tetris"))
            for path in write_csvs(rows, args.out_dir) + plot(rows, args.out_dir):
                print(path)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"tetris: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
