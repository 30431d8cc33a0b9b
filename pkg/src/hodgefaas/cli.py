"""Command-line interface.

Wires the JSON file formats (complex descriptions, flows, workload and
cold-start specs) to the library operations and emits machine-readable
results. JSON is the canonical output; ``--format csv`` on ``decompose``
emits the frozen per-edge table ``edge,f,f_grad,f_curl,h`` that plot
scripts consume. Output ordering always follows declaration order, and
identical invocations produce byte-identical output.

Exit codes: 0 success, 1 validation failure, 2 I/O or parse error,
3 numerical inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cells import load_complex
from .diagnostics import report as run_report
from .errors import ComplexValidationError, FormatError, NumericalInconsistencyError
from .flows import coldstart_flow, load_coldstart_spec, load_workload_spec, poisson_flow
from .hodge import decompose, dump_flow, flow_to_doc, flows_equivalent, load_flow
from .linalg import RankTolerance
from .topology import betti, spectrum

__all__ = ["CliConfig", "main"]

TOL_ENV_VAR = "HODGE_FAAS_TOL"
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True)
class CliConfig:
    """Resolved common options for one invocation."""

    tol: RankTolerance
    output_format: str = "json"
    support_fraction: float = 0.05
    seed: int | None = None
    windows: int | None = None


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return 1e-10
    try:
        value = float(raw)
    except ValueError as exc:
        raise FormatError(f"{TOL_ENV_VAR} must be a number, got {raw!r}") from exc
    return value


def _config(args: argparse.Namespace) -> CliConfig:
    tol_value = args.tol if args.tol is not None else _default_tol()
    if tol_value <= 0:
        raise FormatError(f"--tol must be > 0, got {tol_value}")
    return CliConfig(
        tol=RankTolerance(absolute_floor=tol_value),
        output_format=getattr(args, "format", "json"),
        support_fraction=getattr(args, "support_fraction", 0.05),
        seed=getattr(args, "seed", None),
        windows=getattr(args, "windows", None),
    )


def _emit_json(doc: object) -> None:
    print(json.dumps(doc, indent=2))


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        load_complex(args.complex)
    except ComplexValidationError as exc:
        for finding in exc.findings:
            print(finding)
        return EXIT_VALIDATION
    print("valid")
    return EXIT_OK


def _cmd_betti(args: argparse.Namespace) -> int:
    cfg = _config(args)
    b = betti(load_complex(args.complex), cfg.tol)
    if cfg.output_format == "text":
        print(f"beta0={b.beta0} beta1={b.beta1} beta2={b.beta2}")
    else:
        _emit_json({"beta0": b.beta0, "beta1": b.beta1, "beta2": b.beta2})
    return EXIT_OK


def _cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _config(args)
    eigs = spectrum(load_complex(args.complex), args.laplacian)
    if cfg.output_format == "text":
        print(f"laplacian: {args.laplacian}")
        for value in eigs:
            print(float(value))
    else:
        _emit_json({"laplacian": args.laplacian, "eigenvalues": [float(v) for v in eigs]})
    return EXIT_OK


def _cmd_decompose(args: argparse.Namespace) -> int:
    cfg = _config(args)
    c = load_complex(args.complex)
    f = load_flow(c, args.flow)
    d = decompose(c, f, cfg.tol)
    rows = [
        (
            edge.id,
            float(f.values[i]),
            float(d.f_grad.values[i]),
            float(d.f_curl.values[i]),
            float(d.harmonic.values[i]),
        )
        for i, edge in enumerate(c.edges)
    ]
    if cfg.output_format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["edge", "f", "f_grad", "f_curl", "h"])
        writer.writerows(rows)
    elif cfg.output_format == "text":
        for edge_id, fv, gv, cv, hv in rows:
            print(f"{edge_id}: f={fv:.6g} grad={gv:.6g} curl={cv:.6g} h={hv:.6g}")
        print(
            f"energy: gradient={d.energy_grad:.6g} curl={d.energy_curl:.6g} "
            f"harmonic={d.energy_harm:.6g} total={d.energy_total:.6g}"
        )
    else:
        _emit_json(
            {
                "metric": f.metric_label,
                "edges": [
                    {"id": r[0], "f": r[1], "f_grad": r[2], "f_curl": r[3], "h": r[4]}
                    for r in rows
                ],
                "energy": {
                    "gradient": d.energy_grad,
                    "curl": d.energy_curl,
                    "harmonic": d.energy_harm,
                    "total": d.energy_total,
                },
                "reconstruction_residual": d.reconstruction_residual,
            }
        )
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    cfg = _config(args)
    c = load_complex(args.complex)
    f = load_flow(c, args.flow)
    rep = run_report(c, f, cfg.tol, support_fraction=cfg.support_fraction)
    if cfg.output_format == "text":
        print(rep.to_text())
    else:
        _emit_json(rep.to_dict())
    return EXIT_OK


def _cmd_equiv(args: argparse.Namespace) -> int:
    cfg = _config(args)
    c = load_complex(args.complex)
    f1 = load_flow(c, args.flow1)
    f2 = load_flow(c, args.flow2)
    result = flows_equivalent(c, f1, f2, eps=args.eps, tol=cfg.tol)
    if cfg.output_format == "text":
        print(f"equivalent: {'true' if result.equivalent else 'false'}")
        print(f"harmonic_residual: {result.harmonic_residual}")
    else:
        _emit_json(
            {"equivalent": result.equivalent, "harmonic_residual": result.harmonic_residual}
        )
    return EXIT_OK


def _cmd_gen_flow(args: argparse.Namespace) -> int:
    cfg = _config(args)
    c = load_complex(args.complex)
    spec = load_workload_spec(args.workload)
    if cfg.seed is not None or cfg.windows is not None:
        spec = dataclasses.replace(
            spec,
            seed=cfg.seed if cfg.seed is not None else spec.seed,
            windows=cfg.windows if cfg.windows is not None else spec.windows,
        )
    flows = poisson_flow(c, spec)
    if args.output_dir is not None:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(flows):
            path = out / f"window_{i:03d}.json"
            dump_flow(c, f, path)
            print(path)
    else:
        _emit_json([flow_to_doc(c, f) for f in flows])
    return EXIT_OK


def _cmd_coldstart(args: argparse.Namespace) -> int:
    c = load_complex(args.complex)
    f_req = load_flow(c, args.flow)
    spec = load_coldstart_spec(args.coldspec)
    f_lat = coldstart_flow(c, f_req, spec)
    _emit_json(flow_to_doc(c, f_lat))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgefaas",
        description=(
            "Topological diagnostics for serverless call graphs: build cellular "
            "complexes, decompose edge flows, and report Betti numbers, harmonic "
            "stress, and harmonic-edge localization."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats: tuple[str, ...] = ("json", "text")) -> None:
        p.add_argument(
            "--tol",
            type=float,
            default=None,
            help=f"rank tolerance absolute floor (default: ${TOL_ENV_VAR} or 1e-10)",
        )
        p.add_argument("--format", choices=formats, default="json")

    p = sub.add_parser("validate", help="check a complex description")
    p.add_argument("complex")
    p.set_defaults(func=_cmd_validate, tol=None)

    p = sub.add_parser("betti", help="Betti numbers of a complex")
    p.add_argument("complex")
    common(p)
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("spectrum", help="Laplacian eigenvalues")
    p.add_argument("complex")
    p.add_argument("--laplacian", type=int, choices=(0, 1, 2), required=True)
    common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("decompose", help="Hodge-decompose a flow")
    p.add_argument("complex")
    p.add_argument("flow")
    common(p, formats=("json", "text", "csv"))
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("report", help="full diagnostic report for a flow")
    p.add_argument("complex")
    p.add_argument("flow")
    p.add_argument("--support-fraction", dest="support_fraction", type=float, default=0.05)
    common(p)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("equiv", help="test two flows for harmonic equivalence")
    p.add_argument("complex")
    p.add_argument("flow1")
    p.add_argument("flow2")
    p.add_argument("--eps", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("gen-flow", help="generate Poisson workload flows")
    p.add_argument("complex")
    p.add_argument("workload")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--windows", type=int, default=None)
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=_cmd_gen_flow, tol=None)

    p = sub.add_parser("coldstart", help="combine request flow with cold-start latencies")
    p.add_argument("complex")
    p.add_argument("flow")
    p.add_argument("coldspec")
    p.set_defaults(func=_cmd_coldstart, tol=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ComplexValidationError as exc:
        for finding in exc.findings:
            print(finding, file=sys.stderr)
        return EXIT_VALIDATION
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalInconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
