"""Command-line front end.

Exit status 0 means the analysis ran (whatever the verdict); 2 means bad
usage or input.  ``repro`` exits 1 when a fixture check fails.

``--format records`` prints one ``key=value`` record per line with a fixed
key order; the keys of each record type are listed in README.md.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from .analysis import Classification, classify
from .core import DomainError, Kind, NoRightInverseError, ShiftOperator, SparseVector
from .criteria import (
    Certificate,
    Verdict,
    hypercyclicity_probe,
    second_criterion_certificate,
    supercyclicity_probe,
)
from .fileformat import FileFormatError, format_weight_text, parse_vector_file, parse_weight_file
from .fixtures import FIXTURES, RunConfig, run_fixture
from .orbit import (
    ApproxWitness,
    complex_grid,
    density_probe,
    orbit_sup_monitor,
    transitivity_witness,
    witness_search,
)
from .spectral import annulus_estimate, unit_disk_obstruction


class UsageError(Exception):
    pass


def _num(x) -> str:
    return format(float(x), ".12g")


def _record(record_type: str, /, **fields) -> str:
    parts = [f"record={record_type}"]
    for key, value in fields.items():
        parts.append(f"{key}={value}")
    return " ".join(parts)


def _witness_fields(v: Verdict) -> dict:
    ws = v.witness_sequence
    if not ws:
        return {"witness_first": "-", "witness_last": "-", "witness_count": 0}
    return {"witness_first": ws[0], "witness_last": ws[-1], "witness_count": len(ws)}


def _describe_witness(v: Verdict) -> str:
    ws = v.witness_sequence
    return f", witness n_r = {ws[0]}..{ws[-1]} ({len(ws)} terms)" if ws else ""


def _config(args) -> RunConfig:
    return RunConfig(args.horizon, args.qmax, args.tau_big, args.tol, args.format)


def _load_operator(args) -> ShiftOperator:
    if not args.weights:
        raise UsageError("--weights is required")
    return parse_weight_file(args.weights)


def _load_vector(path: Optional[str], flag: str) -> SparseVector:
    if not path:
        raise UsageError(f"{flag} is required")
    return parse_vector_file(path)


def _targets(items: Optional[List[str]]) -> List[SparseVector]:
    out: List[SparseVector] = []
    for item in items or []:
        if item.startswith("grid:"):
            try:
                _, lo, hi, steps = item.split(":")
                out.extend(complex_grid(float(lo), float(hi), int(steps)))
            except ValueError:
                raise UsageError(f"bad grid spec {item!r}; expected grid:<min>:<max>:<steps>") from None
        else:
            out.extend(parse_vector_file(p) for p in item.split(",") if p)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def run_classify(args) -> List[str]:
    rc = _config(args)
    op = _load_operator(args)
    result: Classification = classify(op, rc.criterion_config())
    witness = result.witness_sequence
    if rc.output_format == "records":
        lines = [
            _record(
                "classification",
                kind=op.kind.value,
                outcome=result.outcome.value,
                reason=result.reason,
                witness_first=witness[0] if witness else "-",
                witness_last=witness[-1] if witness else "-",
                witness_count=len(witness),
            )
        ]
        for name, v in result.verdicts.items():
            lines.append(_record("verdict", analysis=name, outcome=v.outcome.value, reason=v.reason, **_witness_fields(v)))
        if result.annulus is not None:
            lines.append(
                _record(
                    "spectrum",
                    outer_radius=_num(result.annulus.outer_radius),
                    inner_radius=_num(result.annulus.inner_radius),
                    obstruction=result.obstruction.value,
                )
            )
        if result.closure is not None:
            lines.append(_record("closure", closure=result.closure.value))
        return lines

    suffix = f", witness n_r = {witness[0]}..{witness[-1]} ({len(witness)} terms)" if witness else ""
    lines = [f"{result.outcome.value} ({result.reason}){suffix}"]
    for name, v in result.verdicts.items():
        lines.append(f"  {name}: {v.outcome.value} ({v.reason}){_describe_witness(v)}")
    if result.annulus is not None:
        a = result.annulus
        lines.append(f"  spectrum: annulus [{_num(a.inner_radius)}, {_num(a.outer_radius)}]; {result.obstruction.value}")
    if result.closure is not None:
        lines.append(f"  disk-orbit closure of 1: {result.closure.value}")
    for i, part in enumerate(result.parts):
        lines.append(f"  component {i}: {part.outcome.value} ({part.reason})")
    return lines


def run_witness(args) -> List[str]:
    rc = _config(args)
    op = _load_operator(args)
    x = _load_vector(args.x, "--x")
    fmt = rc.output_format
    lines = []
    if args.targets:
        targets = _targets(args.targets)
        if not targets:
            raise UsageError("--targets produced no target vectors")
        report = density_probe(op, x, targets, rc.horizon, rc.tolerance)
        if fmt == "records":
            lines.append(
                _record(
                    "density",
                    targets_total=report.targets_total,
                    targets_hit=report.targets_hit,
                    worst_residual=_num(report.worst_residual),
                    tol=_num(report.tolerance),
                )
            )
        else:
            lines.append(
                f"density: {report.targets_hit}/{report.targets_total} targets within {_num(report.tolerance)}, "
                f"worst residual {_num(report.worst_residual)}"
            )
    if args.y:
        y = parse_vector_file(args.y)
        found = witness_search(op, x, y, rc.horizon, rc.tolerance)
        hit = isinstance(found, ApproxWitness)
        w = found if hit else found.best
        a = w.alpha.value
        if fmt == "records":
            lines.append(
                _record(
                    "witness",
                    found=str(hit).lower(),
                    n=w.n,
                    alpha_re=_num(a.real),
                    alpha_im=_num(a.imag),
                    residual=_num(w.residual),
                )
            )
        else:
            head = "witness" if hit else "no witness within tolerance; best"
            alpha = _num(a.real) if a.imag == 0 else f"{_num(a.real)}{a.imag:+.12g}i"
            lines.append(f"{head}: n={w.n}, alpha={alpha}, residual {_num(w.residual)}")
        if args.transitive:
            t = transitivity_witness(op, x, y, rc.horizon)
            if fmt == "records":
                lines.append(
                    _record(
                        "transitivity",
                        n=t.n,
                        alpha=_num(abs(t.alpha)),
                        input_residual=_num(t.input_residual),
                        output_residual=_num(t.output_residual),
                    )
                )
            else:
                lines.append(
                    f"transitivity: n={t.n}, alpha={_num(abs(t.alpha))}, "
                    f"input residual {_num(t.input_residual)}, output residual {_num(t.output_residual)}"
                )
    if not lines:
        raise UsageError("witness needs --y and/or --targets")
    return lines


def run_probe(args) -> List[str]:
    rc = _config(args)
    op = _load_operator(args)
    lines = []
    if op.is_bilateral:
        direction = "forward" if op.is_forward else "backward"
        cfg = rc.criterion_config()
        for name, fn in (("supercyclic", supercyclicity_probe), ("hypercyclic", hypercyclicity_probe)):
            v = fn(op.weights, direction, cfg)
            if rc.output_format == "records":
                lines.append(_record("probe", probe=name, outcome=v.outcome.value, reason=v.reason, **_witness_fields(v)))
            else:
                lines.append(f"{name} probe: {v.outcome.value} ({v.reason}){_describe_witness(v)}")
    if args.x:
        x = parse_vector_file(args.x)
        sup, arg = orbit_sup_monitor(op, x, rc.horizon)
        if rc.output_format == "records":
            lines.append(_record("orbit_sup", sup=_num(sup), argmax_n=arg, horizon=rc.horizon))
        else:
            lines.append(f"orbit sup: {_num(sup)} at n={arg} (horizon {rc.horizon})")
    if not lines:
        raise UsageError("probe needs a bilateral shift or --x")
    return lines


def run_spectrum(args) -> List[str]:
    rc = _config(args)
    op = _load_operator(args)
    if op.kind is Kind.SCALAR:
        r = abs(op.lam)
        inner = outer = r
        status = "Obstructed" if r < 1 - 1e-6 else "NotObstructed"
    elif op.is_bilateral:
        horizon = max(rc.horizon, 2)
        a = annulus_estimate(op.weights, horizon)
        inner, outer = a.inner_radius, a.outer_radius
        status = unit_disk_obstruction(op.weights, "forward" if op.is_forward else "backward", horizon).value
    else:
        raise UsageError("spectrum needs a bilateral shift or a scalar")
    if rc.output_format == "records":
        return [_record("spectrum", outer_radius=_num(outer), inner_radius=_num(inner), obstruction=status)]
    return [f"annulus [{_num(inner)}, {_num(outer)}]; {status}"]


def run_certificate(args) -> List[str]:
    rc = _config(args)
    op = _load_operator(args)
    cert: Certificate = second_criterion_certificate(op, args.basis_radius, rc.criterion_config())
    status = "PASS" if cert.passed else "FAIL"
    if rc.output_format == "records":
        return [
            _record(
                "certificate",
                status=status,
                horizon=len(cert.n_k),
                basis=",".join(str(i) for i in cert.y_set),
                norm_tail=_num(cert.norm_tail),
                product_tail=_num(cert.product_tail),
                reconstruction_error=_num(cert.reconstruction_error),
                tol=_num(cert.tolerance),
            )
        ]
    return [
        f"second criterion: {status}",
        f"  basis e_j, j in {list(cert.y_set)}, n_k = 1..{len(cert.n_k)}",
        f"  tail max ||x_k||: {_num(cert.norm_tail)}",
        f"  tail max ||T^k x|| ||x_k||: {_num(cert.product_tail)}",
        f"  reconstruction error: {_num(cert.reconstruction_error)}",
    ]


def run_repro(args) -> tuple:
    rc = _config(args)
    ids = list(FIXTURES) if args.fixture == "all" else [args.fixture]
    for fid in ids:
        if fid not in FIXTURES:
            raise UsageError(f"unknown fixture {fid!r}; known: {', '.join(FIXTURES)}")
    lines, ok = [], True
    for fid in ids:
        for r in run_fixture(fid, rc):
            ok &= r.passed
            status = "PASS" if r.passed else "FAIL"
            if rc.output_format == "records":
                lines.append(_record("check", fixture=r.fixture, check=r.check, status=status, expected=r.expected, actual=r.actual.replace(" ", "_")))
            else:
                lines.append(f"{status}  {r.fixture:<20} {r.check:<22} expected {r.expected}, got {r.actual}")
    total = sum(len(FIXTURES[f].checks) for f in ids)
    if rc.output_format == "records":
        lines.append(_record("summary", fixtures=len(ids), checks=total, status="PASS" if ok else "FAIL"))
    else:
        lines.append(f"{len(ids)} fixture(s), {total} checks: {'all PASS' if ok else 'FAILURES'}")
    return lines, (0 if ok else 1)


def run_format(args) -> List[str]:
    return format_weight_text(_load_operator(args)).splitlines()


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", help="weight file describing the operator")
    common.add_argument("--x", help="vector file (orbit base point)")
    common.add_argument("--y", help="vector file (target)")
    common.add_argument("--horizon", type=int, default=200)
    common.add_argument("--qmax", type=int, default=8)
    common.add_argument("--tau-big", type=float, default=30.0, dest="tau_big")
    common.add_argument("--tol", type=float, default=1e-6)
    common.add_argument(
        "--targets", action="append", help="comma-separated vector files or grid:<min>:<max>:<steps>; repeatable"
    )
    common.add_argument("--format", choices=("text", "records"), default="text")

    parser = argparse.ArgumentParser(prog="diskcyclic", description="Diskcyclicity analysis of weighted shifts.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="verdict from the weight-product criteria")
    w = sub.add_parser("witness", parents=[common], help="disk-orbit approximation witnesses")
    w.add_argument("--transitive", action="store_true", help="also build a transitivity witness from --x to --y")
    sub.add_parser("probe", parents=[common], help="supercyclicity/hypercyclicity probes, orbit growth")
    sub.add_parser("spectrum", parents=[common], help="spectral annulus and unit-disk obstruction")
    c = sub.add_parser("certificate", parents=[common], help="constructive second-criterion certificate")
    c.add_argument("--basis-radius", type=int, default=2, dest="basis_radius")
    r = sub.add_parser("repro", parents=[common], help="re-run the worked-example fixtures")
    r.add_argument("fixture", nargs="?", default="all", help="fixture id or 'all'")
    sub.add_parser("format", parents=[common], help="print the canonical form of a weight file")
    return parser


_COMMANDS = {
    "classify": run_classify,
    "witness": run_witness,
    "probe": run_probe,
    "spectrum": run_spectrum,
    "certificate": run_certificate,
    "format": run_format,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "repro":
            lines, status = run_repro(args)
        else:
            lines, status = _COMMANDS[args.command](args), 0
    except (UsageError, FileFormatError, DomainError, NoRightInverseError, OSError, ValueError) as exc:
        print(f"diskcyclic {args.command}: error: {exc}", file=sys.stderr)
        return 2
    print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
