"""Command-line front end.

    koebe coeffs --family pnew --n 4
    koebe certify --n 6
    koebe radius-table --to 10 --format csv
    koebe boundary --family suffridge --n 3 --format svg --output s3.svg
    koebe scan --to 51 --output scan.jsonl --resume --workers 4

Exit codes: 0 success, 2 usage error, 3 certification undecided, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .arith import DEFAULT_PRECISION, DEFAULT_PRECISION_CAP, CertifiedReal
from .boundary import DEFAULT_GRID, min_distance, sample_curve
from .families import FAMILIES, FamilySpec
from .pullback import UnivalenceCertificate, Verdict, certify_univalence
from .radius import RadiusReport, radius_table

EXIT_OK, EXIT_USAGE, EXIT_UNDECIDED, EXIT_IO = 0, 2, 3, 4
DIGITS = 17
RADIUS_COLUMNS = ("N", "upper_pn", "suffridge_at_minus1", "suffridge_boundary_min",
                  "psi_n", "lower_rs", "pn_boundary_min", "certified")
COMMANDS = ("coeffs", "certify", "radius-table", "boundary", "scan")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_from: int
    n_to: int
    family: FamilySpec | None = None
    precision: int = DEFAULT_PRECISION
    precision_cap: int = DEFAULT_PRECISION_CAP
    grid: int = DEFAULT_GRID
    count: int = 1024
    output: Path | None = None
    format: str | None = None
    workers: int = 1
    resume: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.precision < 64:
            raise UsageError("--precision must be >= 64 bits")
        if self.precision_cap < self.precision:
            raise UsageError("--precision-cap must be >= --precision")
        if self.n_from < 1 or self.n_to < self.n_from:
            raise UsageError(f"need 1 <= N_from <= N_to, got [{self.n_from}, {self.n_to}]")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.resume and self.output is None:
            raise UsageError("--resume needs --output")


def dec(x: CertifiedReal) -> str:
    return x.to_str(DIGITS)


# -- coeffs -------------------------------------------------------------------

def _exact_form(spec: FamilySpec, k: int) -> str | None:
    N = spec.degree
    if spec.family == "fejer":
        return str(Fraction(N - k + 1, N))
    if spec.family == "alexander":
        return str(Fraction(1, k))
    return None


def cmd_coeffs(cfg: RunConfig) -> tuple[str, int]:
    spec = cfg.family
    p = spec.coefficients(cfg.precision)
    first = 0 if spec.family == "egervary-szasz" else 1
    rows = []
    for k in range(first, spec.degree + 1):
        c = p.coeff(k)
        row = {"k": k, "midpoint": dec(c), "radius": c.rad_str()}
        exact = _exact_form(spec, k)
        if exact is not None:
            row["exact"] = exact
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n", EXIT_OK


# -- certify / scan -----------------------------------------------------------

def certificate_record(cert: UnivalenceCertificate) -> dict:
    return {
        "n": cert.N,
        "root_count": cert.root_count_pos_axis,
        "interior_sign": cert.interior_sign.value,
        "verdict": cert.verdict.value,
        "precision_used": cert.precision_used,
    }


def cmd_certify(cfg: RunConfig) -> tuple[str, int]:
    t0 = time.perf_counter()
    cert = certify_univalence(cfg.n_from, cfg.precision_cap, cfg.precision)
    rec = certificate_record(cert)
    rec["wall_time"] = round(time.perf_counter() - t0, 6)
    code = EXIT_OK if cert.certified else EXIT_UNDECIDED
    return json.dumps(rec) + "\n", code


def _scan_one(args: tuple[int, int, int]) -> dict:
    N, prec, cap = args
    return certificate_record(certify_univalence(N, cap, prec))


def _read_resume(path: Path) -> dict[int, dict]:
    """Records already in ``path``; a torn trailing line is dropped."""
    done: dict[int, dict] = {}
    if not path.exists():
        return done
    for line in path.read_text(encoding="utf-8").splitlines():
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            continue
        if isinstance(rec, dict) and isinstance(rec.get("n"), int):
            done[rec["n"]] = rec
    return done


def _line(rec: dict) -> str:
    return json.dumps(rec, sort_keys=False) + "\n"


def cmd_scan(cfg: RunConfig) -> tuple[str, int]:
    """Stream one certificate per N; the summary goes to stderr.

    Lines are flushed as they complete so an interrupted run leaves a valid
    JSONL prefix. With ``--resume`` the file is rewritten in N order from its
    parseable records and only the missing N are computed.
    """
    wanted = range(cfg.n_from, cfg.n_to + 1)
    done = _read_resume(cfg.output) if cfg.resume else {}
    todo = [N for N in wanted if N not in done]

    if cfg.output is not None:
        cfg.output.parent.mkdir(parents=True, exist_ok=True)
        sink = open(cfg.output, "w", encoding="utf-8", newline="\n")
    else:
        sink = sys.stdout
    records = dict(done)
    try:
        for N in sorted(done):
            if N < cfg.n_from:
                sink.write(_line(done[N]))
        jobs = [(N, cfg.precision, cfg.precision_cap) for N in todo]
        if cfg.workers > 1 and len(jobs) > 1:
            pool = ProcessPoolExecutor(max_workers=cfg.workers)
            results = pool.map(_scan_one, jobs)
        else:
            pool = None
            results = map(_scan_one, jobs)
        try:
            # results arrive in the order of todo, which is the order of wanted
            for N in wanted:
                if N in done:
                    rec = done[N]
                else:
                    rec = records[N] = next(results)
                sink.write(_line(rec))
                sink.flush()
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
        for N in sorted(done):
            if N > cfg.n_to:
                sink.write(_line(done[N]))
    finally:
        if sink is not sys.stdout:
            sink.close()

    in_range = [records[N] for N in wanted]
    ok = [r["n"] for r in in_range if r["verdict"] != Verdict.NOT_CERTIFIED.value]
    failed = [r["n"] for r in in_range if r["verdict"] == Verdict.NOT_CERTIFIED.value]
    summary = {
        "summary": True,
        "from": cfg.n_from,
        "to": cfg.n_to,
        "certified": len(ok),
        "largest_certified_n": max(ok) if ok else None,
        "not_certified": failed,
    }
    print(json.dumps(summary), file=sys.stderr)
    return "", EXIT_UNDECIDED if failed else EXIT_OK


# -- radius table -------------------------------------------------------------

def _report_row(r: RadiusReport) -> dict:
    return {
        "N": r.N,
        "upper_pn": dec(r.upper_pn),
        "suffridge_at_minus1": dec(r.suffridge_at_minus1),
        "suffridge_boundary_min": dec(r.suffridge_boundary_min),
        "psi_n": dec(r.psi_n),
        "lower_rs": dec(r.lower_rs),
        "pn_boundary_min": dec(r.boundary_min),
        "certified": "true" if r.certified else "false",
    }


def _csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_radius_table(cfg: RunConfig) -> tuple[str, int]:
    reports = radius_table(cfg.n_to, cfg.precision, cfg.grid, N_min=cfg.n_from, workers=cfg.workers)
    rows = [_report_row(r) for r in reports]
    if cfg.format == "json":
        return json.dumps(rows, indent=2) + "\n", EXIT_OK
    return _csv(rows, RADIUS_COLUMNS), EXIT_OK


# -- boundary -----------------------------------------------------------------

def _svg(points: list[tuple[float, float]], radius: float) -> str:
    xs = [x for x, _ in points] + [0.0, -radius, radius]
    ys = [y for _, y in points] + [0.0, -radius, radius]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    mx, my = 0.05 * (x1 - x0), 0.05 * (y1 - y0)
    x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
    w, h = x1 - x0, y1 - y0
    stroke = max(w, h) / 500
    # SVG y grows downward: flip the imaginary axis
    pts = " ".join(f"{x:.9g},{0.0 - y:.9g}" for x, y in points)
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.9g} {-y1:.9g} {w:.9g} {h:.9g}">',
        f'  <polygon points="{pts}" fill="none" stroke="black" stroke-width="{stroke:.6g}"/>',
        f'  <circle cx="0" cy="0" r="{radius:.9g}" fill="none" stroke="red" '
        f'stroke-width="{stroke:.6g}" stroke-dasharray="{4 * stroke:.6g}"/>',
        f'  <circle cx="0" cy="0" r="{3 * stroke:.6g}" fill="blue"/>',
        "</svg>",
        "",
    ])


def cmd_boundary(cfg: RunConfig) -> tuple[str, int]:
    spec = cfg.family
    p = spec.coefficients(cfg.precision)
    curve = sample_curve(p, cfg.count, spec)
    if cfg.format == "svg":
        md = min_distance(p, cfg.grid, precision=cfg.precision)
        points = [(float(re), float(im)) for _, re, im, _ in curve.samples]
        return _svg(points, float(md.distance)), EXIT_OK
    rows = [{"t": dec(t), "re": dec(re), "im": dec(im), "abs": dec(a)}
            for t, re, im, a in curve.samples]
    return _csv(rows, ("t", "re", "im", "abs")), EXIT_OK


HANDLERS = {
    "coeffs": cmd_coeffs,
    "certify": cmd_certify,
    "radius-table": cmd_radius_table,
    "boundary": cmd_boundary,
    "scan": cmd_scan,
}
FORMATS = {
    "coeffs": ("json",),
    "certify": ("json",),
    "radius-table": ("csv", "json"),
    "boundary": ("csv", "svg"),
    "scan": ("json",),
}


# -- argument parsing ---------------------------------------------------------

def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--precision", type=int, help=f"working precision in bits (default {DEFAULT_PRECISION})", **kw)
    parser.add_argument("--output", type=Path, help="write to this file instead of stdout", **kw)
    parser.add_argument("--format", choices=("json", "csv", "svg"), help="output format", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="koebe", description="Koebe radius computations for univalent polynomials")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def family_opts(p, default_family):
        p.add_argument("--family", choices=FAMILIES, default=default_family)
        p.add_argument("--n", type=int, required=True, help="degree N")
        p.add_argument("--j", type=int, default=1, help="Suffridge index j")

    p = sub.add_parser("coeffs", help="print polynomial coefficients as JSON")
    family_opts(p, "pnew")
    _global_options(p, suppress=True)

    p = sub.add_parser("certify", help="certify univalence of P_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--precision-cap", type=int, default=DEFAULT_PRECISION_CAP)
    _global_options(p, suppress=True)

    p = sub.add_parser("radius-table", help="upper/lower Koebe radius bounds per N")
    p.add_argument("--from", dest="n_from", type=int, default=1)
    p.add_argument("--to", dest="n_to", type=int, default=10)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--workers", type=int, default=1)
    _global_options(p, suppress=True)

    p = sub.add_parser("boundary", help="image of the unit circle as CSV or SVG")
    family_opts(p, "pnew")
    p.add_argument("--count", type=int, default=1024, help="number of samples on [0, 2pi)")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    _global_options(p, suppress=True)

    p = sub.add_parser("scan", help="certify P_N over a range of N (JSONL)")
    p.add_argument("--from", dest="n_from", type=int, default=1)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--resume", action="store_true", help="skip N already present in --output")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--precision-cap", type=int, default=DEFAULT_PRECISION_CAP)
    _global_options(p, suppress=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cmd = args.command
    fmt = args.format or FORMATS[cmd][0]
    if fmt not in FORMATS[cmd]:
        raise UsageError(f"{cmd} supports --format {'/'.join(FORMATS[cmd])}, not {fmt}")
    family = None
    if cmd in ("coeffs", "boundary"):
        try:
            family = FamilySpec(args.family, args.n, args.j)
        except ValueError as e:
            raise UsageError(str(e)) from None
    if cmd in ("coeffs", "boundary", "certify"):
        n_from = n_to = args.n
    else:
        n_from, n_to = args.n_from, args.n_to
    if cmd == "boundary" and args.count < 8:
        raise UsageError("--count must be >= 8")
    if getattr(args, "grid", DEFAULT_GRID) < 64:
        raise UsageError("--grid must be >= 64")
    return RunConfig(
        command=cmd,
        n_from=n_from,
        n_to=n_to,
        family=family,
        precision=args.precision if args.precision is not None else DEFAULT_PRECISION,
        precision_cap=getattr(args, "precision_cap", DEFAULT_PRECISION_CAP),
        grid=getattr(args, "grid", DEFAULT_GRID),
        count=getattr(args, "count", 1024),
        output=args.output,
        format=fmt,
        workers=getattr(args, "workers", 1),
        resume=getattr(args, "resume", False),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = config_from_args(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"koebe: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        text, code = HANDLERS[cfg.command](cfg)
        if text:
            if cfg.output is None:
                sys.stdout.write(text)
            else:
                cfg.output.parent.mkdir(parents=True, exist_ok=True)
                cfg.output.write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        print(f"koebe: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
