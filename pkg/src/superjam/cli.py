"""Command-line front end.

Subcommands: sep-curve (analytic SEP sweep to CSV, optional SVG plot),
pac-plan (power allocation for a security target), simulate (Monte Carlo
vs analytic SEP), transmit (end-to-end image transmission), nhsic
(dependence statistic of two CSV sample files).

Every command is deterministic given its flags: the master seed comes from
--seed, else the SUPERJAM_SEED environment variable, else 0.  Output files
are written to a temp name and atomically renamed, so no partial file
survives an error; each file-producing run leaves a key=value manifest
next to its primary output.

Exit codes: 0 success, 1 usage or I/O error, 2 infeasible planning request.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .codebook import KnowledgeBase, build_codebook
from .codec import CodecSpec, read_image, write_image
from .constellation import PowerAllocation
from .independence import load_sample_matrix, nhsic
from .pipeline import LinkConfig, monte_carlo_sep, transmit_frame
from .sep import (InfeasiblePlanError, plan_pac, sep_eavesdropper,
                  sep_legitimate, sigma_from_snr, sweep_curve)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


class CommandError(Exception):
    """Fatal usage or I/O problem; message goes to stderr, exit code 1."""


def _fmt(x: float) -> str:
    """12 significant digits; infinities as the literal token inf."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def _atomic_write(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _atomic_write_image(path: Path, img) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    os.close(fd)
    try:
        write_image(tmp, img)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _write_manifest(out_path: Path, command: str, params: dict) -> None:
    lines = [f"command={command}", f"version={__version__}"]
    lines += [f"{k}={v}" for k, v in sorted(params.items())]
    _atomic_write(out_path.with_suffix(out_path.suffix + ".manifest"),
                  "\n".join(lines) + "\n")


def _default_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("SUPERJAM_SEED")
    return int(env) if env else 0


def _pac(value: float) -> PowerAllocation:
    try:
        return PowerAllocation(value)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc


def _parse_codec(text: str) -> CodecSpec:
    if text == "raw":
        return CodecSpec(1)
    if text.startswith("block:"):
        try:
            return CodecSpec(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise CommandError(f"bad codec spec {text!r}") from exc
    raise CommandError(f"unknown codec {text!r} (expected raw or block:K)")


# ----------------------------------------------------------------- sep-curve

def cmd_sep_curve(args) -> int:
    if args.steps < 2:
        raise CommandError("--steps must be >= 2")
    if not (0.0 < args.a_min < args.a_max < 0.5):
        raise CommandError("need 0 < --a-min < --a-max < 0.5")
    grid = np.linspace(args.a_min, args.a_max, args.steps)
    curve = sweep_curve(args.snr_db, grid)
    rows = ["a,snr_db,sep_leg,sep_eve"]
    rows += [",".join((_fmt(p.a), _fmt(p.snr_db), _fmt(p.sep_leg), _fmt(p.sep_eve)))
             for p in curve.points]
    out = Path(args.out)
    _atomic_write(out, "\n".join(rows) + "\n")
    _write_manifest(out, "sep-curve", {
        "snr_db": args.snr_db, "a_min": args.a_min, "a_max": args.a_max,
        "steps": args.steps, "out": out.name,
        "svg": Path(args.svg).name if args.svg else ""})
    if args.svg:
        _atomic_write(Path(args.svg), _render_curve_svg(curve))
    return EXIT_OK


def _render_curve_svg(curve) -> str:
    """Minimal static SVG: both SEP curves over a, linear axes."""
    width, height, margin = 640, 420, 56
    xs = [p.a for p in curve.points]
    x_lo, x_hi = min(xs), max(xs)
    x_span = (x_hi - x_lo) or 1.0
    y_hi = max(max(p.sep_eve for p in curve.points),
               max(p.sep_leg for p in curve.points), 1e-9)

    def sx(a: float) -> float:
        return margin + (a - x_lo) / x_span * (width - 2 * margin)

    def sy(p: float) -> float:
        return height - margin - p / y_hi * (height - 2 * margin)

    def poly(values, color):
        pts = " ".join(f"{sx(a):.2f},{sy(v):.2f}" for a, v in zip(xs, values))
        return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{pts}"/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height-margin}" x2="{width-margin}" '
        f'y2="{height-margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height-margin}" stroke="black"/>',
        poly([p.sep_leg for p in curve.points], "#c0392b"),
        poly([p.sep_eve for p in curve.points], "#2e6da4"),
        f'<text x="{width//2}" y="{height-16}" text-anchor="middle" '
        f'font-size="13">power allocation coefficient a '
        f'(SNR {curve.snr_db:g} dB)</text>',
        f'<text x="18" y="{height//2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 18 {height//2})">symbol error probability</text>',
        f'<text x="{width-margin}" y="{margin-10}" text-anchor="end" '
        f'font-size="12" fill="#c0392b">legitimate</text>',
        f'<text x="{width-margin}" y="{margin+6}" text-anchor="end" '
        f'font-size="12" fill="#2e6da4">eavesdropper</text>',
        f'<text x="{margin-6}" y="{margin}" text-anchor="end" '
        f'font-size="11">{y_hi:.3f}</text>',
        f'<text x="{margin-6}" y="{height-margin}" text-anchor="end" '
        f'font-size="11">0</text>',
        f'<text x="{margin}" y="{height-margin+16}" text-anchor="middle" '
        f'font-size="11">{x_lo:g}</text>',
        f'<text x="{width-margin}" y="{height-margin+16}" text-anchor="middle" '
        f'font-size="11">{x_hi:g}</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


# ------------------------------------------------------------------ pac-plan

def cmd_pac_plan(args) -> int:
    if not (0.0 <= args.min_eve_sep < 1.0):
        raise CommandError("--min-eve-sep must be in [0, 1)")
    try:
        pa = plan_pac(args.snr_db, args.min_eve_sep, args.max_leg_sep)
    except InfeasiblePlanError as exc:
        print(f"infeasible: {exc} (binding constraint: {exc.binding_constraint})",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    sigma = sigma_from_snr(args.snr_db)
    print(f"a={_fmt(pa.a)} sep_leg={_fmt(sep_legitimate(pa, sigma))} "
          f"sep_eve={_fmt(sep_eavesdropper(pa, sigma))}")
    return EXIT_OK


# ------------------------------------------------------------------ simulate

def cmd_simulate(args) -> int:
    if args.symbols < 1:
        raise CommandError("--symbols must be >= 1")
    if args.workers < 1:
        raise CommandError("--workers must be >= 1")
    pa = _pac(args.a)
    seed = _default_seed(args.seed)
    res = monte_carlo_sep(pa, args.snr_leg, args.snr_eve, args.symbols,
                          seed=seed, workers=args.workers)
    header = ("a,snr_leg_db,snr_eve_db,symbols,"
              "sep_leg_analytic,sep_leg_empirical,sep_leg_halfwidth_3sigma,"
              "sep_eve_analytic,sep_eve_empirical,sep_eve_halfwidth_3sigma")
    row = ",".join((
        _fmt(res.a), _fmt(res.snr_leg_db), _fmt(res.snr_eve_db),
        str(res.symbols),
        _fmt(res.sep_leg_analytic), _fmt(res.sep_leg_empirical),
        _fmt(res.sep_leg_halfwidth),
        _fmt(res.sep_eve_analytic), _fmt(res.sep_eve_empirical),
        _fmt(res.sep_eve_halfwidth)))
    out = Path(args.out)
    _atomic_write(out, header + "\n" + row + "\n")
    _write_manifest(out, "simulate", {
        "a": args.a, "snr_leg_db": args.snr_leg, "snr_eve_db": args.snr_eve,
        "symbols": args.symbols, "seed": seed, "workers": args.workers,
        "out": out.name})
    return EXIT_OK


# ------------------------------------------------------------------ transmit

def cmd_transmit(args) -> int:
    pa = _pac(args.a)
    seed = _default_seed(args.seed)
    codec = _parse_codec(args.codec)
    try:
        img = read_image(args.image)
    except (OSError, ValueError) as exc:
        raise CommandError(f"cannot read image: {exc}") from exc
    try:
        kb = KnowledgeBase.from_dir(args.kb)
    except (OSError, ValueError) as exc:
        raise CommandError(f"cannot load knowledge base: {exc}") from exc
    try:
        codebook = build_codebook(kb, codec.symbol_count(img.shape))
        cfg = LinkConfig(pa=pa, snr_leg_db=args.snr_leg, snr_eve_db=args.snr_eve,
                         master_seed=seed, index_seed=args.index_seed, codec=codec)
        bob_img, eve_img, report = transmit_frame(img, codebook, cfg)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc

    header = "index,symbol_count,sep_emp_leg,sep_emp_eve,psnr_bob_db,psnr_eve_db"
    row = ",".join((
        str(report.index), str(report.symbol_count),
        _fmt(report.sep_emp_leg), _fmt(report.sep_emp_eve),
        _fmt(report.psnr_bob_db), _fmt(report.psnr_eve_db)))
    report_path = Path(args.report)
    _atomic_write_image(Path(args.out_bob), bob_img)
    _atomic_write_image(Path(args.out_eve), eve_img)
    _atomic_write(report_path, header + "\n" + row + "\n")
    _write_manifest(report_path, "transmit", {
        "image": Path(args.image).name, "kb_digest": kb.digest(),
        "a": args.a, "snr_leg_db": args.snr_leg, "snr_eve_db": args.snr_eve,
        "seed": seed, "index_seed": args.index_seed, "codec": args.codec,
        "out_bob": Path(args.out_bob).name, "out_eve": Path(args.out_eve).name,
        "report": report_path.name})
    return EXIT_OK


# --------------------------------------------------------------------- nhsic

def cmd_nhsic(args) -> int:
    try:
        x = load_sample_matrix(args.x)
        y = load_sample_matrix(args.y)
    except (OSError, ValueError) as exc:
        raise CommandError(f"cannot load sample matrix: {exc}") from exc
    if x.shape[0] != y.shape[0]:
        raise CommandError(
            f"row counts differ: {x.shape[0]} ({args.x}) vs {y.shape[0]} ({args.y})")
    print(_fmt(nhsic(x, y, centered=not args.uncentered)))
    return EXIT_OK


# -------------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superjam",
        description="SEP analysis and link simulation for jamming-secured "
                    "4-QAM transmission")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sep-curve", help="analytic SEP sweep over a, CSV out")
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--a-min", type=float, default=0.01)
    p.add_argument("--a-max", type=float, default=0.49)
    p.add_argument("--steps", type=int, default=97)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--svg", default=None, help="optional SVG plot path")
    p.set_defaults(func=cmd_sep_curve)

    p = sub.add_parser("pac-plan", help="largest a meeting a security floor")
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--min-eve-sep", type=float, required=True)
    p.add_argument("--max-leg-sep", type=float, default=None)
    p.set_defaults(func=cmd_pac_plan)

    p = sub.add_parser("simulate", help="Monte Carlo vs analytic SEP, CSV out")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--snr-leg", type=float, required=True)
    p.add_argument("--snr-eve", type=float, required=True)
    p.add_argument("--symbols", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("transmit", help="end-to-end single-image transmission")
    p.add_argument("--image", required=True, help="input PGM/PPM")
    p.add_argument("--kb", required=True, help="knowledge-base directory")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--snr-leg", type=float, required=True)
    p.add_argument("--snr-eve", type=float, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--index-seed", type=int, default=0)
    p.add_argument("--codec", default="raw", help="raw or block:K")
    p.add_argument("--out-bob", required=True)
    p.add_argument("--out-eve", required=True)
    p.add_argument("--report", required=True, help="report CSV path")
    p.set_defaults(func=cmd_transmit)

    p = sub.add_parser("nhsic", help="dependence statistic of two CSV files")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--uncentered", action="store_true",
                   help="skip Gram centering (raw trace ratio)")
    p.set_defaults(func=cmd_nhsic)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
