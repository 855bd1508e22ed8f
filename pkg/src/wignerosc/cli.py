"""Command-line surface: decompositions, coupling tables, spectra, and c-sweeps.

Subcommands
-----------
decompose   eigenvalues/eigenvectors of a coupling matrix, with diagnostics
bounds      critical couplings (and the Krawtchouk closed-form bound)
spectrum    energy spectrum at a single coupling strength
sweep       long-format spectrum dataset over a grid of coupling strengths

Exit codes: 0 success, 2 usage error, 3 numeric failure,
4 representation-validity failure. Output files are deterministic:
'.' decimal separator, LF line endings, shortest round-trip floats.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .coupling import (CriticalCoupling, critical_coupling, table_to_csv,
                       table_to_text, weak_coupling_bound)
from .errors import NumericError, UnirrepError, UnitarityError
from .gl_spectrum import GlBasisVector, gl_lines_to_csv, gl_lines_to_json, gl_spectrum
from .levels import SpectrumLine
from .osp_spectrum import osp_lines_to_csv, osp_lines_to_json, osp_spectrum
from .spectral import InteractionModel, decompose, load_matrix, mode_frequencies

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_REPRESENTATION = 4


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=("constant", "krawtchouk", "file"),
                        default="krawtchouk", help="coupling matrix family")
    parser.add_argument("--path", help="matrix file for --model file")
    parser.add_argument("--n", dest="n", help="number of oscillators")
    parser.add_argument("--ptilde", type=float, default=0.5,
                        help="Krawtchouk parameter in (0,1)")
    parser.add_argument("--omega", type=float, default=1.0, help="natural frequency")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="output file (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerosc",
        description="Spectra of coupled oscillator chains in gl(1|n) and osp(1|2n) modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dec = sub.add_parser("decompose", help="eigendecomposition of the coupling matrix")
    _add_model_flags(p_dec)
    _add_output_flags(p_dec)
    p_dec.add_argument("--tol", type=float, default=1e-12,
                       help="Jacobi off-diagonal tolerance")

    p_bnd = sub.add_parser("bounds", help="critical coupling strengths")
    _add_model_flags(p_bnd)
    _add_output_flags(p_bnd)
    p_bnd.set_defaults(format=None)
    p_bnd.add_argument("--tol", type=float, default=1e-12, help="bisection tolerance")

    p_spec = sub.add_parser("spectrum", help="energy spectrum at one coupling strength")
    _add_model_flags(p_spec)
    _add_output_flags(p_spec)
    p_spec.add_argument("--algebra", choices=("gl", "osp"), required=True)
    p_spec.add_argument("--p", type=float, required=True, help="representation label")
    p_spec.add_argument("--c", type=float, default=0.0, help="coupling strength")
    p_spec.add_argument("--kmax", type=int, default=3,
                        help="top-row weight cutoff (osp only)")
    p_spec.add_argument("--tol", type=float, default=1e-9, help="level-merge tolerance")
    p_spec.add_argument("--allow-strong", action="store_true",
                        help="compute the gl spectrum even past the critical coupling")

    p_swp = sub.add_parser("sweep", help="spectrum dataset over a coupling grid")
    _add_model_flags(p_swp)
    _add_output_flags(p_swp)
    p_swp.add_argument("--algebra", choices=("gl", "osp"), required=True)
    p_swp.add_argument("--p", type=float, required=True)
    p_swp.add_argument("--cmin", type=float, required=True)
    p_swp.add_argument("--cmax", type=float, required=True)
    p_swp.add_argument("--steps", type=int, required=True)
    p_swp.add_argument("--kmax", type=int, default=3)
    p_swp.add_argument("--tol", type=float, default=1e-9, help="level-merge tolerance")
    p_swp.add_argument("--allow-strong", action="store_true")
    return parser


def _parse_n(value: str | None) -> int:
    if value is None:
        raise ValueError("--n is required for this model")
    n = int(value)
    if n < 1:
        raise ValueError("--n must be positive")
    return n


def _parse_n_list(value: str | None) -> list[int]:
    """Accept '7', '4..10', or a comma-separated list."""
    if value is None:
        raise ValueError("--n is required")
    out: list[int] = []
    for chunk in value.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    if not out:
        raise ValueError("--n selected no sizes")
    return out


def _model_from_flags(args, c: float = 0.0) -> InteractionModel:
    if args.model == "file":
        if not args.path:
            raise ValueError("--model file needs --path")
        matrix = load_matrix(args.path)
        return InteractionModel.general(matrix, omega=args.omega, c=c)
    n = _parse_n(args.n)
    if args.model == "constant":
        return InteractionModel.constant(n, omega=args.omega, c=c)
    return InteractionModel.krawtchouk(n, omega=args.omega, c=c, ptilde=args.ptilde)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_decompose(args) -> int:
    model = _model_from_flags(args)
    decomp = decompose(model, tol=args.tol)
    m = model.coupling_matrix()
    if args.format == "json":
        text = json.dumps({"source": decomp.source,
                           "lambdas": decomp.lambdas.tolist(),
                           "u": decomp.u.tolist()}, indent=2) + "\n"
    else:
        header = "lambda," + ",".join(f"v_{i}" for i in range(1, decomp.n + 1))
        rows = [header]
        for j in range(decomp.n):
            rows.append(",".join([repr(float(decomp.lambdas[j]))]
                                 + [repr(float(x)) for x in decomp.u[:, j]]))
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    print(f"orthonormality residual: {decomp.orthonormality_residual():.3e}",
          file=sys.stderr)
    print(f"reconstruction residual: {decomp.reconstruction_residual(m):.3e}",
          file=sys.stderr)
    return EXIT_OK


def _bounds_rows(args) -> list[CriticalCoupling]:
    omega = args.omega
    rows = []
    if args.model == "krawtchouk":
        for n in _parse_n_list(args.n):
            if n < 2:
                raise ValueError("bounds need n >= 2")
            lambdas = np.arange(n, dtype=float)
            rows.append(CriticalCoupling(
                n=n,
                c_critical=critical_coupling(lambdas, omega=omega, tol=args.tol) / omega ** 2,
                c_bound=weak_coupling_bound(n, omega=omega) / omega ** 2))
        return rows
    if args.model == "constant":
        sizes = _parse_n_list(args.n)
    else:
        sizes = [None]
    for n in sizes:
        if n is not None and n < 2:
            raise ValueError("bounds need n >= 2")
        if n is not None:
            args_n = argparse.Namespace(**{**vars(args), "n": str(n)})
        else:
            args_n = args
        model = _model_from_flags(args_n)
        decomp = decompose(model)
        rows.append(CriticalCoupling(
            n=model.n,
            c_critical=critical_coupling(decomp.lambdas, omega=omega,
                                         tol=args.tol) / omega ** 2,
            c_bound=None))
    return rows


def _cmd_bounds(args) -> int:
    rows = _bounds_rows(args)
    if args.format == "json":
        payload = [{"n": r.n, "c_tilde_over_omega2": r.c_bound,
                    "c_n_over_omega2": r.c_critical, "ratio": r.ratio} for r in rows]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(table_to_csv(rows), args.out)
    else:
        _emit(table_to_text(rows), args.out)
    return EXIT_OK


def _spectrum_lines(args, model: InteractionModel) -> list[SpectrumLine]:
    freqs = mode_frequencies(decompose(model), model.omega, model.c)
    if args.algebra == "gl":
        if args.p < 0 or not float(args.p).is_integer():
            raise ValueError("gl spectra need a non-negative integer --p")
        return gl_spectrum(model.n, int(args.p), freqs, merge_tol=args.tol,
                           allow_nonunitary=args.allow_strong)
    return osp_spectrum(model.n, args.p, freqs, k_max=args.kmax, merge_tol=args.tol)


def _cmd_spectrum(args) -> int:
    model = _model_from_flags(args, c=args.c)
    lines = _spectrum_lines(args, model)
    if args.algebra == "gl":
        text = gl_lines_to_json(lines) if args.format == "json" \
            else gl_lines_to_csv(lines, model.n)
    else:
        text = osp_lines_to_json(lines) if args.format == "json" \
            else osp_lines_to_csv(lines, model.n)
    _emit(text, args.out)
    return EXIT_OK


def _line_label(args, line: SpectrumLine) -> str:
    if args.algebra == "gl":
        v: GlBasisVector = line.label
        return f"{v.theta}/" + "-".join(str(x) for x in v.r)
    height, sig, _ = line.label
    return f"{height}/" + "-".join(str(s) for s in sig)


def _cmd_sweep(args) -> int:
    if args.cmin < 0:
        raise ValueError("--cmin must be non-negative")
    if args.cmax < args.cmin:
        raise ValueError("--cmax must be at least --cmin")
    if args.steps < 2:
        raise ValueError("--steps must be at least 2")
    model0 = _model_from_flags(args, c=args.cmin)
    decomp = decompose(model0)
    if args.algebra == "gl" and not args.allow_strong:
        try:
            c_n = critical_coupling(decomp.lambdas, omega=args.omega)
        except NumericError:
            c_n = None  # weights stay positive for every coupling
        if c_n is not None and args.cmax > c_n:
            raise UnitarityError(
                f"--cmax {args.cmax} exceeds the critical coupling {c_n:.6g}; "
                "pass --allow-strong to sweep past it")

    records = []
    for i in range(args.steps):
        c = args.cmin + (args.cmax - args.cmin) * i / (args.steps - 1)
        freqs = mode_frequencies(decomp, args.omega, c)
        if args.algebra == "gl":
            if args.p < 0 or not float(args.p).is_integer():
                raise ValueError("gl sweeps need a non-negative integer --p")
            lines = gl_spectrum(model0.n, int(args.p), freqs, merge_tol=args.tol,
                                allow_nonunitary=args.allow_strong)
        else:
            lines = osp_spectrum(model0.n, args.p, freqs, k_max=args.kmax,
                                 merge_tol=args.tol)
        for line in lines:
            records.append((c, line.energy, line.multiplicity, _line_label(args, line)))

    if args.format == "json":
        payload = [{"c": c, "energy": e, "multiplicity": m, "label": lab}
                   for c, e, m, lab in records]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        rows = ["c,energy,multiplicity,label"]
        rows.extend(f"{c!r},{e!r},{m},{lab}" for c, e, m, lab in records)
        _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


_HANDLERS = {
    "decompose": _cmd_decompose,
    "bounds": _cmd_bounds,
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (UnirrepError, UnitarityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REPRESENTATION
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
