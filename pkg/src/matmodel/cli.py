"""Command-line front end for the matmodel engine.

Verbs
-----

corr          one connected correlator (thin / fat / oracle route)
free-energy   genus layers of the free energy (thin / fat / 1d flavors)
icoords       renormalized I-coordinates and q-variables
structure     closed forms of genus layers in I-coordinates
verify        consistency suites (oracle sweep, dual routes, identities)
export        golden JSON files for downstream comparisons

Every invocation is deterministic: identical inputs produce byte-identical
output.  Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable

from .correlators import CorrelatorEngine, thin_genus
from .exactmath import (
    GenusPolynomial,
    partitions_up_to,
    poly_json,
    poly_text,
    series_json,
    series_text,
)
from .freeenergy import (
    FreeEnergySeries,
    assemble,
    dilaton_resum,
    fat_expansion,
    fat_layer_t,
    one_d_specialize,
    virasoro_residual,
)
from .renorm import (
    build_frame,
    f0_closed_form,
    fat_in_I,
    invert_frame,
    q_rewrite,
    renormalization_identity,
    structural_FgN,
)
from .verify import VerificationError, VerificationReport
from .wick import DEFAULT_DART_CAP, DartCapExceeded, connected_moment
from . import __version__

__all__ = ["main"]

_SUITES = (
    "oracle",
    "fat-thin",
    "iround",
    "closed-forms",
    "structure",
    "dilaton",
    "identity",
    "virasoro",
    "all",
)


class UsageError(ValueError):
    """Invalid arguments or a computation blocked without --force."""


def parse_parts(text: str) -> tuple[int, ...]:
    """Parse a partition: comma list ``3,3,4`` or power form ``3^2,4``."""
    parts: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise UsageError(f"empty entry in partition {text!r}")
        base, caret, power = chunk.partition("^")
        if caret and not power:
            raise UsageError(f"cannot parse partition entry {chunk!r}")
        try:
            value = int(base)
            count = int(power) if power else 1
        except ValueError:
            raise UsageError(f"cannot parse partition entry {chunk!r}") from None
        if value < 1 or count < 1:
            raise UsageError(f"partition entries must be positive: {chunk!r}")
        parts.extend([value] * count)
    return tuple(sorted(parts, reverse=True))


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _engine(args: argparse.Namespace) -> CorrelatorEngine:
    return CorrelatorEngine(cache_dir=getattr(args, "cache_dir", None))


def _save_cache(engine: CorrelatorEngine) -> None:
    if engine.cache_path is not None:
        engine.save_cache()


# -- corr --------------------------------------------------------------------


def _cmd_corr(args: argparse.Namespace) -> int:
    parts = parse_parts(args.parts)
    engine = _engine(args)
    if args.route == "thin":
        genus = args.genus if args.genus is not None else thin_genus(parts)
        if genus is None:
            value = GenusPolynomial.zero("N")
        else:
            value = engine.thin(parts, genus)
    elif args.route == "fat":
        if args.genus is None:
            raise UsageError("corr fat requires --genus (the fat genus)")
        genus = args.genus
        value = engine.fat(parts, genus)
    else:  # oracle
        degree = sum(parts)
        if degree > DEFAULT_DART_CAP and not args.force:
            raise UsageError(
                f"oracle degree {degree} exceeds cap {DEFAULT_DART_CAP}; "
                "pass --force to enumerate anyway"
            )
        genus = thin_genus(parts)
        connected = connected_moment(parts, dart_cap=max(degree, DEFAULT_DART_CAP))
        scale = Fraction(1)
        for a in parts:
            scale /= a
        value = connected * scale
    _save_cache(engine)
    payload = {
        "flavor": args.route,
        "parts": list(parts),
        "genus": genus,
        "value": poly_json(value),
    }
    _emit(args, payload, poly_text(value))
    return 0


# -- free-energy ---------------------------------------------------------------


def _thin_layers(
    free_energy: FreeEnergySeries, coords: str
) -> dict[int, Any]:
    layers = {}
    for genus in range(free_energy.max_genus + 1):
        layer = (
            free_energy.genus_layer(genus)
            if coords == "g"
            else free_energy.genus_layer_t(genus)
        )
        if not layer.is_zero:
            layers[genus] = layer
    return layers


def _fat_layers(free_energy: FreeEnergySeries, coords: str) -> dict[int, Any]:
    layers = {}
    for genus_tilde in range(free_energy.max_genus + 2):
        layer = (
            fat_expansion(free_energy, genus_tilde)
            if coords == "g"
            else fat_layer_t(free_energy, genus_tilde)
        )
        if not layer.is_zero:
            layers[genus_tilde] = layer
    return layers


def _one_d_layers(free_energy: FreeEnergySeries) -> dict[int, Any]:
    layers = {}
    for genus in range(free_energy.max_genus + 1):
        layer = one_d_specialize(free_energy, genus)
        if not layer.is_zero:
            layers[genus] = layer
    return layers


def _cmd_free_energy(args: argparse.Namespace) -> int:
    engine = _engine(args)
    free_energy = assemble(args.truncation, engine)
    if args.flavor == "thin":
        layers = _thin_layers(free_energy, args.coords)
        label = "F_{%d,N}"
    elif args.flavor == "fat":
        layers = _fat_layers(free_energy, args.coords)
        label = "F_%d(t)"
    else:
        layers = _one_d_layers(free_energy)
        label = "F_%d^{1D}"
    if args.genus is not None:
        layers = {args.genus: layers.get(args.genus)} if args.genus in layers else {}
    _save_cache(engine)
    payload = {
        "flavor": args.flavor,
        "coords": "t" if args.flavor == "1d" else args.coords,
        "truncation": args.truncation,
        "layers": {str(g): series_json(layer) for g, layer in sorted(layers.items())},
    }
    lines = [f"{label % g} = {series_text(layer)}" for g, layer in sorted(layers.items())]
    _emit(args, payload, "\n".join(lines) if lines else "0")
    return 0


# -- icoords -------------------------------------------------------------------


def _cmd_icoords(args: argparse.Namespace) -> int:
    frame = build_frame(args.truncation)
    max_index = args.max_index if args.max_index is not None else args.truncation - 1
    if max_index < 0 or max_index > args.truncation - 1:
        raise UsageError(
            f"--max-index must lie in 0..{args.truncation - 1} "
            f"(I_k starts at weight k + 1)"
        )
    payload: dict[str, Any] = {"truncation": args.truncation, "I": {}}
    lines = []
    for k in range(max_index + 1):
        series = frame.I(k)
        payload["I"][str(k)] = series_json(series)
        lines.append(f"I_{k} = {series_text(series)}")
    if args.q:
        payload["q"] = {}
        for n in range(1, args.truncation - 1):
            series = frame.q(n)
            payload["q"][str(n)] = series_json(series)
            lines.append(f"q_{n} = {series_text(series)}")
    _emit(args, payload, "\n".join(lines))
    return 0


# -- structure -----------------------------------------------------------------


def _cmd_structure(args: argparse.Namespace) -> int:
    engine = _engine(args)
    if args.flavor == "thin":
        free_energy = assemble(args.truncation, engine)
        form, report = structural_FgN(
            args.genus, engine, free_energy, build_frame(args.truncation)
        )
        report.raise_if_failed()
        if args.q:
            if args.genus < 2:
                raise UsageError("--q requires genus >= 2 (no polynomial part below)")
            qpoly = q_rewrite(form)
            payload: dict[str, Any] = qpoly.to_json()
            text = qpoly.text()
        else:
            payload = form.to_json()
            text = form.text()
    else:
        form, report = fat_in_I(args.genus, args.truncation, engine)
        report.raise_if_failed()
        payload = form.to_json()
        text = form.text()
    _save_cache(engine)
    _emit(args, payload, text)
    return 0


# -- verify --------------------------------------------------------------------


def _oracle_connected(parts: tuple[int, ...]) -> dict[str, Any]:
    return poly_json(connected_moment(parts, dart_cap=max(sum(parts), DEFAULT_DART_CAP)))


def _suite_oracle(
    max_degree: int, jobs: int, force: bool, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    if max_degree > DEFAULT_DART_CAP and not force:
        raise UsageError(
            f"--max-degree {max_degree} exceeds the oracle cap "
            f"{DEFAULT_DART_CAP}; pass --force to enumerate anyway"
        )
    report = VerificationReport("oracle")
    sweep = list(partitions_up_to(max_degree, even_only=True))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            oracle_values = list(pool.map(_oracle_connected, sweep, chunksize=1))
    else:
        oracle_values = [_oracle_connected(parts) for parts in sweep]
    for parts, oracle_json in zip(sweep, oracle_values):
        genus = thin_genus(parts)
        if genus is None:
            expected = GenusPolynomial.zero("N")
        else:
            expected = engine.thin(parts, genus)
            for a in parts:
                expected = expected * a
        report.record(
            poly_json(expected) == oracle_json,
            f"lambda={parts}: engine {poly_json(expected)} vs oracle {oracle_json}",
        )
    summary = (
        f"OK: {report.checked}/{report.checked} partitions"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} partitions mismatched"
    )
    return report, summary


def _suite_fat_thin(
    max_degree: int, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    report = VerificationReport("fat-thin")
    for parts in partitions_up_to(max_degree, even_only=True):
        top = (sum(parts) - 2 * len(parts) + 4) // 4 + 1
        for genus_tilde in range(top + 1):
            direct = engine.fat(parts, genus_tilde)
            extracted = engine.fat_from_thin(parts, genus_tilde)
            report.record(
                direct == extracted,
                f"lambda={parts}, fat genus {genus_tilde}: "
                f"{poly_text(direct)} vs {poly_text(extracted)}",
            )
    summary = (
        f"OK: {report.checked}/{report.checked} flavor pairs"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} flavor pairs mismatched"
    )
    return report, summary


def _suite_iround(truncation: int) -> tuple[VerificationReport, str]:
    report = VerificationReport("iround")
    frame = build_frame(truncation)  # raises if the two I_0 routes disagree
    report.record(True, "I_0 dual construction")
    report.merge(invert_frame(frame))
    summary = (
        f"OK: {report.checked} identities"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} identities"
    )
    return report, summary


def _suite_closed_forms(
    truncation: int, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    report = VerificationReport("closed-forms")
    free_energy = assemble(truncation, engine)
    _, f0_report = f0_closed_form(free_energy)
    report.merge(f0_report)
    for genus_tilde in (0, 1):
        _, fat_report = fat_in_I(genus_tilde, truncation, engine, free_energy)
        report.merge(fat_report)
    summary = (
        f"OK: {report.checked} checks"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} checks"
    )
    return report, summary


def _suite_structure(
    truncation: int, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    report = VerificationReport("structure")
    free_energy = assemble(truncation, engine)
    frame = build_frame(truncation)
    for genus in (1, 2, 3):
        form, form_report = structural_FgN(genus, engine, free_energy, frame)
        report.merge(form_report)
        if genus >= 2:
            q_rewrite(form)  # asserts its own exact round trip
            report.record(True, f"q rewrite at genus {genus}")
    summary = (
        f"OK: {report.checked} checks"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} checks"
    )
    return report, summary


def _suite_dilaton(
    truncation: int, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    report = VerificationReport("dilaton")
    free_energy = assemble(truncation, engine)
    for genus in range(free_energy.max_genus + 1):
        try:
            dilaton_resum(free_energy, genus)
            report.record(True, f"genus {genus}")
        except VerificationError as err:
            report.record(False, f"genus {genus}: {err}")
    summary = (
        f"OK: {report.checked} checks"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} checks"
    )
    return report, summary


def _suite_identity(
    truncation: int, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    report = renormalization_identity(truncation, engine)
    summary = (
        f"OK: {report.checked} checks"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} checks"
    )
    return report, summary


def _suite_virasoro(
    truncation: int, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    report = VerificationReport("virasoro")
    free_energy = assemble(truncation, engine)
    for m in range(-1, 5):
        residual = virasoro_residual(m, truncation, engine, free_energy)
        leftover = {e: s for e, s in residual.items() if not s.is_zero}
        report.record(not leftover, f"L_{m} residual nonzero: {sorted(leftover)}")
    summary = (
        f"OK: {report.checked} checks"
        if report.ok
        else f"FAIL: {len(report.details)}/{report.checked} checks"
    )
    return report, summary


def _run_suite(
    name: str, args: argparse.Namespace, engine: CorrelatorEngine
) -> tuple[VerificationReport, str]:
    max_degree = args.max_degree if args.max_degree is not None else 10
    if name == "oracle":
        return _suite_oracle(max_degree, args.jobs, args.force, engine)
    if name == "fat-thin":
        return _suite_fat_thin(max_degree, engine)
    truncation = args.truncation
    if name == "iround":
        return _suite_iround(truncation if truncation is not None else 10)
    if name == "closed-forms":
        return _suite_closed_forms(truncation if truncation is not None else 8, engine)
    if name == "structure":
        return _suite_structure(truncation if truncation is not None else 10, engine)
    if name == "dilaton":
        return _suite_dilaton(truncation if truncation is not None else 8, engine)
    if name == "identity":
        return _suite_identity(truncation if truncation is not None else 8, engine)
    if name == "virasoro":
        return _suite_virasoro(truncation if truncation is not None else 8, engine)
    raise UsageError(f"unknown suite {name!r}")


def _cmd_verify(args: argparse.Namespace) -> int:
    engine = _engine(args)
    names = [s for s in _SUITES if s != "all"] if args.suite == "all" else [args.suite]
    reports = []
    lines = []
    ok = True
    for name in names:
        report, summary = _run_suite(name, args, engine)
        reports.append(report)
        ok = ok and report.ok
        lines.append(summary if len(names) == 1 else f"{name}: {summary}")
        for detail in report.details:
            print(f"{name}: {detail}", file=sys.stderr)
    _save_cache(engine)
    payload = {
        "suite": args.suite,
        "ok": ok,
        "reports": [report.to_json() for report in reports],
    }
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


# -- export --------------------------------------------------------------------


def _cmd_export(args: argparse.Namespace) -> int:
    engine = _engine(args)
    free_energy = assemble(args.truncation, engine)
    out_dir = Path(args.output)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise UsageError(f"cannot create output directory {out_dir}: {err}") from None
    files = {
        "thin_free_energy.json": _thin_layers(free_energy, "g"),
        "fat_free_energy.json": _fat_layers(free_energy, "t"),
        "one_d_free_energy.json": _one_d_layers(free_energy),
    }
    written = []
    for name, layers in files.items():
        document = {
            "truncation": args.truncation,
            "layers": {
                str(g): series_json(layer) for g, layer in sorted(layers.items())
            },
        }
        path = out_dir / name
        try:
            path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
        except OSError as err:
            raise UsageError(f"cannot write {path}: {err}") from None
        written.append(str(path))
    _save_cache(engine)
    payload = {"truncation": args.truncation, "files": written}
    _emit(args, payload, "\n".join(written))
    return 0


# -- argument parsing ------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help="persist correlators as JSON lines here (or set MATMODEL_CACHE)",
    )
    parser.add_argument(
        "--force", action="store_true", help="allow oracle degrees over the cap"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matmodel",
        description="Exact correlators and free energies of the Hermitian "
        "one-matrix model.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    verbs = parser.add_subparsers(dest="verb", required=True)

    corr = verbs.add_parser("corr", help="one connected correlator")
    corr.add_argument("route", choices=("thin", "fat", "oracle"))
    corr.add_argument("-p", "--parts", required=True, help='partition, e.g. "3,5" or "3^2,4"')
    corr.add_argument("-g", "--genus", type=int, default=None)
    _add_common(corr)
    corr.set_defaults(func=_cmd_corr)

    fe = verbs.add_parser("free-energy", help="genus layers of the free energy")
    fe.add_argument("--flavor", choices=("thin", "fat", "1d"), default="thin")
    fe.add_argument("--truncation", type=int, default=8, help="max coupling weight")
    fe.add_argument("-g", "--genus", type=int, default=None, help="restrict to one layer")
    fe.add_argument(
        "--coords",
        choices=("g", "t"),
        default="g",
        help="couplings: g_n or t_k = n! g_{n+1}",
    )
    _add_common(fe)
    fe.set_defaults(func=_cmd_free_energy)

    ic = verbs.add_parser("icoords", help="I-coordinates of the coupling frame")
    ic.add_argument("--truncation", type=int, default=8)
    ic.add_argument("--max-index", type=int, default=None, help="largest k for I_k")
    ic.add_argument("--q", action="store_true", help="also print q_n variables")
    _add_common(ic)
    ic.set_defaults(func=_cmd_icoords)

    st = verbs.add_parser("structure", help="closed I-coordinate forms of layers")
    st.add_argument("-g", "--genus", type=int, required=True)
    st.add_argument("--flavor", choices=("thin", "fat"), default="thin")
    st.add_argument("--truncation", type=int, default=8)
    st.add_argument("--q", action="store_true", help="rewrite in q-variables")
    _add_common(st)
    st.set_defaults(func=_cmd_structure)

    ver = verbs.add_parser("verify", help="consistency suites")
    ver.add_argument("suite", choices=_SUITES)
    ver.add_argument(
        "-d",
        "--degree",
        "--max-degree",
        dest="max_degree",
        type=int,
        default=None,
        help="largest partition size for sweeps (default 10)",
    )
    ver.add_argument("--truncation", type=int, default=None, help="series weight for identity suites")
    ver.add_argument("--jobs", type=int, default=1, help="worker processes for the oracle sweep")
    _add_common(ver)
    ver.set_defaults(func=_cmd_verify)

    ex = verbs.add_parser("export", help="write golden JSON files")
    ex.add_argument("--truncation", type=int, default=8)
    ex.add_argument("-o", "--output", default="golden", help="output directory")
    _add_common(ex)
    ex.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except DartCapExceeded as err:
        print(f"error: {err} (pass --force to raise the cap)", file=sys.stderr)
        return 2
    except VerificationError as err:
        print(f"verification failed: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
