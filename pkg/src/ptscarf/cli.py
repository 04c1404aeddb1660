"""Command-line interface: potential / spectrum / scan / verify.

Exit codes are a stable contract:

    0  success (all requested checks passed)
    1  verify: at least one property failed
    2  regime error (parameters not PT-symmetric, or wrong regime)
    3  validation error (bad flags, config, grid or parameter domain)
    4  match error (analytic level without a numerical partner)
    5  eigensolver convergence failure

Common flags may appear before or after the subcommand.  An optional JSON
config file (--config) can override grid and tolerance defaults; explicit
flags always win.  Log verbosity comes from the PTSCARF_LOG environment
variable (error, warn, info, debug).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import solver
from .errors import (
    ConvergenceError,
    DomainError,
    GridError,
    MatchError,
    NonNormalizableError,
    PtScarfError,
    RegimeError,
    ValidationError,
)
from .grids import Grid, pt_apply
from .params import (
    TAU_PARAM,
    Params,
    Regime,
    Sector,
    broken_constraint_params,
    check_pt_condition,
    classify_regime,
    sl2_exchange,
)
from .reporting import (
    ScanRow,
    canonical_dumps,
    complex_to_json,
    grid_to_dict,
    params_to_dict,
    scan_rows_to_csv,
    spectrum_report_to_dict,
)
from .spectrum import bifurcated_spectrum
from .superpotential import (
    Superpotential,
    build_broken_pair,
    build_unbroken,
    check_pt_symmetric_potential,
    ground_state_energy,
    ground_state_wavefunction,
    partner_potential_minus,
)
from .grids import overlap_ratio

logger = logging.getLogger(__name__)

DEFAULT_ALPHA = 1.0
DEFAULT_CPT = 0.0
DEFAULT_POINTS = 4001
DEFAULT_ORDER = 4
# Property thresholds used by the verify suite.
EXPANSION_TOL = 1e-12
UNIQUENESS_TOL = 1e-14
GS_PT_TOL = 1e-6
GS_BROKEN_SELF_MAX = 0.999
_VERIFY_SAMPLES = 1000
_VERIFY_SEED = 1234


@dataclass
class RunConfig:
    """Resolved run configuration (flags over config file over defaults)."""

    command: str
    params: Optional[Params]
    grid: Grid
    order: int
    match_tol: float
    pairing_tol: float
    boundary_tol: float
    energy_margin: float
    out: Optional[Path]
    fmt: str
    scan: Optional[tuple[float, float, int]]
    jobs: int
    # scan needs the raw pieces: B may be absent and is then pinned per point
    raw_a: Optional[float] = None
    raw_b: Optional[float] = None
    alpha: float = DEFAULT_ALPHA


def _setup_logging() -> None:
    levels = {
        "error": logging.ERROR,
        "warn": logging.WARNING,
        "warning": logging.WARNING,
        "info": logging.INFO,
        "debug": logging.DEBUG,
    }
    name = os.environ.get("PTSCARF_LOG", "warn").strip().lower()
    level = levels.get(name)
    if level is None:
        level = logging.WARNING
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("ptscarf").setLevel(level)


def _add_common_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    model = parser.add_argument_group("model parameters")
    model.add_argument("--A", dest="A", type=float, default=d, help="depth parameter A")
    model.add_argument("--B", dest="B", type=float, default=d, help="depth parameter B")
    model.add_argument(
        "--alpha", type=float, default=d, help="width parameter alpha > 0 (default 1.0)"
    )
    model.add_argument(
        "--cpt", dest="cpt", type=float, default=d,
        help="PT-breaking parameter c_pt (default 0.0)",
    )
    grid = parser.add_argument_group("grid and tolerances")
    grid.add_argument(
        "--half-width", dest="half_width", type=float, default=d,
        help="domain half width L (default 20/alpha)",
    )
    grid.add_argument(
        "--points", type=int, default=d, help="odd grid point count (default 4001)"
    )
    grid.add_argument(
        "--order", type=int, choices=(2, 4), default=d,
        help="Laplacian stencil order (default 4)",
    )
    grid.add_argument(
        "--match-tol", dest="match_tol", type=float, default=d,
        help="level matching tolerance (default 5e-3)",
    )
    out = parser.add_argument_group("output")
    out.add_argument("--out", type=str, default=d, help="output file (default stdout)")
    out.add_argument(
        "--format", dest="fmt", choices=("json", "csv"), default=d,
        help="output format (json; scan defaults to csv)",
    )
    scan = parser.add_argument_group("scan")
    scan.add_argument("--scan-min", dest="scan_min", type=float, default=d)
    scan.add_argument("--scan-max", dest="scan_max", type=float, default=d)
    scan.add_argument("--scan-steps", dest="scan_steps", type=int, default=d)
    scan.add_argument(
        "--jobs", type=int, default=d, help="concurrent scan points (default 1)"
    )
    parser.add_argument(
        "--config", type=str, default=d,
        help="JSON file with grid/tolerance overrides (flags take precedence)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptscarf",
        description=(
            "Complex Scarf-II PT-symmetric spectra: analytic construction "
            "checked by a dense non-Hermitian eigensolver"
        ),
    )
    _add_common_flags(parser, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("potential", "emit superpotential(s) and potential coefficients"),
        ("spectrum", "match analytic levels against the numerical spectrum"),
        ("scan", "sweep c_pt and emit the bifurcation table"),
        ("verify", "run the analytic property suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common_flags(p, suppress=True)
    return parser


def _load_config_file(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"config file {path} must hold a JSON object")
    return data


def build_config(ns: argparse.Namespace) -> RunConfig:
    """Resolve the run configuration; raises ValidationError on bad input."""
    file_cfg = _load_config_file(getattr(ns, "config", None))

    def pick(name: str, default=None):
        value = getattr(ns, name, None)
        if value is not None:
            return value
        if name in file_cfg:
            return file_cfg[name]
        return default

    command = ns.command
    raw_a = pick("A")
    raw_b = pick("B")
    alpha = float(pick("alpha", DEFAULT_ALPHA))
    c_pt = float(pick("cpt", DEFAULT_CPT))
    if alpha <= 0.0 or not np.isfinite(alpha):
        raise ValidationError(f"--alpha must be positive and finite, got {alpha}")

    scan = None
    if command == "scan":
        scan_min = pick("scan_min")
        scan_max = pick("scan_max")
        steps = pick("scan_steps")
        if scan_min is None or scan_max is None or steps is None:
            raise ValidationError("scan requires --scan-min, --scan-max, --scan-steps")
        steps = int(steps)
        if steps < 2:
            raise ValidationError(f"--scan-steps must be >= 2, got {steps}")
        scan = (float(scan_min), float(scan_max), steps)
        if raw_a is None:
            raise ValidationError("scan requires --A")
    else:
        if raw_a is None or raw_b is None:
            raise ValidationError(f"{command} requires --A and --B")

    params = None
    if raw_a is not None and raw_b is not None:
        try:
            params = Params(float(raw_a), float(raw_b), alpha, c_pt)
        except DomainError as exc:
            raise ValidationError(str(exc)) from exc

    half_width = float(pick("half_width", 20.0 / alpha))
    points = int(pick("points", DEFAULT_POINTS))
    try:
        grid = Grid(half_width=half_width, n_points=points)
    except GridError as exc:
        raise ValidationError(str(exc)) from exc

    order = int(pick("order", DEFAULT_ORDER))
    if order not in (2, 4):
        raise ValidationError(f"--order must be 2 or 4, got {order}")
    match_tol = float(pick("match_tol", solver.MATCH_TOL))
    pairing_tol = float(pick("pairing_tol", solver.REAL_IM_TOL))
    boundary_tol = float(pick("boundary_tol", solver.BOUNDARY_TOL))
    energy_margin = float(pick("energy_margin", solver.ENERGY_MARGIN))
    for label, value in (
        ("match_tol", match_tol),
        ("pairing_tol", pairing_tol),
        ("boundary_tol", boundary_tol),
    ):
        if value <= 0.0:
            raise ValidationError(f"{label} must be > 0, got {value}")

    fmt = pick("fmt", "csv" if command == "scan" else "json")
    if fmt not in ("json", "csv"):
        raise ValidationError(f"--format must be json or csv, got {fmt}")
    out = pick("out")
    jobs = int(pick("jobs", 1))
    if jobs < 1:
        raise ValidationError(f"--jobs must be >= 1, got {jobs}")

    return RunConfig(
        command=command,
        params=params,
        grid=grid,
        order=order,
        match_tol=match_tol,
        pairing_tol=pairing_tol,
        boundary_tol=boundary_tol,
        energy_margin=energy_margin,
        out=Path(out) if out is not None else None,
        fmt=fmt,
        scan=scan,
        jobs=jobs,
        raw_a=float(raw_a) if raw_a is not None else None,
        raw_b=float(raw_b) if raw_b is not None else None,
        alpha=alpha,
    )


def _superpotential_dict(label: str, w: Superpotential) -> dict:
    try:
        gs: Optional[dict] = complex_to_json(ground_state_energy(w))
    except NonNormalizableError:
        gs = None
    return {
        "label": label,
        "a": complex_to_json(w.a),
        "b": complex_to_json(w.b),
        "alpha": w.alpha,
        "ground_state_energy": gs,
    }


def run_potential(cfg: RunConfig) -> tuple[int, str]:
    """Emit superpotential(s), potential coefficients, regime and PT verdict."""
    p = cfg.params
    regime = classify_regime(p)
    if regime is Regime.NOT_PT_SYMMETRIC:
        raise RegimeError(
            "parameters violate the PT-symmetry condition c_pt*(2*(A-B)+alpha) = 0"
        )
    if regime is Regime.UNBROKEN:
        ws = [("unbroken", build_unbroken(p))]
    else:
        w_plus, w_minus = build_broken_pair(p)
        ws = [("plus", w_plus), ("minus", w_minus)]
    v = partner_potential_minus(ws[0][1])
    payload = {
        "params": params_to_dict(p),
        "regime": regime.value,
        "pt_condition": check_pt_condition(p),
        "superpotentials": [_superpotential_dict(label, w) for label, w in ws],
        "potential": {
            "s": complex_to_json(v.s),
            "t": complex_to_json(v.t),
            "c0": complex_to_json(v.c0),
            "alpha": v.alpha,
        },
        "pt_symmetric_potential": check_pt_symmetric_potential(v),
    }
    return 0, canonical_dumps(payload)


def run_spectrum(cfg: RunConfig) -> tuple[int, str]:
    """Verify the analytic spectrum numerically; exit 0 iff fully matched."""
    try:
        report = solver.verify_spectrum(
            cfg.params,
            cfg.grid,
            order=cfg.order,
            match_tol=cfg.match_tol,
            boundary_tol=cfg.boundary_tol,
            energy_margin=cfg.energy_margin,
            pairing_tol=cfg.pairing_tol,
        )
    except MatchError as exc:
        print(f"ptscarf spectrum: {exc}", file=sys.stderr)
        payload = spectrum_report_to_dict(exc.report)
        payload["grid"] = grid_to_dict(cfg.grid)
        return 4, canonical_dumps(payload)
    payload = spectrum_report_to_dict(report)
    payload["grid"] = grid_to_dict(cfg.grid)
    return 0, canonical_dumps(payload)


def _scan_point_params(cfg: RunConfig, c_pt: float) -> Params:
    # c_pt != 0 pins B = A + alpha/2 (the PT condition forces it); the
    # c_pt = 0 endpoint keeps the user's B for continuity inspection.
    if abs(c_pt) > TAU_PARAM:
        return broken_constraint_params(cfg.raw_a, cfg.alpha, c_pt)
    b = cfg.raw_b if cfg.raw_b is not None else cfg.raw_a + cfg.alpha / 2.0
    return Params(cfg.raw_a, b, cfg.alpha, 0.0)


_SECTOR_RANK = {"plus": 0, "minus": 1, "primary": 0, "sl2_exchanged": 1}


def _scan_point_rows(cfg: RunConfig, run_id: str, c_pt: float) -> list[ScanRow]:
    try:
        p = _scan_point_params(cfg, c_pt)
        try:
            report = solver.verify_spectrum(
                p,
                cfg.grid,
                order=cfg.order,
                match_tol=cfg.match_tol,
                boundary_tol=cfg.boundary_tol,
                energy_margin=cfg.energy_margin,
                pairing_tol=cfg.pairing_tol,
            )
        except MatchError as exc:
            report = exc.report
    except PtScarfError as exc:
        return [
            ScanRow(
                run_id=run_id, c_pt=c_pt, sector="", n=None,
                re_e_analytic=None, im_e_analytic=None,
                re_e_numeric=None, im_e_numeric=None,
                abs_err=None, error=str(exc),
            )
        ]
    by_analytic = {m.analytic_index: m for m in report.matches}
    rows = []
    for idx, level in enumerate(report.analytic):
        match = by_analytic.get(idx)
        if match is not None:
            en = report.numerical[match.numerical_index]
            rows.append(
                ScanRow(
                    run_id=run_id, c_pt=c_pt, sector=level.family, n=level.n,
                    re_e_analytic=level.energy.real, im_e_analytic=level.energy.imag,
                    re_e_numeric=en.real, im_e_numeric=en.imag,
                    abs_err=match.abs_error, error="",
                )
            )
        else:
            rows.append(
                ScanRow(
                    run_id=run_id, c_pt=c_pt, sector=level.family, n=level.n,
                    re_e_analytic=level.energy.real, im_e_analytic=level.energy.imag,
                    re_e_numeric=None, im_e_numeric=None,
                    abs_err=None, error="unmatched",
                )
            )
    rows.sort(key=lambda r: (_SECTOR_RANK.get(r.sector, 9), r.n if r.n is not None else -1))
    return rows


def run_scan(cfg: RunConfig) -> tuple[int, str]:
    """Sweep c_pt along the broken constraint and tabulate both branches."""
    lo, hi, steps = cfg.scan
    values = list(np.linspace(lo, hi, steps))
    # collapse exact duplicates (e.g. a [0, 0] sweep) to a single point
    c_values = []
    for c in values:
        if not c_values or c != c_values[-1]:
            c_values.append(float(c))
    results: dict[int, list[ScanRow]] = {}
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = {
                i: pool.submit(_scan_point_rows, cfg, f"{i:03d}", c)
                for i, c in enumerate(c_values)
            }
            results = {i: f.result() for i, f in futures.items()}
    else:
        for i, c in enumerate(c_values):
            results[i] = _scan_point_rows(cfg, f"{i:03d}", c)
            logger.info("scan point %d/%d done (c_pt=%g)", i + 1, len(c_values), c)
    rows = [row for i in sorted(results) for row in results[i]]
    if cfg.fmt == "csv":
        return 0, scan_rows_to_csv(rows)
    return 0, canonical_dumps({"rows": [r.as_dict() for r in rows]})


def _property(name: str, status: str, defect=None, detail: str = "") -> dict:
    return {
        "name": name,
        "status": status,
        "defect": float(defect) if defect is not None else None,
        "detail": detail,
    }


def _expansion_defect(w: Superpotential, x: np.ndarray) -> float:
    v = partner_potential_minus(w)
    direct = w.evaluate(x) ** 2 - w.derivative(x) - w.a * w.a
    return float(np.max(np.abs(v.evaluate(x) - direct)))


def run_verify(cfg: RunConfig) -> tuple[int, str]:
    """Run the analytic property suite; exit 0 iff no property fails."""
    p = cfg.params
    regime = classify_regime(p)
    props: list[dict] = []
    rng = np.random.default_rng(_VERIFY_SEED)
    x = rng.uniform(-10.0 / p.alpha, 10.0 / p.alpha, size=_VERIFY_SAMPLES)

    # 1. PT-symmetry condition on the parameters
    product = p.c_pt * (2.0 * (p.A - p.B) + p.alpha)
    props.append(
        _property(
            "pt_condition",
            "pass" if check_pt_condition(p) else "fail",
            defect=abs(product),
        )
    )

    superpotentials: list[tuple[str, Superpotential]] = []
    if regime is Regime.UNBROKEN:
        superpotentials = [("unbroken", build_unbroken(p))]
    elif regime is Regime.BROKEN:
        w_plus, w_minus = build_broken_pair(p)
        superpotentials = [("plus", w_plus), ("minus", w_minus)]

    # 2. closed-form coefficients reproduce W^2 - W' - a^2 pointwise
    if not superpotentials:
        props.append(_property("potential_expansion", "skipped", detail="no regime"))
    else:
        defect = max(_expansion_defect(w, x) for _, w in superpotentials)
        props.append(
            _property(
                "potential_expansion",
                "pass" if defect <= EXPANSION_TOL else "fail",
                defect=defect,
            )
        )

    # 3. both broken-sector superpotentials share one potential
    if regime is not Regime.BROKEN:
        props.append(
            _property("unique_broken_potential", "skipped", detail="broken regime only")
        )
    else:
        vp = partner_potential_minus(superpotentials[0][1])
        vm = partner_potential_minus(superpotentials[1][1])
        defect = max(abs(vp.s - vm.s), abs(vp.t - vm.t), abs(vp.c0 - vm.c0))
        props.append(
            _property(
                "unique_broken_potential",
                "pass" if defect <= UNIQUENESS_TOL else "fail",
                defect=defect,
            )
        )

    # 4. the parameter exchange reduces to c_pt negation, and is an involution
    if regime is not Regime.BROKEN:
        props.append(
            _property("exchange_negates_cpt", "skipped", detail="broken regime only")
        )
    else:
        q = sl2_exchange(p, Sector.PLUS)
        r = sl2_exchange(q, Sector.PLUS)
        defect = max(
            abs(q.A - p.A), abs(q.B - p.B), abs(q.c_pt + p.c_pt),
            abs(r.A - p.A), abs(r.B - p.B), abs(r.c_pt - p.c_pt),
        )
        props.append(
            _property(
                "exchange_negates_cpt",
                "pass" if defect <= TAU_PARAM else "fail",
                defect=defect,
            )
        )

    # 5. the exchange swaps the two bifurcated families and nothing else
    if regime is not Regime.BROKEN:
        props.append(
            _property("exchange_swaps_sectors", "skipped", detail="broken regime only")
        )
    else:
        try:
            fam_plus, fam_minus = bifurcated_spectrum(p)
            x_plus, x_minus = bifurcated_spectrum(sl2_exchange(p, Sector.PLUS))
            defect = 0.0
            for fam, swapped in ((fam_plus, x_minus), (fam_minus, x_plus)):
                for (n1, e1), (n2, e2) in zip(fam.levels, swapped.levels):
                    defect = max(defect, abs(e1 - e2))
                if len(fam.levels) != len(swapped.levels):
                    defect = float("inf")
            props.append(
                _property(
                    "exchange_swaps_sectors",
                    "pass" if defect <= TAU_PARAM else "fail",
                    defect=defect,
                )
            )
        except NonNormalizableError as exc:
            props.append(_property("exchange_swaps_sectors", "fail", detail=str(exc)))

    # 6. the potential itself is PT-symmetric (coefficients and on the grid)
    if not superpotentials:
        props.append(
            _property("pt_symmetric_potential", "skipped", detail="no regime")
        )
    else:
        v = partner_potential_minus(superpotentials[0][1])
        vx = v.evaluate(x)
        grid_defect = float(np.max(np.abs(np.conj(v.evaluate(-x)) - vx)))
        coeff_defect = max(abs(v.s.imag), abs(v.t.real), abs(v.c0.imag))
        defect = max(grid_defect, coeff_defect)
        props.append(
            _property(
                "pt_symmetric_potential",
                "pass" if check_pt_symmetric_potential(v) and defect <= 1e-12 else "fail",
                defect=defect,
            )
        )

    # 7. ground state: PT-invariant iff unbroken; broken sectors are PT-images
    if not superpotentials:
        props.append(_property("ground_state_pt", "skipped", detail="no regime"))
    else:
        try:
            if regime is Regime.UNBROKEN:
                psi = ground_state_wavefunction(superpotentials[0][1], cfg.grid)
                overlap = overlap_ratio(pt_apply(psi), psi)
                ok = overlap >= 1.0 - GS_PT_TOL
                props.append(
                    _property(
                        "ground_state_pt",
                        "pass" if ok else "fail",
                        defect=1.0 - overlap,
                        detail=f"pt_self_overlap={overlap!r}",
                    )
                )
            else:
                psi_plus = ground_state_wavefunction(superpotentials[0][1], cfg.grid)
                psi_minus = ground_state_wavefunction(superpotentials[1][1], cfg.grid)
                cross = overlap_ratio(pt_apply(psi_plus), psi_minus)
                self_overlap = overlap_ratio(pt_apply(psi_plus), psi_plus)
                ok = cross >= 1.0 - GS_PT_TOL and self_overlap <= GS_BROKEN_SELF_MAX
                props.append(
                    _property(
                        "ground_state_pt",
                        "pass" if ok else "fail",
                        defect=max(1.0 - cross, self_overlap - GS_BROKEN_SELF_MAX),
                        detail=(
                            f"sector_swap_overlap={cross!r} "
                            f"pt_self_overlap={self_overlap!r}"
                        ),
                    )
                )
        except NonNormalizableError as exc:
            props.append(_property("ground_state_pt", "fail", detail=str(exc)))

    failed = [q["name"] for q in props if q["status"] == "fail"]
    payload = {
        "params": params_to_dict(p),
        "regime": regime.value,
        "properties": props,
        "all_pass": not failed,
    }
    if failed:
        print(f"ptscarf verify: failing properties: {', '.join(failed)}", file=sys.stderr)
    return (0 if not failed else 1), canonical_dumps(payload)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


_HANDLERS = {
    "potential": run_potential,
    "spectrum": run_spectrum,
    "scan": run_scan,
    "verify": run_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; remap onto the validation code
        code = exc.code if exc.code is not None else 0
        return 3 if code == 2 else int(code)
    _setup_logging()
    try:
        cfg = build_config(ns)
        code, text = _HANDLERS[ns.command](cfg)
        _emit(text, cfg.out)
        return code
    except ValidationError as exc:
        print(f"ptscarf: invalid configuration: {exc}", file=sys.stderr)
        return 3
    except (DomainError, GridError, NonNormalizableError, ValueError) as exc:
        print(f"ptscarf: {exc}", file=sys.stderr)
        return 3
    except RegimeError as exc:
        print(f"ptscarf: {exc}", file=sys.stderr)
        return 2
    except MatchError as exc:
        print(f"ptscarf: {exc}", file=sys.stderr)
        return 4
    except ConvergenceError as exc:
        print(f"ptscarf: eigensolver did not converge: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
