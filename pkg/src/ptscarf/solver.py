"""Dense non-Hermitian eigensolver check for the analytic spectra.

The Hamiltonian H = -d^2/dx^2 + V(x) with complex V is discretized on a
finite symmetric grid with Dirichlet walls (3- or 5-point Laplacian
stencil), all eigenvalues of the resulting dense complex matrix are
computed, bound states are separated from discretized-continuum artifacts,
and the survivors are matched one-to-one against the analytic families.

Notes on the numerics:
  * The matrix is complex symmetric, not Hermitian, so the backend is the
    general dense eigensolver (balancing + Hessenberg + shifted QR via
    LAPACK zgeev).  O(n^3): about 1.5 min at n ~ 4000 on one core.
  * Eigenvectors are recovered only for candidate eigenvalues, by inverse
    iteration with the computed eigenvalue as shift, solving the shifted
    system in banded form (the stencil has bandwidth <= 2).
  * Bound-state filtering uses the eigenvector amplitude near the walls
    rather than an energy cutoff alone: continuum artifacts can acquire
    small complex shifts with Re(E) near 0, while genuine bound states in
    the broken regime can sit exactly at Re(E) = 0.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import ConvergenceError, GridError, MatchError, RegimeError
from .grids import Grid, Wavefunction, overlap_ratio, pt_apply
from .params import Params, Regime, Sector, classify_regime
from .spectrum import EnergyFamily, analytic_families
from .superpotential import (
    PotentialCoeffs,
    build_broken_pair,
    build_unbroken,
    check_pt_symmetric_potential,
    ground_state_wavefunction,
    partner_potential_minus,
)

logger = logging.getLogger(__name__)

# Bound-state filter: eigenvector amplitude near the Dirichlet walls,
# relative to the peak amplitude.  The shallowest states required by the
# verification runs sit at ~3e-6 on the default grid, continuum artifacts
# at ~1e-2, so 1e-4 separates them with two decades of margin either way.
BOUNDARY_TOL = 1e-4
# Candidate energies must satisfy Re(E) < ENERGY_MARGIN.  A strict Re < 0
# cutoff would be wrong: broken-regime levels can have Re(E) = 0 exactly,
# and the discretized value lands on either side of 0.
ENERGY_MARGIN = 1e-3
# Matching tolerance: absolute for |E| <= 1, relative beyond.
MATCH_TOL = 5e-3
# |Im(E)| below this (scaled) threshold counts as a real eigenvalue.
REAL_IM_TOL = 1e-6
MAX_DENSE_DIM = 6000
_GS_PT_TOL = 1e-6


def discretize(v: PotentialCoeffs, g: Grid, order: int = 4) -> np.ndarray:
    """Dense matrix of -d^2/dx^2 + V on the grid's interior nodes.

    Dirichlet boundaries: the end nodes carry psi = 0 and are excluded, so
    the matrix has dimension n_points - 2.  order selects the 3-point (2)
    or 5-point (4) Laplacian stencil; the diagonal carries V(x_i).
    """
    if order not in (2, 4):
        raise ValueError(f"stencil order must be 2 or 4, got {order!r}")
    if g.n_points < 5 and order == 4:
        raise GridError("the 5-point stencil needs at least 5 grid points")
    h = g.h
    vx = v.evaluate(g.x())[1:-1]
    dim = g.n_points - 2
    m = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim)
    if order == 2:
        m[idx, idx] = 2.0 / h**2 + vx
        m[idx[:-1], idx[:-1] + 1] = -1.0 / h**2
        m[idx[1:], idx[1:] - 1] = -1.0 / h**2
    else:
        m[idx, idx] = 30.0 / (12.0 * h**2) + vx
        m[idx[:-1], idx[:-1] + 1] = -16.0 / (12.0 * h**2)
        m[idx[1:], idx[1:] - 1] = -16.0 / (12.0 * h**2)
        m[idx[:-2], idx[:-2] + 2] = 1.0 / (12.0 * h**2)
        m[idx[2:], idx[2:] - 2] = 1.0 / (12.0 * h**2)
    return m


def eig_complex_dense(
    m: np.ndarray, max_dim: int = MAX_DENSE_DIM, overwrite: bool = False
) -> np.ndarray:
    """All eigenvalues of a dense complex matrix (LAPACK zgeev).

    The eigenvalue sum is checked against the trace to 1e-8 relative to the
    Frobenius norm as a sanity guard on the backend.

    Raises:
      ConvergenceError: if the QR iteration fails or the trace identity is
        violated; whatever was computed is attached as .partial.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dim = m.shape[0]
    if dim > max_dim:
        raise ValueError(f"matrix dimension {dim} exceeds configured max {max_dim}")
    trace = complex(np.trace(m))
    frob = float(np.linalg.norm(m))
    t0 = time.perf_counter()
    try:
        eigs = scipy.linalg.eigvals(m, overwrite_a=overwrite, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"dense eigensolver failed: {exc}") from exc
    logger.debug("eigvals dim=%d took %.2fs", dim, time.perf_counter() - t0)
    defect = abs(complex(np.sum(eigs)) - trace)
    if defect > 1e-8 * max(frob, 1.0):
        raise ConvergenceError(
            f"eigenvalue sum deviates from trace by {defect:.3e} "
            f"(matrix norm {frob:.3e})",
            partial=eigs,
        )
    return eigs


def _extract_bands(m: np.ndarray, halfwidth: int) -> np.ndarray:
    """Banded storage (scipy solve_banded layout) of a banded dense matrix."""
    dim = m.shape[0]
    ab = np.zeros((2 * halfwidth + 1, dim), dtype=complex)
    for d in range(-halfwidth, halfwidth + 1):
        diag = np.diagonal(m, offset=d)
        ab[halfwidth - d, max(d, 0) : max(d, 0) + diag.size] = diag
    return ab


def _inverse_iteration(
    bands: np.ndarray, halfwidth: int, eigenvalue: complex, iterations: int = 3
) -> np.ndarray:
    """Eigenvector by inverse iteration with the eigenvalue as shift.

    The shift is offset by ~1e-10 so the factorization never hits the exact
    singularity; 2-3 solves are enough for filtering and overlap purposes.
    """
    dim = bands.shape[1]
    rng = np.random.default_rng(0x5CA2F)
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    vec /= np.linalg.norm(vec)
    delta = 1e-10 * max(1.0, abs(eigenvalue))
    for attempt in range(4):
        shifted = bands.copy()
        shifted[halfwidth, :] -= eigenvalue + delta * (1.0 + 1.0j)
        try:
            v = vec
            for _ in range(iterations):
                v = scipy.linalg.solve_banded((halfwidth, halfwidth), shifted, v)
                v /= np.linalg.norm(v)
            return v
        except np.linalg.LinAlgError:
            delta *= 100.0  # singular factorization; back the shift off further
    raise ConvergenceError(
        f"inverse iteration failed to factorize near eigenvalue {eigenvalue!r}"
    )


def _embed_interior(vec: np.ndarray, g: Grid) -> Wavefunction:
    values = np.zeros(g.n_points, dtype=complex)
    values[1:-1] = vec
    return Wavefunction(g, values)


def _boundary_ratio(psi: Wavefunction) -> float:
    """max(|psi(+-L)|, |psi(+-(L-5h))|) relative to the peak amplitude."""
    v = np.abs(psi.values)
    n = psi.grid.n_points
    k = min(5, n - 1)
    edge = max(v[0], v[-1], v[k], v[n - 1 - k])
    return float(edge / v.max())


def filter_bound_states(
    eigs: Sequence[complex],
    vectors: Sequence[Wavefunction],
    boundary_tol: float = BOUNDARY_TOL,
    energy_margin: float = ENERGY_MARGIN,
) -> list[complex]:
    """Keep eigenvalues whose eigenvectors are localized away from the walls.

    A state survives iff Re(E) < energy_margin (the asymptotic potential is
    0) and the wall amplitude ratio is below boundary_tol.
    """
    if len(eigs) != len(vectors):
        raise ValueError("eigs and vectors must have equal length")
    kept = []
    for e, psi in zip(eigs, vectors):
        if e.real >= energy_margin:
            continue
        if _boundary_ratio(psi) <= boundary_tol:
            kept.append(complex(e))
    return kept


@dataclass(frozen=True)
class BoundStates:
    """Bound-state eigenvalues with eigenvectors and the full raw spectrum."""

    eigenvalues: tuple[complex, ...]
    vectors: tuple[Wavefunction, ...]
    all_eigenvalues: np.ndarray


def solve_bound_states(
    v: PotentialCoeffs,
    g: Grid,
    order: int = 4,
    boundary_tol: float = BOUNDARY_TOL,
    energy_margin: float = ENERGY_MARGIN,
    max_dim: int = MAX_DENSE_DIM,
) -> BoundStates:
    """Full pipeline: discretize, eigensolve, recover vectors, filter.

    Returns bound states sorted by (Re, Im) for deterministic reporting.
    """
    m = discretize(v, g, order=order)
    halfwidth = 1 if order == 2 else 2
    bands = _extract_bands(m, halfwidth)
    eigs = eig_complex_dense(m, max_dim=max_dim, overwrite=True)
    del m
    candidates = [complex(e) for e in eigs if e.real < energy_margin]
    candidates.sort(key=lambda e: (e.real, e.imag))
    kept_e = []
    kept_v = []
    for e in candidates:
        psi = _embed_interior(_inverse_iteration(bands, halfwidth, e), g)
        if _boundary_ratio(psi) <= boundary_tol:
            kept_e.append(e)
            kept_v.append(psi)
    logger.info(
        "bound states: %d of %d candidates kept (dim %d)",
        len(kept_e),
        len(candidates),
        eigs.size,
    )
    return BoundStates(tuple(kept_e), tuple(kept_v), eigs)


@dataclass(frozen=True)
class PairingReport:
    """Conjugate-pair structure of a set of eigenvalues.

    pairs holds (i, j, defect) with defect = |e_i - conj(e_j)|; eigenvalues
    with |Im| below the real threshold are self-paired; an odd leftover
    lands in unpaired.
    """

    pairs: tuple[tuple[int, int, float], ...]
    self_paired: tuple[int, ...]
    unpaired: tuple[int, ...]
    max_defect: float


def conjugate_pairing_check(
    eigs: Sequence[complex], tol: float = REAL_IM_TOL
) -> PairingReport:
    """Greedily pair complex eigenvalues with their nearest conjugates.

    tol is the (scale-aware) imaginary-part threshold below which an
    eigenvalue counts as real and pairs with itself.
    """
    eigs = [complex(e) for e in eigs]
    self_paired = []
    complex_idx = []
    for i, e in enumerate(eigs):
        if abs(e.imag) <= tol * max(1.0, abs(e)):
            self_paired.append(i)
        else:
            complex_idx.append(i)
    complex_idx.sort(key=lambda i: (eigs[i].real, eigs[i].imag))
    free = set(complex_idx)
    pairs = []
    leftover = []
    for i in complex_idx:
        if i not in free:
            continue
        free.discard(i)
        best = None
        for j in sorted(free):
            defect = abs(eigs[i] - np.conj(eigs[j]))
            if best is None or defect < best[1]:
                best = (j, defect)
        if best is None:
            leftover.append(i)  # odd one out, no conjugate candidate left
            continue
        free.discard(best[0])
        pairs.append((i, best[0], float(best[1])))
    unpaired = tuple(sorted(leftover))
    max_defect = max((d for _, _, d in pairs), default=0.0)
    return PairingReport(tuple(pairs), tuple(self_paired), unpaired, max_defect)


@dataclass(frozen=True)
class Match:
    analytic_index: int
    numerical_index: int
    abs_error: float


def match_levels(
    analytic: Sequence[complex],
    numerical: Sequence[complex],
    match_tol: float = MATCH_TOL,
) -> tuple[tuple[Match, ...], tuple[int, ...], tuple[int, ...]]:
    """One-to-one nearest-neighbor assignment in the complex plane.

    Greedy by ascending error first; if that leaves analytic levels
    unmatched while numerical values remain, a Hungarian assignment on the
    full cost matrix is tried and kept when it matches more levels.  The
    per-level tolerance is match_tol * max(1, |E_analytic|).

    Returns (matches, unmatched_analytic_indices, unmatched_numerical_indices).
    """
    analytic = [complex(e) for e in analytic]
    numerical = [complex(e) for e in numerical]

    def tol_for(e: complex) -> float:
        return match_tol * max(1.0, abs(e))

    def greedy() -> list[Match]:
        cands = sorted(
            (abs(ea - en), i, j)
            for i, ea in enumerate(analytic)
            for j, en in enumerate(numerical)
        )
        taken_a: set[int] = set()
        taken_n: set[int] = set()
        out = []
        for err, i, j in cands:
            if i in taken_a or j in taken_n or err > tol_for(analytic[i]):
                continue
            taken_a.add(i)
            taken_n.add(j)
            out.append(Match(i, j, float(err)))
        return out

    matches = greedy()
    if len(matches) < min(len(analytic), len(numerical)):
        cost = np.array(
            [[abs(ea - en) for en in numerical] for ea in analytic], dtype=float
        )
        if cost.size:
            rows, cols = linear_sum_assignment(cost)
            hungarian = [
                Match(int(i), int(j), float(cost[i, j]))
                for i, j in zip(rows, cols)
                if cost[i, j] <= tol_for(analytic[i])
            ]
            if len(hungarian) > len(matches):
                matches = hungarian
    matches.sort(key=lambda m: m.analytic_index)
    matched_a = {m.analytic_index for m in matches}
    matched_n = {m.numerical_index for m in matches}
    unmatched_a = tuple(i for i in range(len(analytic)) if i not in matched_a)
    unmatched_n = tuple(j for j in range(len(numerical)) if j not in matched_n)
    return tuple(matches), unmatched_a, unmatched_n


@dataclass(frozen=True)
class LabeledLevel:
    """One analytic level tagged with its family label and ladder index."""

    family: str
    n: int
    energy: complex


@dataclass(frozen=True)
class SpectrumReport:
    """Verification verdict: analytic vs numerical spectra plus PT diagnostics."""

    params: Params
    regime: Regime
    families: tuple[EnergyFamily, ...]
    analytic: tuple[LabeledLevel, ...]
    numerical: tuple[complex, ...]
    matches: tuple[Match, ...]
    unmatched_analytic: tuple[int, ...]
    unmatched_numerical: tuple[int, ...]
    match_tol: float
    pairing: PairingReport
    pt_potential_defect: float
    pt_potential_symmetric: bool
    ground_state_pt_overlap: float
    sector_swap_overlap: Optional[float]
    ground_state_pt_invariant: bool

    @property
    def all_matched(self) -> bool:
        return not self.unmatched_analytic

    def max_match_error(self) -> float:
        return max((m.abs_error for m in self.matches), default=0.0)


def verify_spectrum(
    p: Params,
    g: Grid,
    order: int = 4,
    match_tol: float = MATCH_TOL,
    boundary_tol: float = BOUNDARY_TOL,
    energy_margin: float = ENERGY_MARGIN,
    pairing_tol: float = REAL_IM_TOL,
    max_dim: int = MAX_DENSE_DIM,
) -> SpectrumReport:
    """Check every analytic level against the dense eigensolver.

    Assembles the analytic families (union over sectors and exchanged
    families), solves the discretized problem, matches levels one-to-one,
    runs the conjugate-pairing check, and evaluates the PT diagnostics:
    the potential must be PT-symmetric on the grid, while the ground state
    is PT-invariant iff the regime is unbroken.

    Raises:
      RegimeError: for parameters that are not PT-symmetric.
      MatchError: if any analytic level has no numerical partner within
        tolerance (the assembled report rides on the exception).
    """
    regime = classify_regime(p)
    if regime is Regime.NOT_PT_SYMMETRIC:
        raise RegimeError(
            "parameters violate the PT-symmetry condition "
            "c_pt*(2*(A-B)+alpha) = 0"
        )
    families = analytic_families(p)
    labeled = tuple(
        LabeledLevel(fam.label(), n, e) for fam in families for n, e in fam.levels
    )

    if regime is Regime.UNBROKEN:
        w_ref = build_unbroken(p)
    else:
        w_ref = build_broken_pair(p)[0]
    v = partner_potential_minus(w_ref)

    bound = solve_bound_states(
        v,
        g,
        order=order,
        boundary_tol=boundary_tol,
        energy_margin=energy_margin,
        max_dim=max_dim,
    )
    numerical = bound.eigenvalues
    matches, unmatched_a, unmatched_n = match_levels(
        [l.energy for l in labeled], numerical, match_tol
    )
    pairing = conjugate_pairing_check(numerical, tol=pairing_tol)

    x = g.x()
    vx = v.evaluate(x)
    pt_defect = float(np.max(np.abs(np.conj(vx[::-1]) - vx)))
    pt_symmetric = check_pt_symmetric_potential(v) and pt_defect <= 1e-12

    if regime is Regime.UNBROKEN:
        psi = ground_state_wavefunction(w_ref, g)
        gs_overlap = overlap_ratio(pt_apply(psi), psi)
        swap_overlap = None
    else:
        w_plus, w_minus = build_broken_pair(p)
        psi_plus = ground_state_wavefunction(w_plus, g)
        psi_minus = ground_state_wavefunction(w_minus, g)
        gs_overlap = overlap_ratio(pt_apply(psi_plus), psi_plus)
        swap_overlap = overlap_ratio(pt_apply(psi_plus), psi_minus)
    gs_invariant = gs_overlap >= 1.0 - _GS_PT_TOL

    report = SpectrumReport(
        params=p,
        regime=regime,
        families=families,
        analytic=labeled,
        numerical=numerical,
        matches=matches,
        unmatched_analytic=unmatched_a,
        unmatched_numerical=unmatched_n,
        match_tol=match_tol,
        pairing=pairing,
        pt_potential_defect=pt_defect,
        pt_potential_symmetric=pt_symmetric,
        ground_state_pt_overlap=gs_overlap,
        sector_swap_overlap=swap_overlap,
        ground_state_pt_invariant=gs_invariant,
    )
    if unmatched_a:
        missing = ", ".join(
            f"{labeled[i].family}[n={labeled[i].n}] E={labeled[i].energy:.6g}"
            for i in unmatched_a
        )
        raise MatchError(
            f"analytic levels without numerical partner: {missing}", report=report
        )
    return report
