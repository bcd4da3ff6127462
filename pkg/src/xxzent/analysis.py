"""Delta scans, derivative identities, extremum reports, and least-squares fits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ed, entanglement, spinwave
from .lattice import LatticeSpec, build_lattice

GRID_UNIFORMITY_RTOL = 1e-8
DELTA_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class ScanSample:
    """One delta point of a concurrence curve.

    Failed solves are kept as explicit gaps: ok=False, NaN payload, and the
    failure reason in `error`.
    """

    delta: float
    concurrence: float
    energy_per_bond: float
    gzz: float
    energy_total: float
    ok: bool = True
    error: str | None = None
    iterations: int = 0
    residual: float = 0.0


@dataclass(frozen=True)
class ConcurrenceCurve:
    """Samples of C(delta) from one engine, deltas strictly increasing."""

    engine: str
    provenance: str
    samples: tuple[ScanSample, ...]

    def __post_init__(self) -> None:
        if self.engine not in ("ed", "spinwave"):
            raise ValueError(f"unknown engine {self.engine!r}")
        d = self.deltas()
        if len(d) and np.any(np.diff(d) <= 0):
            raise ValueError("deltas must be strictly increasing")

    def _column(self, name: str) -> np.ndarray:
        return np.array([getattr(s, name) for s in self.samples], dtype=float)

    def deltas(self) -> np.ndarray:
        return self._column("delta")

    def concurrences(self) -> np.ndarray:
        return self._column("concurrence")

    def energies_per_bond(self) -> np.ndarray:
        return self._column("energy_per_bond")

    def gzzs(self) -> np.ndarray:
        return self._column("gzz")

    def energies_total(self) -> np.ndarray:
        return self._column("energy_total")

    def all_ok(self) -> bool:
        return all(s.ok for s in self.samples)

    def restrict(self, lo: float, hi: float) -> "ConcurrenceCurve":
        """Sub-curve with lo <= delta <= hi (small tolerance on the edges)."""
        kept = tuple(
            s for s in self.samples if lo - DELTA_MATCH_TOL <= s.delta <= hi + DELTA_MATCH_TOL
        )
        return ConcurrenceCurve(self.engine, self.provenance, kept)


def delta_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Uniform grid start, start+step, ..., stop (stop included within 1e-9)."""
    if step <= 0:
        raise ValueError("step must be positive")
    if stop < start:
        raise ValueError("stop must be >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def scan_ed(
    spec: LatticeSpec,
    deltas,
    *,
    m: float = 0.0,
    tol: float = ed.DEFAULT_TOL,
    max_iter: int = ed.DEFAULT_MAX_ITER,
    seed: int = ed.DEFAULT_SEED,
) -> ConcurrenceCurve:
    """Exact-diagonalization C(delta) curve with bond-averaged correlators."""
    lattice = build_lattice(spec)
    basis = ed.enumerate_basis(lattice.n_sites, m)
    samples = []
    for delta in np.asarray(deltas, dtype=float):
        h = ed.build_hamiltonian(lattice, float(delta), basis)
        try:
            gs = ed.lanczos_ground(h, tol=tol, max_iter=max_iter, seed=seed, m=m)
        except ed.LanczosError as exc:
            samples.append(
                ScanSample(float(delta), math.nan, math.nan, math.nan, math.nan,
                           ok=False, error=str(exc))
            )
            continue
        g = entanglement.mean_bond_correlators(gs, basis, lattice)
        c = entanglement.concurrence_corr(g)
        samples.append(
            ScanSample(float(delta), c, gs.energy / lattice.n_bonds, g.gzz, gs.energy,
                       iterations=gs.iterations, residual=gs.residual)
        )
    bc = "periodic" if spec.periodic else "open"
    prov = (
        f"ed d={spec.dimension} L={spec.linear_size} {bc} m={m} "
        f"tol={tol} seed={seed}"
    )
    return ConcurrenceCurve("ed", prov, tuple(samples))


def scan_spinwave(
    dimension: int,
    deltas,
    *,
    k_points: int | None = None,
    spin: float = 0.5,
    h: float = spinwave.DEFAULT_FD_STEP,
) -> ConcurrenceCurve:
    """Spin-wave C(delta) curve; energy_total is NaN (thermodynamic limit)."""
    n_k = k_points or spinwave.default_k_points(dimension)
    samples = []
    for delta in np.asarray(deltas, dtype=float):
        d = float(delta)
        eps = spinwave.energy_per_bond(d, dimension, n_k, spin)
        g = spinwave.gzz_per_bond(d, dimension, n_k, h=h, spin=spin)
        c = 2.0 * max(-eps - 0.25 + (d - 1.0) * g, 0.0)
        samples.append(ScanSample(d, c, eps, g, math.nan))
    prov = f"spinwave d={dimension} kgrid={n_k} spin={spin} h={h}"
    return ConcurrenceCurve("spinwave", prov, tuple(samples))


def scan(model: LatticeSpec | spinwave.SpinWaveModel, deltas, **kwargs) -> ConcurrenceCurve:
    """Dispatch on the model type."""
    if isinstance(model, LatticeSpec):
        return scan_ed(model, deltas, **kwargs)
    if isinstance(model, spinwave.SpinWaveModel):
        return scan_spinwave(
            model.dimension, deltas, k_points=model.resolved_k_points,
            spin=model.spin, **kwargs,
        )
    raise TypeError(f"cannot scan a {type(model).__name__}")


def hellmann_feynman_residual(
    spec: LatticeSpec,
    delta: float,
    *,
    h: float = 1e-4,
    m: float = 0.0,
    tol: float = ed.DEFAULT_TOL,
    max_iter: int = ed.DEFAULT_MAX_ITER,
    seed: int = ed.DEFAULT_SEED,
) -> float:
    """|dE0/ddelta - N_B Gzz| with a central difference of step h."""
    lattice = build_lattice(spec)
    basis = ed.enumerate_basis(lattice.n_sites, m)

    def energy(d: float) -> float:
        hmat = ed.build_hamiltonian(lattice, d, basis)
        return ed.lanczos_ground(hmat, tol=tol, max_iter=max_iter, seed=seed, m=m).energy

    de = (energy(delta + h) - energy(delta - h)) / (2.0 * h)
    hmat = ed.build_hamiltonian(lattice, delta, basis)
    gs = ed.lanczos_ground(hmat, tol=tol, max_iter=max_iter, seed=seed, m=m)
    g = entanglement.mean_bond_correlators(gs, basis, lattice)
    return abs(de - lattice.n_bonds * g.gzz)


def _uniform_step(deltas: np.ndarray) -> float:
    if len(deltas) < 3:
        raise ValueError("need at least 3 samples")
    steps = np.diff(deltas)
    h = float(steps[0])
    if np.any(np.abs(steps - h) > GRID_UNIFORMITY_RTOL * max(abs(h), 1.0)):
        raise ValueError("grid is not uniform")
    return h


def second_differences(values: np.ndarray, step: float) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return (v[2:] - 2.0 * v[1:-1] + v[:-2]) / step**2


def concavity_check(curve: ConcurrenceCurve, quantity: str | None = None) -> np.ndarray:
    """Interior second differences of the energy along the curve.

    For a concave ground-state energy every entry is <= 0 up to solver
    noise. ED curves use the total energy; spin-wave curves fall back to
    the per-bond density (no finite total exists) and are only meaningful
    within a single branch.
    """
    if quantity is None:
        quantity = "energy_total" if curve.engine == "ed" else "energy_per_bond"
    _uniform_step(curve.deltas())  # validates uniformity, >= 3 points
    v = curve._column(quantity)
    return v[2:] - 2.0 * v[1:-1] + v[:-2]


@dataclass(frozen=True)
class ExtremumReport:
    """Discrete argmax and one-sided slopes of C at delta = 1."""

    delta_star: float
    left_slope: float
    right_slope: float

    @property
    def cusp(self) -> float:
        return abs(self.right_slope - self.left_slope)


def extremum_and_derivative(curve: ConcurrenceCurve) -> ExtremumReport:
    """Argmax at grid resolution plus one-sided slopes about delta = 1.

    The slope estimates use the immediate neighbors of the grid point at
    delta = 1, so their scale is tied to the grid step: for a smooth curve
    the cusp shrinks linearly with the step, for a genuine kink it does not.
    """
    deltas = curve.deltas()
    c = curve.concurrences()
    if np.any(~np.isfinite(c)):
        raise ValueError("curve has failed samples")
    i1 = int(np.argmin(np.abs(deltas - 1.0)))
    if abs(deltas[i1] - 1.0) > DELTA_MATCH_TOL:
        raise ValueError("grid must contain delta = 1")
    if i1 == 0 or i1 == len(deltas) - 1:
        raise ValueError("delta = 1 needs a neighbor on each side")
    delta_star = float(deltas[int(np.argmax(c))])
    left = float((c[i1] - c[i1 - 1]) / (deltas[i1] - deltas[i1 - 1]))
    right = float((c[i1 + 1] - c[i1]) / (deltas[i1 + 1] - deltas[i1]))
    return ExtremumReport(delta_star=delta_star, left_slope=left, right_slope=right)


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit summary."""

    coefficients: tuple[float, ...]
    residual_norm: float
    data_norm: float
    n_points: int
    dof: int
    window: tuple[float, float] | None = None

    @property
    def relative_residual(self) -> float:
        return self.residual_norm / self.data_norm if self.data_norm else math.inf

    @property
    def low_confidence(self) -> bool:
        return self.dof <= 0


def quadratic_fit_near_iso(
    curve: ConcurrenceCurve, window: tuple[float, float] = (0.9, 1.1)
) -> FitResult:
    """Fit C ~ c0 - c1 (delta - 1)^2 inside the window (needs >= 5 points)."""
    lo, hi = window
    sub = curve.restrict(lo, hi)
    deltas = sub.deltas()
    c = sub.concurrences()
    if len(deltas) < 5:
        raise ValueError(f"need >= 5 points in window, got {len(deltas)}")
    a = np.column_stack([np.ones_like(deltas), -((deltas - 1.0) ** 2)])
    coef, _, _, _ = np.linalg.lstsq(a, c, rcond=None)
    resid = float(np.linalg.norm(a @ coef - c))
    return FitResult(
        coefficients=tuple(float(x) for x in coef),
        residual_norm=resid,
        data_norm=float(np.linalg.norm(c)),
        n_points=len(deltas),
        dof=len(deltas) - 2,
        window=window,
    )


def polynomial_inverse_l_fit(pairs, degree: int) -> FitResult:
    """Fit value(L) = sum_n a_n (1/L)^n; a_0 is the extrapolated limit."""
    ls = np.array([float(l) for l, _ in pairs])
    ys = np.array([float(v) for _, v in pairs])
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if len(set(ls.tolist())) < degree + 1:
        raise ValueError(f"degree {degree} fit needs {degree + 1} distinct sizes")
    a = np.column_stack([(1.0 / ls) ** n for n in range(degree + 1)])
    coef, _, _, _ = np.linalg.lstsq(a, ys, rcond=None)
    resid = float(np.linalg.norm(a @ coef - ys))
    return FitResult(
        coefficients=tuple(float(x) for x in coef),
        residual_norm=resid,
        data_norm=float(np.linalg.norm(ys)),
        n_points=len(ls),
        dof=len(ls) - (degree + 1),
    )


def slope_identity_residuals(curve: ConcurrenceCurve) -> np.ndarray:
    """|dC/ddelta - 2 (delta - 1) d2(eps0)/ddelta2| at interior grid points.

    Both derivatives are central differences on the curve's own grid, so
    for an exact curve the residual shrinks as O(step^2). Meaningful while
    the concurrence clamp is inactive (C > 0 with Gxx + Gyy < 0).
    """
    deltas = curve.deltas()
    h = _uniform_step(deltas)
    c = curve.concurrences()
    eps = curve.energies_per_bond()
    dc = (c[2:] - c[:-2]) / (2.0 * h)
    d2e = second_differences(eps, h)
    return np.abs(dc - 2.0 * (deltas[1:-1] - 1.0) * d2e)
