"""Shared fixtures and brute-force oracles for the test suite.

The dense helpers here rebuild quantities from first principles (full
2^N Hilbert space, explicit partial traces) so the package's sector-based
fast paths are checked against independent constructions.
"""

from __future__ import annotations

import numpy as np
import pytest

from xxzent import ed
from xxzent.lattice import LatticeSpec, build_lattice

ACCEPTANCE_LOG: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Recorder for one pass/fail line per acceptance criterion."""

    def record(name: str, ok: bool, detail: str) -> None:
        tag = "PASS" if ok else "FAIL"
        ACCEPTANCE_LOG.append(f"[{tag}] {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)


def embed_full_space(psi: np.ndarray, basis: ed.SectorBasis) -> np.ndarray:
    """Sector vector -> full 2^N vector indexed by the configuration integer."""
    full = np.zeros(2 ** basis.n_sites, dtype=complex)
    full[np.asarray(basis.states, dtype=np.int64)] = psi
    return full


def dense_two_site_rdm(full_psi: np.ndarray, n_sites: int, i: int, j: int) -> np.ndarray:
    """Partial trace of |psi><psi| onto sites (i, j) by explicit summation.

    Row/column order is up-up, up-down, down-up, down-down with bit=1
    meaning up, matching TwoSiteRDM.as_matrix.
    """
    if i == j:
        raise ValueError("need distinct sites")
    mask = (1 << i) | (1 << j)
    configs = np.arange(2**n_sites)
    rests = configs[(configs & mask) == 0]
    patterns = [(1 << i) | (1 << j), 1 << i, 1 << j, 0]
    cols = [full_psi[rests | p] for p in patterns]
    rho = np.empty((4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            rho[a, b] = np.sum(cols[a] * np.conj(cols[b]))
    return rho


def dense_pair_correlators(full_psi: np.ndarray, n_sites: int, i: int, j: int):
    """<Sx Sx>, <Sy Sy>, <Sz Sz> from the explicit two-site density matrix."""
    sx = np.array([[0.0, 0.5], [0.5, 0.0]])
    sy = np.array([[0.0, -0.5j], [0.5j, 0.0]])
    sz = np.array([[0.5, 0.0], [0.0, -0.5]])
    rho = dense_two_site_rdm(full_psi, n_sites, i, j)
    out = []
    for op in (sx, sy, sz):
        # as_matrix order puts site i's state first
        out.append(float(np.real(np.trace(rho @ np.kron(op, op)))))
    return tuple(out)


@pytest.fixture(scope="session")
def ring4():
    """4-site periodic chain with its isotropic ground state."""
    lattice = build_lattice(LatticeSpec(1, 4))
    basis, gs = ed.solve_ground(lattice, 1.0)
    return lattice, basis, gs


@pytest.fixture(scope="session")
def square44_heisenberg():
    """4x4 periodic square lattice ground state at delta = 1 (Lanczos)."""
    lattice = build_lattice(LatticeSpec(2, 4))
    basis, gs = ed.solve_ground(lattice, 1.0)
    return lattice, basis, gs
