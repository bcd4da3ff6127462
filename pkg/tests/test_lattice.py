"""Lattice construction: bond counts, bipartiteness, ordering, validation."""

import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xxzent.lattice import (
    Bond,
    DegenerateLatticeWarning,
    LatticeSpec,
    build_lattice,
    site_index,
)


def test_site_index_row_major():
    # first coordinate most significant, last coordinate fastest
    assert site_index((0,), 4) == 0
    assert site_index((3,), 4) == 3
    assert site_index((1, 2), 4) == 1 * 4 + 2
    assert site_index((1, 2, 3), 4) == 1 * 16 + 2 * 4 + 3


def test_chain_periodic_bonds():
    lat = build_lattice(LatticeSpec(1, 4))
    assert lat.n_sites == 4
    assert lat.n_bonds == 4
    assert lat.bonds == (Bond(0, 1), Bond(1, 2), Bond(2, 3), Bond(0, 3))


def test_chain_open_bonds():
    lat = build_lattice(LatticeSpec(1, 5, periodic=False))
    assert lat.n_bonds == 4
    assert all(b.j == b.i + 1 for b in lat.bonds)


def test_square_bond_count_and_coordination():
    lat = build_lattice(LatticeSpec(2, 4))
    assert lat.n_sites == 16
    assert lat.n_bonds == 32  # d*N for periodic L > 2
    degree = [0] * lat.n_sites
    for b in lat.bonds:
        degree[b.i] += 1
        degree[b.j] += 1
    assert set(degree) == {4}


def test_cube_bond_count():
    lat = build_lattice(LatticeSpec(3, 4))
    assert lat.n_bonds == 3 * 64


def test_sublattice_bipartite():
    for spec in (LatticeSpec(1, 6), LatticeSpec(2, 4), LatticeSpec(3, 4)):
        lat = build_lattice(spec)
        assert len(lat.sublattice) == lat.n_sites
        for b in lat.bonds:
            assert lat.sublattice[b.i] != lat.sublattice[b.j]


def test_l2_wrap_deduplicated_with_warning():
    # L=2 periodic: forward and wrap neighbors coincide; keep one bond per pair
    with pytest.warns(DegenerateLatticeWarning):
        lat = build_lattice(LatticeSpec(3, 2))
    assert lat.n_bonds == 12  # d * N / 2 pairs once
    assert len(set(lat.bonds)) == lat.n_bonds


def test_two_site_chain():
    with pytest.warns(DegenerateLatticeWarning):
        lat = build_lattice(LatticeSpec(1, 2))
    assert lat.bonds == (Bond(0, 1),)


def test_bond_orientation_validated():
    with pytest.raises(ValueError):
        Bond(3, 3)
    with pytest.raises(ValueError):
        Bond(5, 2)


def test_spec_validation():
    with pytest.raises(ValueError):
        LatticeSpec(4, 4)
    with pytest.raises(ValueError):
        LatticeSpec(1, 1)
    with pytest.raises(ValueError):
        LatticeSpec(1, 5)  # odd size breaks sublattice structure when periodic
    LatticeSpec(1, 5, periodic=False)  # fine without wrap


@settings(max_examples=60, deadline=None)
@given(
    dimension=st.integers(1, 3),
    half=st.integers(1, 3),
    periodic=st.booleans(),
)
def test_lattice_invariants(dimension, half, periodic):
    linear = 2 * half
    if not periodic:
        linear += 1  # odd sizes allowed open
    if dimension == 3 and linear > 5:
        linear = 4
    spec = LatticeSpec(dimension, linear, periodic=periodic)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateLatticeWarning)
        lat = build_lattice(spec)
    n = spec.n_sites
    if periodic:
        expected = dimension * n if linear > 2 else dimension * n // 2
    else:
        expected = dimension * (linear - 1) * linear ** (dimension - 1)
    assert lat.n_bonds == expected
    assert len(set(lat.bonds)) == lat.n_bonds
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateLatticeWarning)
        assert build_lattice(spec).bonds == lat.bonds  # deterministic order
    for b in lat.bonds:
        assert 0 <= b.i < b.j < n
        assert lat.sublattice[b.i] != lat.sublattice[b.j]
