"""Laser-assisted hopping in Laguerre-Gauss beams on optical lattices."""

from ._core import (
    ExponentConvention,
    HoppingMatrix,
    Lattice,
    LatticeKind,
    NumericalGuardError,
    ValidationError,
    build_dimer,
    build_nonabelian,
    build_ring,
    build_square,
    evolve,
    fluxmap,
    laguerre,
    lg_radial_amplitude,
    loop_phase,
    oracle_check,
    phase_only_hopping,
    plaquette_fluxes,
    resolve_config,
)

__version__ = "0.1.0"
