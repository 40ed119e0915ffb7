import pytest

from materials.permittivity import ConstantPermittivity, DrudePermittivity, IdealMetal
from schema.cavity import CavitySpec

A_MICRON = 1e-6


@pytest.fixture
def dilute_cavity():
    """eps_gap = 1.5, eps_wall = 10, a = 1 um, T = 300 K."""
    return CavitySpec(
        a=A_MICRON,
        T=300.0,
        wall=ConstantPermittivity(eps=10.0),
        gap=ConstantPermittivity(eps=1.5),
    )


@pytest.fixture
def gold_drude():
    return DrudePermittivity(omega_p=1.37e16, gamma=5.32e13)


@pytest.fixture
def ideal_vacuum_cavity():
    return CavitySpec(
        a=A_MICRON, T=300.0, wall=IdealMetal(), gap=ConstantPermittivity(eps=1.0)
    )
