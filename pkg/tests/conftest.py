import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from coldcloud import BeamParams, CloudParams, EffNumInputs

settings.register_profile(
    "numerics", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("numerics")


@pytest.fixture
def cloud():
    """Illustrative falling cloud: 1e6 atoms, 1 mm, 0.1 m/s, full gravity."""
    return CloudParams(n_total=1e6, sigma_r=1e-3, sigma_v=0.1, g=9.81)


@pytest.fixture
def cloud_free():
    return CloudParams(n_total=1e6, sigma_r=1e-3, sigma_v=0.1, g=0.0)


@pytest.fixture
def beam():
    return BeamParams(w0=100e-6, wavelength=852e-9)


@pytest.fixture
def inputs(cloud, beam):
    return EffNumInputs(cloud=cloud, beam=beam)


@pytest.fixture
def inputs_free(cloud_free, beam):
    return EffNumInputs(cloud=cloud_free, beam=beam)


@pytest.fixture
def rng():
    return np.random.default_rng(20250809)
