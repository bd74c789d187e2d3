"""Pytest configuration and shared fixtures."""
import pytest
import sys
from pathlib import Path

import yaml

# Add src to path for imports
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from cs_audit.config import config  # noqa: E402
from cs_audit.constructions import build_frames, make_symmetric_omega  # noqa: E402

DEFAULT_CONFIG = Path(__file__).parent.parent / "config" / "config.yaml"


@pytest.fixture
def frames5():
    """(omega, psi, q, phi) for N = 5 in double precision."""
    omega = make_symmetric_omega(5)
    psi, q, phi = build_frames(5, omega)
    return omega, psi, q, phi


@pytest.fixture
def frames7():
    """(omega, psi, q, phi) for N = 7 in double precision."""
    omega = make_symmetric_omega(7)
    psi, q, phi = build_frames(7, omega)
    return omega, psi, q, phi


@pytest.fixture
def small_config(tmp_path):
    """
    Default configuration with reduced harness sweeps, loaded for the test and restored after.
    """
    with open(DEFAULT_CONFIG) as f:
        data = yaml.safe_load(f)
    data['harness']['output_dir'] = str(tmp_path / "runs")
    data['harness']['primes'] = {
        'omega_sweep_max': 31,
        'identity_sweep_max': 13,
        'exact': [5, 7],
        'uniqueness': [5],
    }
    data['harness']['dct_check_length'] = 4096
    data['bounds']['synthetic_length'] = 1024
    path = tmp_path / "config.yaml"
    with open(path, 'w') as f:
        yaml.safe_dump(data, f)
    config.reload(str(path))
    yield data
    config.reload(str(DEFAULT_CONFIG))
