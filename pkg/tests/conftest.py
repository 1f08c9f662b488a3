from importlib import resources

import numpy as np
import pytest

from cmcbounds.mesh import flat_disk, icosphere, jacobi_spectrum, read_off


def data_path(name: str):
    return resources.files("cmcbounds") / "data" / name


@pytest.fixture(scope="session")
def sphere3():
    return icosphere(3)


@pytest.fixture(scope="session")
def sphere4():
    return icosphere(4)


@pytest.fixture(scope="session")
def sphere_spectra(sphere3, sphere4):
    return {3: jacobi_spectrum(sphere3), 4: jacobi_spectrum(sphere4)}


@pytest.fixture(scope="session")
def bundled():
    return {name: read_off(data_path(f"{name}.off")) for name in ("sphere", "torus", "genus2")}


@pytest.fixture(scope="session")
def disk():
    return flat_disk(1.0, 12)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
