import pytest

from verklebench import kzg


@pytest.fixture(scope="session")
def setup255():
    # one full-width setup for the whole run; generation costs ~0.3s
    return kzg.generate_setup(b"test-suite", 255)
