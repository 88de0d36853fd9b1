import pytest

from client import VerifierClient


@pytest.fixture
def verifier_client(mock_env):
    """Fixture for creating a test client with a clean environment."""
    return VerifierClient(base_url="http://test", get_info=False)
