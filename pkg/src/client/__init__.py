from client.client import VerifierClient, VerifierClientError

__all__ = ["VerifierClient", "VerifierClientError"]
