from pydantic import SecretStr


def test_no_auth_secret(mock_settings, test_client):
    """Test that when AUTH_SECRET is not set, all requests are allowed"""
    mock_settings.AUTH_SECRET = None
    response = test_client.get("/info", headers={"Authorization": "Bearer any-token"})
    assert response.status_code == 200

    # Should also work without any auth header
    response = test_client.get("/info")
    assert response.status_code == 200


def test_auth_secret_correct(mock_settings, test_client):
    """Test that when AUTH_SECRET is set, requests with correct token are allowed"""
    mock_settings.AUTH_SECRET = SecretStr("test-secret")
    response = test_client.get("/info", headers={"Authorization": "Bearer test-secret"})
    assert response.status_code == 200


def test_auth_secret_incorrect(mock_settings, test_client, toy_text):
    """Test that when AUTH_SECRET is set, requests with wrong token are rejected"""
    mock_settings.AUTH_SECRET = SecretStr("test-secret")
    response = test_client.post(
        "/check",
        json={"program": toy_text, "point": ["0", "0"]},
        headers={"Authorization": "Bearer wrong-secret"},
    )
    assert response.status_code == 401

    # Should also reject requests with no auth header
    response = test_client.post("/check", json={"program": toy_text, "point": ["0", "0"]})
    assert response.status_code == 401


def test_health_needs_no_auth(mock_settings, test_client):
    mock_settings.AUTH_SECRET = SecretStr("test-secret")
    assert test_client.get("/health").json() == {"status": "ok"}
