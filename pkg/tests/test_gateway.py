import json

import pytest

from factfix.llm.gateway import (
    AuthenticationError,
    BackendUnavailableError,
    CompletionRequest,
    LLMGateway,
    RuleBackend,
    ScriptedBackend,
    TransientBackendError,
    resolve_backend,
)
from tests.conftest import make_gateway


def _request(prompt="hello", backend="mock"):
    return CompletionRequest(backend_id=backend, prompt=prompt)


def test_scripted_backend_returns_text():
    gateway, _ = make_gateway(["A"])
    result = gateway.complete(_request())
    assert result.text == "A"
    assert result.from_cache is False


def test_second_identical_request_hits_cache():
    gateway, backend = make_gateway(["A", "B"])
    first = gateway.complete(_request())
    second = gateway.complete(_request())
    assert second.from_cache is True
    assert second.text == first.text == "A"
    assert len(backend.calls) == 1


def test_cache_key_includes_prompt_and_temperature():
    gateway, backend = make_gateway(["A", "B", "C"])
    gateway.complete(_request("p1"))
    gateway.complete(_request("p2"))
    gateway.complete(CompletionRequest(backend_id="mock", prompt="p1", temperature=0.5))
    assert len(backend.calls) == 3


def test_disk_cache_survives_gateway_restart(tmp_path):
    gateway, _ = make_gateway(["A"], cache_dir=tmp_path / "cache")
    gateway.complete(_request())
    fresh = LLMGateway(cache_dir=tmp_path / "cache", sleep=lambda _s: None)
    fresh.register("mock", ScriptedBackend(["DIFFERENT"]))
    result = fresh.complete(_request())
    assert result.from_cache is True
    assert result.text == "A"


def test_retry_then_success():
    script = [TransientBackendError("boom"), TransientBackendError("boom"), "OK"]
    gateway, backend = make_gateway(script)
    result = gateway.complete(_request())
    assert result.text == "OK"
    assert len(backend.calls) == 3


def test_retries_exhausted_raises_unavailable():
    script = [TransientBackendError("boom")] * 3
    gateway, backend = make_gateway(script)
    with pytest.raises(BackendUnavailableError):
        gateway.complete(_request())
    assert len(backend.calls) == 3


def test_auth_error_not_retried():
    gateway, backend = make_gateway([AuthenticationError("bad key"), "never"])
    with pytest.raises(AuthenticationError):
        gateway.complete(_request())
    assert len(backend.calls) == 1


def test_unregistered_backend_rejected():
    gateway = LLMGateway()
    with pytest.raises(BackendUnavailableError):
        gateway.complete(_request(backend="nope"))


def test_rule_backend_first_match_wins(tmp_path):
    path = tmp_path / "rules.json"
    path.write_text(
        json.dumps(
            {
                "rules": [
                    {"contains": ["alpha", "beta"], "response": "both"},
                    {"contains": ["alpha"], "response": "just alpha"},
                ],
                "default": "fallback",
            }
        )
    )
    backend = RuleBackend.from_file(path)
    assert backend("alpha and beta", 0.0, 10) == "both"
    assert backend("alpha only", 0.0, 10) == "just alpha"
    assert backend("nothing", 0.0, 10) == "fallback"


def test_resolve_backend_specs(tmp_path):
    path = tmp_path / "rules.json"
    path.write_text(json.dumps({"rules": [], "default": "d"}))
    assert resolve_backend(f"rules:{path}")("x", 0.0, 1) == "d"
    assert resolve_backend("echo")("line1\nline2", 0.0, 1) == "line2"
    with pytest.raises(BackendUnavailableError):
        resolve_backend("mystery:thing")


def test_openai_spec_requires_key(monkeypatch):
    monkeypatch.delenv("OPENAI_API_KEY", raising=False)
    with pytest.raises(AuthenticationError):
        resolve_backend("openai:gpt-4o-mini")
