"""Backend-agnostic chat completion with on-disk caching and retries.

A backend is any callable ``(prompt, temperature, max_output_length) -> str``
registered under a string id. Identical requests are served from a
content-addressed cache after the first call, which makes reruns of a
multi-stage batch cheap and byte-reproducible.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
import time
from pathlib import Path
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict

BackendFn = Callable[[str, float, int], str]


class TransientBackendError(RuntimeError):
    """Retryable failure (timeouts, 5xx, rate limits)."""


class BackendUnavailableError(RuntimeError):
    """Retries exhausted or backend not registered."""


class AuthenticationError(RuntimeError):
    """Credential problem; surfaced immediately, never retried."""


class CompletionRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    backend_id: str
    prompt: str
    temperature: float = 0.0
    max_output_length: int = 1024


class CompletionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    from_cache: bool
    latency_ms: int
    backend_id: str


def _cache_key(request: CompletionRequest) -> str:
    payload = json.dumps(
        [request.backend_id, request.prompt, request.temperature, request.max_output_length],
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class LLMGateway:
    def __init__(
        self,
        cache_dir: Optional[str | Path] = None,
        max_attempts: int = 3,
        backoff_base: float = 1.0,
        sleep: Callable[[float], None] = time.sleep,
        max_in_flight: int = 4,
    ):
        self._backends: dict[str, BackendFn] = {}
        self._semaphores: dict[str, threading.Semaphore] = {}
        self._cache_dir = Path(cache_dir) if cache_dir else None
        if self._cache_dir:
            self._cache_dir.mkdir(parents=True, exist_ok=True)
        self._memory_cache: dict[str, str] = {}
        self._cache_lock = threading.Lock()
        self._max_attempts = max_attempts
        self._backoff_base = backoff_base
        self._sleep = sleep
        self._max_in_flight = max_in_flight
        self.call_count = 0  # completions actually sent to a backend

    def register(self, backend_id: str, fn: BackendFn) -> None:
        self._backends[backend_id] = fn
        self._semaphores[backend_id] = threading.Semaphore(self._max_in_flight)

    def is_registered(self, backend_id: str) -> bool:
        return backend_id in self._backends

    def _cache_get(self, key: str) -> Optional[str]:
        with self._cache_lock:
            if key in self._memory_cache:
                return self._memory_cache[key]
        if self._cache_dir:
            path = self._cache_dir / f"{key}.json"
            if path.exists():
                return json.loads(path.read_text(encoding="utf-8"))["text"]
        return None

    def _cache_put(self, key: str, text: str) -> None:
        with self._cache_lock:
            self._memory_cache[key] = text
            if self._cache_dir:
                path = self._cache_dir / f"{key}.json"
                tmp = path.with_suffix(".tmp")
                tmp.write_text(json.dumps({"text": text}, ensure_ascii=False), encoding="utf-8")
                tmp.replace(path)

    def complete(self, request: CompletionRequest) -> CompletionResult:
        if request.backend_id not in self._backends:
            raise BackendUnavailableError(f"no backend registered under {request.backend_id!r}")
        key = _cache_key(request)
        cached = self._cache_get(key)
        if cached is not None:
            return CompletionResult(
                text=cached, from_cache=True, latency_ms=0, backend_id=request.backend_id
            )

        backend = self._backends[request.backend_id]
        start = time.monotonic()
        last_error: Optional[Exception] = None
        for attempt in range(self._max_attempts):
            try:
                with self._semaphores[request.backend_id]:
                    self.call_count += 1
                    text = backend(request.prompt, request.temperature, request.max_output_length)
                break
            except AuthenticationError:
                raise
            except TransientBackendError as exc:
                last_error = exc
                if attempt < self._max_attempts - 1:
                    self._sleep(self._backoff_base * (2**attempt))
        else:
            raise BackendUnavailableError(
                f"backend {request.backend_id!r} failed after {self._max_attempts} attempts"
            ) from last_error

        self._cache_put(key, text)
        latency_ms = int((time.monotonic() - start) * 1000)
        return CompletionResult(
            text=text, from_cache=False, latency_ms=latency_ms, backend_id=request.backend_id
        )


_NUMBERED_ITEM = re.compile(r"^\s*(?:[-*•]\s*)?(\d+)\s*[.)]\s*(.+?)\s*$")


def parse_numbered_list(text: str) -> list[str]:
    """Extract items from a numbered list ("1.", "2)", optional bullets).

    Order is preserved, numbering and surrounding whitespace are stripped,
    and non-numbered lines (intros, trailers) are ignored. Returns an empty
    list when no numbered items are present.
    """
    items: list[str] = []
    for line in text.splitlines():
        match = _NUMBERED_ITEM.match(line)
        if match:
            items.append(match.group(2))
    return items


# --- backend constructors -------------------------------------------------


class ScriptedBackend:
    """Returns canned responses in order; for tests and call-count checks.

    ``script`` is a list of strings or exceptions. A list shorter than the
    number of calls repeats its last entry.
    """

    def __init__(self, script: list):
        self.script = list(script)
        self.calls: list[str] = []
        self._lock = threading.Lock()

    def __call__(self, prompt: str, temperature: float, max_output_length: int) -> str:
        with self._lock:
            self.calls.append(prompt)
            idx = min(len(self.calls) - 1, len(self.script) - 1)
        item = self.script[idx]
        if isinstance(item, Exception):
            raise item
        return item


class RuleBackend:
    """Substring-rule backend loadable from a JSON file.

    The file holds ``{"rules": [{"contains": [...], "response": "..."}],
    "default": "..."}``; the first rule whose substrings all occur in the
    prompt wins. Lets CLI and service runs replay deterministically without
    a live LLM.
    """

    def __init__(self, rules: list[dict], default: str = ""):
        self.rules = rules
        self.default = default

    @classmethod
    def from_file(cls, path: str | Path) -> "RuleBackend":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(rules=data.get("rules", []), default=data.get("default", ""))

    def __call__(self, prompt: str, temperature: float, max_output_length: int) -> str:
        for rule in self.rules:
            needles = rule.get("contains", [])
            if all(needle in prompt for needle in needles):
                return rule["response"]
        return self.default


class OpenAIChatBackend:
    """Minimal OpenAI-compatible chat completion client over HTTP.

    Works against any endpoint implementing ``/chat/completions`` (OpenAI,
    Together, local servers). Credentials come from the environment.
    """

    def __init__(self, model: str, base_url: str, api_key: str, timeout: float = 60.0):
        self.model = model
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.timeout = timeout

    def __call__(self, prompt: str, temperature: float, max_output_length: int) -> str:
        import httpx

        try:
            response = httpx.post(
                f"{self.base_url}/chat/completions",
                headers={"Authorization": f"Bearer {self.api_key}"},
                json={
                    "model": self.model,
                    "messages": [{"role": "user", "content": prompt}],
                    "temperature": temperature,
                    "max_tokens": max_output_length,
                },
                timeout=self.timeout,
            )
        except httpx.HTTPError as exc:
            raise TransientBackendError(str(exc)) from exc
        if response.status_code in (401, 403):
            raise AuthenticationError(f"HTTP {response.status_code} from {self.base_url}")
        if response.status_code >= 400:
            raise TransientBackendError(f"HTTP {response.status_code} from {self.base_url}")
        data = response.json()
        return data["choices"][0]["message"]["content"] or ""


def resolve_backend(spec: str) -> BackendFn:
    """Build a backend callable from a spec string.

    Supported forms: ``rules:<path>`` (deterministic replay from a rule
    file), ``openai:<model>`` (env OPENAI_API_KEY / OPENAI_BASE_URL),
    ``together:<model>`` (env TOGETHER_API_KEY), ``echo`` (returns the
    prompt's last line; smoke testing only).
    """
    import os

    if spec == "echo":
        return lambda prompt, _t, _m: prompt.splitlines()[-1] if prompt else ""
    kind, _, arg = spec.partition(":")
    if kind == "rules":
        return RuleBackend.from_file(arg)
    if kind == "openai":
        key = os.environ.get("OPENAI_API_KEY", "")
        if not key:
            raise AuthenticationError("OPENAI_API_KEY not set")
        base = os.environ.get("OPENAI_BASE_URL", "https://api.openai.com/v1")
        return OpenAIChatBackend(model=arg, base_url=base, api_key=key)
    if kind == "together":
        key = os.environ.get("TOGETHER_API_KEY", "")
        if not key:
            raise AuthenticationError("TOGETHER_API_KEY not set")
        return OpenAIChatBackend(model=arg, base_url="https://api.together.xyz/v1", api_key=key)
    raise BackendUnavailableError(f"unknown backend spec: {spec!r}")
