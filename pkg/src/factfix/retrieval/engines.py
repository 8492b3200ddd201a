"""Search engine clients with caching, rate limiting and recorded fixtures.

Three live clients (Google Programmable Search, Bing Web Search, and
DuckDuckGo's lite HTML endpoint) share a common result shape. Every query
can be served from a fixture directory instead, which is how all tests run:
one JSON file per (engine, query digest) holding the serialized result
list. With ``record=True`` live responses are written into that directory
for later replay.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from pathlib import Path
from typing import Callable, Optional, Protocol

from pydantic import BaseModel, ConfigDict


class SearchResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    rank: int
    url: str
    title: str = ""
    snippet: str = ""


class EngineUnavailableError(RuntimeError):
    """Engine failed after retries, or no client/fixture is available."""


class QuotaExceededError(RuntimeError):
    """Paid-API quota exhausted; distinct so runs can fail over to ddg."""


class SearchClient(Protocol):
    def search(self, query: str, n: int) -> list[SearchResult]: ...


class RateLimiter:
    """Enforces a minimum interval between calls per key."""

    def __init__(self, min_interval: float = 0.0):
        self.min_interval = min_interval
        self._last: dict[str, float] = {}
        self._lock = threading.Lock()

    def wait(self, key: str, sleep: Callable[[float], None] = time.sleep) -> None:
        if self.min_interval <= 0:
            return
        with self._lock:
            now = time.monotonic()
            last = self._last.get(key)
            delay = 0.0
            if last is not None:
                delay = max(0.0, last + self.min_interval - now)
            self._last[key] = now + delay
        if delay > 0:
            sleep(delay)


def query_digest(query: str) -> str:
    return hashlib.sha256(query.encode("utf-8")).hexdigest()[:16]


def fixture_path(fixtures_dir: str | Path, engine: str, query: str) -> Path:
    return Path(fixtures_dir) / f"{engine}-{query_digest(query)}.json"


def write_fixture(fixtures_dir: str | Path, engine: str, query: str, results: list[SearchResult]) -> Path:
    path = fixture_path(fixtures_dir, engine, query)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"engine": engine, "query": query, "results": [r.model_dump() for r in results]}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
    tmp.replace(path)
    return path


def read_fixture(fixtures_dir: str | Path, engine: str, query: str) -> Optional[list[SearchResult]]:
    path = fixture_path(fixtures_dir, engine, query)
    if not path.exists():
        return None
    payload = json.loads(path.read_text(encoding="utf-8"))
    return [SearchResult.model_validate(r) for r in payload["results"]]


class GoogleClient:
    """Google Programmable Search Engine JSON API."""

    def __init__(self, api_key: str, cx: str, timeout: float = 15.0):
        self.api_key = api_key
        self.cx = cx
        self.timeout = timeout

    def search(self, query: str, n: int) -> list[SearchResult]:
        import httpx

        response = httpx.get(
            "https://www.googleapis.com/customsearch/v1",
            params={"key": self.api_key, "cx": self.cx, "q": query, "num": min(n, 10)},
            timeout=self.timeout,
        )
        if response.status_code == 429:
            raise QuotaExceededError("google quota exceeded")
        if response.status_code >= 400:
            raise EngineUnavailableError(f"google HTTP {response.status_code}")
        items = response.json().get("items", [])[:n]
        return [
            SearchResult(
                rank=i + 1,
                url=item.get("link", ""),
                title=item.get("title", ""),
                snippet=item.get("snippet", ""),
            )
            for i, item in enumerate(items)
        ]


class BingClient:
    """Bing Web Search API (Azure)."""

    def __init__(self, api_key: str, timeout: float = 15.0):
        self.api_key = api_key
        self.timeout = timeout

    def search(self, query: str, n: int) -> list[SearchResult]:
        import httpx

        response = httpx.get(
            "https://api.bing.microsoft.com/v7.0/search",
            params={"q": query, "count": n},
            headers={"Ocp-Apim-Subscription-Key": self.api_key},
            timeout=self.timeout,
        )
        if response.status_code == 429:
            raise QuotaExceededError("bing quota exceeded")
        if response.status_code >= 400:
            raise EngineUnavailableError(f"bing HTTP {response.status_code}")
        pages = response.json().get("webPages", {}).get("value", [])[:n]
        return [
            SearchResult(
                rank=i + 1,
                url=page.get("url", ""),
                title=page.get("name", ""),
                snippet=page.get("snippet", ""),
            )
            for i, page in enumerate(pages)
        ]


class DdgClient:
    """DuckDuckGo via the lite HTML endpoint; free, no credentials."""

    def __init__(self, timeout: float = 15.0):
        self.timeout = timeout

    def search(self, query: str, n: int) -> list[SearchResult]:
        import re

        import httpx

        response = httpx.post(
            "https://html.duckduckgo.com/html/",
            data={"q": query},
            headers={"User-Agent": "Mozilla/5.0"},
            timeout=self.timeout,
            follow_redirects=True,
        )
        if response.status_code >= 400:
            raise EngineUnavailableError(f"ddg HTTP {response.status_code}")
        results: list[SearchResult] = []
        blocks = re.findall(
            r'<a[^>]*class="result__a"[^>]*href="([^"]+)"[^>]*>(.*?)</a>.*?'
            r'(?:<a[^>]*class="result__snippet"[^>]*>(.*?)</a>)?',
            response.text,
            re.S,
        )
        strip_tags = lambda s: re.sub(r"<[^>]+>", "", s or "").strip()
        for i, (url, title, snippet) in enumerate(blocks[:n]):
            results.append(
                SearchResult(rank=i + 1, url=url, title=strip_tags(title), snippet=strip_tags(snippet))
            )
        return results


def _env_clients() -> dict[str, SearchClient]:
    import os

    clients: dict[str, SearchClient] = {"ddg": DdgClient()}
    google_key = os.environ.get("GOOGLE_SEARCH_API_KEY")
    google_cx = os.environ.get("GOOGLE_SEARCH_CX")
    if google_key and google_cx:
        clients["google"] = GoogleClient(api_key=google_key, cx=google_cx)
    bing_key = os.environ.get("BING_SEARCH_API_KEY")
    if bing_key:
        clients["bing"] = BingClient(api_key=bing_key)
    return clients


class SearchService:
    """Front door for searches: fixtures first, then live client with retries.

    Results are additionally cached in memory by (engine, query, n) so a
    repeated query within one process is byte-identical and free.
    """

    def __init__(
        self,
        fixtures_dir: Optional[str | Path] = None,
        clients: Optional[dict[str, SearchClient]] = None,
        record: bool = False,
        max_attempts: int = 3,
        backoff_base: float = 1.0,
        sleep: Callable[[float], None] = time.sleep,
        rate_limiter: Optional[RateLimiter] = None,
    ):
        self.fixtures_dir = Path(fixtures_dir) if fixtures_dir else None
        self.clients = clients if clients is not None else _env_clients()
        self.record = record
        self.max_attempts = max_attempts
        self.backoff_base = backoff_base
        self.sleep = sleep
        self.rate_limiter = rate_limiter or RateLimiter(0.0)
        self._cache: dict[tuple[str, str, int], list[SearchResult]] = {}
        self._lock = threading.Lock()

    def search(self, engine: str, query: str, n: int) -> list[SearchResult]:
        if n < 1:
            raise ValueError("n must be >= 1")
        if not query:
            raise ValueError("query must be nonempty")
        key = (engine, query, n)
        with self._lock:
            if key in self._cache:
                return self._cache[key]

        results: Optional[list[SearchResult]] = None
        if self.fixtures_dir is not None:
            recorded = read_fixture(self.fixtures_dir, engine, query)
            if recorded is not None:
                results = recorded[:n]

        if results is None:
            client = self.clients.get(engine)
            if client is None:
                raise EngineUnavailableError(
                    f"no client or fixture for engine {engine!r} (query {query!r})"
                )
            last_error: Optional[Exception] = None
            for attempt in range(self.max_attempts):
                self.rate_limiter.wait(engine, sleep=self.sleep)
                try:
                    results = client.search(query, n)
                    break
                except QuotaExceededError:
                    raise
                except Exception as exc:  # transient network/engine failure
                    last_error = exc
                    if attempt < self.max_attempts - 1:
                        self.sleep(self.backoff_base * (2**attempt))
            if results is None:
                raise EngineUnavailableError(
                    f"engine {engine!r} failed after {self.max_attempts} attempts"
                ) from last_error
            if self.record and self.fixtures_dir is not None:
                write_fixture(self.fixtures_dir, engine, query, results)

        with self._lock:
            self._cache[key] = results
        return results
