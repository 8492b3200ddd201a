"""HTML fetching and article text extraction without third-party parsers.

Extraction strips scripts, styles and navigation chrome, prefers the
``<article>`` element (then ``<main>``, then the whole body), and keeps
block-level text such as paragraphs and headings. Good enough for news
pages; failures degrade to empty text with a reason instead of raising.
"""

from __future__ import annotations

from html.parser import HTMLParser
from pathlib import Path
from typing import Optional

_SKIP_TAGS = {"script", "style", "noscript", "template", "svg", "iframe"}
_CHROME_TAGS = {"nav", "header", "footer", "aside", "form", "button", "menu"}
_BLOCK_TAGS = {"p", "h1", "h2", "h3", "h4", "h5", "h6", "li", "blockquote", "td", "pre"}


class _Extractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._skip_depth = 0
        self._chrome_depth = 0
        self._block_depth = 0
        self._scope = None  # "article" | "main" | None
        self._scope_depth = 0
        self.blocks: dict[str, list[str]] = {"article": [], "main": [], "body": []}
        self._current: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag in _CHROME_TAGS:
            self._chrome_depth += 1
        elif tag in ("article", "main") and self._scope is None:
            self._scope = tag
            self._scope_depth = 0
        elif self._scope is not None:
            self._scope_depth += 1
        if tag in _BLOCK_TAGS:
            self._block_depth += 1
            self._current = []

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and self._skip_depth:
            self._skip_depth -= 1
            return
        if tag in _CHROME_TAGS and self._chrome_depth:
            self._chrome_depth -= 1
            return
        if tag in ("article", "main") and self._scope == tag and self._scope_depth == 0:
            self._scope = None
        elif self._scope is not None and self._scope_depth:
            self._scope_depth -= 1
        if tag in _BLOCK_TAGS and self._block_depth:
            self._block_depth -= 1
            text = " ".join("".join(self._current).split())
            if text:
                self.blocks["body"].append(text)
                if self._scope is not None:
                    self.blocks[self._scope].append(text)
            self._current = []

    def handle_data(self, data):
        if self._skip_depth or self._chrome_depth:
            return
        if self._block_depth:
            self._current.append(data)


def extract_text(html: str) -> str:
    """Return the visible article text of an HTML document."""
    parser = _Extractor()
    try:
        parser.feed(html)
        parser.close()
    except Exception:
        return ""
    for scope in ("article", "main", "body"):
        if parser.blocks[scope]:
            return "\n".join(parser.blocks[scope])
    return ""


def fetch_and_extract(
    url: str, timeout: float = 15.0, client=None
) -> tuple[str, Optional[str]]:
    """Fetch a URL and extract its article text.

    Returns ``(text, reason)``; ``reason`` is None on success and a short
    code ("http_404", "non_html", "network_error", "empty") otherwise, in
    which case the text is empty.
    """
    import httpx

    if url.startswith("file://"):
        path = Path(url[len("file://"):])
        if not path.exists():
            return "", "http_404"
        text = extract_text(path.read_text(encoding="utf-8"))
        return (text, None) if text else ("", "empty")

    try:
        if client is not None:
            response = client.get(url)
        else:
            response = httpx.get(
                url,
                timeout=timeout,
                follow_redirects=True,
                headers={"User-Agent": "Mozilla/5.0"},
            )
    except Exception:
        return "", "network_error"
    if response.status_code >= 400:
        return "", f"http_{response.status_code}"
    content_type = response.headers.get("content-type", "")
    if content_type and "html" not in content_type and "text" not in content_type:
        return "", "non_html"
    text = extract_text(response.text)
    return (text, None) if text else ("", "empty")
