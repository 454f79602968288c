"""DL connector layer: registry, HTTP connector client, federated search.

The connector wire protocol is deliberately minimal and stateless:

    GET {base_url}/search?q=<url-encoded>&offset=<int>&limit=<int>
    -> 200 {"total": <int>, "items": [<record>...]}

Anything else — non-200, unparseable JSON, schema violations, more items
than asked for — is a malformed response; transport-level failures
(connect errors, exceeded time budget) are connector timeouts. Federated
search degrades gracefully: failing sources land in the per-source status
list and never abort the merged result.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from urllib.parse import urlsplit

import httpx

from .errors import (
    ConnectorTimeout,
    DuplicateName,
    InvalidParams,
    InvalidQuery,
    InvalidRecord,
    InvalidUrl,
    MalformedResponse,
    NoActiveSources,
)
from .models import DLRegistration, SItem
from .records import DCRecord, validate_record
from .store import Store

DEFAULT_TIMEOUT = 3.0
PROBE_QUERY = "test"
MAX_LIMIT = 100


@dataclass
class SearchQuery:
    """A validated federation query."""

    text: str
    offset: int = 0
    limit: int = 10
    sources: list[str] | None = None

    def __post_init__(self) -> None:
        if not self.text or not self.text.strip():
            raise InvalidQuery("query text must be non-blank")
        if self.offset < 0:
            raise InvalidQuery("offset must be non-negative")
        if not 1 <= self.limit <= MAX_LIMIT:
            raise InvalidQuery(f"limit must be in 1..{MAX_LIMIT}")


@dataclass
class RawResultPage:
    """One DL's answer after record validation."""

    source: str
    total: int
    items: list[DCRecord]
    dropped_invalid: int = 0


@dataclass
class SourceStatus:
    """Outcome of one source's part in a federated search."""

    source: str
    total: int | None = None
    returned: int = 0
    dropped_invalid: int = 0
    error: str | None = None


@dataclass
class FederatedHit:
    item: SItem
    base_rank: int
    source: str


@dataclass
class FederatedResult:
    hits: list[FederatedHit] = field(default_factory=list)
    statuses: list[SourceStatus] = field(default_factory=list)

    @property
    def source_errors(self) -> list[SourceStatus]:
        return [status for status in self.statuses if status.error is not None]


def validate_base_url(url: str) -> str:
    parts = urlsplit(url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise InvalidUrl(f"not an http(s) URL: {url!r}")
    return url.rstrip("/")


class ConnectorClient:
    """Thin HTTP client for the connector protocol; shared across threads."""

    def __init__(self, timeout: float = DEFAULT_TIMEOUT, client: httpx.Client | None = None):
        self.timeout = timeout
        self._client = client or httpx.Client(timeout=timeout)

    def fetch(self, base_url: str, text: str, offset: int, limit: int) -> dict:
        """GET one result page, returning the parsed JSON body."""
        url = f"{base_url.rstrip('/')}/search"
        try:
            response = self._client.get(
                url, params={"q": text, "offset": offset, "limit": limit}
            )
        except (httpx.TimeoutException, httpx.NetworkError, httpx.TransportError) as exc:
            raise ConnectorTimeout(f"{base_url}: {exc.__class__.__name__}") from exc
        if response.status_code != 200:
            raise MalformedResponse(f"{base_url}: HTTP {response.status_code}")
        try:
            body = response.json()
        except ValueError as exc:
            raise MalformedResponse(f"{base_url}: body is not JSON") from exc
        if not isinstance(body, dict):
            raise MalformedResponse(f"{base_url}: body is not an object")
        return body

    def close(self) -> None:
        self._client.close()


def parse_result_page(body: dict, source: str, limit: int) -> RawResultPage:
    """Validate a connector response body against the protocol schema."""
    total = body.get("total")
    items = body.get("items")
    if not isinstance(total, int) or isinstance(total, bool) or total < 0:
        raise MalformedResponse(f"{source}: bad total")
    if not isinstance(items, list):
        raise MalformedResponse(f"{source}: items is not a list")
    if len(items) > limit:
        raise MalformedResponse(f"{source}: returned more items than requested")
    records = []
    dropped = 0
    for raw in items:
        if not isinstance(raw, dict):
            dropped += 1
            continue
        try:
            records.append(validate_record(raw))
        except InvalidRecord:
            dropped += 1
    return RawResultPage(source=source, total=total, items=records, dropped_invalid=dropped)


def round_robin_merge(pages: list[RawResultPage]) -> list[tuple[DCRecord, str]]:
    """Interleave pages in their given order, preserving in-page order."""
    merged: list[tuple[DCRecord, str]] = []
    cursors = [0] * len(pages)
    remaining = sum(len(page.items) for page in pages)
    while remaining:
        for index, page in enumerate(pages):
            if cursors[index] < len(page.items):
                merged.append((page.items[cursors[index]], page.source))
                cursors[index] += 1
                remaining -= 1
    return merged


class Federation:
    """Registry operations and fan-out search over registered DLs."""

    def __init__(self, store: Store, client: ConnectorClient | None = None, timeout: float = DEFAULT_TIMEOUT):
        self.store = store
        self.client = client or ConnectorClient(timeout=timeout)
        self._registry_lock = threading.Lock()

    # -- registry -------------------------------------------------------------

    def probe(self, base_url: str) -> str:
        """'active' if the connector answers the probe query, else 'unreachable'."""
        try:
            body = self.client.fetch(base_url, PROBE_QUERY, 0, 1)
            parse_result_page(body, base_url, 1)
            return "active"
        except (ConnectorTimeout, MalformedResponse):
            return "unreachable"

    def register(self, name: str, base_url: str) -> DLRegistration:
        """Register a DL; the probe outcome decides the stored status."""
        if not name or not name.strip():
            raise InvalidParams("name must be non-empty")
        base_url = validate_base_url(base_url)
        with self._registry_lock:
            if self.store.get_source(name) is not None:
                raise DuplicateName(f"source already registered: {name}")
            status = self.probe(base_url)
            return self.store.add_source(
                DLRegistration(name=name, base_url=base_url, status=status)
            )

    def reprobe(self, name: str) -> DLRegistration:
        reg = self.store.require_source(name)
        reg.status = self.probe(reg.base_url)
        return self.store.update_source(reg)

    # -- search -----------------------------------------------------------------

    def search_source(self, reg: DLRegistration, query: SearchQuery) -> RawResultPage:
        body = self.client.fetch(reg.base_url, query.text, query.offset, query.limit)
        return parse_result_page(body, reg.name, query.limit)

    def federated_search(self, query: SearchQuery) -> FederatedResult:
        """Fan out to all targeted active DLs and merge what comes back.

        One in-flight request per DL; failures become status entries and
        never abort the search. Every merged record is interned so callers
        can immediately resolve items by id.
        """
        targets = [
            reg
            for reg in self.store.list_sources()
            if reg.status == "active" and (query.sources is None or reg.name in query.sources)
        ]
        if not targets:
            raise NoActiveSources("no active sources match the query")

        def run(reg: DLRegistration) -> RawResultPage | Exception:
            try:
                return self.search_source(reg, query)
            except (ConnectorTimeout, MalformedResponse) as exc:
                return exc

        with ThreadPoolExecutor(max_workers=len(targets)) as pool:
            outcomes = list(pool.map(run, targets))

        pages: list[RawResultPage] = []
        statuses: list[SourceStatus] = []
        for reg, outcome in zip(targets, outcomes):
            if isinstance(outcome, ConnectorTimeout):
                statuses.append(SourceStatus(source=reg.name, error="timeout"))
            elif isinstance(outcome, MalformedResponse):
                statuses.append(SourceStatus(source=reg.name, error="malformed_response"))
            else:
                pages.append(outcome)
                statuses.append(
                    SourceStatus(
                        source=reg.name,
                        total=outcome.total,
                        returned=len(outcome.items),
                        dropped_invalid=outcome.dropped_invalid,
                    )
                )

        hits = []
        for rank, (record, source) in enumerate(round_robin_merge(pages), start=1):
            item = self.store.intern_item(record, source)
            hits.append(FederatedHit(item=item, base_rank=rank, source=source))
        return FederatedResult(hits=hits, statuses=statuses)
