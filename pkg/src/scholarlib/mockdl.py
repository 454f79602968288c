"""Reference digital library serving the connector protocol over a corpus.

This is the executable form of the contract third-party DLs must meet:
``GET /search?q&offset&limit`` answering ``{"total": <int>, "items": [...]}``
with records in the canonical wire form. Matching is case-folded token
containment over title+subjects+description; relevance order is match count
descending, then identifier ascending; ``total`` is the full match count
regardless of paging.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Query

from .errors import CorpusParseError, InvalidRecord
from .records import DCRecord, record_to_json, validate_record
from .text import match_count, token_set


def load_corpus(path: str | Path) -> list[DCRecord]:
    """Parse a JSON-lines corpus file, validating every record."""
    records = []
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusParseError(f"cannot read corpus: {exc}") from exc
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(validate_record(json.loads(line)))
        except (ValueError, InvalidRecord) as exc:
            raise CorpusParseError(f"corpus line {lineno}: {exc}") from exc
    return records


class MockDL:
    """In-memory searchable corpus; read-mostly, safe to query concurrently.

    The record list may be appended to between searches (tests use that to
    simulate a library acquiring new content).
    """

    def __init__(self, records: list[DCRecord]):
        self.records = list(records)

    def add(self, record: DCRecord) -> None:
        self.records.append(record)

    def search(self, query: str, offset: int = 0, limit: int = 10) -> tuple[int, list[DCRecord]]:
        """Full match count plus the requested page of matches."""
        qtokens = token_set(query)
        scored = []
        for record in self.records:
            tokens = token_set(
                record.title, *record.subjects, record.description or ""
            )
            count = match_count(qtokens, tokens)
            if count > 0:
                scored.append((-count, record.identifier, record))
        scored.sort(key=lambda entry: entry[:2])
        page = [record for _, _, record in scored[offset : offset + limit]]
        return len(scored), page


def create_mock_dl_app(dl: MockDL) -> FastAPI:
    """Wrap a corpus in the bit-exact connector protocol."""
    app = FastAPI(title="mock-dl")

    @app.get("/search")
    def search(
        q: str = Query(""),
        offset: int = Query(0, ge=0),
        limit: int = Query(10, ge=0),
    ) -> dict:
        total, page = dl.search(q, offset=offset, limit=limit)
        return {"total": total, "items": [record_to_json(record) for record in page]}

    return app
