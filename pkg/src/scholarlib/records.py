"""Scholarly metadata records: the Dublin Core subset exchanged with DLs.

``validate_record`` is the single entry point through which every record
coming off the wire passes. It normalizes (trims, dedupes subjects
case-foldedly) and is a projection: validating an already-validated record
changes nothing.

``item_key`` gives records their stable gateway-wide identity: the lowercase
hex SHA-256 of ``"<dl_source>\\n<identifier>"`` truncated to 16 bytes.
Deterministic, no central counter, collision-safe at desk scale.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from datetime import date

from .errors import MalformedDate, MalformedLanguage, MissingField

_LANGUAGE_RE = re.compile(r"^[A-Za-z]{2}$")

#: Field names of the canonical serialized form, in a fixed order.
RECORD_FIELDS = (
    "identifier",
    "title",
    "creators",
    "date",
    "subjects",
    "description",
    "doc_type",
    "language",
    "link",
)


@dataclass
class DCRecord:
    """One scholarly record in the gateway's Dublin Core subset."""

    identifier: str
    title: str
    creators: list[str] = field(default_factory=list)
    date: str | None = None
    subjects: list[str] = field(default_factory=list)
    description: str | None = None
    doc_type: str | None = None
    language: str | None = None
    link: str | None = None


def _clean_str(value: object) -> str:
    if isinstance(value, str):
        return value.strip()
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return str(value)
    return ""


def _clean_list(value: object) -> list[str]:
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, (list, tuple)):
        return []
    out = []
    for entry in value:
        cleaned = _clean_str(entry)
        if cleaned:
            out.append(cleaned)
    return out


def _dedupe_casefold(values: list[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for value in values:
        key = value.casefold()
        if key not in seen:
            seen.add(key)
            out.append(value)
    return out


def validate_record(raw: dict) -> DCRecord:
    """Normalize a raw key-value document into a :class:`DCRecord`.

    Raises :class:`MissingField` when identifier or title is absent or blank,
    :class:`MalformedDate` unless ``date`` is a full ISO date (YYYY-MM-DD),
    and :class:`MalformedLanguage` unless ``language`` is a 2-letter code.
    Unknown keys are dropped; absent optionals stay absent.
    """
    identifier = _clean_str(raw.get("identifier"))
    if not identifier:
        raise MissingField("identifier")
    title = _clean_str(raw.get("title"))
    if not title:
        raise MissingField("title")

    date_value = _clean_str(raw.get("date")) or None
    if date_value is not None:
        try:
            date.fromisoformat(date_value)
        except ValueError:
            raise MalformedDate(f"not an ISO date: {date_value!r}") from None

    language = _clean_str(raw.get("language")) or None
    if language is not None:
        if not _LANGUAGE_RE.match(language):
            raise MalformedLanguage(f"not a 2-letter code: {language!r}")
        language = language.lower()

    return DCRecord(
        identifier=identifier,
        title=title,
        creators=_clean_list(raw.get("creators")),
        date=date_value,
        subjects=_dedupe_casefold(_clean_list(raw.get("subjects"))),
        description=_clean_str(raw.get("description")) or None,
        doc_type=_clean_str(raw.get("doc_type")) or None,
        language=language,
        link=_clean_str(raw.get("link")) or None,
    )


def record_to_json(record: DCRecord) -> dict:
    """Canonical wire form: exactly the 9 field names, absent optionals omitted."""
    out: dict = {
        "identifier": record.identifier,
        "title": record.title,
        "creators": list(record.creators),
        "subjects": list(record.subjects),
    }
    for name in ("date", "description", "doc_type", "language", "link"):
        value = getattr(record, name)
        if value is not None:
            out[name] = value
    return out


def item_key(dl_source: str, identifier: str) -> str:
    """Stable item id for a record of ``identifier`` seen at ``dl_source``."""
    digest = hashlib.sha256(f"{dl_source}\n{identifier}".encode("utf-8"))
    return digest.hexdigest()[:32]
