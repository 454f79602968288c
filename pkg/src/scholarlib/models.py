"""Persisted domain entities: users, items, annotations and their aggregates.

All entities serialize to flat JSON-safe dicts (``to_dict`` / ``from_dict``)
used both by the store log and by the export dump, so the canonical form is
defined exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .records import DCRecord, record_to_json

# Annotation kinds.
COMMENT = "comment"
RATING = "rating"
LIBRARY_ENTRY = "library_entry"
FORWARD = "forward"

ANNOTATION_KINDS = (COMMENT, RATING, LIBRARY_ENTRY, FORWARD)


@dataclass
class SNUser:
    """A social-network user: profile interests plus symmetric contacts."""

    user_id: str
    display_name: str = ""
    sns_origin: str = ""
    interests: list[str] = field(default_factory=list)
    contacts: set[str] = field(default_factory=set)
    seq: int = 0
    created_at: str = ""

    def to_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "display_name": self.display_name,
            "sns_origin": self.sns_origin,
            "interests": list(self.interests),
            "contacts": sorted(self.contacts),
            "seq": self.seq,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SNUser":
        return cls(
            user_id=data["user_id"],
            display_name=data.get("display_name", ""),
            sns_origin=data.get("sns_origin", ""),
            interests=list(data.get("interests", [])),
            contacts=set(data.get("contacts", [])),
            seq=data.get("seq", 0),
            created_at=data.get("created_at", ""),
        )


@dataclass
class SItem:
    """An interned scholarly item with its stable gateway-wide identity."""

    item_id: str
    dl_source: str
    record: DCRecord
    seq: int = 0

    def to_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "dl_source": self.dl_source,
            "record": record_to_json(self.record),
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SItem":
        rec = data["record"]
        return cls(
            item_id=data["item_id"],
            dl_source=data["dl_source"],
            record=DCRecord(
                identifier=rec["identifier"],
                title=rec["title"],
                creators=list(rec.get("creators", [])),
                date=rec.get("date"),
                subjects=list(rec.get("subjects", [])),
                description=rec.get("description"),
                doc_type=rec.get("doc_type"),
                language=rec.get("language"),
                link=rec.get("link"),
            ),
            seq=data.get("seq", 0),
        )


@dataclass
class Annotation:
    """A social act of one user on one item.

    ``payload`` is kind-specific: ``{"text"}`` for comments, ``{"value"}``
    for ratings, ``{"folder"}`` for library entries, and
    ``{"recipient", "parent"}`` for forwards (parent may be None).
    """

    annotation_id: str
    kind: str
    author: str
    item: str
    created_at: str
    payload: dict
    seq: int = 0

    def to_dict(self) -> dict:
        return {
            "annotation_id": self.annotation_id,
            "kind": self.kind,
            "author": self.author,
            "item": self.item,
            "created_at": self.created_at,
            "payload": dict(self.payload),
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Annotation":
        return cls(
            annotation_id=data["annotation_id"],
            kind=data["kind"],
            author=data["author"],
            item=data["item"],
            created_at=data.get("created_at", ""),
            payload=dict(data.get("payload", {})),
            seq=data.get("seq", 0),
        )


@dataclass
class SocialSummary:
    """Aggregated annotation counts for one item, as shipped with results."""

    item: str
    comment_count: int = 0
    rating_count: int = 0
    avg_rating: float | None = None
    library_count: int = 0
    forward_count: int = 0
    folders: list[tuple[str, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {
            "item": self.item,
            "comment_count": self.comment_count,
            "rating_count": self.rating_count,
            "library_count": self.library_count,
            "forward_count": self.forward_count,
            "folders": [[name, count] for name, count in self.folders],
        }
        if self.avg_rating is not None:
            out["avg_rating"] = self.avg_rating
        return out


@dataclass
class DLRegistration:
    """A connected digital library: unique name, base URL, probe status."""

    name: str
    base_url: str
    status: str = "active"  # "active" | "unreachable"
    registered_at: str = ""
    seq: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "base_url": self.base_url,
            "status": self.status,
            "registered_at": self.registered_at,
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DLRegistration":
        return cls(
            name=data["name"],
            base_url=data["base_url"],
            status=data.get("status", "active"),
            registered_at=data.get("registered_at", ""),
            seq=data.get("seq", 0),
        )


@dataclass
class Alert:
    """A stored search derived from a user's interests, re-run on demand."""

    alert_id: str
    user: str
    terms: list[str]
    recommended_terms: list[str] = field(default_factory=list)
    last_run_seq: int = 0
    seq: int = 0

    def to_dict(self) -> dict:
        return {
            "alert_id": self.alert_id,
            "user": self.user,
            "terms": list(self.terms),
            "recommended_terms": list(self.recommended_terms),
            "last_run_seq": self.last_run_seq,
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Alert":
        return cls(
            alert_id=data["alert_id"],
            user=data["user"],
            terms=list(data.get("terms", [])),
            recommended_terms=list(data.get("recommended_terms", [])),
            last_run_seq=data.get("last_run_seq", 0),
            seq=data.get("seq", 0),
        )


@dataclass
class Notification:
    """A message to one user about one item (alert match or network post)."""

    notification_id: str
    recipient: str
    item: str
    reason: str  # "alert_match" | "network_post"
    message: str | None = None
    created_at: str = ""
    seq: int = 0

    def to_dict(self) -> dict:
        return {
            "notification_id": self.notification_id,
            "recipient": self.recipient,
            "item": self.item,
            "reason": self.reason,
            "message": self.message,
            "created_at": self.created_at,
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Notification":
        return cls(
            notification_id=data["notification_id"],
            recipient=data["recipient"],
            item=data["item"],
            reason=data["reason"],
            message=data.get("message"),
            created_at=data.get("created_at", ""),
            seq=data.get("seq", 0),
        )


@dataclass
class SpreadTrace:
    """The forwarding forest of one item plus its reach metrics."""

    item: str
    roots: list[str] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)
    reach: int = 0
    max_depth: int = 0

    def to_dict(self) -> dict:
        return {
            "item": self.item,
            "roots": list(self.roots),
            "edges": [[parent, child] for parent, child in self.edges],
            "reach": self.reach,
            "max_depth": self.max_depth,
        }
