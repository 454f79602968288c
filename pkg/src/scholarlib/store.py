"""Embedded file-backed store for users, items, annotations, and alerts.

The on-disk format is an append-only JSON-lines log: every mutation appends
one full-entity line (``{"t": <kind>, ...}``), rating replacement appends a
tombstone for the displaced annotation, and the log is compacted (rewritten
from live state) once it grows well past the live entity count.

Writes are serialized through one re-entrant lock; reads take the same lock
so a snapshot never observes a torn write. Timestamps come from an
injectable clock so fixtures can be byte-reproducible.

Entity ids embed a global ingestion sequence number. The sequence is
monotone across restarts (tombstones carry their own seq so replay never
regresses the counter) and is what the alerting service uses to decide
which items are new.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from .errors import (
    BadParent,
    InvalidParams,
    InvalidPayload,
    InvalidQuery,
    InvalidRecord,
    InvalidUser,
    DuplicateName,
    NotContacts,
    SelfEdge,
    StoreCorruption,
    UnknownItem,
    UnknownSource,
    UnknownUser,
)
from .models import (
    COMMENT,
    FORWARD,
    LIBRARY_ENTRY,
    RATING,
    Alert,
    Annotation,
    DLRegistration,
    Notification,
    SItem,
    SNUser,
    SocialSummary,
)
from .records import DCRecord, item_key, record_to_json
from .text import match_count, token_set

DEFAULT_STORE_PATH = "./scholarlib.db"
STORE_PATH_ENV = "SCHOLARLIB_DB"

_COMPACT_MIN_LINES = 2000
_COMPACT_FACTOR = 3

EXPORT_TYPES = ("user", "item", "annotation")


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def iso_utc(moment: datetime) -> str:
    """ISO-8601 UTC with a Z suffix, e.g. ``2020-01-01T00:00:00Z``."""
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def _dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class SocialSearchResult:
    """Profiles, comments, and annotated items matching a social query."""

    profiles: list[SNUser] = field(default_factory=list)
    comments: list[Annotation] = field(default_factory=list)
    items: list[tuple[SItem, SocialSummary]] = field(default_factory=list)


class Store:
    """Single-writer embedded store behind all gateway state."""

    def __init__(self, path: str | Path | None = None, clock: Callable[[], datetime] = utcnow):
        if path is None:
            path = os.environ.get(STORE_PATH_ENV, DEFAULT_STORE_PATH)
        self._path = Path(path)
        self._clock = clock
        self._lock = threading.RLock()
        self._closed = False

        self._users: dict[str, SNUser] = {}
        self._items: dict[str, SItem] = {}
        self._annotations: dict[str, Annotation] = {}
        self._sources: dict[str, DLRegistration] = {}
        self._alerts: dict[str, Alert] = {}
        self._notifications: dict[str, Notification] = {}
        self._item_index: dict[str, list[str]] = {}
        self._rating_index: dict[tuple[str, str], str] = {}
        self._library_index: dict[tuple[str, str, str], str] = {}
        self._seq = 0
        self._log_lines = 0

        self._load()
        try:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = open(self._path, "a", encoding="utf-8")
        except OSError as exc:
            raise StoreCorruption(f"store path not writable: {exc}") from exc

    # -- log plumbing --------------------------------------------------------

    def _load(self) -> None:
        if not self._path.exists():
            return
        try:
            raw = self._path.read_text(encoding="utf-8")
        except OSError as exc:
            raise StoreCorruption(f"cannot read store: {exc}") from exc
        for lineno, line in enumerate(raw.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
                self._apply(entry)
            except (ValueError, KeyError, TypeError) as exc:
                raise StoreCorruption(f"corrupt store line {lineno}: {exc}") from exc
            self._log_lines += 1

    def _apply(self, entry: dict) -> None:
        kind = entry["t"]
        if kind == "user":
            user = SNUser.from_dict(entry)
            self._users[user.user_id] = user
        elif kind == "item":
            item = SItem.from_dict(entry)
            self._items[item.item_id] = item
            self._item_index.setdefault(item.item_id, [])
        elif kind == "annotation":
            self._index_annotation(Annotation.from_dict(entry))
        elif kind == "tombstone":
            self._unindex_annotation(entry["annotation_id"])
        elif kind == "source":
            reg = DLRegistration.from_dict(entry)
            self._sources[reg.name] = reg
        elif kind == "del_source":
            self._sources.pop(entry["name"], None)
        elif kind == "alert":
            alert = Alert.from_dict(entry)
            self._alerts[alert.alert_id] = alert
        elif kind == "notification":
            note = Notification.from_dict(entry)
            self._notifications[note.notification_id] = note
        elif kind == "seq":
            self._seq = max(self._seq, int(entry["value"]))
        else:
            raise StoreCorruption(f"unknown entry type {kind!r}")
        self._seq = max(self._seq, int(entry.get("seq", 0)))

    def _index_annotation(self, ann: Annotation) -> None:
        self._annotations[ann.annotation_id] = ann
        self._item_index.setdefault(ann.item, []).append(ann.annotation_id)
        if ann.kind == RATING:
            self._rating_index[(ann.author, ann.item)] = ann.annotation_id
        elif ann.kind == LIBRARY_ENTRY:
            key = (ann.author, ann.item, ann.payload.get("folder", ""))
            self._library_index[key] = ann.annotation_id

    def _unindex_annotation(self, annotation_id: str) -> None:
        ann = self._annotations.pop(annotation_id, None)
        if ann is None:
            return
        ids = self._item_index.get(ann.item, [])
        if annotation_id in ids:
            ids.remove(annotation_id)
        if ann.kind == RATING:
            self._rating_index.pop((ann.author, ann.item), None)
        elif ann.kind == LIBRARY_ENTRY:
            key = (ann.author, ann.item, ann.payload.get("folder", ""))
            self._library_index.pop(key, None)

    def _append(self, kind: str, payload: dict) -> None:
        if self._closed:
            raise StoreCorruption("store is closed")
        self._fh.write(_dumps({"t": kind, **payload}) + "\n")
        self._fh.flush()
        self._log_lines += 1
        live = (
            len(self._users)
            + len(self._items)
            + len(self._annotations)
            + len(self._sources)
            + len(self._alerts)
            + len(self._notifications)
        )
        if self._log_lines > max(_COMPACT_MIN_LINES, _COMPACT_FACTOR * live):
            self._compact_locked()

    def _next_seq(self) -> int:
        self._seq += 1
        return self._seq

    def _now(self) -> str:
        return iso_utc(self._clock())

    @property
    def seq(self) -> int:
        with self._lock:
            return self._seq

    @property
    def path(self) -> Path:
        return self._path

    # -- users ----------------------------------------------------------------

    def upsert_user(self, user: SNUser) -> SNUser:
        """Create or update a profile. Contacts only change via add_contact."""
        if not user.user_id or not user.user_id.strip():
            raise InvalidUser("user_id must be non-empty")
        with self._lock:
            existing = self._users.get(user.user_id)
            if existing is None:
                stored = SNUser(
                    user_id=user.user_id,
                    display_name=user.display_name or user.user_id,
                    sns_origin=user.sns_origin,
                    interests=list(user.interests),
                    contacts=set(),
                    seq=self._next_seq(),
                    created_at=self._now(),
                )
            else:
                stored = SNUser(
                    user_id=existing.user_id,
                    display_name=user.display_name or existing.display_name,
                    sns_origin=user.sns_origin or existing.sns_origin,
                    interests=list(user.interests),
                    contacts=set(existing.contacts),
                    seq=existing.seq,
                    created_at=existing.created_at,
                )
            self._users[stored.user_id] = stored
            self._append("user", stored.to_dict())
            return stored

    def get_user(self, user_id: str) -> SNUser | None:
        with self._lock:
            return self._users.get(user_id)

    def require_user(self, user_id: str) -> SNUser:
        user = self.get_user(user_id)
        if user is None:
            raise UnknownUser(f"no such user: {user_id}")
        return user

    def list_users(self) -> list[SNUser]:
        with self._lock:
            return list(self._users.values())

    def add_contact(self, user_a: str, user_b: str) -> None:
        """Store the symmetric contact edge (idempotent)."""
        if user_a == user_b:
            raise SelfEdge(f"cannot connect {user_a} to itself")
        with self._lock:
            a = self.require_user(user_a)
            b = self.require_user(user_b)
            if user_b in a.contacts and user_a in b.contacts:
                return
            a.contacts.add(user_b)
            b.contacts.add(user_a)
            self._append("user", a.to_dict())
            self._append("user", b.to_dict())

    # -- sources ----------------------------------------------------------------

    def add_source(self, reg: DLRegistration) -> DLRegistration:
        with self._lock:
            if reg.name in self._sources:
                raise DuplicateName(f"source already registered: {reg.name}")
            stored = DLRegistration(
                name=reg.name,
                base_url=reg.base_url,
                status=reg.status,
                registered_at=reg.registered_at or self._now(),
                seq=self._next_seq(),
            )
            self._sources[stored.name] = stored
            self._append("source", stored.to_dict())
            return stored

    def update_source(self, reg: DLRegistration) -> DLRegistration:
        with self._lock:
            if reg.name not in self._sources:
                raise UnknownSource(f"no such source: {reg.name}")
            self._sources[reg.name] = reg
            self._append("source", reg.to_dict())
            return reg

    def remove_source(self, name: str) -> None:
        with self._lock:
            if name not in self._sources:
                raise UnknownSource(f"no such source: {name}")
            del self._sources[name]
            self._append("del_source", {"name": name})

    def get_source(self, name: str) -> DLRegistration | None:
        with self._lock:
            return self._sources.get(name)

    def require_source(self, name: str) -> DLRegistration:
        source = self.get_source(name)
        if source is None:
            raise UnknownSource(f"no such source: {name}")
        return source

    def list_sources(self) -> list[DLRegistration]:
        """Registrations in registration order."""
        with self._lock:
            return list(self._sources.values())

    # -- items ----------------------------------------------------------------

    def intern_item(self, record: DCRecord, dl_source: str) -> SItem:
        """Give ``record`` a stable identity under ``dl_source``.

        Idempotent: re-interning the same (source, identifier) returns the
        same item id, updating stored record fields to the latest seen.
        """
        if not record.identifier or not record.title:
            raise InvalidRecord("record needs non-empty identifier and title")
        with self._lock:
            if dl_source not in self._sources:
                raise UnknownSource(f"no such source: {dl_source}")
            iid = item_key(dl_source, record.identifier)
            existing = self._items.get(iid)
            if existing is not None:
                if record_to_json(existing.record) == record_to_json(record):
                    return existing
                updated = SItem(item_id=iid, dl_source=dl_source, record=record, seq=existing.seq)
                self._items[iid] = updated
                self._append("item", updated.to_dict())
                return updated
            item = SItem(item_id=iid, dl_source=dl_source, record=record, seq=self._next_seq())
            self._items[iid] = item
            self._item_index.setdefault(iid, [])
            self._append("item", item.to_dict())
            return item

    def get_item(self, item_id: str) -> SItem | None:
        with self._lock:
            return self._items.get(item_id)

    def require_item(self, item_id: str) -> SItem:
        item = self.get_item(item_id)
        if item is None:
            raise UnknownItem(f"no such item: {item_id}")
        return item

    def list_items(self) -> list[SItem]:
        with self._lock:
            return list(self._items.values())

    # -- annotations ------------------------------------------------------------

    def _new_annotation(self, kind: str, author: str, item: str, payload: dict) -> Annotation:
        seq = self._next_seq()
        ann = Annotation(
            annotation_id=f"an-{seq:08d}",
            kind=kind,
            author=author,
            item=item,
            created_at=self._now(),
            payload=payload,
            seq=seq,
        )
        self._index_annotation(ann)
        self._append("annotation", ann.to_dict())
        return ann

    def add_comment(self, author: str, item: str, text: str) -> Annotation:
        if not text or not text.strip():
            raise InvalidPayload("comment text must be non-empty")
        with self._lock:
            self.require_user(author)
            self.require_item(item)
            return self._new_annotation(COMMENT, author, item, {"text": text})

    def add_rating(self, author: str, item: str, value: int) -> Annotation:
        """Store a 1-5 rating; a later rating by the same author replaces it."""
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
            raise InvalidPayload("rating value must be an integer in 1..5")
        with self._lock:
            self.require_user(author)
            self.require_item(item)
            previous = self._rating_index.get((author, item))
            if previous is not None:
                self._unindex_annotation(previous)
                self._append("tombstone", {"annotation_id": previous, "seq": self._seq})
            return self._new_annotation(RATING, author, item, {"value": value})

    def add_to_library(self, author: str, item: str, folder: str) -> Annotation:
        """Tag an item into a folder; idempotent per (author, item, folder)."""
        if not folder or not folder.strip():
            raise InvalidPayload("folder must be non-empty")
        with self._lock:
            self.require_user(author)
            self.require_item(item)
            existing = self._library_index.get((author, item, folder))
            if existing is not None:
                return self._annotations[existing]
            return self._new_annotation(LIBRARY_ENTRY, author, item, {"folder": folder})

    def add_forward(self, author: str, recipient: str, item: str, parent: str | None = None) -> Annotation:
        """Record a share along an existing contact edge.

        ``parent`` chains provenance: it must name a forward of the same item
        whose recipient is this forward's author.
        """
        with self._lock:
            sender = self.require_user(author)
            self.require_user(recipient)
            self.require_item(item)
            if recipient not in sender.contacts:
                raise NotContacts(f"{recipient} is not a contact of {author}")
            if parent is not None:
                parent_ann = self._annotations.get(parent)
                if parent_ann is None or parent_ann.kind != FORWARD:
                    raise BadParent(f"parent is not a forward: {parent}")
                if parent_ann.item != item:
                    raise BadParent("parent forward is for a different item")
                if parent_ann.payload.get("recipient") != author:
                    raise BadParent("parent forward was not addressed to this author")
            return self._new_annotation(
                FORWARD, author, item, {"recipient": recipient, "parent": parent}
            )

    def get_annotation(self, annotation_id: str) -> Annotation | None:
        with self._lock:
            return self._annotations.get(annotation_id)

    def annotations_for(self, item: str) -> list[Annotation]:
        with self._lock:
            return [self._annotations[aid] for aid in self._item_index.get(item, [])]

    def list_annotations(self) -> list[Annotation]:
        with self._lock:
            return list(self._annotations.values())

    def library_of(self, user_id: str) -> list[Annotation]:
        """All library entries by one user, in creation order."""
        with self._lock:
            return [
                ann
                for ann in self._annotations.values()
                if ann.kind == LIBRARY_ENTRY and ann.author == user_id
            ]

    def in_library(self, user_id: str, item: str) -> bool:
        with self._lock:
            return any(key[0] == user_id and key[1] == item for key in self._library_index)

    # -- aggregates ---------------------------------------------------------------

    def summary_for(self, item: str) -> SocialSummary:
        """Recount annotations for one item; deterministic for a snapshot."""
        with self._lock:
            self.require_item(item)
            summary = SocialSummary(item=item)
            folders: dict[str, int] = {}
            rating_total = 0
            for aid in self._item_index.get(item, []):
                ann = self._annotations[aid]
                if ann.kind == COMMENT:
                    summary.comment_count += 1
                elif ann.kind == RATING:
                    summary.rating_count += 1
                    rating_total += ann.payload["value"]
                elif ann.kind == LIBRARY_ENTRY:
                    summary.library_count += 1
                    folder = ann.payload["folder"]
                    folders[folder] = folders.get(folder, 0) + 1
                elif ann.kind == FORWARD:
                    summary.forward_count += 1
            if summary.rating_count:
                summary.avg_rating = rating_total / summary.rating_count
            summary.folders = sorted(folders.items())
            return summary

    def social_search(self, query: str) -> SocialSearchResult:
        """Token search over profiles, comment texts, and annotated items.

        Each list is ordered by match count desc, then recency (creation
        sequence) desc, then id asc.
        """
        if not query or not query.strip():
            raise InvalidQuery("query must be non-blank")
        qtokens = token_set(query)
        with self._lock:
            profiles = []
            for user in self._users.values():
                count = match_count(qtokens, token_set(*user.interests))
                if count:
                    profiles.append((-count, -user.seq, user.user_id, user))
            comments = []
            for ann in self._annotations.values():
                if ann.kind != COMMENT:
                    continue
                count = match_count(qtokens, token_set(ann.payload["text"]))
                if count:
                    comments.append((-count, -ann.seq, ann.annotation_id, ann))
            items = []
            for item in self._items.values():
                if not self._item_index.get(item.item_id):
                    continue
                tokens = token_set(item.record.title, *item.record.subjects)
                count = match_count(qtokens, tokens)
                if count:
                    items.append((-count, -item.seq, item.item_id, item))
            return SocialSearchResult(
                profiles=[entry[3] for entry in sorted(profiles, key=lambda e: e[:3])],
                comments=[entry[3] for entry in sorted(comments, key=lambda e: e[:3])],
                items=[
                    (entry[3], self.summary_for(entry[2]))
                    for entry in sorted(items, key=lambda e: e[:3])
                ],
            )

    # -- alerts & notifications ------------------------------------------------------

    def put_alert(self, user: str, terms: list[str], recommended_terms: list[str]) -> Alert:
        with self._lock:
            self.require_user(user)
            seq = self._next_seq()
            alert = Alert(
                alert_id=f"al-{seq:08d}",
                user=user,
                terms=list(terms),
                recommended_terms=list(recommended_terms),
                last_run_seq=seq,
                seq=seq,
            )
            self._alerts[alert.alert_id] = alert
            self._append("alert", alert.to_dict())
            return alert

    def list_alerts(self, user: str | None = None) -> list[Alert]:
        with self._lock:
            alerts = list(self._alerts.values())
        if user is not None:
            alerts = [alert for alert in alerts if alert.user == user]
        return alerts

    def advance_alert(self, alert_id: str, run_seq: int) -> Alert:
        """Move an alert's high-water mark forward (never backward)."""
        with self._lock:
            alert = self._alerts.get(alert_id)
            if alert is None:
                raise InvalidParams(f"no such alert: {alert_id}")
            alert.last_run_seq = max(alert.last_run_seq, run_seq)
            self._append("alert", alert.to_dict())
            return alert

    def add_notification(self, recipient: str, item: str, reason: str, message: str | None = None) -> Notification:
        with self._lock:
            self.require_user(recipient)
            self.require_item(item)
            seq = self._next_seq()
            note = Notification(
                notification_id=f"nt-{seq:08d}",
                recipient=recipient,
                item=item,
                reason=reason,
                message=message,
                created_at=self._now(),
                seq=seq,
            )
            self._notifications[note.notification_id] = note
            self._append("notification", note.to_dict())
            return note

    def list_notifications(self, user: str | None = None) -> list[Notification]:
        """Newest first; optionally filtered to one recipient."""
        with self._lock:
            notes = list(self._notifications.values())
        if user is not None:
            notes = [note for note in notes if note.recipient == user]
        return sorted(notes, key=lambda n: -n.seq)

    # -- export / import -----------------------------------------------------------

    def export_lines(self) -> list[str]:
        """Canonical dump: users, then items, then annotations, seq ascending."""
        with self._lock:
            lines = []
            for user in sorted(self._users.values(), key=lambda u: u.seq):
                lines.append(_dumps({"type": "user", **user.to_dict()}))
            for item in sorted(self._items.values(), key=lambda i: i.seq):
                lines.append(_dumps({"type": "item", **item.to_dict()}))
            for ann in sorted(self._annotations.values(), key=lambda a: a.seq):
                lines.append(_dumps({"type": "annotation", **ann.to_dict()}))
            return lines

    def import_lines(self, lines: Iterable[str], replace: bool = True) -> dict[str, int]:
        """Load a dump produced by :meth:`export_lines`.

        Entities are restored verbatim (ids, timestamps, sequence numbers),
        so exporting again reproduces the dump byte for byte.
        """
        with self._lock:
            if replace:
                self._wipe_state()
            counts = {"user": 0, "item": 0, "annotation": 0}
            for lineno, line in enumerate(lines, start=1):
                if not line.strip():
                    continue
                try:
                    entry = json.loads(line)
                    kind = entry.pop("type")
                except (ValueError, KeyError) as exc:
                    raise InvalidParams(f"bad import line {lineno}: {exc}") from None
                if kind not in EXPORT_TYPES:
                    raise InvalidParams(f"bad import line {lineno}: unknown type {kind!r}")
                try:
                    self._apply({"t": kind, **entry})
                except (StoreCorruption, KeyError, TypeError) as exc:
                    raise InvalidParams(f"bad import line {lineno}: {exc}") from None
                counts[kind] += 1
            self._compact_locked()
            return counts

    # -- maintenance ------------------------------------------------------------------

    def _wipe_state(self) -> None:
        self._users.clear()
        self._items.clear()
        self._annotations.clear()
        self._sources.clear()
        self._alerts.clear()
        self._notifications.clear()
        self._item_index.clear()
        self._rating_index.clear()
        self._library_index.clear()
        self._seq = 0

    def wipe(self) -> None:
        with self._lock:
            self._wipe_state()
            self._compact_locked()

    def _compact_locked(self) -> None:
        tmp = self._path.with_suffix(self._path.suffix + ".tmp")
        with open(tmp, "w", encoding="utf-8") as out:
            out.write(_dumps({"t": "seq", "value": self._seq}) + "\n")
            lines = 1
            groups: list[Iterable] = [
                sorted(self._sources.values(), key=lambda s: s.seq),
                sorted(self._users.values(), key=lambda u: u.seq),
                sorted(self._items.values(), key=lambda i: i.seq),
                sorted(self._annotations.values(), key=lambda a: a.seq),
                sorted(self._alerts.values(), key=lambda a: a.seq),
                sorted(self._notifications.values(), key=lambda n: n.seq),
            ]
            kinds = ("source", "user", "item", "annotation", "alert", "notification")
            for kind, group in zip(kinds, groups):
                for entity in group:
                    out.write(_dumps({"t": kind, **entity.to_dict()}) + "\n")
                    lines += 1
        if not self._closed and hasattr(self, "_fh"):
            self._fh.close()
        os.replace(tmp, self._path)
        self._fh = open(self._path, "a", encoding="utf-8")
        self._log_lines = lines

    def compact(self) -> None:
        with self._lock:
            self._compact_locked()

    def flush(self) -> None:
        with self._lock:
            if not self._closed:
                self._fh.flush()
                os.fsync(self._fh.fileno())

    def close(self) -> None:
        with self._lock:
            if self._closed:
                return
            self._fh.flush()
            self._fh.close()
            self._closed = True

    # -- invariants --------------------------------------------------------------------

    def check_integrity(self) -> list[str]:
        """Scan the snapshot for referential-integrity violations."""
        problems: list[str] = []
        with self._lock:
            for user in self._users.values():
                for contact in user.contacts:
                    if contact == user.user_id:
                        problems.append(f"user {user.user_id} is its own contact")
                    other = self._users.get(contact)
                    if other is None:
                        problems.append(f"user {user.user_id} has unknown contact {contact}")
                    elif user.user_id not in other.contacts:
                        problems.append(f"contact edge {user.user_id}-{contact} not symmetric")
            ratings_seen: set[tuple[str, str]] = set()
            library_seen: set[tuple[str, str, str]] = set()
            for ann in self._annotations.values():
                if ann.author not in self._users:
                    problems.append(f"annotation {ann.annotation_id} has unknown author")
                if ann.item not in self._items:
                    problems.append(f"annotation {ann.annotation_id} has unknown item")
                if ann.kind == RATING:
                    value = ann.payload.get("value")
                    if value not in (1, 2, 3, 4, 5):
                        problems.append(f"rating {ann.annotation_id} out of range")
                    key = (ann.author, ann.item)
                    if key in ratings_seen:
                        problems.append(f"duplicate rating by {ann.author} on {ann.item}")
                    ratings_seen.add(key)
                elif ann.kind == LIBRARY_ENTRY:
                    entry = (ann.author, ann.item, ann.payload.get("folder", ""))
                    if entry in library_seen:
                        problems.append(f"duplicate library entry {entry}")
                    library_seen.add(entry)
                elif ann.kind == FORWARD:
                    recipient = ann.payload.get("recipient")
                    if recipient not in self._users:
                        problems.append(f"forward {ann.annotation_id} has unknown recipient")
                    parent = ann.payload.get("parent")
                    if parent is not None:
                        parent_ann = self._annotations.get(parent)
                        if parent_ann is None or parent_ann.kind != FORWARD:
                            problems.append(f"forward {ann.annotation_id} has bad parent")
                        elif parent_ann.item != ann.item:
                            problems.append(f"forward {ann.annotation_id} parent item mismatch")
                        elif parent_ann.payload.get("recipient") != ann.author:
                            problems.append(
                                f"forward {ann.annotation_id} parent recipient mismatch"
                            )
                        elif parent_ann.seq >= ann.seq:
                            problems.append(f"forward {ann.annotation_id} precedes its parent")
                elif ann.kind != COMMENT:
                    problems.append(f"annotation {ann.annotation_id} has unknown kind {ann.kind}")
        return problems
