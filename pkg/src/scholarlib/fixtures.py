"""Deterministic desk-scale fixtures: corpus, contact graph, annotations.

``make_fixture`` is pure and splitmix64-seeded, so the same seed always
yields the same corpus and script; ``seed_store`` applies a fixture to an
empty store under a fixed-step clock, which makes export dumps of two
identically seeded stores byte-identical.

Guarantees baked into the generated corpus and script (for the default
sizes): several documents whose text matches "violence" carry the subject
"Gewalt", at least one forward chain reaches depth 3, and at least one
comment mentions a searchable topic word.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from .errors import InvalidParams
from .models import DLRegistration, SNUser
from .records import DCRecord, record_to_json
from .rng import SplitMix64
from .store import Store

DEFAULT_SOURCE_URLS = {
    "mock-dl-a": "http://127.0.0.1:9001",
    "mock-dl-b": "http://127.0.0.1:9002",
}

# (title token, controlled subject) pairs the generator draws from.
TOPIC_SUBJECTS = [
    ("violence", "Gewalt"),
    ("gender", "Geschlecht"),
    ("masculinity", "Männlichkeit"),
    ("youth", "Jugend"),
    ("media", "Medien"),
    ("family", "Familie"),
    ("education", "Bildung"),
    ("migration", "Migration"),
    ("poverty", "Armut"),
    ("crime", "Kriminalität"),
    ("inequality", "Ungleichheit"),
    ("religion", "Religion"),
    ("labor", "Arbeit"),
    ("health", "Gesundheit"),
    ("aging", "Alter"),
    ("urban", "Stadt"),
    ("protest", "Protest"),
    ("identity", "Identität"),
]

TITLE_PATTERNS = [
    "{A} and {b} in contemporary social research",
    "Rethinking {a}: perspectives on {b}",
    "{A} among adolescents: a study of {b}",
    "The politics of {a} and {b}",
    "On {a}: evidence from {b} surveys",
    "{A}, {b}, and the question of belonging",
    "Patterns of {a} in European {b} studies",
]

COMMENT_PATTERNS = [
    "Landmark study on {topic}",
    "Useful overview of {topic} research",
    "Methodologically weak but interesting take on {topic}",
    "Assigned this {topic} paper in my seminar",
    "Strong empirical section on {topic}",
]

FOLDERS = ["men", "to-read", "teaching", "methods", "classics"]

SURNAMES = [
    "Keller", "Brandt", "Sørensen", "Okafor", "Tanaka", "Rossi", "Novak",
    "Almeida", "Haugen", "Petit", "Kowalski", "Demir", "Lindqvist", "Moreau",
]

FIRST_INITIALS = ["A.", "B.", "C.", "D.", "E.", "F.", "G.", "H.", "J.", "K.", "L.", "M."]

INTEREST_PHRASES = [
    "violence research",
    "gender studies",
    "youth and media",
    "family sociology",
    "migration policy",
    "urban poverty",
    "crime statistics",
    "education inequality",
    "protest movements",
    "labor markets",
    "health and aging",
    "religious identity",
]

#: How many leading corpus records are guaranteed violence/Gewalt documents.
VIOLENCE_DOCS = 12


class FixtureClock:
    """Fixed-start clock advancing one second per call."""

    def __init__(self, start: datetime | None = None, step_seconds: int = 1):
        self._now = start or datetime(2020, 1, 1, tzinfo=timezone.utc)
        self._step = timedelta(seconds=step_seconds)

    def __call__(self) -> datetime:
        current = self._now
        self._now += self._step
        return current


@dataclass
class Fixture:
    """Everything needed to populate a demo deployment."""

    seed: int
    corpus: list[DCRecord]
    users: list[dict]
    contacts: list[tuple[str, str]]
    annotations: list[tuple] = field(default_factory=list)

    def shard(self, which: str) -> list[DCRecord]:
        """Half of the corpus: 'a' takes even indices, 'b' odd ones."""
        if which not in ("a", "b"):
            raise InvalidParams("shard must be 'a' or 'b'")
        offset = 0 if which == "a" else 1
        return self.corpus[offset::2]


def _make_record(rng: SplitMix64, index: int, force_violence: bool) -> tuple[DCRecord, str]:
    if force_violence:
        primary = TOPIC_SUBJECTS[0]
        secondary = rng.choice(TOPIC_SUBJECTS[1:])
    else:
        primary, secondary = rng.sample(TOPIC_SUBJECTS, 2)
    pattern = rng.choice(TITLE_PATTERNS)
    title = pattern.format(
        A=primary[0].capitalize(), a=primary[0], b=secondary[0]
    )
    creators = [
        f"{rng.choice(SURNAMES)}, {rng.choice(FIRST_INITIALS)}"
        for _ in range(rng.randint(1, 3))
    ]
    year = rng.randint(1995, 2015)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    identifier = f"rec-{index:04d}"
    record = DCRecord(
        identifier=identifier,
        title=title,
        creators=creators,
        date=f"{year:04d}-{month:02d}-{day:02d}",
        subjects=[primary[1], secondary[1]],
        description=f"Examines {primary[0]} and {secondary[0]} in recent scholarship.",
        doc_type=rng.choice(["article", "book", "report", "working paper"]),
        language=rng.choice(["en", "en", "de"]),
        link=f"https://dl.example.org/items/{identifier}",
    )
    return record, primary[0]


def make_fixture(
    seed: int = 7,
    n_users: int = 20,
    edge_prob: float = 0.15,
    corpus_size: int = 200,
) -> Fixture:
    """Build the deterministic corpus, user graph, and annotation script."""
    if n_users < 1:
        raise InvalidParams("n_users must be >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise InvalidParams("edge_prob must be within [0, 1]")
    if corpus_size < 1:
        raise InvalidParams("corpus_size must be >= 1")

    rng = SplitMix64(seed)

    corpus: list[DCRecord] = []
    topics: list[str] = []
    for index in range(corpus_size):
        record, topic = _make_record(rng, index, force_violence=index < VIOLENCE_DOCS)
        corpus.append(record)
        topics.append(topic)

    users = []
    for i in range(n_users):
        interests = rng.sample(INTEREST_PHRASES, rng.randint(1, 3))
        if i == 0 and "violence research" not in interests:
            interests.insert(0, "violence research")
        users.append(
            {
                "user_id": f"u{i}",
                "display_name": f"{rng.choice(FIRST_INITIALS)} {rng.choice(SURNAMES)}",
                "sns_origin": "mock-sns",
                "interests": interests,
            }
        )

    contacts: list[tuple[str, str]] = []
    edge_set: set[tuple[str, str]] = set()
    for i in range(n_users):
        for j in range(i + 1, n_users):
            if rng.random() < edge_prob:
                contacts.append((f"u{i}", f"u{j}"))
                edge_set.add((f"u{i}", f"u{j}"))
    if n_users >= 4:
        # The depth-3 forward chain below needs this path to exist.
        for pair in [("u0", "u1"), ("u1", "u2"), ("u2", "u3")]:
            if pair not in edge_set:
                contacts.append(pair)
                edge_set.add(pair)

    annotations: list[tuple] = []
    for _ in range(30):
        user = f"u{rng.randint(0, n_users - 1)}"
        idx = rng.randint(0, corpus_size - 1)
        text = rng.choice(COMMENT_PATTERNS).format(topic=topics[idx])
        annotations.append(("comment", user, idx, text))

    rated: set[tuple[str, int]] = set()
    for _ in range(30):
        user = f"u{rng.randint(0, n_users - 1)}"
        idx = rng.randint(0, corpus_size - 1)
        if (user, idx) in rated:
            continue
        rated.add((user, idx))
        annotations.append(("rating", user, idx, rng.randint(1, 5)))

    shelved: set[tuple[str, int, str]] = set()
    for _ in range(25):
        user = f"u{rng.randint(0, n_users - 1)}"
        idx = rng.randint(0, corpus_size - 1)
        folder = rng.choice(FOLDERS)
        if (user, idx, folder) in shelved:
            continue
        shelved.add((user, idx, folder))
        annotations.append(("library", user, idx, folder))

    # Forward chain of depth 3 on the first violence document. These are the
    # first scripted forwards, so their slots in the forward id list are 0-2.
    if n_users >= 4:
        annotations.append(("forward", "u0", "u1", 0, None))
        annotations.append(("forward", "u1", "u2", 0, 0))
        annotations.append(("forward", "u2", "u3", 0, 1))
    if contacts:
        for _ in range(15):
            user_a, user_b = contacts[rng.randint(0, len(contacts) - 1)]
            idx = rng.randint(0, corpus_size - 1)
            annotations.append(("forward", user_a, user_b, idx, None))

    return Fixture(seed=seed, corpus=corpus, users=users, contacts=contacts, annotations=annotations)


def seed_store(
    store: Store,
    fixture: Fixture,
    source_urls: dict[str, str] | None = None,
) -> dict[str, int]:
    """Apply a fixture to an empty store; returns entity counts.

    Sources are registered directly with assumed-active status (no probe):
    the point of seeding is a reproducible store, and the mock DLs backing
    those URLs are usually started separately.
    """
    if store.list_users() or store.list_sources() or store.list_items():
        raise InvalidParams("seed requires an empty store")
    urls = dict(DEFAULT_SOURCE_URLS)
    if source_urls:
        urls.update(source_urls)
    names = sorted(urls)
    for name in names:
        store.add_source(DLRegistration(name=name, base_url=urls[name].rstrip("/"), status="active"))

    for profile in fixture.users:
        store.upsert_user(SNUser(**profile))
    for user_a, user_b in fixture.contacts:
        store.add_contact(user_a, user_b)

    item_ids = []
    for index, record in enumerate(fixture.corpus):
        source = names[0] if index % 2 == 0 else names[min(1, len(names) - 1)]
        item_ids.append(store.intern_item(record, source).item_id)

    forward_ids: list[str] = []
    for op in fixture.annotations:
        kind = op[0]
        if kind == "comment":
            _, user, idx, text = op
            store.add_comment(user, item_ids[idx % len(item_ids)], text)
        elif kind == "rating":
            _, user, idx, value = op
            store.add_rating(user, item_ids[idx % len(item_ids)], value)
        elif kind == "library":
            _, user, idx, folder = op
            store.add_to_library(user, item_ids[idx % len(item_ids)], folder)
        elif kind == "forward":
            _, user_a, user_b, idx, parent_slot = op
            parent = forward_ids[parent_slot] if parent_slot is not None else None
            ann = store.add_forward(user_a, user_b, item_ids[idx % len(item_ids)], parent)
            forward_ids.append(ann.annotation_id)
        else:
            raise InvalidParams(f"unknown scripted annotation kind: {kind}")

    return {
        "sources": len(names),
        "users": len(fixture.users),
        "contacts": len(fixture.contacts),
        "items": len(item_ids),
        "annotations": len(fixture.annotations),
    }


def write_corpus(records: list[DCRecord], path) -> None:
    """Write records as canonical JSON-lines (the connector corpus format)."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_json(record), sort_keys=True, ensure_ascii=False) + "\n")
