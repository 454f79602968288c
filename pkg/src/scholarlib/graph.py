"""Contact graph and item forwarding: virality mechanics over the store.

Forward chains encode provenance (who shared to whom), and ``trace_spread``
condenses all forwards of one item into a forest plus reach metrics. The
forest property holds by construction: a forward's parent must already
exist when the child is created, and each child names at most one parent.
"""

from __future__ import annotations

from .errors import InvalidParams
from .models import FORWARD, Annotation, SNUser, SpreadTrace
from .rng import SplitMix64
from .store import Store


def add_contact(store: Store, user_a: str, user_b: str) -> None:
    store.add_contact(user_a, user_b)


def forward_item(
    store: Store, from_user: str, to_user: str, item: str, parent: str | None = None
) -> Annotation:
    return store.add_forward(from_user, to_user, item, parent)


def trace_spread(store: Store, item: str) -> SpreadTrace:
    """Deterministic spread trace built from all forwards of ``item``.

    ``reach`` counts distinct users appearing as author or recipient of any
    forward; ``max_depth`` is the longest root-to-leaf chain, where a single
    parentless forward has depth 1.
    """
    store.require_item(item)
    forwards = [ann for ann in store.annotations_for(item) if ann.kind == FORWARD]
    forwards.sort(key=lambda ann: ann.seq)

    roots = [ann.annotation_id for ann in forwards if ann.payload.get("parent") is None]
    edges = [
        (ann.payload["parent"], ann.annotation_id)
        for ann in forwards
        if ann.payload.get("parent") is not None
    ]
    touched: set[str] = set()
    for ann in forwards:
        touched.add(ann.author)
        touched.add(ann.payload["recipient"])

    children: dict[str, list[str]] = {}
    for parent, child in edges:
        children.setdefault(parent, []).append(child)

    max_depth = 0
    stack = [(root, 1) for root in roots]
    while stack:
        node, depth = stack.pop()
        max_depth = max(max_depth, depth)
        for child in children.get(node, []):
            stack.append((child, depth + 1))

    return SpreadTrace(item=item, roots=roots, edges=edges, reach=len(touched), max_depth=max_depth)


def generate_mock_graph(store: Store, n_users: int, edge_prob: float, seed: int) -> list[SNUser]:
    """Create users u0..u(n-1) and wire each unordered pair with ``edge_prob``.

    Draws come from a splitmix64 stream seeded with ``seed``, one draw per
    pair in (i, j) order with i < j, so the same seed always yields the same
    graph on any platform.
    """
    if n_users < 1:
        raise InvalidParams("n_users must be >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise InvalidParams("edge_prob must be within [0, 1]")
    rng = SplitMix64(seed)
    users = [
        store.upsert_user(SNUser(user_id=f"u{i}", display_name=f"u{i}", sns_origin="mock-sns"))
        for i in range(n_users)
    ]
    for i in range(n_users):
        for j in range(i + 1, n_users):
            if rng.random() < edge_prob:
                store.add_contact(f"u{i}", f"u{j}")
    return users


def load_edge_list(store: Store, lines: list[str]) -> int:
    """Load contact edges from "user_a user_b" lines; returns the edge count.

    Users mentioned but not yet stored are created with minimal profiles.
    Blank lines and lines starting with '#' are skipped.
    """
    count = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise InvalidParams(f"bad edge list line {lineno}: {line!r}")
        for user_id in parts:
            if store.get_user(user_id) is None:
                store.upsert_user(SNUser(user_id=user_id, display_name=user_id, sns_origin="mock-sns"))
        store.add_contact(parts[0], parts[1])
        count += 1
    return count
