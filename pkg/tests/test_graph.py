"""Contacts, forwarding, spread tracing, and the seeded mock graph.

trace_spread is checked against an oracle that recomputes reach and depth
from raw annotation payloads via parent pointers, independent of the
children-map walk the implementation uses.
"""

from __future__ import annotations

import random

import pytest

from scholarlib import graph
from scholarlib.errors import BadParent, InvalidParams, NotContacts, SelfEdge, UnknownUser
from scholarlib.models import FORWARD

from .test_store import add_item, add_user


def oracle_reach_depth(annotations, item_id):
    """Recompute reach and max depth from parent pointers alone."""
    forwards = {
        a.annotation_id: a
        for a in annotations
        if a.kind == FORWARD and a.item == item_id
    }
    users = set()
    for ann in forwards.values():
        users.add(ann.author)
        users.add(ann.payload["recipient"])
    depth_memo: dict[str, int] = {}

    def depth(aid: str) -> int:
        if aid not in depth_memo:
            parent = forwards[aid].payload.get("parent")
            depth_memo[aid] = 1 if parent is None else 1 + depth(parent)
        return depth_memo[aid]

    max_depth = max((depth(aid) for aid in forwards), default=0)
    return len(users), max_depth


class TestContacts:
    def test_symmetric(self, store):
        add_user(store, "a")
        add_user(store, "b")
        graph.add_contact(store, "a", "b")
        assert "b" in store.require_user("a").contacts
        assert "a" in store.require_user("b").contacts

    def test_idempotent(self, store):
        add_user(store, "a")
        add_user(store, "b")
        graph.add_contact(store, "a", "b")
        graph.add_contact(store, "a", "b")
        assert store.require_user("a").contacts == {"b"}

    def test_self_edge_rejected(self, store):
        add_user(store, "a")
        with pytest.raises(SelfEdge):
            graph.add_contact(store, "a", "a")

    def test_unknown_user(self, store):
        add_user(store, "a")
        with pytest.raises(UnknownUser):
            graph.add_contact(store, "a", "ghost")


class TestForwarding:
    def setup_chain(self, store):
        for uid in ("a", "b", "c"):
            add_user(store, uid)
        graph.add_contact(store, "a", "b")
        graph.add_contact(store, "b", "c")
        return add_item(store)

    def test_chain_of_depth_two(self, store):
        item = self.setup_chain(store)
        first = graph.forward_item(store, "a", "b", item.item_id)
        graph.forward_item(store, "b", "c", item.item_id, parent=first.annotation_id)
        trace = graph.trace_spread(store, item.item_id)
        assert trace.max_depth == 2
        assert trace.reach == 3

    def test_not_contacts(self, store):
        item = self.setup_chain(store)
        with pytest.raises(NotContacts):
            graph.forward_item(store, "a", "c", item.item_id)

    def test_forward_to_self_is_not_contacts(self, store):
        item = self.setup_chain(store)
        with pytest.raises(NotContacts):
            graph.forward_item(store, "a", "a", item.item_id)

    def test_parent_must_match_item(self, store):
        item = self.setup_chain(store)
        other = add_item(store, "doc-2", "Other")
        first = graph.forward_item(store, "a", "b", item.item_id)
        with pytest.raises(BadParent):
            graph.forward_item(store, "b", "c", other.item_id, parent=first.annotation_id)

    def test_parent_recipient_must_be_author(self, store):
        item = self.setup_chain(store)
        first = graph.forward_item(store, "a", "b", item.item_id)
        graph.add_contact(store, "a", "c")
        with pytest.raises(BadParent):
            # c was not the recipient of the parent forward.
            graph.forward_item(store, "c", "b", item.item_id, parent=first.annotation_id)

    def test_parent_must_be_a_forward(self, store):
        item = self.setup_chain(store)
        note = store.add_comment("a", item.item_id, "hello")
        with pytest.raises(BadParent):
            graph.forward_item(store, "a", "b", item.item_id, parent=note.annotation_id)

    def test_unknown_parent(self, store):
        item = self.setup_chain(store)
        with pytest.raises(BadParent):
            graph.forward_item(store, "a", "b", item.item_id, parent="an-99999999")


class TestTraceSpread:
    def test_no_forwards(self, store):
        item = add_item(store)
        trace = graph.trace_spread(store, item.item_id)
        assert trace.roots == []
        assert trace.edges == []
        assert trace.reach == 0
        assert trace.max_depth == 0

    def test_single_forward(self, store):
        add_user(store, "a")
        add_user(store, "b")
        graph.add_contact(store, "a", "b")
        item = add_item(store)
        graph.forward_item(store, "a", "b", item.item_id)
        trace = graph.trace_spread(store, item.item_id)
        assert trace.reach == 2
        assert trace.max_depth == 1
        assert len(trace.roots) == 1

    def test_random_forests_match_oracle(self, store):
        rng = random.Random(99)
        users = [add_user(store, f"u{i}").user_id for i in range(20)]
        for i, u in enumerate(users):
            for v in users[i + 1 :]:
                if rng.random() < 0.4:
                    graph.add_contact(store, u, v)
        items = [add_item(store, f"doc-{i}", f"Title {i}").item_id for i in range(3)]
        forwards_by_item = {item: [] for item in items}
        built = 0
        attempts = 0
        while built < 30 and attempts < 500:
            attempts += 1
            author = rng.choice(users)
            contacts = sorted(store.require_user(author).contacts)
            if not contacts:
                continue
            recipient = rng.choice(contacts)
            item = rng.choice(items)
            # Half the time, try to chain off a forward addressed to the author.
            parent = None
            if rng.random() < 0.5:
                candidates = [
                    f for f in forwards_by_item[item] if f.payload["recipient"] == author
                ]
                if candidates:
                    parent = rng.choice(candidates).annotation_id
            ann = graph.forward_item(store, author, recipient, item, parent)
            forwards_by_item[item].append(ann)
            built += 1
        assert built == 30
        for item in items:
            trace = graph.trace_spread(store, item)
            reach, depth = oracle_reach_depth(store.list_annotations(), item)
            assert trace.reach == reach
            assert trace.max_depth == depth
            # Forest shape: every non-root has exactly one parent edge.
            children = [child for _, child in trace.edges]
            assert len(children) == len(set(children))
            assert set(children).isdisjoint(set(trace.roots))
        assert store.check_integrity() == []

    def test_reach_monotone_over_time(self, store):
        rng = random.Random(5)
        users = [add_user(store, f"u{i}").user_id for i in range(8)]
        for i in range(len(users) - 1):
            graph.add_contact(store, users[i], users[i + 1])
        item = add_item(store).item_id
        last_reach = 0
        for i in range(len(users) - 1):
            graph.forward_item(store, users[i], users[i + 1], item)
            reach = graph.trace_spread(store, item).reach
            assert reach >= last_reach
            last_reach = reach
        assert last_reach == len(users)


class TestMockGraph:
    def test_zero_probability_no_edges(self, store):
        graph.generate_mock_graph(store, 5, 0.0, seed=1)
        assert all(not u.contacts for u in store.list_users())

    def test_probability_one_complete_graph(self, store):
        graph.generate_mock_graph(store, 5, 1.0, seed=1)
        edges = sum(len(u.contacts) for u in store.list_users()) // 2
        assert edges == 10

    def test_same_seed_same_graph(self, tmp_path):
        from scholarlib.store import Store

        edge_sets = []
        for name in ("g1.db", "g2.db"):
            st = Store(tmp_path / name)
            graph.generate_mock_graph(st, 50, 0.1, seed=7)
            edges = {
                (u.user_id, v) for u in st.list_users() for v in u.contacts if u.user_id < v
            }
            edge_sets.append(edges)
            st.close()
        assert edge_sets[0] == edge_sets[1]
        assert edge_sets[0]

    def test_invalid_params(self, store):
        with pytest.raises(InvalidParams):
            graph.generate_mock_graph(store, 0, 0.5, seed=1)
        with pytest.raises(InvalidParams):
            graph.generate_mock_graph(store, 5, 1.5, seed=1)


class TestEdgeList:
    def test_load_creates_users_and_edges(self, store):
        count = graph.load_edge_list(store, ["a b", "", "# comment", "b c"])
        assert count == 2
        assert store.require_user("a").contacts == {"b"}
        assert store.require_user("b").contacts == {"a", "c"}

    def test_bad_line_rejected(self, store):
        with pytest.raises(InvalidParams):
            graph.load_edge_list(store, ["a b c"])
