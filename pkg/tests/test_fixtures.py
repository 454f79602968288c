"""Fixture guarantees: determinism, shard split, seeded content claims."""

from __future__ import annotations

import pytest

from scholarlib import graph
from scholarlib.errors import InvalidParams
from scholarlib.fixtures import FixtureClock, make_fixture, seed_store
from scholarlib.mockdl import MockDL
from scholarlib.records import item_key
from scholarlib.store import Store
from scholarlib.text import token_set


class TestMakeFixture:
    def test_same_seed_same_fixture(self):
        one = make_fixture(seed=7)
        two = make_fixture(seed=7)
        assert [r.title for r in one.corpus] == [r.title for r in two.corpus]
        assert one.contacts == two.contacts
        assert one.annotations == two.annotations

    def test_different_seed_different_corpus(self):
        assert [r.title for r in make_fixture(seed=1).corpus] != [
            r.title for r in make_fixture(seed=2).corpus
        ]

    def test_violence_documents_carry_gewalt_subject(self):
        fixture = make_fixture(seed=7)
        hits = [
            record
            for record in fixture.corpus
            if "violence" in token_set(record.title, record.description or "")
        ]
        assert hits, "corpus must contain documents matching 'violence'"
        assert any("Gewalt" in record.subjects for record in hits)

    def test_shards_partition_the_corpus(self):
        fixture = make_fixture(seed=7, corpus_size=11)
        a, b = fixture.shard("a"), fixture.shard("b")
        assert len(a) + len(b) == 11
        ids = [r.identifier for r in a] + [r.identifier for r in b]
        assert len(set(ids)) == 11
        with pytest.raises(InvalidParams):
            fixture.shard("c")

    def test_invalid_params(self):
        with pytest.raises(InvalidParams):
            make_fixture(n_users=0)
        with pytest.raises(InvalidParams):
            make_fixture(edge_prob=2.0)


@pytest.fixture(scope="module")
def seeded(tmp_path_factory):
    store = Store(tmp_path_factory.mktemp("fx") / "fx.db", clock=FixtureClock())
    seed_store(store, make_fixture(seed=7))
    yield store
    store.close()


class TestSeededStore:
    def test_search_violence_finds_results(self, seeded):
        # The corpus guarantees hits for the canonical demo query.
        corpus = [item.record for item in seeded.list_items()]
        total, page = MockDL(corpus).search("violence", limit=5)
        assert total >= 1
        assert page

    def test_contains_depth_three_forward_chain(self, seeded):
        chain_item = item_key("mock-dl-a", "rec-0000")
        trace = graph.trace_spread(seeded, chain_item)
        assert trace.max_depth >= 3

    def test_integrity_and_counts(self, seeded):
        assert seeded.check_integrity() == []
        assert len(seeded.list_users()) == 20
        assert len(seeded.list_items()) == 200

    def test_seeding_requires_empty_store(self, seeded):
        with pytest.raises(InvalidParams):
            seed_store(seeded, make_fixture(seed=7))
