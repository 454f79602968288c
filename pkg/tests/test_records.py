"""Record validation, normalization, and the interning key function."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scholarlib.errors import MalformedDate, MalformedLanguage, MissingField
from scholarlib.records import item_key, record_to_json, validate_record


class TestValidateRecord:
    def test_normalizes_whitespace_and_duplicate_subjects(self):
        record = validate_record(
            {"identifier": "a1", "title": " T ", "subjects": ["Men", "men"]}
        )
        assert record.title == "T"
        assert record.subjects == ["Men"]

    def test_missing_identifier(self):
        with pytest.raises(MissingField) as excinfo:
            validate_record({"title": "T"})
        assert excinfo.value.field == "identifier"

    def test_blank_identifier_counts_as_missing(self):
        with pytest.raises(MissingField):
            validate_record({"identifier": "   ", "title": "T"})

    def test_missing_title(self):
        with pytest.raises(MissingField) as excinfo:
            validate_record({"identifier": "a1"})
        assert excinfo.value.field == "title"

    def test_malformed_date(self):
        with pytest.raises(MalformedDate):
            validate_record({"identifier": "a1", "title": "T", "date": "2012-13-40"})

    def test_year_only_date_rejected(self):
        with pytest.raises(MalformedDate):
            validate_record({"identifier": "a1", "title": "T", "date": "2012"})

    def test_valid_date_kept(self):
        record = validate_record({"identifier": "a1", "title": "T", "date": "2012-06-22"})
        assert record.date == "2012-06-22"

    def test_malformed_language(self):
        with pytest.raises(MalformedLanguage):
            validate_record({"identifier": "a1", "title": "T", "language": "eng"})

    def test_language_lowercased(self):
        record = validate_record({"identifier": "a1", "title": "T", "language": "EN"})
        assert record.language == "en"

    def test_scalar_coercion_and_single_string_lists(self):
        record = validate_record(
            {"identifier": 123, "title": "T", "creators": "Solo, A.", "subjects": "One"}
        )
        assert record.identifier == "123"
        assert record.creators == ["Solo, A."]
        assert record.subjects == ["One"]

    def test_unknown_keys_dropped(self):
        record = validate_record({"identifier": "a1", "title": "T", "publisher": "X"})
        assert "publisher" not in record_to_json(record)


raw_records = st.fixed_dictionaries(
    {
        "identifier": st.text(alphabet=st.characters(whitelist_categories=("Ll", "Nd")), min_size=1),
        "title": st.text(min_size=1).filter(lambda s: s.strip()),
    },
    optional={
        "creators": st.lists(st.text(min_size=1), max_size=4),
        "subjects": st.lists(st.text(min_size=1), max_size=6),
        "description": st.text(),
        "doc_type": st.text(),
        "language": st.sampled_from(["en", "de", "fr", "EN"]),
        "date": st.dates().map(str),
        "link": st.just("http://example.org/x"),
    },
)


@given(raw_records)
def test_validation_is_a_projection(raw):
    once = validate_record(raw)
    twice = validate_record(record_to_json(once))
    assert record_to_json(once) == record_to_json(twice)


def test_canonical_json_omits_absent_optionals():
    record = validate_record({"identifier": "a1", "title": "T"})
    body = record_to_json(record)
    assert set(body) == {"identifier", "title", "creators", "subjects"}
    assert None not in body.values()


class TestItemKey:
    def test_deterministic(self):
        assert item_key("mock-dl-a", "sowi-123") == item_key("mock-dl-a", "sowi-123")

    def test_distinct_across_sources(self):
        # Same identifier hosted by two DLs must stay two distinct items.
        keys = {
            (source, identifier): item_key(source, identifier)
            for source in ("mock-dl-a", "mock-dl-b")
            for identifier in ("sowi-123", "sowi-124")
        }
        assert len(set(keys.values())) == len(keys)

    def test_shape(self):
        key = item_key("mock-dl-a", "sowi-123")
        assert len(key) == 32
        assert key == key.lower()
        int(key, 16)

    @given(st.text(min_size=1), st.text(min_size=1))
    def test_pure_function(self, source, identifier):
        assert item_key(source, identifier) == item_key(source, identifier)
