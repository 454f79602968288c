"""Exception hierarchy shared by all gateway modules.

Every domain error carries a stable ``code`` string that the HTTP layer
surfaces in JSON bodies and maps onto a status code.
"""

from __future__ import annotations


class ScholarLibError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code


# -- record / validation -----------------------------------------------------

class InvalidRecord(ScholarLibError):
    code = "invalid_record"


class MissingField(InvalidRecord):
    code = "missing_field"

    def __init__(self, field: str):
        super().__init__(f"missing or empty field: {field}")
        self.field = field


class MalformedDate(InvalidRecord):
    code = "malformed_date"


class MalformedLanguage(InvalidRecord):
    code = "malformed_language"


class InvalidQuery(ScholarLibError):
    code = "invalid_query"


class InvalidUser(ScholarLibError):
    code = "invalid_user"


class InvalidPayload(ScholarLibError):
    code = "invalid_payload"


class InvalidParams(ScholarLibError):
    code = "invalid_params"


class InvalidUrl(ScholarLibError):
    code = "invalid_url"


class NoTerms(ScholarLibError):
    code = "no_terms"


# -- unknown entities --------------------------------------------------------

class UnknownSource(ScholarLibError):
    code = "unknown_source"


class UnknownUser(ScholarLibError):
    code = "unknown_user"


class UnknownItem(ScholarLibError):
    code = "unknown_item"


class UnknownAlert(ScholarLibError):
    code = "unknown_alert"


# -- graph preconditions -----------------------------------------------------

class SelfEdge(ScholarLibError):
    code = "self_edge"


class NotContacts(ScholarLibError):
    code = "not_contacts"


class BadParent(ScholarLibError):
    code = "bad_parent"


# -- federation --------------------------------------------------------------

class DuplicateName(ScholarLibError):
    code = "duplicate_name"


class ConnectorTimeout(ScholarLibError):
    code = "connector_timeout"


class MalformedResponse(ScholarLibError):
    code = "malformed_response"


class NoActiveSources(ScholarLibError):
    code = "no_active_sources"


# -- service lifecycle -------------------------------------------------------

class StoreCorruption(ScholarLibError):
    code = "store_corruption"


class CorpusParseError(ScholarLibError):
    code = "corpus_parse_error"
