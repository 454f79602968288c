"""Social-signal scoring, re-ranking, term recommendation, and alerting.

The score blends log-damped annotation counts so no single viral item can
dominate, and centers ratings on the neutral value 3 so bad ratings never
boost an item:

    score = alpha * log2(1 + forwards)
          + beta  * max(0, (avg_rating - 3) / 2)   (only when rated at all)
          + gamma * log2(1 + comments)
          + delta * log2(1 + library adds)

Re-ranking blends reciprocal base rank with that score:

    final = 1 / base_rank + lambda * score

so lambda = 0 reproduces the federation order exactly.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .errors import InvalidParams, InvalidQuery, NotContacts, NoTerms, ScholarLibError
from .federation import Federation, SearchQuery
from .models import Alert, Notification, SItem, SocialSummary
from .store import Store
from .text import token_set

log = logging.getLogger("scholarlib.enrichment")

#: Page size used per term when alerts re-run their searches.
ALERT_SEARCH_LIMIT = 50

#: How many recommendations each alert term contributes.
ALERT_RECOMMENDATIONS_PER_TERM = 3

CONFIG_KEYS = {
    "alpha": "alpha",
    "beta": "beta",
    "gamma": "gamma",
    "delta": "delta",
    "lambda": "lambda_",
}


@dataclass(frozen=True)
class RankWeights:
    """Free parameters of the scoring rule; all must be non-negative."""

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 0.5
    delta: float = 0.5
    lambda_: float = 0.25

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma", "delta", "lambda_"):
            if getattr(self, name) < 0:
                raise InvalidParams(f"weight {name.rstrip('_')} must be non-negative")

    def replaced(self, **overrides: float | None) -> "RankWeights":
        """Copy with the non-None overrides applied (CLI flags beat config)."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "lambda": self.lambda_,
        }


def load_weights(path: str | Path) -> RankWeights:
    """Read weights from key=value lines ('#' comments and blanks allowed)."""
    values: dict[str, float] = {}
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParams(f"cannot read config: {exc}") from exc
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InvalidParams(f"config line {lineno}: expected key=value")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise InvalidParams(f"config line {lineno}: unknown key {key!r}")
        try:
            values[CONFIG_KEYS[key]] = float(value.strip())
        except ValueError:
            raise InvalidParams(f"config line {lineno}: bad number {value.strip()!r}") from None
    return RankWeights(**values)


# -- scoring -----------------------------------------------------------------


def social_score(summary: SocialSummary, weights: RankWeights) -> float:
    """Non-negative social signal score for one item's summary."""
    score = weights.alpha * math.log2(1 + summary.forward_count)
    if summary.rating_count > 0 and summary.avg_rating is not None:
        score += weights.beta * max(0.0, (summary.avg_rating - 3.0) / 2.0)
    score += weights.gamma * math.log2(1 + summary.comment_count)
    score += weights.delta * math.log2(1 + summary.library_count)
    return score


@dataclass
class RankedResult:
    item: SItem
    base_rank: int
    final_score: float


def rerank(
    results: list[tuple[SItem, int]],
    weights: RankWeights,
    summary_for: Callable[[str], SocialSummary],
) -> list[RankedResult]:
    """Blend reciprocal base rank with social score and re-sort.

    Expects results in base-rank order with distinct positive ranks; ties in
    the blended score fall back to base rank, so lambda = 0 keeps the input
    order exactly.
    """
    ranked = [
        RankedResult(
            item=item,
            base_rank=base_rank,
            final_score=1.0 / base_rank
            + weights.lambda_ * social_score(summary_for(item.item_id), weights),
        )
        for item, base_rank in results
    ]
    ranked.sort(key=lambda entry: (-entry.final_score, entry.base_rank))
    return ranked


# -- term recommendation -------------------------------------------------------


def recommend_terms(store: Store, term: str, k: int) -> list[tuple[str, int]]:
    """Top-k subject terms co-occurring with ``term`` across stored items.

    A document matches when it shares at least one token with the term
    (title, subjects, or description). Subjects of matching documents are
    ranked by document frequency descending, ties lexicographically, with
    the query term itself excluded (case-folded comparison).
    """
    if not term or not term.strip():
        raise InvalidQuery("term must be non-blank")
    if k < 1:
        raise InvalidQuery("k must be >= 1")
    term_tokens = token_set(term)
    excluded = term.strip().casefold()
    counts: dict[str, int] = {}
    for item in store.list_items():
        record = item.record
        doc_tokens = token_set(record.title, *record.subjects, record.description or "")
        if not (term_tokens & doc_tokens):
            continue
        for subject in record.subjects:
            if subject.casefold() == excluded:
                continue
            counts[subject] = counts.get(subject, 0) + 1
    ordered = sorted(counts.items(), key=lambda entry: (-entry[1], entry[0]))
    return ordered[:k]


# -- alerts ----------------------------------------------------------------------


def _dedupe_casefold(terms: list[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for term in terms:
        cleaned = term.strip()
        key = cleaned.casefold()
        if cleaned and key not in seen:
            seen.add(key)
            out.append(cleaned)
    return out


def create_alert(store: Store, user: str, extra_terms: list[str] | None = None) -> Alert:
    """Store an alert over the user's interests plus any extra terms.

    Recommended terms are the top 3 co-occurring subjects per term, deduped
    and excluding terms the alert already carries. The alert starts at the
    current store sequence, so only items arriving afterwards will notify.
    """
    profile = store.require_user(user)
    terms = _dedupe_casefold(list(profile.interests) + list(extra_terms or []))
    if not terms:
        raise NoTerms("alert needs interests or extra terms")
    term_keys = {term.casefold() for term in terms}
    recommended: list[str] = []
    seen: set[str] = set()
    for term in terms:
        for candidate, _count in recommend_terms(store, term, ALERT_RECOMMENDATIONS_PER_TERM):
            key = candidate.casefold()
            if key in seen or key in term_keys:
                continue
            seen.add(key)
            recommended.append(candidate)
    return store.put_alert(user, terms, recommended)


def run_alerts(store: Store, federation: Federation) -> list[Notification]:
    """Re-run every alert against the federation and notify on new items.

    Each alert term is searched separately (OR semantics) and the hits are
    unioned. An item notifies when it was interned after the alert's high-
    water mark and the user was not already notified for it; afterwards the
    mark advances to the current store sequence, so a re-run with unchanged
    DL content yields nothing. Per-alert failures are logged and skipped.
    """
    notifications: list[Notification] = []
    already = {
        (note.recipient, note.item)
        for note in store.list_notifications()
        if note.reason == "alert_match"
    }
    for alert in store.list_alerts():
        new_items: dict[str, SItem] = {}
        failures = 0
        for term in _dedupe_casefold(alert.terms + alert.recommended_terms):
            try:
                result = federation.federated_search(
                    SearchQuery(text=term, limit=ALERT_SEARCH_LIMIT)
                )
            except ScholarLibError as exc:
                failures += 1
                log.warning("alert %s: term %r failed: %s", alert.alert_id, term, exc)
                continue
            for hit in result.hits:
                if hit.item.seq > alert.last_run_seq:
                    new_items.setdefault(hit.item.item_id, hit.item)
        for item in sorted(new_items.values(), key=lambda it: it.seq):
            if (alert.user, item.item_id) in already:
                continue
            note = store.add_notification(
                alert.user, item.item_id, "alert_match", message=f"alert {alert.alert_id}"
            )
            already.add((alert.user, item.item_id))
            notifications.append(note)
        store.advance_alert(alert.alert_id, store.seq)
    return notifications


# -- pro-active posting ------------------------------------------------------------


def post_to_network(
    store: Store,
    sender: str,
    item: str,
    message: str | None = None,
    recipients: list[str] | None = None,
) -> list[Notification]:
    """Share an item into the sender's network, notifying each target.

    Without explicit recipients, targets are the contacts whose interests
    share at least one token with the item's title or subjects. Each target
    gets a parentless forward plus a notification.
    """
    profile = store.require_user(sender)
    record = store.require_item(item).record
    if recipients is not None:
        for recipient in recipients:
            store.require_user(recipient)
            if recipient not in profile.contacts:
                raise NotContacts(f"{recipient} is not a contact of {sender}")
        targets = list(recipients)
    else:
        item_tokens = token_set(record.title, *record.subjects)
        targets = [
            contact
            for contact in sorted(profile.contacts)
            if token_set(*store.require_user(contact).interests) & item_tokens
        ]
    notifications = []
    for target in targets:
        store.add_forward(sender, target, item, parent=None)
        notifications.append(store.add_notification(target, item, "network_post", message))
    return notifications
