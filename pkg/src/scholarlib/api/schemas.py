"""Request and response models for the gateway HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..enrichment import RankedResult
from ..federation import SourceStatus
from ..models import Alert, Annotation, DLRegistration, Notification, SItem, SNUser, SocialSummary, SpreadTrace
from ..records import DCRecord


# -- requests -----------------------------------------------------------------

class UserIn(BaseModel):
    user_id: str
    display_name: str = ""
    sns_origin: str = ""
    interests: list[str] = Field(default_factory=list)


class ContactIn(BaseModel):
    user_a: str
    user_b: str


class CommentIn(BaseModel):
    user: str | None = None
    text: str


class RatingIn(BaseModel):
    user: str | None = None
    value: int


class LibraryIn(BaseModel):
    user: str | None = None
    folder: str


class ForwardIn(BaseModel):
    user: str | None = None
    to: str
    parent: str | None = None


class PostIn(BaseModel):
    sender: str | None = None
    item: str
    message: str | None = None
    recipients: list[str] | None = None


class AlertIn(BaseModel):
    user: str | None = None
    extra_terms: list[str] = Field(default_factory=list)


class RegistryIn(BaseModel):
    name: str
    base_url: str


class RegistryUpdateIn(BaseModel):
    base_url: str | None = None


# -- responses ----------------------------------------------------------------

class HealthOut(BaseModel):
    status: str


class ErrorOut(BaseModel):
    error: str
    detail: str = ""


class RecordOut(BaseModel):
    identifier: str
    title: str
    creators: list[str] = Field(default_factory=list)
    date: str | None = None
    subjects: list[str] = Field(default_factory=list)
    description: str | None = None
    doc_type: str | None = None
    language: str | None = None
    link: str | None = None

    @classmethod
    def from_record(cls, record: DCRecord) -> "RecordOut":
        return cls(
            identifier=record.identifier,
            title=record.title,
            creators=record.creators,
            date=record.date,
            subjects=record.subjects,
            description=record.description,
            doc_type=record.doc_type,
            language=record.language,
            link=record.link,
        )


class SummaryOut(BaseModel):
    item: str
    comment_count: int
    rating_count: int
    avg_rating: float | None = None
    library_count: int
    forward_count: int
    folders: list[tuple[str, int]] = Field(default_factory=list)

    @classmethod
    def from_summary(cls, summary: SocialSummary) -> "SummaryOut":
        return cls(
            item=summary.item,
            comment_count=summary.comment_count,
            rating_count=summary.rating_count,
            avg_rating=summary.avg_rating,
            library_count=summary.library_count,
            forward_count=summary.forward_count,
            folders=summary.folders,
        )


class UserOut(BaseModel):
    user_id: str
    display_name: str
    sns_origin: str
    interests: list[str]
    contacts: list[str]

    @classmethod
    def from_user(cls, user: SNUser) -> "UserOut":
        return cls(
            user_id=user.user_id,
            display_name=user.display_name,
            sns_origin=user.sns_origin,
            interests=user.interests,
            contacts=sorted(user.contacts),
        )


class AnnotationOut(BaseModel):
    annotation_id: str
    kind: str
    author: str
    item: str
    created_at: str
    payload: dict

    @classmethod
    def from_annotation(cls, ann: Annotation) -> "AnnotationOut":
        return cls(
            annotation_id=ann.annotation_id,
            kind=ann.kind,
            author=ann.author,
            item=ann.item,
            created_at=ann.created_at,
            payload=ann.payload,
        )


class ItemOut(BaseModel):
    item_id: str
    dl_source: str
    record: RecordOut

    @classmethod
    def from_item(cls, item: SItem) -> "ItemOut":
        return cls(
            item_id=item.item_id,
            dl_source=item.dl_source,
            record=RecordOut.from_record(item.record),
        )


class ItemDetailOut(BaseModel):
    item: ItemOut
    summary: SummaryOut


class SourceStatusOut(BaseModel):
    source: str
    total: int | None = None
    returned: int = 0
    dropped_invalid: int = 0
    error: str | None = None

    @classmethod
    def from_status(cls, status: SourceStatus) -> "SourceStatusOut":
        return cls(
            source=status.source,
            total=status.total,
            returned=status.returned,
            dropped_invalid=status.dropped_invalid,
            error=status.error,
        )


class SearchResultOut(BaseModel):
    item: str
    source: str
    base_rank: int
    final_score: float
    record: RecordOut
    summary: SummaryOut
    in_library: bool | None = None

    @classmethod
    def from_ranked(
        cls, ranked: RankedResult, summary: SocialSummary, in_library: bool | None
    ) -> "SearchResultOut":
        return cls(
            item=ranked.item.item_id,
            source=ranked.item.dl_source,
            base_rank=ranked.base_rank,
            final_score=ranked.final_score,
            record=RecordOut.from_record(ranked.item.record),
            summary=SummaryOut.from_summary(summary),
            in_library=in_library,
        )


class SearchResponse(BaseModel):
    query: str
    offset: int
    limit: int
    results: list[SearchResultOut]
    source_status: list[SourceStatusOut]
    source_errors: list[SourceStatusOut]


class ItemWithSummaryOut(BaseModel):
    item: ItemOut
    summary: SummaryOut


class SocialSearchResponse(BaseModel):
    query: str
    profiles: list[UserOut]
    comments: list[AnnotationOut]
    items: list[ItemWithSummaryOut]


class SpreadOut(BaseModel):
    item: str
    roots: list[str]
    edges: list[tuple[str, str]]
    reach: int
    max_depth: int

    @classmethod
    def from_trace(cls, trace: SpreadTrace) -> "SpreadOut":
        return cls(
            item=trace.item,
            roots=trace.roots,
            edges=trace.edges,
            reach=trace.reach,
            max_depth=trace.max_depth,
        )


class RegistrationOut(BaseModel):
    name: str
    base_url: str
    status: str
    registered_at: str

    @classmethod
    def from_registration(cls, reg: DLRegistration) -> "RegistrationOut":
        return cls(
            name=reg.name,
            base_url=reg.base_url,
            status=reg.status,
            registered_at=reg.registered_at,
        )


class AlertOut(BaseModel):
    alert_id: str
    user: str
    terms: list[str]
    recommended_terms: list[str]
    last_run_seq: int

    @classmethod
    def from_alert(cls, alert: Alert) -> "AlertOut":
        return cls(
            alert_id=alert.alert_id,
            user=alert.user,
            terms=alert.terms,
            recommended_terms=alert.recommended_terms,
            last_run_seq=alert.last_run_seq,
        )


class NotificationOut(BaseModel):
    notification_id: str
    recipient: str
    item: str
    reason: str
    message: str | None = None
    created_at: str

    @classmethod
    def from_notification(cls, note: Notification) -> "NotificationOut":
        return cls(
            notification_id=note.notification_id,
            recipient=note.recipient,
            item=note.item,
            reason=note.reason,
            message=note.message,
            created_at=note.created_at,
        )


class NotificationsOut(BaseModel):
    notifications: list[NotificationOut]


class FolderOut(BaseModel):
    folder: str
    items: list[ItemOut]


class LibraryOut(BaseModel):
    user: str
    folders: list[FolderOut]


class RecommendationOut(BaseModel):
    term: str
    count: int


class RecommendationsOut(BaseModel):
    query: str
    terms: list[RecommendationOut]


class ImportOut(BaseModel):
    imported: dict[str, int]
