"""Domain types: channels, videos, transcripts, comments, sentences, annotations.

Every entity knows how to validate its own invariants and how to convert
itself to/from a plain JSON-compatible dict (the JSON Lines exchange schema).
Unknown fields found on import are kept in ``extra`` and re-emitted on export.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any
from urllib.parse import urlparse

from .errors import InvariantViolation

# Label taxonomy for the two annotation tasks. Class ids are fixed; the
# definitions below are shown to annotators (tooltips in the UI).
TASK_INFO = "InfoType"
TASK_CONTROVERSY = "Controversy"
TASKS = (TASK_INFO, TASK_CONTROVERSY)

INFO_CLASSES = ("MaladiesRavageurs", "Eau", "Sol", "Adventices", "Recolte", "NonPertinent")
CONTROVERSY_CLASSES = ("Controverse", "NonControverse")

# Classes that may only be assigned to comment targets.
COMMENT_ONLY_CLASSES = frozenset({"Recolte"})

CLASS_DEFINITIONS = {
    "MaladiesRavageurs": "Gestion des maladies et des ravageurs des cultures "
    "(traitements, choix de variétés résistantes, associations protectrices).",
    "Eau": "Gestion de l'eau : accès, manque ou excès, économies, "
    "paillage contre l'évaporation, irrigation.",
    "Sol": "Adéquation entre le sol et les besoins des plantes : "
    "amendements, apports de matière organique, vie du sol.",
    "Adventices": "Gestion des végétaux indésirables : bâches, couverts, "
    "désherbage manuel ou mécanique.",
    "Recolte": "Tout ce qui concerne les récoltes (classe réservée aux commentaires).",
    "NonPertinent": "Aucune des thématiques suivies.",
    "Controverse": "Le commentaire conteste, critique ou ouvre un désaccord.",
    "NonControverse": "Pas de désaccord exprimé.",
}

TRANSCRIPT_STATUSES = ("pending", "fetched", "unavailable")

ENTITY_KINDS = ("channel", "video", "transcript", "comment", "annotation")
ANNOTATION_TARGET_KINDS = ("comment", "sentence", "transcript")


def task_classes(task: str) -> tuple[str, ...]:
    if task == TASK_INFO:
        return INFO_CLASSES
    if task == TASK_CONTROVERSY:
        return CONTROVERSY_CLASSES
    raise InvariantViolation(f"unknown task: {task!r}")


def parse_utc(value: str | datetime) -> datetime:
    """Parse an ISO-8601 timestamp and normalize it to UTC.

    Naive inputs are taken as UTC; 'Z' suffixes are accepted (3.10's
    fromisoformat does not handle them).
    """
    if isinstance(value, datetime):
        dt = value
    else:
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        try:
            dt = datetime.fromisoformat(text)
        except ValueError as exc:
            raise InvariantViolation(f"bad timestamp: {value!r}") from exc
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def iso_utc(dt: datetime) -> str:
    return parse_utc(dt).isoformat()


def utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvariantViolation(message)


def _is_absolute_url(url: str) -> bool:
    parsed = urlparse(url)
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


@dataclass
class Channel:
    channel_id: str
    title: str
    url: str
    added_at: datetime
    active: bool = True
    extra: dict[str, Any] = field(default_factory=dict)

    kind = "channel"

    def validate(self) -> None:
        _require(bool(self.channel_id), "channel_id must be non-empty")
        _require(_is_absolute_url(self.url), f"channel url not absolute: {self.url!r}")
        self.added_at = parse_utc(self.added_at)

    def to_json(self) -> dict[str, Any]:
        doc = {
            "channel_id": self.channel_id,
            "title": self.title,
            "url": self.url,
            "added_at": iso_utc(self.added_at),
            "active": self.active,
        }
        doc.update(self.extra)
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Channel":
        known = {"channel_id", "title", "url", "added_at", "active"}
        return cls(
            channel_id=doc.get("channel_id", ""),
            title=doc.get("title", ""),
            url=doc.get("url", ""),
            added_at=parse_utc(doc["added_at"]),
            active=bool(doc.get("active", True)),
            extra={k: v for k, v in doc.items() if k not in known},
        )


@dataclass
class VideoRecord:
    video_id: str
    channel_id: str
    title: str
    published_at: datetime
    collected_at: datetime
    url: str
    duration_s: float = 0.0
    transcript_status: str = "pending"
    extra: dict[str, Any] = field(default_factory=dict)

    kind = "video"

    def validate(self) -> None:
        _require(bool(self.video_id), "video_id must be non-empty")
        _require(bool(self.channel_id), "video must reference a channel")
        _require(self.duration_s >= 0, "duration_s must be non-negative")
        _require(
            self.transcript_status in TRANSCRIPT_STATUSES,
            f"bad transcript_status: {self.transcript_status!r}",
        )
        # Clock skew between published_at and collected_at is allowed; both
        # merely have to parse.
        self.published_at = parse_utc(self.published_at)
        self.collected_at = parse_utc(self.collected_at)

    def to_json(self) -> dict[str, Any]:
        doc = {
            "video_id": self.video_id,
            "channel_id": self.channel_id,
            "title": self.title,
            "published_at": iso_utc(self.published_at),
            "collected_at": iso_utc(self.collected_at),
            "url": self.url,
            "duration_s": self.duration_s,
            "transcript_status": self.transcript_status,
        }
        doc.update(self.extra)
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "VideoRecord":
        known = {
            "video_id", "channel_id", "title", "published_at", "collected_at",
            "url", "duration_s", "transcript_status",
        }
        return cls(
            video_id=doc.get("video_id", ""),
            channel_id=doc.get("channel_id", ""),
            title=doc.get("title", ""),
            published_at=parse_utc(doc["published_at"]),
            collected_at=parse_utc(doc["collected_at"]),
            url=doc.get("url", ""),
            duration_s=float(doc.get("duration_s", 0.0)),
            transcript_status=doc.get("transcript_status", "pending"),
            extra={k: v for k, v in doc.items() if k not in known},
        )


@dataclass
class TimedSegment:
    start_s: float
    duration_s: float
    text: str

    def validate(self) -> None:
        _require(self.start_s >= 0, "segment start_s must be >= 0")
        _require(self.duration_s >= 0, "segment duration_s must be >= 0")

    def to_json(self) -> dict[str, Any]:
        return {"start_s": self.start_s, "duration_s": self.duration_s, "text": self.text}

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "TimedSegment":
        return cls(
            start_s=float(doc["start_s"]),
            duration_s=float(doc["duration_s"]),
            text=doc.get("text", ""),
        )


@dataclass
class KeywordHit:
    category: str
    term: str
    start: int
    end: int

    def to_json(self) -> dict[str, Any]:
        return {"category": self.category, "term": self.term, "start": self.start, "end": self.end}

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "KeywordHit":
        return cls(doc["category"], doc["term"], int(doc["start"]), int(doc["end"]))


@dataclass
class Sentence:
    sentence_id: str
    parent_kind: str  # "transcript" | "comment"
    parent_id: str
    ordinal: int
    text: str
    span: tuple[int, int]  # half-open char offsets into the parent text
    keyword_hits: list[KeywordHit] = field(default_factory=list)

    def validate(self) -> None:
        _require(self.parent_kind in ("transcript", "comment"),
                 f"bad sentence parent kind: {self.parent_kind!r}")
        _require(self.ordinal >= 0, "sentence ordinal must be >= 0")
        start, end = self.span
        _require(0 <= start <= end, f"bad sentence span: {self.span!r}")

    def to_json(self) -> dict[str, Any]:
        return {
            "sentence_id": self.sentence_id,
            "parent": {"kind": self.parent_kind, "id": self.parent_id},
            "ordinal": self.ordinal,
            "text": self.text,
            "span": [self.span[0], self.span[1]],
            "keyword_hits": [h.to_json() for h in self.keyword_hits],
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Sentence":
        return cls(
            sentence_id=doc["sentence_id"],
            parent_kind=doc["parent"]["kind"],
            parent_id=doc["parent"]["id"],
            ordinal=int(doc["ordinal"]),
            text=doc["text"],
            span=(int(doc["span"][0]), int(doc["span"][1])),
            keyword_hits=[KeywordHit.from_json(h) for h in doc.get("keyword_hits", [])],
        )


def check_sentence_layer(parent_text: str, sentences: list[Sentence]) -> None:
    """Enforce the sentence-layer invariants against the parent text.

    Ordinals contiguous from 0, spans in increasing non-overlapping order,
    each span slicing the parent text to the sentence text, and only
    whitespace between spans (so splicing sentences back with the skipped
    characters reproduces the parent exactly).
    """
    prev_end = 0
    for i, s in enumerate(sentences):
        s.validate()
        _require(s.ordinal == i, f"sentence ordinals not contiguous at {i}")
        start, end = s.span
        _require(start >= prev_end, f"sentence spans overlap or go backwards at {i}")
        _require(end <= len(parent_text), f"sentence span outside parent text at {i}")
        _require(parent_text[start:end] == s.text,
                 f"sentence text does not match its span at {i}")
        _require(parent_text[prev_end:start].strip() == "",
                 f"non-whitespace characters between sentence spans at {i}")
        prev_end = end
    _require(parent_text[prev_end:].strip() == "",
             "non-whitespace characters after the last sentence span")


@dataclass
class Transcript:
    video_id: str
    segments: list[TimedSegment]
    restored_text: str = ""
    sentences: list[Sentence] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    kind = "transcript"

    def validate(self) -> None:
        _require(bool(self.video_id), "transcript must reference a video")
        last = 0.0
        for seg in self.segments:
            seg.validate()
            _require(seg.start_s >= last, "transcript segments not sorted by start_s")
            last = seg.start_s
        if self.sentences:
            check_sentence_layer(self.restored_text, self.sentences)

    def to_json(self) -> dict[str, Any]:
        doc = {
            "video_id": self.video_id,
            "segments": [s.to_json() for s in self.segments],
            "restored_text": self.restored_text,
            "sentences": [s.to_json() for s in self.sentences],
        }
        doc.update(self.extra)
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Transcript":
        known = {"video_id", "segments", "restored_text", "sentences"}
        return cls(
            video_id=doc["video_id"],
            segments=[TimedSegment.from_json(s) for s in doc.get("segments", [])],
            restored_text=doc.get("restored_text", ""),
            sentences=[Sentence.from_json(s) for s in doc.get("sentences", [])],
            extra={k: v for k, v in doc.items() if k not in known},
        )


@dataclass
class Comment:
    comment_id: str
    video_id: str
    author_key: str
    published_at: datetime
    text: str
    reply_to: str | None = None
    normalized_text: str = ""
    sentences: list[Sentence] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    kind = "comment"

    def validate(self) -> None:
        _require(bool(self.comment_id), "comment_id must be non-empty")
        _require(bool(self.video_id), "comment must reference a video")
        self.published_at = parse_utc(self.published_at)
        if self.sentences:
            check_sentence_layer(self.normalized_text, self.sentences)

    def to_json(self) -> dict[str, Any]:
        doc = {
            "comment_id": self.comment_id,
            "video_id": self.video_id,
            "author_key": self.author_key,
            "published_at": iso_utc(self.published_at),
            "text": self.text,
            "reply_to": self.reply_to,
            "normalized_text": self.normalized_text,
            "sentences": [s.to_json() for s in self.sentences],
        }
        doc.update(self.extra)
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Comment":
        known = {
            "comment_id", "video_id", "author_key", "published_at", "text",
            "reply_to", "normalized_text", "sentences",
        }
        return cls(
            comment_id=doc["comment_id"],
            video_id=doc.get("video_id", ""),
            author_key=doc.get("author_key", ""),
            published_at=parse_utc(doc["published_at"]),
            text=doc.get("text", ""),
            reply_to=doc.get("reply_to"),
            normalized_text=doc.get("normalized_text", ""),
            sentences=[Sentence.from_json(s) for s in doc.get("sentences", [])],
            extra={k: v for k, v in doc.items() if k not in known},
        )


@dataclass
class Annotation:
    target_kind: str  # "comment" | "sentence" | "transcript"
    target_id: str
    annotator_id: str
    task: str
    label: str
    created_at: datetime
    extra: dict[str, Any] = field(default_factory=dict)

    kind = "annotation"

    def validate(self) -> None:
        _require(self.target_kind in ANNOTATION_TARGET_KINDS,
                 f"bad annotation target kind: {self.target_kind!r}")
        _require(bool(self.target_id), "annotation target_id must be non-empty")
        _require(bool(self.annotator_id), "annotator_id must be non-empty")
        classes = task_classes(self.task)
        _require(self.label in classes,
                 f"label {self.label!r} not valid for task {self.task}")
        if self.label in COMMENT_ONLY_CLASSES and self.target_kind != "comment":
            raise InvariantViolation(
                f"label {self.label!r} may only be assigned to comments")
        self.created_at = parse_utc(self.created_at)

    def to_json(self) -> dict[str, Any]:
        doc = {
            "target": {"kind": self.target_kind, "id": self.target_id},
            "annotator_id": self.annotator_id,
            "task": self.task,
            "label": self.label,
            "created_at": iso_utc(self.created_at),
        }
        doc.update(self.extra)
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Annotation":
        known = {"target", "annotator_id", "task", "label", "created_at"}
        return cls(
            target_kind=doc["target"]["kind"],
            target_id=doc["target"]["id"],
            annotator_id=doc["annotator_id"],
            task=doc["task"],
            label=doc["label"],
            created_at=parse_utc(doc["created_at"]),
            extra={k: v for k, v in doc.items() if k not in known},
        )


@dataclass
class CorpusStats:
    counts: dict[str, int]
    label_histograms: dict[str, dict[str, int]]

    def to_json(self) -> dict[str, Any]:
        return {"counts": self.counts, "label_histograms": self.label_histograms}
