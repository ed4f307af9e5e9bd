"""File-backed record store.

One newline-delimited JSON file per record kind under a data directory:
knowledge entries, chat logs, feedback, and administrator accounts. Every
mutation validates first, then rewrites the kind's file through a temp
file and an atomic rename, so a half-written file can never be observed.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path

MAX_KEYWORDS = 5
MAX_FEEDBACK_MESSAGE = 2000
LOG_LABELS = ("relevant", "irrelevant", "no_response", "poor_response")

FILENAMES = {
    "info": "info.jsonl",
    "log": "logs.jsonl",
    "feedback": "feedback.jsonl",
    "user": "users.jsonl",
}

COUNTER_FILENAME = "counters.json"


class StoreError(Exception):
    """Base for everything the store raises."""


class ValidationError(StoreError):
    """A record breaks one of its type invariants."""


class NotFoundError(StoreError):
    """No live record with that id (or username)."""


@dataclass
class InfoEntry:
    id: int
    question: str
    answer: str
    keywords: list[str] = field(default_factory=list)


@dataclass
class LogEntry:
    id: int
    question: str
    answer: str
    label: str | None = None


@dataclass
class FeedbackEntry:
    id: int
    mark: int
    message: str = ""


@dataclass
class UserAccount:
    username: str
    password_hash: str
    salt: str
    role: str = "admin"


def _require_id(record_id) -> int:
    if not isinstance(record_id, int) or isinstance(record_id, bool) or record_id < 1:
        raise ValidationError(f"id must be a positive integer, got {record_id!r}")
    return record_id


def validate_info(entry: InfoEntry) -> None:
    _require_id(entry.id)
    if not isinstance(entry.question, str) or not entry.question.strip():
        raise ValidationError("question must be nonempty text")
    if not isinstance(entry.answer, str) or not entry.answer.strip():
        raise ValidationError("answer must be nonempty text")
    if not isinstance(entry.keywords, list):
        raise ValidationError("keywords must be a list")
    if len(entry.keywords) > MAX_KEYWORDS:
        raise ValidationError(f"at most {MAX_KEYWORDS} keywords allowed")
    for kw in entry.keywords:
        if not isinstance(kw, str) or not kw or kw != kw.lower() or kw.split() != [kw]:
            raise ValidationError(
                f"keyword {kw!r} must be a single lowercase token without whitespace"
            )


def validate_log(entry: LogEntry) -> None:
    _require_id(entry.id)
    if not isinstance(entry.question, str) or not entry.question.strip():
        raise ValidationError("question must be nonempty text")
    if not isinstance(entry.answer, str):
        raise ValidationError("answer must be text")
    if entry.label is not None and entry.label not in LOG_LABELS:
        raise ValidationError(
            f"label must be one of {', '.join(LOG_LABELS)}, got {entry.label!r}"
        )


def validate_feedback(entry: FeedbackEntry) -> None:
    _require_id(entry.id)
    if not isinstance(entry.mark, int) or isinstance(entry.mark, bool):
        raise ValidationError("mark must be an integer")
    if not 1 <= entry.mark <= 5:
        raise ValidationError(f"mark must be between 1 and 5, got {entry.mark}")
    if not isinstance(entry.message, str):
        raise ValidationError("message must be text")
    if len(entry.message) > MAX_FEEDBACK_MESSAGE:
        raise ValidationError(
            f"message longer than {MAX_FEEDBACK_MESSAGE} characters"
        )


def validate_user(account: UserAccount) -> None:
    if not isinstance(account.username, str) or not account.username:
        raise ValidationError("username must be nonempty")
    if account.username.split() != [account.username]:
        raise ValidationError("username must be a single token")
    for name in ("password_hash", "salt"):
        value = getattr(account, name)
        if not isinstance(value, str) or not value:
            raise ValidationError(f"{name} must be nonempty hex")
        try:
            bytes.fromhex(value)
        except ValueError:
            raise ValidationError(f"{name} must be hex") from None
    if account.role != "admin":
        raise ValidationError(f"role must be 'admin', got {account.role!r}")


_RECORD_TYPES = {"info": InfoEntry, "log": LogEntry, "feedback": FeedbackEntry}
_VALIDATORS = {"info": validate_info, "log": validate_log, "feedback": validate_feedback}
_UPDATABLE = {"info": ("question", "answer", "keywords"), "log": ("label",)}
_FIELDS = {
    "info": ("id", "question", "answer", "keywords"),
    "log": ("id", "question", "answer", "label"),
    "feedback": ("id", "mark", "message"),
    "user": ("username", "password_hash", "salt", "role"),
}


def _check_kind(kind: str) -> str:
    if kind not in _RECORD_TYPES:
        raise StoreError(f"unknown record kind {kind!r}")
    return kind


def _from_fields(kind: str, fields: dict, where: str):
    unknown = set(fields) - set(_FIELDS[kind])
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    cls = UserAccount if kind == "user" else _RECORD_TYPES[kind]
    try:
        return cls(**fields)
    except TypeError as exc:
        raise ValidationError(f"{where}: {exc}") from None


class JsonlStore:
    """Record store over a directory of JSONL files.

    Concurrent reads are safe; mutations are serialized by one lock and a
    handle may be shared across request handlers.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._records: dict[str, dict[int, object]] = {k: {} for k in _RECORD_TYPES}
        self._users: dict[str, UserAccount] = {}
        # Highest id ever issued per kind; deletion never frees an id.
        self._high: dict[str, int] = {k: 0 for k in _RECORD_TYPES}
        self._load()

    # -- loading ---------------------------------------------------------

    def _path(self, kind: str) -> Path:
        return self.data_dir / FILENAMES[kind]

    def _load(self) -> None:
        for kind in _RECORD_TYPES:
            path = self._path(kind)
            if not path.exists():
                continue
            for lineno, raw in enumerate(
                path.read_text(encoding="utf-8").splitlines(), start=1
            ):
                if not raw.strip():
                    continue
                record = self._parse_line(kind, raw, f"{path.name}:{lineno}")
                if record.id in self._records[kind]:
                    raise StoreError(f"{path.name}:{lineno}: duplicate id {record.id}")
                self._records[kind][record.id] = record
        users_path = self._path("user")
        if users_path.exists():
            for lineno, raw in enumerate(
                users_path.read_text(encoding="utf-8").splitlines(), start=1
            ):
                if not raw.strip():
                    continue
                account = self._parse_line("user", raw, f"{users_path.name}:{lineno}")
                if account.username in self._users:
                    raise StoreError(
                        f"{users_path.name}:{lineno}: duplicate username {account.username!r}"
                    )
                self._users[account.username] = account
        counters_path = self.data_dir / COUNTER_FILENAME
        if counters_path.exists():
            try:
                persisted = json.loads(counters_path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise StoreError(f"{COUNTER_FILENAME}: unreadable ({exc})") from None
            if not isinstance(persisted, dict):
                raise StoreError(f"{COUNTER_FILENAME}: expected a JSON object")
            for kind, value in persisted.items():
                if kind not in _RECORD_TYPES or not isinstance(value, int) or value < 0:
                    raise StoreError(f"{COUNTER_FILENAME}: bad counter {kind!r}: {value!r}")
                self._high[kind] = value
        for kind in _RECORD_TYPES:
            live_max = max(self._records[kind], default=0)
            self._high[kind] = max(self._high[kind], live_max)

    def _parse_line(self, kind: str, raw: str, where: str):
        try:
            fields = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise StoreError(f"{where}: invalid JSON ({exc.msg})") from None
        if not isinstance(fields, dict):
            raise StoreError(f"{where}: expected a JSON object")
        record = _from_fields(kind, fields, where)
        try:
            (validate_user if kind == "user" else _VALIDATORS[kind])(record)
        except ValidationError as exc:
            raise ValidationError(f"{where}: {exc}") from None
        return record

    # -- persistence -----------------------------------------------------

    def _write_kind(self, kind: str) -> None:
        path = self._path(kind)
        if kind == "user":
            records = list(self._users.values())
        else:
            records = [self._records[kind][i] for i in sorted(self._records[kind])]
        tmp = path.with_suffix(".jsonl.tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(self._to_fields(kind, record)) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)

    def _write_counters(self) -> None:
        path = self.data_dir / COUNTER_FILENAME
        tmp = path.with_suffix(".json.tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(self._high) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)

    @staticmethod
    def _to_fields(kind: str, record) -> dict:
        if kind == "info":
            return {
                "id": record.id,
                "question": record.question,
                "answer": record.answer,
                "keywords": list(record.keywords),
            }
        if kind == "log":
            fields = {"id": record.id, "question": record.question, "answer": record.answer}
            if record.label is not None:
                fields["label"] = record.label
            return fields
        if kind == "feedback":
            return {"id": record.id, "mark": record.mark, "message": record.message}
        return {
            "username": record.username,
            "password_hash": record.password_hash,
            "salt": record.salt,
            "role": record.role,
        }

    @staticmethod
    def _copy(record):
        if isinstance(record, InfoEntry):
            return replace(record, keywords=list(record.keywords))
        return replace(record)

    # -- CRUD --------------------------------------------------------------

    def append(self, kind: str, fields: dict) -> int:
        """Validate and persist a new record; returns its fresh id.

        Ids strictly increase for the life of the store; deleting a
        record never makes its id available again.
        """
        _check_kind(kind)
        if "id" in fields:
            raise ValidationError("append assigns the id itself")
        with self._lock:
            new_id = self._high[kind] + 1
            record = _from_fields(kind, {"id": new_id, **fields}, "append")
            _VALIDATORS[kind](record)
            self._high[kind] = new_id
            self._write_counters()
            self._records[kind][new_id] = self._copy(record)
            self._write_kind(kind)
            return new_id

    def list(self, kind: str) -> list:
        """All live records of a kind, ordered by ascending id."""
        _check_kind(kind)
        records = self._records[kind]
        return [self._copy(records[i]) for i in sorted(records)]

    def get(self, kind: str, record_id: int):
        _check_kind(kind)
        record = self._records[kind].get(record_id)
        if record is None:
            raise NotFoundError(f"no {kind} record with id {record_id}")
        return self._copy(record)

    def update(self, kind: str, record_id: int, **fields):
        """Replace the given fields of an existing record; id never changes."""
        _check_kind(kind)
        allowed = _UPDATABLE.get(kind, ())
        for name in fields:
            if name not in allowed:
                raise ValidationError(f"cannot update field {name!r} of {kind}")
        with self._lock:
            current = self._records[kind].get(record_id)
            if current is None:
                raise NotFoundError(f"no {kind} record with id {record_id}")
            updated = replace(self._copy(current), **fields)
            _VALIDATORS[kind](updated)
            self._records[kind][record_id] = updated
            self._write_kind(kind)
            return self._copy(updated)

    def delete(self, kind: str, record_id: int):
        """Remove a record and return it; survivors keep their ids."""
        _check_kind(kind)
        with self._lock:
            record = self._records[kind].pop(record_id, None)
            if record is None:
                raise NotFoundError(f"no {kind} record with id {record_id}")
            self._write_kind(kind)
            return record

    def seed(self, path: str | Path, kind: str = "info") -> int:
        """Replace a kind's records with the contents of a JSONL seed file.

        Lines may carry explicit ids; lines without get the next free one.
        Any parse or validation problem is reported with its line number
        and leaves the store untouched.
        """
        _check_kind(kind)
        seed_path = Path(path)
        try:
            text = seed_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise StoreError(f"cannot read seed file: {exc}") from None
        loaded: dict[int, object] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            if not raw.strip():
                continue
            where = f"{seed_path.name}:{lineno}"
            try:
                fields = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise StoreError(f"{where}: invalid JSON ({exc.msg})") from None
            if not isinstance(fields, dict):
                raise StoreError(f"{where}: expected a JSON object")
            if "id" not in fields:
                fields = {"id": max(loaded, default=0) + 1, **fields}
            record = _from_fields(kind, fields, where)
            try:
                _VALIDATORS[kind](record)
            except ValidationError as exc:
                raise ValidationError(f"{where}: {exc}") from None
            if record.id in loaded:
                raise ValidationError(f"{where}: duplicate id {record.id}")
            loaded[record.id] = record
        with self._lock:
            self._records[kind] = loaded
            self._high[kind] = max(loaded, default=0)
            self._write_counters()
            self._write_kind(kind)
        return len(loaded)

    # -- administrator accounts -------------------------------------------

    def add_user(self, account: UserAccount) -> UserAccount:
        validate_user(account)
        with self._lock:
            if account.username in self._users:
                raise ValidationError(f"username {account.username!r} already exists")
            self._users[account.username] = replace(account)
            self._write_kind("user")
            return replace(account)

    def get_user(self, username: str) -> UserAccount | None:
        account = self._users.get(username)
        return replace(account) if account else None

    def list_users(self) -> list[UserAccount]:
        return [replace(a) for a in self._users.values()]
