"""HTTP JSON API around the chat pipeline.

Three layers stay separate: this module is presentation, the matcher and
gates are logic, the store is data. Admin routes sit behind bearer-token
sessions; chat and feedback are anonymous and no user identity is ever
recorded.
"""

import hashlib
import hmac
import html
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import evalkit, linkfinder, matcher, sentence_gate, spellcheck
from .config import DEFAULT_NO_ANSWER_TEXT, Config, ConfigError
from .store import (
    JsonlStore,
    NotFoundError,
    StoreError,
    UserAccount,
    ValidationError,
)

PBKDF2_ITERATIONS = 120_000
MIN_SALT_BYTES = 16
TOKEN_BYTES = 16
DEFAULT_SESSION_TTL_HOURS = 8.0
MAX_QUESTION_CHARS = 1000

ADMIN_PASSWORD_ENV = "ADMITBOT_ADMIN_PASSWORD"

STATUS_ANSWER = "answer"
STATUS_NO_ANSWER = "no_answer"
STATUS_SPELLING = "spelling"
STATUS_INVALID_SENTENCE = "invalid_sentence"


class AuthError(Exception):
    """Bad or missing credentials. Deliberately unspecific."""


class ForbiddenError(Exception):
    """Authenticated but lacking the required role."""


def make_salt() -> bytes:
    return secrets.token_bytes(MIN_SALT_BYTES)


def hash_password(password: str, salt: bytes) -> str:
    """Iterated salted digest of the password, as lowercase hex."""
    if not password:
        raise ValueError("password must not be empty")
    if len(salt) < MIN_SALT_BYTES:
        raise ValueError(f"salt must be at least {MIN_SALT_BYTES} bytes")
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), salt, PBKDF2_ITERATIONS
    )
    return digest.hex()


_DUMMY_SALT = b"\x00" * MIN_SALT_BYTES
_DUMMY_HASH = hashlib.pbkdf2_hmac("sha256", b"?", _DUMMY_SALT, PBKDF2_ITERATIONS).hex()


def sanitize(text: str) -> str:
    """Drop ASCII control characters except newline; keep everything else.

    Stored text keeps its original shape minus the stripped characters;
    escaping happens only when text is echoed into an HTML context.
    """
    return "".join(
        ch for ch in text if ch == "\n" or (ch >= " " and ch != "\x7f")
    )


def escape_html(text: str) -> str:
    return html.escape(text, quote=True)


def create_user(
    store: JsonlStore, username: str, password: str, role: str = "admin"
) -> UserAccount:
    """Hash the password with a fresh salt and persist the account."""
    salt = make_salt()
    digest = hash_password(password, salt)
    return store.add_user(
        UserAccount(
            username=username, password_hash=digest, salt=salt.hex(), role=role
        )
    )


def bootstrap_admin(store: JsonlStore, username: str) -> bool:
    """Create the first admin account from the environment.

    Does nothing when the account already exists or the variable is
    unset; passwords never come from files or command lines.
    """
    if store.get_user(username) is not None:
        return False
    password = os.environ.get(ADMIN_PASSWORD_ENV, "")
    if not password:
        return False
    create_user(store, username, password)
    return True


@dataclass
class Session:
    token: str
    username: str
    role: str
    expires: float


class SessionManager:
    """Issues and resolves bearer tokens for authenticated users."""

    def __init__(
        self,
        store: JsonlStore,
        ttl_hours: float = DEFAULT_SESSION_TTL_HOURS,
        clock=time.time,
    ):
        if ttl_hours <= 0:
            raise ValueError("ttl_hours must be positive")
        self._store = store
        self._ttl = float(ttl_hours) * 3600.0
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def authenticate(self, username: str, password: str) -> Session:
        """Verify credentials and issue a session.

        Unknown usernames burn the same key-derivation work as real
        ones, and digests are compared in constant time, so the single
        opaque failure is all a caller can observe.
        """
        user = self._store.get_user(username)
        salt = bytes.fromhex(user.salt) if user is not None else _DUMMY_SALT
        expected = user.password_hash if user is not None else _DUMMY_HASH
        computed = hash_password(password if password else "?", salt)
        matched = hmac.compare_digest(computed, expected)
        if user is None or not password or not matched:
            raise AuthError("invalid username or password")
        return self._issue(user.username, user.role)

    def _issue(self, username: str, role: str) -> Session:
        session = Session(
            token=secrets.token_hex(TOKEN_BYTES),
            username=username,
            role=role,
            expires=self._clock() + self._ttl,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve(self, token: str) -> Session | None:
        """Live session for the token, or None. Expired tokens are purged."""
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if session.expires <= self._clock():
                del self._sessions[token]
                return None
            return session

    def revoke(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)


@dataclass
class ChatReply:
    status: str
    answer: str | None = None
    issues: list[spellcheck.SpellingIssue] | None = None
    gate: sentence_gate.GateReport | None = None

    def to_payload(self) -> dict:
        payload: dict = {"status": self.status}
        if self.answer is not None:
            payload["answer"] = self.answer
        if self.issues is not None:
            payload["issues"] = [
                {
                    "word": issue.word,
                    "position": issue.position,
                    "suggestions": list(issue.suggestions),
                }
                for issue in self.issues
            ]
        if self.gate is not None:
            payload["gate"] = {
                "tokens": list(self.gate.tokens),
                "tags": [sorted(tags) for tags in self.gate.tags],
                "has_noun": self.gate.has_noun,
                "has_verb": self.gate.has_verb,
                "valid": self.gate.valid,
            }
        return payload


@dataclass
class ChatEngine:
    """The full question pipeline plus the unsatisfied-answer fallback."""

    store: JsonlStore
    dictionary: spellcheck.Dictionary
    lexicon: sentence_gate.PosLexicon
    link_index: linkfinder.LinkIndex
    params: matcher.SimilarityParams = field(default_factory=matcher.SimilarityParams)
    no_answer_text: str = DEFAULT_NO_ANSWER_TEXT

    def handle_chat(self, question: str) -> ChatReply:
        """Spelling gate, then sentence gate, then the two-stage matcher.

        Each gate stops the pipeline; a gated question is never matched
        and never logged.
        """
        question = sanitize(question)
        if not question.strip():
            raise ValidationError("question must not be empty")
        if len(question) > MAX_QUESTION_CHARS:
            raise ValidationError(
                f"question longer than {MAX_QUESTION_CHARS} characters"
            )
        issues = spellcheck.check(question, self.dictionary)
        if issues:
            return ChatReply(status=STATUS_SPELLING, issues=issues)
        report = sentence_gate.validate(question, self.lexicon)
        if not report.valid:
            return ChatReply(status=STATUS_INVALID_SENTENCE, gate=report)
        entries = self.store.list("info")
        if not entries:
            return ChatReply(status=STATUS_NO_ANSWER, answer=self.no_answer_text)
        result = matcher.respond(question, entries, self.params)
        if result.outcome == matcher.OUTCOME_NO_ANSWER:
            return ChatReply(status=STATUS_NO_ANSWER, answer=self.no_answer_text)
        return ChatReply(status=STATUS_ANSWER, answer=result.answer)

    def handle_unsatisfied(self, question: str, answer: str) -> str | None:
        """Log the disappointing exchange and offer the best local link."""
        question = sanitize(question)
        answer = sanitize(answer)
        if not question.strip():
            raise ValidationError("question must not be empty")
        self.store.append("log", {"question": question, "answer": answer})
        hits = linkfinder.search(question, self.link_index, k=1)
        return hits[0].url if hits else None


def build_engine(config: Config) -> ChatEngine:
    """Load every data file named by the config and assemble the engine."""
    for key, path in (
        ("dictionary_path", config.dictionary_path),
        ("lexicon_path", config.lexicon_path),
        ("link_corpus_path", config.link_corpus_path),
    ):
        if not Path(path).is_file():
            raise ConfigError(f"{key} does not exist: {path}")
    store = JsonlStore(config.data_dir)
    dictionary = spellcheck.load_dictionary(config.dictionary_path)
    lexicon = sentence_gate.load_lexicon(config.lexicon_path)
    index = linkfinder.build_index(linkfinder.load_corpus(config.link_corpus_path))
    params = matcher.SimilarityParams(
        no_answer_threshold=config.no_answer_threshold
    )
    return ChatEngine(
        store=store,
        dictionary=dictionary,
        lexicon=lexicon,
        link_index=index,
        params=params,
        no_answer_text=config.no_answer_text,
    )


def create_app(
    engine: ChatEngine,
    sessions: SessionManager,
    static_dir: str | Path | None = None,
):
    """Wire the engine into a FastAPI application.

    Every error body is {"error": code, "message": text}; admin routes
    require `Authorization: Bearer <token>` from /api/login.
    """
    from fastapi import Depends, FastAPI, Request
    from fastapi.exceptions import RequestValidationError
    from fastapi.responses import JSONResponse
    from pydantic import BaseModel, Field
    from starlette.exceptions import HTTPException as StarletteHTTPException

    app = FastAPI(title="admitbot", docs_url=None, redoc_url=None, openapi_url=None)

    def _error(status_code: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(
            status_code=status_code, content={"error": code, "message": message}
        )

    @app.exception_handler(ValidationError)
    async def _on_validation(request: Request, exc: ValidationError):
        return _error(400, "validation_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _on_body_shape(request: Request, exc: RequestValidationError):
        return _error(400, "bad_request", "malformed request body")

    @app.exception_handler(AuthError)
    async def _on_auth(request: Request, exc: AuthError):
        return _error(401, "unauthorized", str(exc))

    @app.exception_handler(ForbiddenError)
    async def _on_forbidden(request: Request, exc: ForbiddenError):
        return _error(403, "forbidden", str(exc))

    @app.exception_handler(NotFoundError)
    async def _on_missing(request: Request, exc: NotFoundError):
        return _error(404, "not_found", str(exc))

    @app.exception_handler(StoreError)
    async def _on_store(request: Request, exc: StoreError):
        return _error(500, "storage_error", str(exc))

    @app.exception_handler(StarletteHTTPException)
    async def _on_http(request: Request, exc: StarletteHTTPException):
        codes = {
            400: "bad_request",
            401: "unauthorized",
            403: "forbidden",
            404: "not_found",
            405: "method_not_allowed",
        }
        return _error(
            exc.status_code,
            codes.get(exc.status_code, "error"),
            str(exc.detail),
        )

    def require_admin(request: Request) -> Session:
        header = request.headers.get("Authorization", "")
        scheme, _, token = header.partition(" ")
        token = token.strip()
        if scheme.lower() != "bearer" or not token:
            raise AuthError("missing bearer token")
        session = sessions.resolve(token)
        if session is None:
            raise AuthError("invalid or expired token")
        if session.role != "admin":
            raise ForbiddenError("admin role required")
        return session

    class ChatBody(BaseModel):
        question: str

    class UnsatisfiedBody(BaseModel):
        question: str
        answer: str

    class FeedbackBody(BaseModel):
        mark: int
        message: str = ""

    class LoginBody(BaseModel):
        username: str
        password: str

    class InfoBody(BaseModel):
        question: str
        answer: str
        keywords: list[str] = Field(default_factory=list)

    class InfoPatch(BaseModel):
        question: str | None = None
        answer: str | None = None
        keywords: list[str] | None = None

    def _clean_keywords(keywords: list[str]) -> list[str]:
        return [k.strip().lower() for k in keywords if k and k.strip()]

    def _info_payload(entry) -> dict:
        return {
            "id": entry.id,
            "question": entry.question,
            "answer": entry.answer,
            "keywords": list(entry.keywords),
        }

    def _log_payload(entry) -> dict:
        return {
            "id": entry.id,
            "question": entry.question,
            "answer": entry.answer,
            "label": entry.label,
        }

    def _feedback_payload(entry) -> dict:
        return {"id": entry.id, "mark": entry.mark, "message": entry.message}

    @app.post("/api/chat")
    def chat(body: ChatBody) -> dict:
        return engine.handle_chat(body.question).to_payload()

    @app.post("/api/chat/unsatisfied")
    def chat_unsatisfied(body: UnsatisfiedBody) -> dict:
        link = engine.handle_unsatisfied(body.question, body.answer)
        return {} if link is None else {"link": link}

    @app.post("/api/feedback")
    def leave_feedback(body: FeedbackBody) -> dict:
        new_id = engine.store.append(
            "feedback", {"mark": body.mark, "message": sanitize(body.message)}
        )
        return {"id": new_id}

    @app.post("/api/login")
    def login(body: LoginBody) -> dict:
        session = sessions.authenticate(body.username, body.password)
        return {"token": session.token, "expires": session.expires}

    @app.get("/api/admin/info")
    def list_info(_: Session = Depends(require_admin)) -> dict:
        return {"items": [_info_payload(e) for e in engine.store.list("info")]}

    @app.post("/api/admin/info")
    def add_info(body: InfoBody, _: Session = Depends(require_admin)) -> dict:
        new_id = engine.store.append(
            "info",
            {
                "question": sanitize(body.question),
                "answer": sanitize(body.answer),
                "keywords": _clean_keywords(body.keywords),
            },
        )
        return {"id": new_id}

    @app.put("/api/admin/info/{record_id}")
    def update_info(
        record_id: int, body: InfoPatch, _: Session = Depends(require_admin)
    ) -> dict:
        fields: dict = {}
        if body.question is not None:
            fields["question"] = sanitize(body.question)
        if body.answer is not None:
            fields["answer"] = sanitize(body.answer)
        if body.keywords is not None:
            fields["keywords"] = _clean_keywords(body.keywords)
        if not fields:
            raise ValidationError("nothing to update")
        return _info_payload(engine.store.update("info", record_id, **fields))

    @app.delete("/api/admin/info/{record_id}")
    def delete_info(record_id: int, _: Session = Depends(require_admin)) -> dict:
        engine.store.delete("info", record_id)
        return {"deleted": record_id}

    @app.get("/api/admin/logs")
    def list_logs(_: Session = Depends(require_admin)) -> dict:
        return {"items": [_log_payload(e) for e in engine.store.list("log")]}

    @app.delete("/api/admin/logs/{record_id}")
    def delete_log(record_id: int, _: Session = Depends(require_admin)) -> dict:
        engine.store.delete("log", record_id)
        return {"deleted": record_id}

    @app.get("/api/admin/feedback")
    def list_feedback(_: Session = Depends(require_admin)) -> dict:
        return {
            "items": [_feedback_payload(e) for e in engine.store.list("feedback")]
        }

    @app.get("/api/admin/feedback/overall")
    def feedback_overall(_: Session = Depends(require_admin)) -> dict:
        entries = engine.store.list("feedback")
        return {"mean": evalkit.overall(entries), "count": len(entries)}

    @app.delete("/api/admin/feedback/{record_id}")
    def delete_feedback(record_id: int, _: Session = Depends(require_admin)) -> dict:
        engine.store.delete("feedback", record_id)
        return {"deleted": record_id}

    @app.get("/api/admin/stats")
    def stats(_: Session = Depends(require_admin)) -> dict:
        logs = engine.store.list("log")
        breakdown = evalkit.breakdown(logs)
        return {
            "counts": breakdown.counts,
            "total": breakdown.total,
            "percentages": breakdown.percentages,
            "unlabeled": evalkit.unlabeled_count(logs),
        }

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount(
            "/", StaticFiles(directory=str(static_dir), html=True), name="static"
        )

    return app


def build_app(config: Config):
    """Engine, sessions and app from one config; bootstraps the admin."""
    engine = build_engine(config)
    bootstrap_admin(engine.store, config.admin_username)
    sessions = SessionManager(engine.store, ttl_hours=config.session_ttl_hours)
    return create_app(engine, sessions, static_dir=config.static_dir)
