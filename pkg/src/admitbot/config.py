"""Runtime configuration loaded from a JSON file.

Relative paths inside the file are resolved against the directory the
file lives in, so a checked-in config keeps working no matter where the
process is started from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

DEFAULT_NO_ANSWER_TEXT = "I am sorry, I do not know the answer to that yet."


class ConfigError(Exception):
    """Raised when the config file is missing, malformed or inconsistent."""


@dataclass
class Config:
    data_dir: Path
    dictionary_path: Path
    lexicon_path: Path
    link_corpus_path: Path
    port: int = 8000
    no_answer_threshold: float = 0.55
    session_ttl_hours: float = 8.0
    no_answer_text: str = DEFAULT_NO_ANSWER_TEXT
    admin_username: str = "admin"
    static_dir: Path | None = None


_PATH_KEYS = ("data_dir", "dictionary_path", "lexicon_path", "link_corpus_path")
_OPTIONAL_PATH_KEYS = ("static_dir",)


def _require(raw: dict, key: str, kinds: type | tuple[type, ...]) -> object:
    if key not in raw:
        raise ConfigError(f"missing required config key: {key}")
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, kinds):
        raise ConfigError(f"config key {key} has the wrong type: {value!r}")
    return value


def load_config(path: str | Path) -> Config:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")

    known = set(_PATH_KEYS) | set(_OPTIONAL_PATH_KEYS) | {
        "port",
        "no_answer_threshold",
        "session_ttl_hours",
        "no_answer_text",
        "admin_username",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    base = path.resolve().parent
    fields: dict[str, object] = {}
    for key in _PATH_KEYS:
        value = _require(raw, key, str)
        fields[key] = (base / value).resolve()
    for key in _OPTIONAL_PATH_KEYS:
        if key in raw:
            value = raw[key]
            if not isinstance(value, str):
                raise ConfigError(f"config key {key} has the wrong type: {value!r}")
            fields[key] = (base / value).resolve()

    if "port" in raw:
        port = _require(raw, "port", int)
        if not 1 <= port <= 65535:
            raise ConfigError(f"config key port out of range: {port}")
        fields["port"] = port
    if "no_answer_threshold" in raw:
        threshold = _require(raw, "no_answer_threshold", (int, float))
        if not 0.0 <= float(threshold) <= 1.0:
            raise ConfigError(f"config key no_answer_threshold out of range: {threshold}")
        fields["no_answer_threshold"] = float(threshold)
    if "session_ttl_hours" in raw:
        ttl = _require(raw, "session_ttl_hours", (int, float))
        if float(ttl) <= 0:
            raise ConfigError(f"config key session_ttl_hours must be positive: {ttl}")
        fields["session_ttl_hours"] = float(ttl)
    if "no_answer_text" in raw:
        text_value = _require(raw, "no_answer_text", str)
        if not text_value.strip():
            raise ConfigError("config key no_answer_text must not be blank")
        fields["no_answer_text"] = text_value
    if "admin_username" in raw:
        username = _require(raw, "admin_username", str)
        if not username.strip():
            raise ConfigError("config key admin_username must not be blank")
        fields["admin_username"] = username

    return Config(**fields)  # type: ignore[arg-type]
