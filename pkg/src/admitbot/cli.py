"""Operator command line: serve, seed, chat, eval, adduser, label.

Exit codes are a stable contract: 0 success, 1 runtime or config
failure, 2 usage error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import getpass
import os
import sys

from . import evalkit, service
from .config import ConfigError, load_config
from .linkfinder import CorpusError
from .sentence_gate import LexiconError
from .spellcheck import DictionaryError
from .store import JsonlStore, StoreError

PASSWORD_ENV = "ADMITBOT_PASSWORD"

_RUNTIME_ERRORS = (
    ConfigError,
    StoreError,
    DictionaryError,
    LexiconError,
    CorpusError,
    OSError,
)


def cmd_serve(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    app = service.build_app(config)
    import uvicorn

    uvicorn.run(
        app,
        host="127.0.0.1",
        port=config.port,
        access_log=False,
        log_level="warning",
    )
    return 0


def cmd_seed(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    store = JsonlStore(config.data_dir)
    count = store.seed(args.file)
    print(f"seeded {count} information entries")
    return 0


def _print_reply(reply: service.ChatReply) -> None:
    if reply.status == service.STATUS_SPELLING:
        for issue in reply.issues or []:
            if issue.suggestions:
                hint = ", ".join(issue.suggestions)
                print(f'Chat Bot: I do not recognise "{issue.word}". Did you mean: {hint}?')
            else:
                print(f'Chat Bot: I do not recognise "{issue.word}".')
    elif reply.status == service.STATUS_INVALID_SENTENCE:
        print("Chat Bot: That does not look like a full question. Please rephrase it.")
    else:
        print(f"Chat Bot: {reply.answer}")


def cmd_chat(args: argparse.Namespace) -> int:
    """Terminal REPL over the exact pipeline the HTTP service runs."""
    config = load_config(args.config)
    engine = service.build_engine(config)
    print("Chat Bot: Hi, How can I help you?")
    while True:
        try:
            line = input("You: ")
        except (EOFError, KeyboardInterrupt):
            print()
            return 0
        question = line.strip()
        if not question:
            continue
        if question == ":quit":
            return 0
        try:
            reply = engine.handle_chat(question)
        except StoreError as exc:
            print(f"Chat Bot: {exc}")
            continue
        _print_reply(reply)
        if reply.status not in (service.STATUS_ANSWER, service.STATUS_NO_ANSWER):
            continue
        try:
            verdict = input("Was your question answered? (y/n) ")
        except (EOFError, KeyboardInterrupt):
            print()
            return 0
        if verdict.strip().lower().startswith("n"):
            link = engine.handle_unsatisfied(question, reply.answer or "")
            if link is None:
                print("Chat Bot: I could not find a helpful link either.")
            else:
                print(f"Chat Bot: This link might help: {link}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    store = JsonlStore(config.data_dir)
    logs = store.list("log")
    stats = evalkit.breakdown(logs)
    print(evalkit.format_report(stats, unlabeled=evalkit.unlabeled_count(logs)))
    feedback = store.list("feedback")
    mean = evalkit.overall(feedback)
    print(f"overall feedback score: {mean:.2f} from {len(feedback)} entries")
    return 0


def cmd_adduser(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    store = JsonlStore(config.data_dir)
    password = os.environ.get(PASSWORD_ENV, "")
    if not password:
        password = getpass.getpass("Password: ")
    if not password:
        print("error: password must not be empty", file=sys.stderr)
        return 1
    service.create_user(store, args.username, password)
    print(f"created admin user {args.username}")
    return 0


def cmd_label(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    store = JsonlStore(config.data_dir)
    entry = evalkit.label(store, args.id, args.category)
    print(f"log {entry.id} labeled {entry.label}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="admitbot",
        description="Admissions FAQ chatbot: run the API, chat locally, manage data.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb: str, help_text: str, func) -> argparse.ArgumentParser:
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON config file")
        p.set_defaults(func=func)
        return p

    add("serve", "run the HTTP API until interrupted", cmd_serve)
    seed = add("seed", "replace the knowledge base from a JSONL file", cmd_seed)
    seed.add_argument("--file", required=True, help="JSONL file of question/answer/keywords rows")
    add("chat", "chat with the bot in the terminal", cmd_chat)
    add("eval", "print the labelled-log breakdown and feedback score", cmd_eval)
    adduser = add("adduser", "create an admin account", cmd_adduser)
    adduser.add_argument("--username", required=True, help="account name")
    label = add("label", "categorise one chat log entry", cmd_label)
    label.add_argument("--id", type=int, required=True, help="log entry id")
    label.add_argument("--category", required=True, choices=evalkit.CATEGORIES)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
