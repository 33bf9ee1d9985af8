"""Access to the bundled branch corpus (package data)."""

from __future__ import annotations

import json
from importlib import resources


def corpus_names() -> list[str]:
    root = resources.files("realpoincare") / "corpus"
    return sorted(
        p.name.removesuffix(".branch")
        for p in root.iterdir()
        if p.name.endswith(".branch")
    )


def corpus_text(name: str) -> str:
    path = resources.files("realpoincare") / "corpus" / f"{name}.branch"
    return path.read_text(encoding="utf-8")


def corpus_expected(name: str) -> dict | None:
    path = resources.files("realpoincare") / "corpus" / f"{name}.expected.json"
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return None
