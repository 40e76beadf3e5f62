"""Labelled group catalogs (the shipped default and user-supplied JSON files)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from grouptk.config import Guards
from grouptk.errors import FormatError
from grouptk.perm import PermGroup, group_from_spec


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    spec: str | dict
    order: int | None = None

    def build(self, guards: Guards | None = None) -> PermGroup:
        G = group_from_spec(self.spec, guards)
        G.name = self.label
        return G


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]
    provenance: str = ""

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]

    def get(self, label: str) -> CatalogEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)


def parse_catalog(doc: dict | list) -> Catalog:
    """Accepts {"provenance": ..., "groups": [...]} or a bare list of entries.

    An entry is {"label", "spec", optional "order"} or a plain spec string,
    which then doubles as its label.
    """
    provenance = ""
    if isinstance(doc, dict):
        provenance = doc.get("provenance", "")
        doc = doc.get("groups")
    if not isinstance(doc, list):
        raise FormatError("catalog must be a list of entries or an object with 'groups'")
    entries = []
    seen = set()
    for raw in doc:
        if isinstance(raw, str):
            raw = {"label": raw, "spec": raw}
        if not isinstance(raw, dict) or "spec" not in raw:
            raise FormatError(f"catalog entry needs a 'spec': {raw!r}")
        label = raw.get("label") or (raw["spec"] if isinstance(raw["spec"], str) else None)
        if not label:
            raise FormatError(f"catalog entry needs a label: {raw!r}")
        if label in seen:
            raise FormatError(f"duplicate catalog label {label!r}")
        seen.add(label)
        entries.append(CatalogEntry(label, raw["spec"], raw.get("order")))
    return Catalog(tuple(entries), provenance)


def default_catalog() -> Catalog:
    text = resources.files("grouptk").joinpath("data/catalog.json").read_text()
    return parse_catalog(json.loads(text))


def load_catalog(source: str | Path | None) -> Catalog:
    """``None`` or "default" for the shipped catalog, else a path or inline JSON text."""
    if source is None or source == "default":
        return default_catalog()
    text = str(source).strip()
    if text.startswith("{") or text.startswith("["):
        try:
            return parse_catalog(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid inline catalog: {exc}") from None
    path = Path(text)
    if not path.is_file():
        raise FormatError(f"catalog file not found: {text}")
    try:
        return parse_catalog(json.loads(path.read_text()))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid catalog JSON in {text}: {exc}") from None
