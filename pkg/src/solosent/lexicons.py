"""Closed word lists the detection rules consult.

Each list lives in its own file inside a lexicon directory: one entry per
line, an optional tab-separated attribute, ``#`` comments and blank lines
ignored.  A bundled Swedish directory provides defaults; the word lists in
it are reconstructions assembled from standard grammar descriptions, not
copies of any particular resource (see the data files for notes).

Missing optional files degrade to empty sets and are recorded as warnings
on the loaded LexiconSet, so a partial directory still loads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, unique
from importlib import resources
from pathlib import Path
from typing import Union


@unique
class AdverbType(str, Enum):
    """Semantic slot an anaphoric adverb fills."""

    TEMPORAL = "temporal"
    LOCATIVE = "locative"


class LexiconError(Exception):
    """A lexicon file exists but cannot be interpreted."""


WEATHER_VERBS_FILE = "weather_verbs.txt"
ANAPHORIC_ADVERBS_FILE = "anaphoric_adverbs.txt"
PAIRED_CONJUNCTIONS_FILE = "paired_conjunctions.txt"
YES_NO_INTERJECTIONS_FILE = "yes_no_interjections.txt"
DEMONSTRATIVE_PRONOUNS_FILE = "demonstrative_pronouns.txt"
NONANAPHORIC_PERSON_PRONOUNS_FILE = "nonanaphoric_person_pronouns.txt"
ANAPHORIC_PRONOUNS_FILE = "anaphoric_pronouns.txt"


@dataclass(frozen=True)
class LexiconSet:
    """Everything lexical the detection rules need, loaded and validated.

    ``anaphoric_pronouns`` is the effective set: the pronoun file plus all
    demonstratives.  ``warnings`` carries load-time degradations and is
    excluded from equality.
    """

    weather_verbs: frozenset[str]
    anaphoric_adverbs: dict[str, AdverbType]
    paired_conjunctions: frozenset[tuple[str, str]]
    yes_no_interjections: frozenset[str]
    demonstrative_pronouns: frozenset[str]
    nonanaphoric_person_pronouns: frozenset[str]
    anaphoric_pronouns: frozenset[str]
    warnings: tuple[str, ...] = field(default=(), compare=False)


def _read_rows(text: str, filename: str) -> list[tuple[str, ...]]:
    rows: list[tuple[str, ...]] = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        fields = tuple(f.strip() for f in line.split("\t"))
        if any(not f for f in fields):
            raise LexiconError(
                f"{filename} line {line_number}: empty field in {raw_line!r}"
            )
        rows.append(tuple(f.lower() for f in fields))
    return rows


def _simple_set(rows: list[tuple[str, ...]], filename: str) -> frozenset[str]:
    for row in rows:
        if len(row) != 1:
            raise LexiconError(f"{filename}: expected one lemma per line, got {row!r}")
    return frozenset(row[0] for row in rows)


class _Directory:
    """Uniform read access to a filesystem path or the bundled package data."""

    def __init__(self, location: Union[str, Path, None]) -> None:
        if location is None:
            self._traversable = resources.files("solosent").joinpath(
                "data", "lexicons", "sv"
            )
            self._path = None
            self.label = "bundled sv lexicons"
        else:
            self._traversable = None
            self._path = Path(location)
            self.label = str(location)

    def read(self, filename: str) -> Union[str, None]:
        if self._path is not None:
            candidate = self._path / filename
            if not candidate.is_file():
                return None
            return candidate.read_text(encoding="utf-8")
        entry = self._traversable.joinpath(filename)
        if not entry.is_file():
            return None
        return entry.read_text(encoding="utf-8")


def default_lexicon_directory() -> _Directory:
    return _Directory(None)


def load_lexicon_set(directory: Union[str, Path, None] = None) -> LexiconSet:
    """Load a lexicon directory; None loads the bundled Swedish defaults.

    Raises LexiconError for files that exist but do not follow the format.
    Files that are absent load as empty sets, each noted in ``warnings``.
    """
    source = _Directory(directory)
    warnings: list[str] = []

    def rows_for(filename: str) -> list[tuple[str, ...]]:
        text = source.read(filename)
        if text is None:
            warnings.append(f"{source.label}: {filename} missing, using empty set")
            return []
        return _read_rows(text, filename)

    weather = _simple_set(rows_for(WEATHER_VERBS_FILE), WEATHER_VERBS_FILE)
    interjections = _simple_set(
        rows_for(YES_NO_INTERJECTIONS_FILE), YES_NO_INTERJECTIONS_FILE
    )
    demonstratives = _simple_set(
        rows_for(DEMONSTRATIVE_PRONOUNS_FILE), DEMONSTRATIVE_PRONOUNS_FILE
    )
    nonanaphoric = _simple_set(
        rows_for(NONANAPHORIC_PERSON_PRONOUNS_FILE), NONANAPHORIC_PERSON_PRONOUNS_FILE
    )
    pronoun_base = _simple_set(rows_for(ANAPHORIC_PRONOUNS_FILE), ANAPHORIC_PRONOUNS_FILE)

    adverbs: dict[str, AdverbType] = {}
    for row in rows_for(ANAPHORIC_ADVERBS_FILE):
        if len(row) != 2:
            raise LexiconError(
                f"{ANAPHORIC_ADVERBS_FILE}: expected lemma<TAB>type, got {row!r}"
            )
        lemma, type_name = row
        try:
            adverbs[lemma] = AdverbType(type_name)
        except ValueError:
            raise LexiconError(
                f"{ANAPHORIC_ADVERBS_FILE}: unknown adverb type {type_name!r} "
                f"for {lemma!r}"
            ) from None

    pairs: set[tuple[str, str]] = set()
    for row in rows_for(PAIRED_CONJUNCTIONS_FILE):
        if len(row) != 2:
            raise LexiconError(
                f"{PAIRED_CONJUNCTIONS_FILE}: expected first<TAB>second, got {row!r}"
            )
        pairs.add((row[0], row[1]))

    anaphoric = pronoun_base | demonstratives
    overlap = anaphoric & nonanaphoric
    if overlap:
        warnings.append(
            f"{source.label}: lemmas listed both anaphoric and non-anaphoric: "
            + ", ".join(sorted(overlap))
        )

    return LexiconSet(
        weather_verbs=weather,
        anaphoric_adverbs=adverbs,
        paired_conjunctions=frozenset(pairs),
        yes_no_interjections=interjections,
        demonstrative_pronouns=demonstratives,
        nonanaphoric_person_pronouns=nonanaphoric,
        anaphoric_pronouns=anaphoric,
        warnings=tuple(warnings),
    )


__all__ = [
    "AdverbType",
    "LexiconError",
    "LexiconSet",
    "load_lexicon_set",
]
