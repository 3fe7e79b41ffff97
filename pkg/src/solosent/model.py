"""Data model for dependency-annotated sentences.

Tokens arrive pre-annotated (POS, dependency relation, morphology) from an
external parser; nothing in this package tags or parses raw text.  Raw tag
strings are kept verbatim on each token.  A tagset profile (profiles.py) maps
them onto the small abstract vocabulary the rules reason over, producing
AnnotatedToken/AnnotatedSentence values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, unique
from typing import Iterator, Optional


@unique
class Category(str, Enum):
    """Abstract word category, the profile-independent face of a POS tag."""

    NOUN = "noun"
    PROPER_NOUN = "proper_noun"
    PRONOUN = "pronoun"
    DETERMINER = "determiner"
    VERB = "verb"
    ADVERB = "adverb"
    CONJUNCTION = "conjunction"
    SUBJUNCTION = "subjunction"
    INTERJECTION = "interjection"
    INFINITIVE_MARKER = "infinitive_marker"
    MAJOR_DELIMITER = "major_delimiter"
    MINOR_DELIMITER = "minor_delimiter"
    OTHER = "other"


@unique
class Relation(str, Enum):
    """Abstract dependency relation, the profile-independent face of a deprel."""

    ROOT = "root"
    SUBJECT = "subject"
    LOGICAL_SUBJECT = "logical_subject"
    EXPLETIVE = "expletive"
    OBJECT = "object"
    CONJUNCT = "conjunct"
    COORDINATOR = "coordinator"
    SUBORDINATOR = "subordinator"
    CONJUNCTIONAL_ADVERBIAL = "conjunctional_adverbial"
    ADVERBIAL = "adverbial"
    RELATIVE_CLAUSE_MARKER = "relative_clause_marker"
    INFINITIVE_MARKER = "infinitive_marker"
    DETERMINER = "determiner"
    OTHER = "other"


@unique
class Gender(str, Enum):
    COMMON = "common"
    NEUTER = "neuter"
    UNSPECIFIED = "unspecified"


@unique
class Number(str, Enum):
    SINGULAR = "singular"
    PLURAL = "plural"
    UNSPECIFIED = "unspecified"


@unique
class VerbForm(str, Enum):
    FINITE_PRESENT = "finite_present"
    FINITE_PAST = "finite_past"
    IMPERATIVE = "imperative"
    INFINITIVE = "infinitive"
    SUPINE = "supine"
    PARTICIPLE = "participle"
    UNSPECIFIED = "unspecified"


@unique
class Definiteness(str, Enum):
    DEFINITE = "definite"
    INDEFINITE = "indefinite"
    UNSPECIFIED = "unspecified"


FINITE_VERB_FORMS = frozenset(
    {VerbForm.FINITE_PRESENT, VerbForm.FINITE_PAST, VerbForm.IMPERATIVE}
)


@dataclass(frozen=True)
class MorphFeatures:
    """Decoded morphology; every field defaults to unspecified."""

    gender: Gender = Gender.UNSPECIFIED
    number: Number = Number.UNSPECIFIED
    verb_form: VerbForm = VerbForm.UNSPECIFIED
    definiteness: Definiteness = Definiteness.UNSPECIFIED


NO_FEATURES = MorphFeatures()


class StructureError(Exception):
    """A token list does not form a well-shaped dependency graph."""

    def __init__(self, sentence_id: str, message: str) -> None:
        super().__init__(f"sentence {sentence_id!r}: {message}")
        self.sentence_id = sentence_id


@dataclass(frozen=True)
class Token:
    """One token of a parsed sentence, raw annotations preserved.

    ``head`` is the 1-based index of the governing token, 0 for the root.
    ``feats`` is the raw morphology string exactly as the source had it;
    decoding into MorphFeatures happens when a profile is applied.
    """

    index: int
    form: str
    lemma: str
    pos: str
    deprel: str
    head: int
    feats: str = ""

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValueError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} may not head itself")
        if not self.form:
            raise ValueError(f"token {self.index} has an empty form")


@dataclass(frozen=True)
class SourceRef:
    """Provenance of a sentence: which corpus and, optionally, which document."""

    corpus: str
    document: Optional[str] = None


def validate_tokens(sentence_id: str, tokens: tuple[Token, ...]) -> None:
    """Reject token lists that break the sentence-level invariants.

    Checks that indices are contiguous from 1, that every head points at an
    existing token (or 0), and that following head links never loops.  Used
    by the parsers; directly constructed Sentence values may skip it.
    """
    if not tokens:
        raise StructureError(sentence_id, "no tokens")
    for expected, token in enumerate(tokens, start=1):
        if token.index != expected:
            raise StructureError(
                sentence_id,
                f"token indices not contiguous: expected {expected}, got {token.index}",
            )
    n = len(tokens)
    for token in tokens:
        if token.head > n:
            raise StructureError(
                sentence_id,
                f"token {token.index} has head {token.head} outside the sentence",
            )
    for token in tokens:
        seen = set()
        current = token.index
        while current != 0:
            if current in seen:
                raise StructureError(
                    sentence_id, f"cyclic head chain through token {token.index}"
                )
            seen.add(current)
            current = tokens[current - 1].head


@dataclass(frozen=True)
class Sentence:
    """A dependency-parsed sentence with raw annotations.

    ``source`` is provenance metadata and deliberately excluded from
    equality: the same annotations fetched from a corpus service or read
    from a file compare equal.
    """

    id: str
    tokens: tuple[Token, ...]
    source: Optional[SourceRef] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def token(self, index: int) -> Token:
        """Return the token with the given 1-based index."""
        return self.tokens[index - 1]

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)


@dataclass(frozen=True)
class AnnotatedToken:
    """A token plus the abstract annotations a profile assigned to it."""

    token: Token
    category: Category
    relation: Relation
    features: MorphFeatures = NO_FEATURES
    is_modal: bool = False

    @property
    def index(self) -> int:
        return self.token.index

    @property
    def form(self) -> str:
        return self.token.form

    @property
    def lemma(self) -> str:
        return self.token.lemma

    @property
    def pos(self) -> str:
        return self.token.pos

    @property
    def deprel(self) -> str:
        return self.token.deprel

    @property
    def head(self) -> int:
        return self.token.head


@dataclass(frozen=True)
class AnnotatedSentence:
    """A sentence whose tokens carry abstract categories and relations."""

    id: str
    tokens: tuple[AnnotatedToken, ...]
    profile: str
    source: Optional[SourceRef] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[AnnotatedToken]:
        return iter(self.tokens)

    def token(self, index: int) -> AnnotatedToken:
        """Return the token with the given 1-based index."""
        return self.tokens[index - 1]

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)

    def head_token(self, index: int) -> Optional[AnnotatedToken]:
        """The governing token, or None for roots and out-of-range heads."""
        head = self.tokens[index - 1].head
        if head < 1 or head > len(self.tokens):
            return None
        return self.tokens[head - 1]

    def children(self, index: int) -> tuple[AnnotatedToken, ...]:
        """Tokens directly governed by the token at ``index``."""
        return tuple(t for t in self.tokens if t.head == index)

    def siblings(self, index: int) -> tuple[AnnotatedToken, ...]:
        """Tokens sharing a head with the token at ``index``, itself excluded."""
        head = self.tokens[index - 1].head
        return tuple(t for t in self.tokens if t.head == head and t.index != index)

    def descendants(self, index: int) -> tuple[AnnotatedToken, ...]:
        """Every token in the subtree under ``index``, in surface order."""
        inside = {index}
        frontier = [index]
        while frontier:
            current = frontier.pop()
            for child in self.children(current):
                if child.index not in inside:
                    inside.add(child.index)
                    frontier.append(child.index)
        inside.discard(index)
        return tuple(t for t in self.tokens if t.index in inside)

    def root_tokens(self) -> tuple[AnnotatedToken, ...]:
        """Tokens that act as the dependency root (relation root or head 0)."""
        return tuple(
            t for t in self.tokens if t.head == 0 or t.relation is Relation.ROOT
        )


MISSING_ROOT = "missing_root"
MULTIPLE_ROOTS = "multiple_roots"


@dataclass(frozen=True)
class StructuralIssue:
    """A sentence-level defect found by validate_structure."""

    kind: str
    count: int = 0


def validate_structure(sentence: AnnotatedSentence) -> list[StructuralIssue]:
    """Report root defects: no root at all, or more than one.

    Sentences built by the parsers always have a head-0 token, so
    missing_root only shows up for sentences assembled by hand or from
    degraded external data; the incomplete-sentence detector consumes it
    either way.
    """
    roots = sentence.root_tokens()
    if not roots:
        return [StructuralIssue(MISSING_ROOT)]
    if len(roots) > 1:
        return [StructuralIssue(MULTIPLE_ROOTS, count=len(roots))]
    return []
