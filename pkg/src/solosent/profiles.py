"""Tagset profiles: mapping raw tags onto the abstract annotation vocabulary.

A profile is a flat text file (grammar documented in docs/formats.md) that
says which abstract Category each raw POS tag denotes, which abstract
Relation each raw deprel denotes, how raw morphology atoms decode into
MorphFeatures, and which lemmas count as modal verbs for the finiteness
rule.  Two profiles ship with the package:

``suc-mamba``
    SUC POS tags with MAMBA-style dependency labels, the combination used
    by the common Swedish pipelines.  The deprel inventory is a best-effort
    reconstruction; unknown labels degrade to ``other`` rather than fail.

``ud``
    Universal Dependencies.  UD has no distinct labels for logical
    subjects, relative-clause markers or conjunctional adverbials, so the
    profile maps ``discourse`` onto ``conjunctional_adverbial`` (the
    closest analogue, with reduced recall for the connective rule under
    UD parses) and leaves the other two unreachable; the rules that
    consult them have surface-level fallbacks.

Unknown raw tags always map to ``other`` and are tallied in a coverage
counter, never rejected: robustness against tag drift beats strictness
here.  What *is* rejected is a profile that cannot express an abstraction
some rule depends on with no fallback; load_profile then raises with a
completeness report.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .model import (
    AnnotatedSentence,
    AnnotatedToken,
    Category,
    Definiteness,
    Gender,
    MorphFeatures,
    Number,
    Relation,
    Sentence,
    VerbForm,
)

BUNDLED_PROFILES = ("suc-mamba", "ud")

# Surface-form fallback for tagsets whose POS inventory does not separate
# delimiter kinds (UD's PUNCT).  Major delimiters end sentences; everything
# else that delimits, including paired marks like quotes and parentheses,
# counts as minor, mirroring how SUC files treat its paired-delimiter tag.
MAJOR_DELIMITER_FORMS = frozenset({".", "!", "?"})
MINOR_DELIMITER_FORMS = frozenset(
    {",", ";", ":", "–", "—", "-"}
    | {'"', "'", "''", "``", "(", ")", "[", "]", "«", "»", "‘", "’", "“", "”"}
)

# The pseudo-category a profile uses to say "decide by surface form".
DELIMITER_BY_FORM = "delimiter"

# Abstractions some rule consults with no fallback: a profile that cannot
# reach one of these would silently disable that rule, so loading fails.
REQUIRED_CATEGORIES = frozenset(Category) - {Category.OTHER}
REQUIRED_RELATIONS = frozenset(
    {
        Relation.ROOT,
        Relation.SUBJECT,
        Relation.EXPLETIVE,
        Relation.CONJUNCT,
        Relation.CONJUNCTIONAL_ADVERBIAL,
        Relation.ADVERBIAL,
        Relation.SUBORDINATOR,
    }
)
# Abstractions with a surface-level or semantic fallback (adjacency checks,
# subjects subsuming logical subjects); missing ones only produce warnings.
OPTIONAL_RELATIONS = frozenset(Relation) - REQUIRED_RELATIONS - {Relation.OTHER}

_FEATURE_FIELDS = {
    "gender": ("gender", Gender),
    "number": ("number", Number),
    "verb_form": ("verb_form", VerbForm),
    "definiteness": ("definiteness", Definiteness),
}


class ProfileError(Exception):
    """A profile file is malformed or incomplete."""


@dataclass(frozen=True)
class FeatureRule:
    """One morphology decoding rule: POS pattern + feats atom -> field value.

    ``pos`` and ``atom`` may be ``*`` to match anything.  Rules apply in
    file order and later rules override earlier ones for the same field,
    which is how e.g. a participle marking beats a tense marking.
    """

    pos: str
    atom: str
    fieldname: str
    value: object

    def matches(self, raw_pos: str, atoms: frozenset[str]) -> bool:
        if self.pos != "*" and self.pos != raw_pos:
            return False
        return self.atom == "*" or self.atom in atoms


@dataclass(frozen=True)
class TagsetProfile:
    """A complete mapping from one tagset onto the abstract vocabulary."""

    name: str
    category_of_pos: dict[str, str]
    relation_of_deprel: dict[str, Relation]
    feature_rules: tuple[FeatureRule, ...]
    modal_lemmas: frozenset[str]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def category_for(self, pos: str, form: str) -> Optional[Category]:
        """Abstract category for a raw POS tag, or None when unknown."""
        target = self.category_of_pos.get(pos)
        if target is None:
            return None
        if target == DELIMITER_BY_FORM:
            return classify_delimiter_form(form)
        return Category(target)

    def relation_for(self, deprel: str) -> Optional[Relation]:
        """Abstract relation for a raw deprel, or None when unknown."""
        return self.relation_of_deprel.get(deprel)

    def decode_features(self, pos: str, feats: str) -> MorphFeatures:
        """Decode a raw feats string for a token with the given raw POS."""
        atoms = frozenset(a for a in feats.split("|") if a) if feats else frozenset()
        values: dict[str, object] = {}
        for rule in self.feature_rules:
            if rule.matches(pos, atoms):
                values[rule.fieldname] = rule.value
        return MorphFeatures(**values) if values else MorphFeatures()


def classify_delimiter_form(form: str) -> Category:
    """Classify a delimiter token by its surface form."""
    if form in MAJOR_DELIMITER_FORMS:
        return Category.MAJOR_DELIMITER
    if form in MINOR_DELIMITER_FORMS:
        return Category.MINOR_DELIMITER
    return Category.OTHER


def _parse_profile_text(text: str, origin: str) -> TagsetProfile:
    name: Optional[str] = None
    category_of_pos: dict[str, str] = {}
    relation_of_deprel: dict[str, Relation] = {}
    feature_rules: list[FeatureRule] = []
    modal_lemmas: set[str] = set()
    valid_categories = {c.value for c in Category} | {DELIMITER_BY_FORM}
    valid_relations = {r.value: r for r in Relation}

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        where = f"{origin} line {line_number}"
        if kind == "name":
            if len(fields) != 2:
                raise ProfileError(f"{where}: name takes exactly one value")
            name = fields[1]
        elif kind == "pos":
            if len(fields) != 3:
                raise ProfileError(f"{where}: pos takes a raw tag and a category")
            if fields[2] not in valid_categories:
                raise ProfileError(f"{where}: unknown category {fields[2]!r}")
            category_of_pos[fields[1]] = fields[2]
        elif kind == "deprel":
            if len(fields) != 3:
                raise ProfileError(f"{where}: deprel takes a raw label and a relation")
            if fields[2] not in valid_relations:
                raise ProfileError(f"{where}: unknown relation {fields[2]!r}")
            relation_of_deprel[fields[1]] = valid_relations[fields[2]]
        elif kind == "feat":
            if len(fields) != 4 or "=" not in fields[3]:
                raise ProfileError(
                    f"{where}: feat takes a POS pattern, an atom and field=value"
                )
            fieldname, _, valuename = fields[3].partition("=")
            if fieldname not in _FEATURE_FIELDS:
                raise ProfileError(f"{where}: unknown feature field {fieldname!r}")
            attr, enum_type = _FEATURE_FIELDS[fieldname]
            try:
                value = enum_type(valuename)
            except ValueError:
                raise ProfileError(
                    f"{where}: bad value {valuename!r} for {fieldname}"
                ) from None
            feature_rules.append(FeatureRule(fields[1], fields[2], attr, value))
        elif kind == "modal":
            if len(fields) != 2:
                raise ProfileError(f"{where}: modal takes exactly one lemma")
            modal_lemmas.add(fields[1].lower())
        else:
            raise ProfileError(f"{where}: unknown directive {kind!r}")

    if name is None:
        raise ProfileError(f"{origin}: profile has no name directive")

    reachable_categories: set[Category] = set()
    for target in category_of_pos.values():
        if target == DELIMITER_BY_FORM:
            reachable_categories.update(
                {Category.MAJOR_DELIMITER, Category.MINOR_DELIMITER}
            )
        else:
            reachable_categories.add(Category(target))
    missing_categories = REQUIRED_CATEGORIES - reachable_categories
    reachable_relations = set(relation_of_deprel.values())
    missing_relations = REQUIRED_RELATIONS - reachable_relations
    if missing_categories or missing_relations:
        gaps = sorted(x.value for x in missing_categories) + sorted(
            x.value for x in missing_relations
        )
        raise ProfileError(
            f"{origin}: profile {name!r} cannot express required abstractions: "
            + ", ".join(gaps)
        )
    warnings = tuple(
        f"profile {name!r} has no raw label for optional relation {r.value!r}"
        for r in sorted(OPTIONAL_RELATIONS - reachable_relations, key=lambda r: r.value)
    )

    return TagsetProfile(
        name=name,
        category_of_pos=category_of_pos,
        relation_of_deprel=relation_of_deprel,
        feature_rules=tuple(feature_rules),
        modal_lemmas=frozenset(modal_lemmas),
        warnings=warnings,
    )


def load_profile(name_or_path: Union[str, Path]) -> TagsetProfile:
    """Load a bundled profile by name, or any profile from a file path."""
    text_name = str(name_or_path)
    if text_name in BUNDLED_PROFILES:
        text = (
            resources.files("solosent")
            .joinpath("data", "profiles", f"{text_name}.profile")
            .read_text(encoding="utf-8")
        )
        return _parse_profile_text(text, origin=f"bundled profile {text_name}")
    path = Path(name_or_path)
    if not path.is_file():
        raise ProfileError(
            f"no bundled profile or readable file named {text_name!r} "
            f"(bundled: {', '.join(BUNDLED_PROFILES)})"
        )
    return _parse_profile_text(path.read_text(encoding="utf-8"), origin=str(path))


@dataclass
class CoverageCounter:
    """Tally of raw tags a profile did not recognize."""

    unknown_pos: Counter = field(default_factory=Counter)
    unknown_deprel: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.unknown_pos.values()) + sum(self.unknown_deprel.values())

    def summary(self) -> str:
        parts = []
        for label, counter in (
            ("POS", self.unknown_pos),
            ("deprel", self.unknown_deprel),
        ):
            for tag, count in sorted(counter.items()):
                parts.append(f"{label} {tag!r} x{count}")
        return "; ".join(parts) if parts else "full coverage"


def apply_profile(
    sentence: Sentence,
    profile: TagsetProfile,
    coverage: Optional[CoverageCounter] = None,
) -> AnnotatedSentence:
    """Annotate every token of a sentence with abstract categories.

    Total over all inputs: unknown raw tags map to ``other`` and are
    counted in ``coverage`` when one is passed.  Decoded verb forms are
    dropped for tokens whose category is not verb, so downstream rules can
    trust that pairing.
    """
    annotated: list[AnnotatedToken] = []
    for token in sentence.tokens:
        category = profile.category_for(token.pos, token.form)
        if category is None:
            category = Category.OTHER
            if coverage is not None:
                coverage.unknown_pos[token.pos] += 1
        relation = profile.relation_for(token.deprel)
        if relation is None:
            relation = Relation.OTHER
            if coverage is not None:
                coverage.unknown_deprel[token.deprel] += 1
        features = profile.decode_features(token.pos, token.feats)
        if category is not Category.VERB and features.verb_form is not VerbForm.UNSPECIFIED:
            features = MorphFeatures(
                gender=features.gender,
                number=features.number,
                verb_form=VerbForm.UNSPECIFIED,
                definiteness=features.definiteness,
            )
        annotated.append(
            AnnotatedToken(
                token=token,
                category=category,
                relation=relation,
                features=features,
                is_modal=category is Category.VERB
                and token.lemma.lower() in profile.modal_lemmas,
            )
        )
    return AnnotatedSentence(
        id=sentence.id,
        tokens=tuple(annotated),
        profile=profile.name,
        source=sentence.source,
    )


__all__ = [
    "BUNDLED_PROFILES",
    "CoverageCounter",
    "FeatureRule",
    "ProfileError",
    "TagsetProfile",
    "apply_profile",
    "classify_delimiter_form",
    "load_profile",
]
