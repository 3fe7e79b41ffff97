"""Reading and writing CoNLL-U shaped files.

The input format is the usual one: ten tab-separated columns per token,
``#`` comment lines, blank line between sentences.  Only the columns the
data model keeps are interpreted (ID, FORM, LEMMA, UPOS, FEATS, HEAD,
DEPREL); XPOS, DEPS and MISC are accepted and ignored.  Files annotated
with a non-universal tagset simply carry its tags in the UPOS slot, since
a tagset profile interprets them later anyway.

Multiword-token ranges (``3-4``) and empty nodes (``3.1``) are skipped.
Both LF and CRLF line endings are accepted.
"""

from __future__ import annotations

import re
from typing import Iterable, Union

from .model import Sentence, StructureError, Token, validate_tokens

_SENT_ID_RE = re.compile(r"^#\s*sent_id\s*=\s*(\S.*?)\s*$")
_TOKEN_ID_RE = re.compile(r"^\d+$")
_RANGE_ID_RE = re.compile(r"^\d+-\d+$")
_EMPTY_NODE_ID_RE = re.compile(r"^\d+\.\d+$")

COLUMN_COUNT = 10


class ParseError(Exception):
    """A line could not be interpreted; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _finish_sentence(
    sentence_id: str, rows: list[Token], out: list[Sentence]
) -> None:
    validate_tokens(sentence_id, tuple(rows))
    out.append(Sentence(id=sentence_id, tokens=tuple(rows)))


def parse_conllu(source: Union[str, Iterable[str]]) -> list[Sentence]:
    """Parse a CoNLL-U character stream into Sentence values.

    ``source`` may be a string or any iterable of lines (e.g. an open text
    file).  Sentence ids come from ``# sent_id = ...`` comments when present
    and are synthesized as ``s1``, ``s2``, ... otherwise.

    Raises ParseError for malformed lines and StructureError for token
    lists that do not form a tree (cyclic heads, gaps in the indices).
    """
    if isinstance(source, str):
        lines: Iterable[str] = source.splitlines()
    else:
        lines = source

    sentences: list[Sentence] = []
    rows: list[Token] = []
    sent_id: str | None = None
    ordinal = 0

    def block_id() -> str:
        return sent_id if sent_id is not None else f"s{ordinal}"

    for line_number, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\r\n")
        if not line.strip():
            if rows:
                _finish_sentence(block_id(), rows, sentences)
                rows = []
                sent_id = None
            continue
        if line.startswith("#"):
            match = _SENT_ID_RE.match(line)
            if match:
                sent_id = match.group(1)
            continue
        columns = line.split("\t")
        if len(columns) != COLUMN_COUNT:
            raise ParseError(
                line_number,
                f"expected {COLUMN_COUNT} tab-separated columns, got {len(columns)}",
            )
        token_id = columns[0]
        if _RANGE_ID_RE.match(token_id) or _EMPTY_NODE_ID_RE.match(token_id):
            continue
        if not _TOKEN_ID_RE.match(token_id):
            raise ParseError(line_number, f"unintelligible token id {token_id!r}")
        if not rows:
            ordinal += 1
        if not _TOKEN_ID_RE.match(columns[6]):
            raise ParseError(
                line_number, f"head must be a non-negative integer, got {columns[6]!r}"
            )
        feats = columns[5] if columns[5] != "_" else ""
        try:
            token = Token(
                index=int(token_id),
                form=columns[1],
                lemma=columns[2],
                pos=columns[3],
                deprel=columns[7],
                head=int(columns[6]),
                feats=feats,
            )
        except ValueError as exc:
            raise ParseError(line_number, str(exc)) from exc
        rows.append(token)

    if rows:
        _finish_sentence(block_id(), rows, sentences)
    return sentences


def serialize_conllu(sentences: Iterable[Sentence]) -> str:
    """Render sentences back to CoNLL-U text.

    The output always carries a ``# sent_id`` comment and underscores in
    the columns the data model does not keep, so parse -> serialize ->
    parse is the identity on the data model.
    """
    blocks: list[str] = []
    for sentence in sentences:
        lines = [f"# sent_id = {sentence.id}"]
        for t in sentence.tokens:
            lines.append(
                "\t".join(
                    (
                        str(t.index),
                        t.form,
                        t.lemma,
                        t.pos,
                        "_",
                        t.feats if t.feats else "_",
                        str(t.head),
                        t.deprel,
                        "_",
                        "_",
                    )
                )
            )
        blocks.append("\n".join(lines))
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"


__all__ = ["ParseError", "StructureError", "parse_conllu", "serialize_conllu"]
