"""Command line interface.

One executable, five modes::

    solosent --mode assess --input sentences.conllu
    solosent --mode filter --input sentences.conllu --output keep.jsonl
    solosent --mode rank   --input sentences.conllu --format tsv
    solosent --mode eval   --input sentences.conllu --gold gold.tsv
    solosent --mode fetch  --config korp.conf --output fetched.conllu

Records go to --output (default stdout) as JSON lines or TSV.  Output is
byte-deterministic for a given input: sentences may be assessed by a
worker pool (--jobs), but records are always written in input order.

Exit codes: 0 success, 1 input problem, 2 configuration problem.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import concordance
from .assessment import Assessment, filter_assessments, rank_assessments
from .config import detector_config_from_mapping, read_config_file
from .conllu import ParseError, parse_conllu, serialize_conllu
from .detectors import ConfigError, DetectorConfig, detect_all
from .evaluation import (
    EvalReport,
    GoldDataError,
    ThemeRateReport,
    evaluate,
    read_gold_file,
    render_eval_table,
    theme_rates,
)
from .lexicons import LexiconError, LexiconSet, load_lexicon_set
from .model import StructureError
from .profiles import CoverageCounter, ProfileError, apply_profile, load_profile

SCHEMA_VERSION = 1

MODES = ("assess", "filter", "rank", "eval", "fetch")
FORMATS = ("jsonl", "tsv")


class InputError(Exception):
    """Anything wrong with the data the user pointed us at."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solosent",
        description="Assess whether dependency-parsed sentences stand on their own.",
    )
    parser.add_argument("--mode", choices=MODES, required=True)
    parser.add_argument(
        "--input",
        help="CoNLL-U file, or - for stdin (unused in fetch mode)",
    )
    parser.add_argument(
        "--profile",
        default=None,
        help="tagset profile: bundled name (suc-mamba, ud) or a file path",
    )
    parser.add_argument(
        "--lexicons", default=None, help="lexicon directory (default: bundled Swedish)"
    )
    parser.add_argument("--config", default=None, help="flat key-value config file")
    parser.add_argument("--gold", default=None, help="gold file for eval mode")
    parser.add_argument("--output", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=FORMATS, default="jsonl")
    parser.add_argument(
        "--explain",
        action="store_true",
        help="include a rationale with every detection",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="worker threads for assessment"
    )
    return parser


def _fraction_to_number(value: Fraction) -> float:
    return float(value)


def _assessment_record(assessment: Assessment, explain: bool) -> dict:
    detections = []
    for d in assessment.detections:
        entry: dict = {
            "theme": d.theme.value,
            "tokens": list(d.token_indices),
            "weight": _fraction_to_number(d.weight),
        }
        if explain:
            entry["rationale"] = d.rationale
        detections.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "id": assessment.sentence_id,
        "score": _fraction_to_number(assessment.score),
        "context_independent": assessment.context_independent,
        "detections": detections,
    }


def _assessment_tsv_row(assessment: Assessment) -> str:
    themes = ",".join(
        sorted({d.theme.value for d in assessment.detections})
    )
    return "\t".join(
        (
            assessment.sentence_id,
            str(_fraction_to_number(assessment.score)),
            "true" if assessment.context_independent else "false",
            themes if themes else "-",
        )
    )


def _write_assessments(
    assessments: Sequence[Assessment], fmt: str, explain: bool, out
) -> None:
    if fmt == "jsonl":
        for assessment in assessments:
            out.write(
                json.dumps(_assessment_record(assessment, explain), ensure_ascii=False)
            )
            out.write("\n")
    else:
        out.write("id\tscore\tcontext_independent\tthemes\n")
        for assessment in assessments:
            out.write(_assessment_tsv_row(assessment))
            out.write("\n")


def _report_record(report: EvalReport, rates: ThemeRateReport) -> dict:
    def number(value: Optional[Fraction]):
        return _fraction_to_number(value) if value is not None else None

    return {
        "schema_version": SCHEMA_VERSION,
        "sentences": report.sentence_count,
        "per_theme": {
            theme.value: {
                "precision": number(m.precision),
                "recall": number(m.recall),
                "f1": number(m.f1),
                "tp": m.true_positives,
                "fp": m.false_positives,
                "fn": m.false_negatives,
            }
            for theme, m in report.per_theme.items()
        },
        "macro": {
            "precision": number(report.macro.precision),
            "recall": number(report.macro.recall),
            "f1": number(report.macro.f1),
            "themes_with_precision": report.macro.precision_themes,
            "themes_with_recall": report.macro.recall_themes,
            "themes_with_f1": report.macro.f1_themes,
        },
        "micro": {
            "precision": number(report.micro.precision),
            "recall": number(report.micro.recall),
            "f1": number(report.micro.f1),
        },
        "multi_theme_rate": number(report.multi_theme_rate),
        "theme_rates": {
            theme.value: number(rate) for theme, rate in rates.per_theme.items()
        },
        "any_theme_rate": number(rates.any_theme),
    }


def _load_resources(args) -> tuple[DetectorConfig, LexiconSet, object]:
    mapping: dict[str, str] = {}
    if args.config:
        mapping = read_config_file(args.config)
    detector_config = detector_config_from_mapping(mapping)
    profile_name = args.profile or detector_config.profile_name
    lexicon_dir = args.lexicons or detector_config.lexicon_dir
    profile = load_profile(profile_name)
    lexicons = load_lexicon_set(lexicon_dir)
    for warning in lexicons.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return detector_config, lexicons, profile


def _read_sentences(path: Optional[str]):
    if not path:
        raise InputError("this mode needs --input")
    if path == "-":
        return parse_conllu(sys.stdin.read())
    file_path = Path(path)
    if not file_path.is_file():
        raise InputError(f"input file not found: {path}")
    return parse_conllu(file_path.read_text(encoding="utf-8"))


def _assess_sentences(
    sentences, profile, lexicons: LexiconSet, config: DetectorConfig, jobs: int
) -> list[Assessment]:
    coverage = CoverageCounter()
    annotated = [apply_profile(s, profile, coverage) for s in sentences]
    if coverage.total:
        print(f"warning: unmapped tags: {coverage.summary()}", file=sys.stderr)

    def worker(sentence) -> Assessment:
        return detect_all(sentence, lexicons, config)

    if jobs <= 1:
        return [worker(s) for s in annotated]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order regardless of completion order
        return list(pool.map(worker, annotated))


def _open_output(path: Optional[str]):
    if path:
        return open(path, "w", encoding="utf-8", newline="\n")
    return sys.stdout


def run(args) -> int:
    detector_config, lexicons, profile = _load_resources(args)

    if args.mode == "fetch":
        mapping = read_config_file(args.config) if args.config else {}
        settings = concordance.settings_from_mapping(mapping, os.environ)
        transport = concordance.UrllibTransport()
        collected = []
        issues = []
        for page in range(settings.pages):
            query = concordance.ConcordanceQuery(
                query_expression=settings.query_expression,
                corpora=settings.corpora,
                page_start=settings.page_size * page,
                page_size=settings.page_size,
            )
            request = concordance.build_request(
                query, settings.endpoint, settings.api_key
            )
            result = concordance.fetch_page(request, transport)
            if result.skipped:
                print(
                    f"warning: skipped {result.skipped} hit(s) without "
                    "dependency annotation",
                    file=sys.stderr,
                )
            sentences, page_issues = concordance.to_sentences(result.hits, profile)
            collected.extend(sentences)
            issues.extend(page_issues)
        for issue in issues:
            print(f"warning: {issue.sentence_id}: {issue.message}", file=sys.stderr)
        out = _open_output(args.output)
        try:
            plain = [
                # AnnotatedSentence back to raw rows for CoNLL-U output
                _annotated_to_sentence(s)
                for s in collected
            ]
            out.write(serialize_conllu(plain))
        finally:
            if out is not sys.stdout:
                out.close()
        return 0

    sentences = _read_sentences(args.input)
    assessments = _assess_sentences(
        sentences, profile, lexicons, detector_config, args.jobs
    )

    if args.mode == "eval":
        if not args.gold:
            raise ConfigError("eval mode needs --gold")
        gold = read_gold_file(args.gold)
        predictions = {a.sentence_id: a.themes for a in assessments}
        report = evaluate(predictions, gold)
        rates = theme_rates(assessments)
        out = _open_output(args.output)
        try:
            if args.format == "jsonl":
                out.write(json.dumps(_report_record(report, rates), ensure_ascii=False))
                out.write("\n")
            else:
                out.write(render_eval_table(report))
                out.write("\n")
        finally:
            if out is not sys.stdout:
                out.close()
        return 0

    if args.mode == "filter":
        assessments = filter_assessments(assessments)
    elif args.mode == "rank":
        assessments = rank_assessments(assessments)
    out = _open_output(args.output)
    try:
        _write_assessments(assessments, args.format, args.explain, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _annotated_to_sentence(annotated):
    from .model import Sentence

    return Sentence(
        id=annotated.id,
        tokens=tuple(t.token for t in annotated.tokens),
        source=annotated.source,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return run(args)
    except (ConfigError, ProfileError, LexiconError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ParseError, StructureError, GoldDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        concordance.TransportError,
        concordance.ServiceError,
        concordance.DecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
