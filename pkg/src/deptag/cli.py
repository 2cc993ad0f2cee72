"""Command line interface.

Subcommands: lint, label, coverage, sample, agree, serve, validate.

Exit codes: 0 success, 1 usage error, 2 input or parse error,
3 validation error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .agreement import agreement_report, report_to_dict
from .annotate import (
    EXPORT_FORMATS,
    annotate_corpus,
    canonical_json,
    coverage,
    coverage_to_dict,
    export_annotations,
    parse_jsonl,
    sample_for_review,
)
from .corpus import Corpus, build_tree, parse_conllu
from .errors import DeptagError, ParseError, ValidationError
from .normalize import (
    ALL_RULES,
    FIXABLE,
    NormalizerConfig,
    apply_fixes,
    lint_sentence,
)
from .patterns import DEFAULT_TAGSET, parse_pattern_file

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVALID = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage problems; this tool reserves 2 for input
    errors, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_corpus(path: str) -> Corpus:
    return parse_conllu(_read_text(path))


def _load_patterns(path: str):
    return parse_pattern_file(_read_text(path))


def _normalizer_config(args) -> NormalizerConfig:
    whitelist = frozenset()
    if args.whitelist:
        entries = [
            line.strip()
            for line in _read_text(args.whitelist).splitlines()
            if line.strip()
        ]
        whitelist = frozenset(e.upper() for e in entries)
    if args.rules:
        enabled = frozenset(r.strip() for r in args.rules.split(","))
    else:
        enabled = NormalizerConfig().enabled_rules
    return NormalizerConfig(abbreviation_whitelist=whitelist, enabled_rules=enabled)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_lint(args) -> int:
    config = _normalizer_config(args)
    lines = _read_text(args.file).splitlines()

    if not args.fix:
        for i, line in enumerate(lines, start=1):
            for f in lint_sentence(line, config):
                print(f"{i}:{f.start + 1}: {f.rule_id} {f.message}")
        return EXIT_OK

    fixed_lines: List[str] = []
    for i, line in enumerate(lines, start=1):
        result = apply_fixes(line, config)
        fixed_lines.append(result.fixed)
        for f in lint_sentence(result.fixed, config):
            if f.severity != FIXABLE:
                print(f"{i}:{f.start + 1}: {f.rule_id} {f.message}", file=sys.stderr)
    if args.dedupe:
        seen = set()
        deduped = []
        for line in fixed_lines:
            if line in seen:
                continue
            seen.add(line)
            deduped.append(line)
        fixed_lines = deduped
    _emit("".join(line + "\n" for line in fixed_lines), args.out)
    return EXIT_OK


def cmd_label(args) -> int:
    corpus = _load_corpus(args.corpus)
    pattern_set = _load_patterns(args.patterns)
    annotated = annotate_corpus(
        corpus,
        pattern_set,
        pattern_set_name=args.patterns,
        jobs=args.jobs,
        strip_subtypes=args.strip_subtypes,
    )
    _emit(export_annotations(annotated, args.format), args.out)
    return EXIT_OK


def cmd_coverage(args) -> int:
    corpus = _load_corpus(args.corpus)
    pattern_set = _load_patterns(args.patterns)
    annotated = annotate_corpus(
        corpus, pattern_set, strip_subtypes=args.strip_subtypes
    )
    report = coverage(annotated)
    if args.json:
        sys.stdout.write(canonical_json(coverage_to_dict(report)))
        return EXIT_OK
    print(f"sentences: {report.total_count}")
    print(f"labeled:   {report.labeled_count} ({report.overall:.2%})")
    if report.by_req_type:
        print("by req_type:")
        for req_type, fraction in report.by_req_type.items():
            print(f"  {req_type:<16} {fraction:.2%}")
    return EXIT_OK


def cmd_sample(args) -> int:
    corpus = _load_corpus(args.corpus)
    pattern_set = _load_patterns(args.patterns)
    annotated = annotate_corpus(
        corpus, pattern_set, strip_subtypes=args.strip_subtypes
    )
    for sid in sample_for_review(annotated, args.fraction, args.seed):
        print(sid)
    return EXIT_OK


def cmd_agree(args) -> int:
    auto = parse_jsonl(_read_text(args.auto))
    gold = parse_jsonl(_read_text(args.gold))
    tagset = tuple(t.strip() for t in args.tagset.split(",")) if args.tagset else DEFAULT_TAGSET
    report = agreement_report(auto, gold, tagset)
    if args.json:
        sys.stdout.write(canonical_json(report_to_dict(report)))
        return EXIT_OK
    width = max(len(name) for name in report.rows)
    print(f"{'labels':<{width}}  sentence_avg  overall")
    for name, pair in report.rows.items():
        print(f"{name:<{width}}  {pair.sentence_avg:>12.3f}  {pair.overall:>7.3f}")
    print(f"sentences compared: {report.sentences_compared}")
    print(f"tokens compared:    {report.tokens_compared}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    corpus = _load_corpus(args.corpus)
    pattern_text = _read_text(args.patterns)
    gold = parse_jsonl(_read_text(args.gold)) if args.gold else None
    ui_dir = None
    if args.ui:
        ui_dir = Path(args.ui)
        if not ui_dir.is_dir():
            raise ValidationError(f"ui directory {args.ui!r} does not exist")
    elif Path("frontend/dist").is_dir():
        ui_dir = Path("frontend/dist")
    app = create_app(
        corpus,
        pattern_text,
        gold=gold,
        strip_subtypes=args.strip_subtypes,
        ui_dir=ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def cmd_validate(args) -> int:
    if not args.corpus and not args.patterns:
        print("validate: provide --corpus and/or --patterns", file=sys.stderr)
        return EXIT_USAGE
    parse_problems: List[str] = []
    validation_problems: List[str] = []

    if args.corpus:
        try:
            corpus = _load_corpus(args.corpus)
        except ParseError as err:
            parse_problems.append(f"{args.corpus}: {err}")
        except ValidationError as err:
            validation_problems.append(f"{args.corpus}: {err}")
        else:
            for sentence in corpus.sentences:
                try:
                    build_tree(sentence)
                except ValidationError as err:
                    validation_problems.append(f"{args.corpus}: {err}")
            if not validation_problems:
                print(f"{args.corpus}: OK ({len(corpus)} sentences)")

    if args.patterns:
        try:
            pattern_set = _load_patterns(args.patterns)
        except ParseError as err:
            parse_problems.append(f"{args.patterns}: {err}")
        else:
            print(f"{args.patterns}: OK ({len(pattern_set.patterns)} patterns)")

    for problem in parse_problems + validation_problems:
        print(problem, file=sys.stderr)
    if parse_problems:
        return EXIT_INPUT
    if validation_problems:
        return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deptag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lint", parents=[], help="lint a sentence-per-line file")
    p.add_argument("file", help="input file, or - for stdin")
    p.add_argument("--fix", action="store_true", help="apply fixable findings")
    p.add_argument("--dedupe", action="store_true", help="with --fix: drop duplicate fixed sentences")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--whitelist", help="file of abbreviations exempt from lower-casing")
    p.add_argument("--rules", help=f"comma-separated rule ids to enable (default: all but R14; known: {','.join(ALL_RULES)})")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("label", help="annotate a corpus with a pattern file")
    p.add_argument("--corpus", required=True, help="CoNLL-U corpus")
    p.add_argument("--patterns", required=True, help="pattern file")
    p.add_argument("--format", choices=EXPORT_FORMATS, default="jsonl")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output order is unaffected)")
    p.add_argument("--strip-subtypes", action="store_true", help="ignore :subtype suffixes on dependency labels")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("coverage", help="report fraction of sentences matched")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--strip-subtypes", action="store_true")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("sample", help="sample labeled sentence ids for manual review")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strip-subtypes", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("agree", help="Cohen's kappa between two jsonl annotation files")
    p.add_argument("--auto", required=True, help="first annotation file (jsonl)")
    p.add_argument("--gold", required=True, help="second annotation file (jsonl)")
    p.add_argument("--tagset", help="comma-separated tags (default: ent1,rel,ent2,cond)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--gold", help="gold annotations (jsonl) to enable /agreement")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", help="directory of static workbench files (default: frontend/dist if present)")
    p.add_argument("--strip-subtypes", action="store_true")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("validate", help="check corpus trees and pattern syntax")
    p.add_argument("--corpus")
    p.add_argument("--patterns")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as err:
        print(f"deptag: parse error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as err:
        print(f"deptag: validation error: {err}", file=sys.stderr)
        return EXIT_INVALID
    except DeptagError as err:
        print(f"deptag: error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as err:
        print(f"deptag: input error: {err}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
