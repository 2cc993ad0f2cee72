"""deptag: semi-automatic relation labeling for requirements text.

Dependency-tree patterns tag sentence tokens with entity/relation/condition
roles; the package adds text normalization, coverage and agreement
reporting, a CLI and an HTTP service around that core.
"""

from .agreement import (
    AgreementReport,
    KappaPair,
    agreement_report,
    cohen_kappa,
    overall_kappa,
    per_tag_kappa,
    sentence_average_kappa,
)
from .annotate import (
    AnnotatedCorpus,
    AnnotationRecord,
    CoverageReport,
    annotate_corpus,
    annotation_records,
    canonical_json,
    coverage,
    export_annotations,
    parse_jsonl,
    sample_for_review,
)
from .corpus import (
    Corpus,
    DependencyTree,
    Sentence,
    Token,
    build_tree,
    corpus_stats,
    parse_conllu,
    serialize_conllu,
)
from .engine import (
    Annotation,
    ClauseTrace,
    annotate_sentence,
    apply_pattern,
    eval_clause,
    explain_match,
)
from .errors import DeptagError, ParseError, ValidationError
from .normalize import (
    LintFinding,
    NormalizerConfig,
    apply_fixes,
    dedupe_corpus,
    lint_sentence,
)
from .patterns import (
    Clause,
    Pattern,
    PatternSet,
    Step,
    parse_pattern_file,
    serialize_pattern_set,
    validate_pattern_set,
)
from .server import create_app

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "AnnotatedCorpus",
    "Annotation",
    "AnnotationRecord",
    "Clause",
    "ClauseTrace",
    "Corpus",
    "CoverageReport",
    "DependencyTree",
    "DeptagError",
    "KappaPair",
    "LintFinding",
    "NormalizerConfig",
    "ParseError",
    "Pattern",
    "PatternSet",
    "Sentence",
    "Step",
    "Token",
    "ValidationError",
    "agreement_report",
    "annotate_corpus",
    "annotate_sentence",
    "annotation_records",
    "apply_fixes",
    "apply_pattern",
    "build_tree",
    "canonical_json",
    "cohen_kappa",
    "corpus_stats",
    "coverage",
    "create_app",
    "dedupe_corpus",
    "eval_clause",
    "explain_match",
    "export_annotations",
    "lint_sentence",
    "overall_kappa",
    "parse_conllu",
    "parse_jsonl",
    "parse_pattern_file",
    "per_tag_kappa",
    "sample_for_review",
    "sentence_average_kappa",
    "serialize_conllu",
    "serialize_pattern_set",
    "validate_pattern_set",
]
