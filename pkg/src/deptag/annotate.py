"""Corpus-level annotation, coverage, export formats, review sampling."""

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, List, Optional

from .corpus import Corpus, build_tree
from .engine import Annotation, annotate_sentence
from .errors import ParseError, ValidationError
from .patterns import OUTSIDE_TAG, PatternSet

EXPORT_FORMATS = ("jsonl", "bracketed", "bio_tsv")


def canonical_json(obj) -> str:
    """The one JSON rendering shared by CLI output and API responses."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


@dataclass
class AnnotatedCorpus:
    corpus: Corpus
    annotations: Dict[str, Annotation]
    pattern_set_name: str = ""
    created_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def __post_init__(self) -> None:
        ids = {s.sent_id for s in self.corpus.sentences}
        if set(self.annotations) != ids:
            raise ValidationError("annotations do not cover exactly the corpus sentences")
        for s in self.corpus.sentences:
            if len(self.annotations[s.sent_id].tags) != len(s.tokens):
                raise ValidationError(
                    f"sentence {s.sent_id}: tag count does not match token count"
                )

    def labeled_ids(self) -> List[str]:
        return [
            s.sent_id
            for s in self.corpus.sentences
            if self.annotations[s.sent_id].pattern_name is not None
        ]


@dataclass(frozen=True)
class CoverageReport:
    overall: float
    by_req_type: Dict[str, float]
    labeled_count: int
    total_count: int


def annotate_corpus(
    corpus: Corpus,
    pattern_set: PatternSet,
    pattern_set_name: str = "",
    jobs: int = 1,
    strip_subtypes: bool = False,
) -> AnnotatedCorpus:
    """Annotate every sentence; output order always follows corpus order.

    Trees for all sentences are validated up front and every invalid
    sentence is reported in one error (all-or-nothing: no partially
    annotated corpus is ever produced). jobs > 1 fans evaluation out over a
    thread pool; the engine is pure, so results are identical to jobs=1.
    """
    if jobs < 1:
        raise ValidationError(f"jobs must be >= 1, got {jobs}")

    trees = []
    bad: List[str] = []
    for sentence in corpus.sentences:
        try:
            trees.append(build_tree(sentence))
        except ValidationError as err:
            bad.append(str(err))
    if bad:
        raise ValidationError(
            "invalid trees in corpus:\n" + "\n".join(f"  {b}" for b in bad)
        )

    def work(tree):
        return annotate_sentence(tree, pattern_set, strip_subtypes)

    if jobs == 1 or len(trees) < 2:
        results = [work(t) for t in trees]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, trees))

    return AnnotatedCorpus(
        corpus=corpus,
        annotations={a.sent_id: a for a in results},
        pattern_set_name=pattern_set_name,
    )


def coverage(annotated: AnnotatedCorpus) -> CoverageReport:
    """Fraction of sentences with a matching pattern, overall and per
    req_type stratum (strata only for values present in the corpus)."""
    total = len(annotated.corpus.sentences)
    labeled = len(annotated.labeled_ids())
    by_type: Dict[str, List[int]] = {}
    for s in annotated.corpus.sentences:
        hit = annotated.annotations[s.sent_id].pattern_name is not None
        by_type.setdefault(s.req_type, []).append(1 if hit else 0)
    return CoverageReport(
        overall=labeled / total if total else 0.0,
        by_req_type={k: sum(v) / len(v) for k, v in sorted(by_type.items())},
        labeled_count=labeled,
        total_count=total,
    )


def coverage_to_dict(report: CoverageReport) -> Dict[str, object]:
    return {
        "overall": report.overall,
        "by_req_type": report.by_req_type,
        "labeled_count": report.labeled_count,
        "total_count": report.total_count,
    }


@dataclass(frozen=True)
class AnnotationRecord:
    """One exported sentence, as carried by the jsonl format."""

    sent_id: str
    doc_id: str
    req_type: str
    tokens: List[str]
    tags: List[str]
    pattern: Optional[str]


def annotation_records(annotated: AnnotatedCorpus) -> List[AnnotationRecord]:
    out = []
    for s in annotated.corpus.sentences:
        a = annotated.annotations[s.sent_id]
        out.append(
            AnnotationRecord(
                sent_id=s.sent_id,
                doc_id=s.doc_id,
                req_type=s.req_type,
                tokens=list(s.forms()),
                tags=list(a.tags),
                pattern=a.pattern_name,
            )
        )
    return out


def _export_jsonl(annotated: AnnotatedCorpus) -> str:
    lines = []
    for r in annotation_records(annotated):
        lines.append(
            json.dumps(
                {
                    "sent_id": r.sent_id,
                    "doc_id": r.doc_id,
                    "req_type": r.req_type,
                    "tokens": r.tokens,
                    "tags": r.tags,
                    "pattern": r.pattern,
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + "\n"


def _export_bracketed(annotated: AnnotatedCorpus) -> str:
    lines = []
    for r in annotation_records(annotated):
        parts = []
        i = 0
        n = len(r.tokens)
        while i < n:
            tag = r.tags[i]
            if tag == OUTSIDE_TAG:
                parts.append(r.tokens[i])
                i += 1
                continue
            j = i
            while j < n and r.tags[j] == tag:
                j += 1
            parts.append("[" + " ".join(r.tokens[i:j]) + "]_" + tag)
            i = j
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _export_bio_tsv(annotated: AnnotatedCorpus) -> str:
    blocks = []
    for r in annotation_records(annotated):
        rows = []
        prev = None
        for form, tag in zip(r.tokens, r.tags):
            if tag == OUTSIDE_TAG:
                bio = OUTSIDE_TAG
            elif tag == prev:
                bio = "I-" + tag
            else:
                bio = "B-" + tag
            rows.append(f"{form}\t{bio}")
            prev = tag
        blocks.append("\n".join(rows) + "\n")
    return "\n".join(blocks)


def export_annotations(annotated: AnnotatedCorpus, format: str) -> str:
    """Render annotations as "jsonl", "bracketed", or "bio_tsv"."""
    if format == "jsonl":
        return _export_jsonl(annotated)
    if format == "bracketed":
        return _export_bracketed(annotated)
    if format == "bio_tsv":
        return _export_bio_tsv(annotated)
    raise ValidationError(
        f"unknown export format {format!r} (choose from {', '.join(EXPORT_FORMATS)})"
    )


def parse_jsonl(text: str) -> List[AnnotationRecord]:
    """Read the jsonl export format back into records."""
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as err:
            raise ParseError(f"bad json: {err.msg}", line=lineno) from None
        missing = {"sent_id", "tokens", "tags"} - set(obj)
        if missing:
            raise ParseError(f"missing keys {sorted(missing)}", line=lineno)
        tokens = list(obj["tokens"])
        tags = list(obj["tags"])
        if len(tokens) != len(tags):
            raise ParseError(
                f"sentence {obj['sent_id']!r}: {len(tokens)} tokens but {len(tags)} tags",
                line=lineno,
            )
        records.append(
            AnnotationRecord(
                sent_id=str(obj["sent_id"]),
                doc_id=str(obj.get("doc_id", "")),
                req_type=str(obj.get("req_type", "unknown")),
                tokens=tokens,
                tags=tags,
                pattern=obj.get("pattern"),
            )
        )
    return records


def sample_for_review(
    annotated: AnnotatedCorpus, fraction: float, seed: int
) -> List[str]:
    """Uniformly sample sent_ids among labeled sentences, without
    replacement, deterministically for a given seed.

    The sample size is round(fraction * labeled), floored at one sentence.
    Returned ids follow corpus order.
    """
    if not (0.0 < fraction <= 1.0):
        raise ValidationError(f"fraction must be in (0, 1], got {fraction}")
    labeled = annotated.labeled_ids()
    if not labeled:
        raise ValidationError("no labeled sentences to sample from")
    n = min(len(labeled), max(1, round(fraction * len(labeled))))
    rng = random.Random(seed)
    picked = set(rng.sample(labeled, n))
    return [sid for sid in labeled if sid in picked]
