"""HTTP service exposing the corpus, pattern matching, coverage, agreement.

All state lives in one immutable Snapshot object held on app.state; PUT
/patterns builds a complete replacement (parse, re-annotate) and swaps it
in with a single attribute assignment. Handlers read the snapshot once, so
a request never observes half of an update.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from .agreement import agreement_report, report_to_dict
from .annotate import (
    AnnotatedCorpus,
    AnnotationRecord,
    annotate_corpus,
    annotation_records,
    canonical_json,
    coverage,
    coverage_to_dict,
)
from .corpus import REQ_TYPES, Corpus, build_tree
from .engine import apply_pattern, explain_match
from .errors import DeptagError, ParseError
from .patterns import PatternSet, parse_pattern_file, validate_pattern_set

API_PREFIX = "/api/v1"
PREVIEW_DEFAULT_LIMIT = 200
MAX_PAGE_LIMIT = 500


def _json_response(obj) -> Response:
    return Response(content=canonical_json(obj), media_type="application/json")


@dataclass(frozen=True)
class Snapshot:
    pattern_text: str
    pattern_set: PatternSet
    annotated: AnnotatedCorpus


class PreviewRequest(BaseModel):
    pattern_text: str
    sentence_ids: Optional[List[str]] = None


class PatternsUpdate(BaseModel):
    pattern_file_text: str


def _parse_or_422(text: str) -> PatternSet:
    try:
        return parse_pattern_file(text)
    except ParseError as err:
        raise HTTPException(
            status_code=422, detail={"error": str(err), "line": err.line}
        ) from None


def create_app(
    corpus: Corpus,
    pattern_text: str,
    gold: Optional[List[AnnotationRecord]] = None,
    strip_subtypes: bool = False,
    ui_dir: Optional[Path] = None,
) -> FastAPI:
    """Build the service around a fixed corpus and an initial pattern file.

    The corpus and optional gold annotations never change over the life of
    the app; only the pattern set (and therefore the automatic annotations)
    can be replaced via PUT /patterns.
    """
    initial_set = parse_pattern_file(pattern_text)
    app = FastAPI(title="deptag", docs_url=None, redoc_url=None)
    app.state.snapshot = Snapshot(
        pattern_text=pattern_text,
        pattern_set=initial_set,
        annotated=annotate_corpus(corpus, initial_set),
    )

    order = [s.sent_id for s in corpus.sentences]
    by_id = corpus.by_id()
    trees = {s.sent_id: build_tree(s) for s in corpus.sentences}

    @app.get(API_PREFIX + "/sentences")
    def list_sentences(
        offset: int = 0,
        limit: int = 50,
        req_type: Optional[str] = None,
        labeled: Optional[bool] = None,
    ):
        if offset < 0 or limit < 1 or limit > MAX_PAGE_LIMIT:
            raise HTTPException(
                status_code=400,
                detail=f"offset must be >= 0 and 1 <= limit <= {MAX_PAGE_LIMIT}",
            )
        if req_type is not None and req_type not in REQ_TYPES:
            raise HTTPException(
                status_code=400, detail=f"req_type must be one of {REQ_TYPES}"
            )
        snap: Snapshot = app.state.snapshot
        items = []
        for sid in order:
            sentence = by_id[sid]
            annotation = snap.annotated.annotations[sid]
            is_labeled = annotation.pattern_name is not None
            if req_type is not None and sentence.req_type != req_type:
                continue
            if labeled is not None and is_labeled != labeled:
                continue
            items.append(
                {
                    "sent_id": sid,
                    "text": sentence.text,
                    "req_type": sentence.req_type,
                    "n_tokens": len(sentence.tokens),
                    "labeled": is_labeled,
                    "pattern": annotation.pattern_name,
                }
            )
        total = len(items)
        page = items[offset : offset + limit]
        next_offset = offset + limit if offset + limit < total else None
        return {"items": page, "total": total, "next_offset": next_offset}

    @app.get(API_PREFIX + "/sentences/{sent_id}/tree")
    def sentence_tree(sent_id: str):
        if sent_id not in by_id:
            raise HTTPException(status_code=404, detail=f"unknown sentence {sent_id!r}")
        sentence = by_id[sent_id]
        snap: Snapshot = app.state.snapshot
        annotation = snap.annotated.annotations[sent_id]
        return {
            "sent_id": sent_id,
            "text": sentence.text,
            "tokens": [
                {
                    "id": t.id,
                    "form": t.form,
                    "lemma": t.lemma,
                    "upos": t.upos,
                    "head": t.head,
                    "deprel": t.deprel,
                    "tag": annotation.tags[t.id - 1],
                }
                for t in sentence.tokens
            ],
            "edges": [
                {"head": t.head, "child": t.id, "deprel": t.deprel}
                for t in sentence.tokens
            ],
            "pattern": annotation.pattern_name,
        }

    @app.post(API_PREFIX + "/preview")
    def preview(req: PreviewRequest):
        ps = _parse_or_422(req.pattern_text)
        if len(ps.patterns) != 1:
            raise HTTPException(
                status_code=422,
                detail={
                    "error": f"preview needs exactly one pattern, got {len(ps.patterns)}",
                    "line": None,
                },
            )
        pattern = ps.patterns[0]
        if req.sentence_ids is None:
            ids = order[:PREVIEW_DEFAULT_LIMIT]
        else:
            unknown = [sid for sid in req.sentence_ids if sid not in by_id]
            if unknown:
                raise HTTPException(
                    status_code=404, detail=f"unknown sentences: {unknown}"
                )
            ids = list(req.sentence_ids)
        results = []
        for sid in ids:
            tree = trees[sid]
            annotation = apply_pattern(tree, pattern, strip_subtypes)
            traces = explain_match(tree, pattern, strip_subtypes)
            results.append(
                {
                    "sent_id": sid,
                    "matched": annotation is not None,
                    "tags": list(annotation.tags) if annotation else None,
                    "tokens": [t.form for t in tree.sentence.tokens],
                    "trace": [
                        {
                            "tag": tr.tag,
                            "steps": list(tr.steps),
                            "sets": [list(s) for s in tr.sets],
                            "matched": tr.matched,
                            "failed_at": tr.failed_at,
                        }
                        for tr in traces
                    ],
                }
            )
        return {"pattern_name": pattern.name, "results": results}

    @app.get(API_PREFIX + "/patterns")
    def get_patterns():
        snap: Snapshot = app.state.snapshot
        return {
            "pattern_file_text": snap.pattern_text,
            "pattern_count": len(snap.pattern_set.patterns),
            "tagset": list(snap.pattern_set.tagset),
        }

    @app.put(API_PREFIX + "/patterns")
    def put_patterns(req: PatternsUpdate):
        ps = _parse_or_422(req.pattern_file_text)
        try:
            annotated = annotate_corpus(corpus, ps, strip_subtypes=strip_subtypes)
        except DeptagError as err:
            raise HTTPException(
                status_code=422, detail={"error": str(err), "line": None}
            ) from None
        app.state.snapshot = Snapshot(
            pattern_text=req.pattern_file_text, pattern_set=ps, annotated=annotated
        )
        return {
            "pattern_count": len(ps.patterns),
            "warnings": validate_pattern_set(ps),
        }

    @app.get(API_PREFIX + "/coverage")
    def get_coverage():
        snap: Snapshot = app.state.snapshot
        return _json_response(coverage_to_dict(coverage(snap.annotated)))

    @app.get(API_PREFIX + "/agreement")
    def get_agreement():
        if gold is None:
            raise HTTPException(status_code=409, detail="no gold annotations loaded")
        snap: Snapshot = app.state.snapshot
        report = agreement_report(
            annotation_records(snap.annotated), gold, snap.pattern_set.tagset
        )
        return _json_response(report_to_dict(report))

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
