"""CoNLL-U corpus reading, validation, and dependency trees.

Only the columns the matcher consumes are modeled: ID, FORM, LEMMA, UPOS,
HEAD, DEPREL. Multiword-token ranges (id "1-2") and empty nodes (id "1.1")
are skipped on read. Sentence metadata comes from the standard comment
lines ``# sent_id``, ``# text``, ``# doc_id`` and the extension
``# req_type`` (functional | non_functional | unknown).
"""

import io
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import ParseError, ValidationError

REQ_TYPES = ("functional", "non_functional", "unknown")

VIRTUAL_ROOT = 0


@dataclass(frozen=True)
class Token:
    """One syntactic word. ``head`` is 0 for the sentence root."""

    id: int
    form: str
    head: int
    deprel: str
    lemma: Optional[str] = None
    upos: Optional[str] = None

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValidationError(f"token id must be >= 1, got {self.id}")
        if self.head < 0:
            raise ValidationError(f"token {self.id}: head must be >= 0, got {self.head}")
        if self.head == self.id:
            raise ValidationError(f"token {self.id}: token is its own head")
        if not self.form:
            raise ValidationError(f"token {self.id}: empty form")


@dataclass(frozen=True)
class Sentence:
    """A parsed sentence with contiguous token ids 1..n."""

    sent_id: str
    tokens: Tuple[Token, ...]
    text: str
    doc_id: str = ""
    req_type: str = "unknown"

    def __post_init__(self) -> None:
        if not self.sent_id:
            raise ValidationError("sentence has empty sent_id")
        if "\n" in self.text:
            raise ValidationError(f"sentence {self.sent_id}: text contains a newline")
        if self.req_type not in REQ_TYPES:
            raise ValidationError(
                f"sentence {self.sent_id}: req_type must be one of {REQ_TYPES}"
            )
        n = len(self.tokens)
        if n == 0:
            raise ValidationError(f"sentence {self.sent_id}: no tokens")
        for expect, tok in enumerate(self.tokens, start=1):
            if tok.id != expect:
                raise ValidationError(
                    f"sentence {self.sent_id}: token ids not contiguous "
                    f"(expected {expect}, got {tok.id})"
                )
        for tok in self.tokens:
            if tok.head > n:
                raise ValidationError(
                    f"sentence {self.sent_id}: head out of range for token {tok.id} "
                    f"(head {tok.head}, sentence has {n} tokens)"
                )

    def __len__(self) -> int:
        return len(self.tokens)

    def forms(self) -> List[str]:
        return [t.form for t in self.tokens]


@dataclass(frozen=True)
class DependencyTree:
    """A validated sentence plus its child adjacency, including the virtual
    root node 0 whose single child is the root token."""

    sentence: Sentence
    children: Mapping[int, Tuple[int, ...]]

    def token(self, tid: int) -> Token:
        return self.sentence.tokens[tid - 1]

    def head_of(self, tid: int) -> int:
        return self.sentence.tokens[tid - 1].head

    def subtree_ids(self, tid: int) -> List[int]:
        """Descendant closure of ``tid`` (inclusive), sorted by token id."""
        out = []
        stack = [tid]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(self.children.get(node, ()))
        return sorted(out)


@dataclass
class Corpus:
    sentences: List[Sentence] = field(default_factory=list)
    source_meta: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen = set()
        for s in self.sentences:
            if s.sent_id in seen:
                raise ValidationError(f"duplicate sent_id {s.sent_id!r}")
            seen.add(s.sent_id)

    def __len__(self) -> int:
        return len(self.sentences)

    def by_id(self) -> Dict[str, Sentence]:
        return {s.sent_id: s for s in self.sentences}


def _split_comment(line: str) -> Optional[Tuple[str, str]]:
    body = line[1:].strip()
    if "=" not in body:
        return None
    key, _, value = body.partition("=")
    return key.strip(), value.strip()


def parse_conllu(source: Union[str, Iterable[str]]) -> Corpus:
    """Parse CoNLL-U text into a Corpus.

    ``source`` may be a string, an open text file, or any iterable of lines.
    Raises ParseError (with line number) for malformed content and
    ValidationError for structurally invalid sentences.
    """
    if isinstance(source, str):
        lines = io.StringIO(source)
    else:
        lines = source

    sentences: List[Sentence] = []
    meta: Dict[str, str] = {}
    rows: List[Tuple[int, List[str]]] = []
    auto_id = 0

    def flush(at_line: int) -> None:
        nonlocal meta, rows, auto_id
        if not rows and not meta:
            return
        if not rows:
            raise ParseError("comment block with no token lines", line=at_line)
        auto_id += 1
        tokens = []
        for lineno, cols in rows:
            raw_id, form, lemma, upos = cols[0], cols[1], cols[2], cols[3]
            head_s, deprel = cols[6], cols[7]
            try:
                tid = int(raw_id)
            except ValueError:
                raise ParseError(f"bad token id {raw_id!r}", line=lineno) from None
            try:
                head = int(head_s)
            except ValueError:
                raise ParseError(f"bad head {head_s!r}", line=lineno) from None
            tokens.append(
                Token(
                    id=tid,
                    form=form,
                    head=head,
                    deprel=deprel,
                    lemma=None if lemma == "_" else lemma,
                    upos=None if upos == "_" else upos,
                )
            )
        sent_id = meta.get("sent_id") or f"s{auto_id}"
        text = meta.get("text") or " ".join(t.form for t in tokens)
        sentences.append(
            Sentence(
                sent_id=sent_id,
                tokens=tuple(tokens),
                text=text,
                doc_id=meta.get("doc_id", ""),
                req_type=meta.get("req_type", "unknown"),
            )
        )
        meta = {}
        rows = []

    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush(lineno)
            continue
        if line.startswith("#"):
            kv = _split_comment(line)
            if kv:
                key, value = kv
                if key == "req_type" and value not in REQ_TYPES:
                    raise ParseError(
                        f"req_type must be one of {REQ_TYPES}, got {value!r}",
                        line=lineno,
                    )
                if key in ("sent_id", "text", "doc_id", "req_type"):
                    meta[key] = value
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(
                f"expected 10 tab-separated columns, got {len(cols)}", line=lineno
            )
        if "-" in cols[0] or "." in cols[0]:
            continue
        rows.append((lineno, cols))
    flush(lineno + 1)

    return Corpus(sentences=sentences)


def serialize_conllu(corpus: Corpus) -> str:
    """Render a Corpus back to CoNLL-U text.

    Unmodeled columns are written as "_". doc_id and req_type comments are
    omitted when empty / unknown, so parse(serialize(c)) == c holds for the
    modeled fields.
    """
    blocks = []
    for s in corpus.sentences:
        lines = [f"# sent_id = {s.sent_id}", f"# text = {s.text}"]
        if s.doc_id:
            lines.append(f"# doc_id = {s.doc_id}")
        if s.req_type != "unknown":
            lines.append(f"# req_type = {s.req_type}")
        for t in s.tokens:
            lines.append(
                "\t".join(
                    [
                        str(t.id),
                        t.form,
                        t.lemma if t.lemma is not None else "_",
                        t.upos if t.upos is not None else "_",
                        "_",
                        "_",
                        str(t.head),
                        t.deprel,
                        "_",
                        "_",
                    ]
                )
            )
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def build_tree(sentence: Sentence) -> DependencyTree:
    """Build the child adjacency and enforce tree invariants.

    Rejects multiple roots, cyclic heads, and (defensively) disconnected
    nodes; a validated Sentence already guarantees heads are in range.
    """
    n = len(sentence.tokens)
    kids: Dict[int, List[int]] = {i: [] for i in range(0, n + 1)}
    for t in sentence.tokens:
        kids[t.head].append(t.id)

    roots = kids[VIRTUAL_ROOT]
    if len(roots) > 1:
        raise ValidationError(
            f"sentence {sentence.sent_id}: multiple roots (tokens {roots})"
        )
    if len(roots) == 0:
        raise ValidationError(f"sentence {sentence.sent_id}: cyclic heads (no root)")

    reached = set()
    stack = [VIRTUAL_ROOT]
    while stack:
        node = stack.pop()
        if node in reached:
            continue
        reached.add(node)
        stack.extend(kids[node])
    if len(reached) != n + 1:
        missing = sorted(set(range(1, n + 1)) - reached)
        probe = missing[0]
        seen = set()
        while probe not in seen and probe not in reached:
            seen.add(probe)
            probe = sentence.tokens[probe - 1].head
        kind = "cyclic heads" if probe in seen else "disconnected node"
        raise ValidationError(
            f"sentence {sentence.sent_id}: {kind} (tokens {missing} unreachable)"
        )

    children = {node: tuple(sorted(ids)) for node, ids in kids.items()}
    return DependencyTree(sentence=sentence, children=children)


def corpus_stats(corpus: Corpus) -> Dict[str, object]:
    """Sentence counts and length summary (token counts per sentence)."""
    lengths = [len(s) for s in corpus.sentences]
    by_type: Dict[str, int] = {}
    for s in corpus.sentences:
        by_type[s.req_type] = by_type.get(s.req_type, 0) + 1
    if not lengths:
        return {
            "count": 0,
            "count_by_req_type": {},
            "mean_len": 0.0,
            "min_len": 0,
            "max_len": 0,
        }
    return {
        "count": len(lengths),
        "count_by_req_type": by_type,
        "mean_len": round(math.fsum(lengths) / len(lengths), 2),
        "min_len": min(lengths),
        "max_len": max(lengths),
    }
