"""Pattern evaluation over dependency trees.

Clause evaluation walks node sets, starting from {virtual root}. Every
clause of a pattern must match; tags are then written clause by clause in
order, and a token already tagged by an earlier clause keeps its tag.
Patterns in a set are tried in file order and the first full match wins.

All comparisons of dependency labels and word forms are case-insensitive.
With strip_subtypes enabled, a ":subtype" suffix on a tree's label is
ignored, so "nsubj:pass" matches the step "nsubj".

Everything here is pure: trees, patterns and annotations are immutable, so
evaluation is safe to run concurrently.
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from .corpus import VIRTUAL_ROOT, DependencyTree
from .errors import ValidationError
from .patterns import (
    ASCEND,
    DESCEND,
    DESCEND_WORD,
    NEGATE,
    NODE,
    OUTSIDE_TAG,
    Clause,
    Pattern,
    PatternSet,
    Step,
)


@dataclass(frozen=True)
class Annotation:
    """Per-token tags for one sentence; pattern_name is None when no
    pattern matched (in which case every tag is the outside tag)."""

    sent_id: str
    tags: Tuple[str, ...]
    pattern_name: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.tags:
            raise ValidationError(f"annotation for {self.sent_id!r} has no tags")
        if self.pattern_name is None and any(t != OUTSIDE_TAG for t in self.tags):
            raise ValidationError(
                f"annotation for {self.sent_id!r}: unmatched sentences must be all-{OUTSIDE_TAG}"
            )


@dataclass(frozen=True)
class ClauseTrace:
    """Step-by-step node sets for one clause, for diagnostics and UIs.

    sets[0] is the starting set; each further entry is the set after one
    step. A failing clause stops at its first empty set and records the
    0-based index of the offending step in failed_at.
    """

    tag: str
    steps: Tuple[str, ...]
    sets: Tuple[Tuple[int, ...], ...]
    matched: bool
    failed_at: Optional[int] = None


def _label(raw: str, strip_subtypes: bool) -> str:
    label = raw.lower()
    if strip_subtypes:
        label = label.split(":", 1)[0]
    return label


def _apply_step(
    tree: DependencyTree, nodes: FrozenSet[int], step: Step, strip_subtypes: bool
) -> FrozenSet[int]:
    if step.kind == ASCEND:
        out = set()
        for n in nodes:
            if n != VIRTUAL_ROOT:
                out.add(tree.head_of(n))
        return frozenset(out)

    want = _label(step.deprel, strip_subtypes)
    if step.kind == NEGATE:
        out = set()
        for n in nodes:
            has = any(
                _label(tree.token(c).deprel, strip_subtypes) == want
                for c in tree.children.get(n, ())
            )
            if not has:
                out.add(n)
        return frozenset(out)

    out = set()
    for n in nodes:
        for c in tree.children.get(n, ()):
            child = tree.token(c)
            if _label(child.deprel, strip_subtypes) != want:
                continue
            if step.kind == DESCEND_WORD and child.form.lower() != step.word.lower():
                continue
            out.add(c)
    return frozenset(out)


def eval_clause(
    tree: DependencyTree, steps: Tuple[Step, ...], strip_subtypes: bool = False
) -> Optional[FrozenSet[int]]:
    """Evaluate a step sequence; None means no match.

    The virtual root participates in traversal but is stripped from the
    terminal set. A terminal set that is empty only because of that strip
    still counts as a match (it just tags nothing).
    """
    nodes: FrozenSet[int] = frozenset({VIRTUAL_ROOT})
    for step in steps:
        nodes = _apply_step(tree, nodes, step, strip_subtypes)
        if not nodes:
            return None
    return nodes - {VIRTUAL_ROOT}


def _clause_targets(tree: DependencyTree, clause: Clause, terminal: FrozenSet[int]) -> List[int]:
    if clause.scope == NODE:
        return sorted(terminal)
    targets = set()
    for n in terminal:
        targets.update(tree.subtree_ids(n))
    return sorted(targets)


def apply_pattern(
    tree: DependencyTree, pattern: Pattern, strip_subtypes: bool = False
) -> Optional[Annotation]:
    """Evaluate all clauses, then tag; None if any clause fails.

    Evaluation is two-phase so a partial match never leaks: nothing is
    tagged unless every clause matched. Earlier clauses win conflicts.
    """
    terminals: List[FrozenSet[int]] = []
    for clause in pattern.clauses:
        result = eval_clause(tree, clause.steps, strip_subtypes)
        if result is None:
            return None
        terminals.append(result)

    tags = [OUTSIDE_TAG] * len(tree.sentence.tokens)
    for clause, terminal in zip(pattern.clauses, terminals):
        for tid in _clause_targets(tree, clause, terminal):
            if tags[tid - 1] == OUTSIDE_TAG:
                tags[tid - 1] = clause.tag
    return Annotation(
        sent_id=tree.sentence.sent_id, tags=tuple(tags), pattern_name=pattern.name
    )


def annotate_sentence(
    tree: DependencyTree, pattern_set: PatternSet, strip_subtypes: bool = False
) -> Annotation:
    """First matching pattern in file order wins; all-outside otherwise."""
    for pattern in pattern_set.patterns:
        annotation = apply_pattern(tree, pattern, strip_subtypes)
        if annotation is not None:
            return annotation
    return Annotation(
        sent_id=tree.sentence.sent_id,
        tags=tuple([OUTSIDE_TAG] * len(tree.sentence.tokens)),
        pattern_name=None,
    )


def explain_match(
    tree: DependencyTree, pattern: Pattern, strip_subtypes: bool = False
) -> List[ClauseTrace]:
    """Trace every clause independently (even after one fails)."""
    traces = []
    for clause in pattern.clauses:
        sets: List[Tuple[int, ...]] = [(VIRTUAL_ROOT,)]
        nodes: FrozenSet[int] = frozenset({VIRTUAL_ROOT})
        failed_at: Optional[int] = None
        for i, step in enumerate(clause.steps):
            nodes = _apply_step(tree, nodes, step, strip_subtypes)
            sets.append(tuple(sorted(nodes)))
            if not nodes:
                failed_at = i
                break
        traces.append(
            ClauseTrace(
                tag=clause.tag,
                steps=tuple(s.render() for s in clause.steps),
                sets=tuple(sets),
                matched=failed_at is None,
                failed_at=failed_at,
            )
        )
    return traces
