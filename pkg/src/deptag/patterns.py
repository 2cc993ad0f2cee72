"""The pattern description language: parsing, validation, serialization.

A pattern file looks like:

    tagset: ent1, rel, ent2, cond

    # subject-verb-object requirements
    pattern "simple_svo" {
      rel:  root -> node
      ent1: root nsubj -> subtree
      ent2: root dobj -> subtree
      cond: root advcl -> subtree
    }

Each clause is a tag, a sequence of traversal steps, and a scope. Steps:

    label        descend to children reached by dependency label
    label=word   descend, additionally requiring the child's surface form
    !label       keep only current nodes lacking such a child (no movement)
    ..           ascend to the parent

Scope "node" tags the terminal nodes themselves, "subtree" tags their full
descendant closures. Label and word comparison at match time is
case-insensitive; the parser preserves spelling as written.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import ParseError, ValidationError

DESCEND = "descend"
DESCEND_WORD = "descend_word"
NEGATE = "negate"
ASCEND = "ascend"

NODE = "node"
SUBTREE = "subtree"

DEFAULT_TAGSET = ("ent1", "rel", "ent2", "cond")
OUTSIDE_TAG = "O"

_NAME_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")
_TAG_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Step:
    kind: str
    deprel: str = ""
    word: str = ""

    def __post_init__(self) -> None:
        if self.kind not in (DESCEND, DESCEND_WORD, NEGATE, ASCEND):
            raise ValidationError(f"unknown step kind {self.kind!r}")
        needs_deprel = self.kind in (DESCEND, DESCEND_WORD, NEGATE)
        if needs_deprel and not self.deprel:
            raise ValidationError(f"{self.kind} step requires a dependency label")
        if self.kind == ASCEND and (self.deprel or self.word):
            raise ValidationError("ascend step takes no arguments")
        if (self.kind == DESCEND_WORD) != bool(self.word):
            raise ValidationError("word filter is only valid on descend_word steps")

    def render(self) -> str:
        if self.kind == ASCEND:
            return ".."
        if self.kind == NEGATE:
            return "!" + self.deprel
        if self.kind == DESCEND_WORD:
            return f"{self.deprel}={self.word}"
        return self.deprel


@dataclass(frozen=True)
class Clause:
    tag: str
    steps: Tuple[Step, ...]
    scope: str

    def __post_init__(self) -> None:
        if self.scope not in (NODE, SUBTREE):
            raise ValidationError(f"clause scope must be node or subtree, got {self.scope!r}")
        if not self.steps:
            raise ValidationError("empty clause")
        if self.steps[0].kind == ASCEND:
            raise ValidationError("clause may not begin with ascend")
        if not any(s.kind in (DESCEND, DESCEND_WORD) for s in self.steps):
            raise ValidationError("clause must contain at least one descending step")


@dataclass(frozen=True)
class Pattern:
    name: str
    clauses: Tuple[Clause, ...]

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise ValidationError(f"bad pattern name {self.name!r}")
        if not self.clauses:
            raise ValidationError(f"pattern {self.name!r} has no clauses")


@dataclass(frozen=True)
class PatternSet:
    patterns: Tuple[Pattern, ...] = ()
    tagset: Tuple[str, ...] = DEFAULT_TAGSET

    def __post_init__(self) -> None:
        if not self.tagset:
            raise ValidationError("empty tagset")
        seen_tags = set()
        for tag in self.tagset:
            if not _TAG_RE.match(tag):
                raise ValidationError(f"bad tag name {tag!r}")
            if tag == OUTSIDE_TAG:
                raise ValidationError(f"tag {OUTSIDE_TAG!r} is reserved for untagged tokens")
            if tag in seen_tags:
                raise ValidationError(f"duplicate tag {tag!r} in tagset")
            seen_tags.add(tag)
        names = set()
        for p in self.patterns:
            if p.name in names:
                raise ValidationError(f"duplicate pattern name {p.name!r}")
            names.add(p.name)
            for c in p.clauses:
                if c.tag not in self.tagset:
                    raise ValidationError(
                        f"pattern {p.name!r}: unknown tag {c.tag!r} "
                        f"(tagset: {', '.join(self.tagset)})"
                    )


def _parse_step(token: str, lineno: int) -> Step:
    if token == "..":
        return Step(ASCEND)
    if token.startswith("!"):
        label = token[1:]
        if not label:
            raise ParseError("negation step missing a dependency label", line=lineno)
        if "=" in label:
            raise ParseError("negation step cannot carry a word filter", line=lineno)
        return Step(NEGATE, deprel=label)
    if "=" in token:
        label, _, word = token.partition("=")
        if not label or not word:
            raise ParseError(f"malformed step {token!r}", line=lineno)
        return Step(DESCEND_WORD, deprel=label, word=word)
    return Step(DESCEND, deprel=token)


def _strip_comment(line: str) -> str:
    out = []
    quoted = False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out)


_PATTERN_OPEN_RE = re.compile(r'^pattern\s+"([^"]*)"\s*\{$')


def parse_pattern_file(text: str) -> PatternSet:
    """Parse pattern-file text. Errors carry 1-based line numbers."""
    tagset: Optional[Tuple[str, ...]] = None
    patterns: List[Pattern] = []
    current_name: Optional[str] = None
    current_name_line = 0
    clauses: List[Clause] = []
    seen_any = False

    def fail(msg: str, lineno: int) -> None:
        raise ParseError(msg, line=lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue

        if line.startswith("tagset:"):
            if seen_any or tagset is not None:
                fail("tagset line must come before any pattern", lineno)
            tags = [t.strip() for t in line[len("tagset:") :].split(",")]
            if any(not t for t in tags):
                fail("empty tag in tagset", lineno)
            tagset = tuple(tags)
            continue

        if line.startswith("pattern"):
            if current_name is not None:
                fail(f"pattern {current_name!r} not closed before next pattern", lineno)
            m = _PATTERN_OPEN_RE.match(line)
            if not m:
                fail('malformed pattern header, expected: pattern "name" {', lineno)
            current_name = m.group(1)
            current_name_line = lineno
            clauses = []
            seen_any = True
            continue

        if line == "}":
            if current_name is None:
                fail("unmatched closing brace", lineno)
            try:
                patterns.append(Pattern(name=current_name, clauses=tuple(clauses)))
            except ValidationError as err:
                fail(str(err), lineno)
            current_name = None
            continue

        if current_name is None:
            fail(f"unexpected content outside a pattern block: {line!r}", lineno)

        if ":" not in line:
            fail("clause missing tag separator ':'", lineno)
        tag, _, rest = line.partition(":")
        tag = tag.strip()
        effective_tagset = tagset if tagset is not None else DEFAULT_TAGSET
        if tag not in effective_tagset:
            fail(
                f"unknown tag {tag!r} (tagset: {', '.join(effective_tagset)})",
                lineno,
            )
        if "->" not in rest:
            fail("clause missing scope marker '->'", lineno)
        steps_part, _, scope = rest.rpartition("->")
        scope = scope.strip()
        if scope not in (NODE, SUBTREE):
            fail(f"clause scope must be node or subtree, got {scope!r}", lineno)
        step_tokens = steps_part.split()
        if not step_tokens:
            fail("empty clause", lineno)
        steps = tuple(_parse_step(tok, lineno) for tok in step_tokens)
        try:
            clauses.append(Clause(tag=tag, steps=steps, scope=scope))
        except ValidationError as err:
            fail(str(err), lineno)

    if current_name is not None:
        fail(f"pattern {current_name!r} opened but never closed", current_name_line)

    try:
        return PatternSet(
            patterns=tuple(patterns),
            tagset=tagset if tagset is not None else DEFAULT_TAGSET,
        )
    except ValidationError as err:
        raise ParseError(str(err)) from None


def serialize_pattern_set(ps: PatternSet) -> str:
    """Render a PatternSet to pattern-file text; parse() of the output
    reproduces the set exactly."""
    out = ["tagset: " + ", ".join(ps.tagset)]
    for p in ps.patterns:
        out.append("")
        out.append(f'pattern "{p.name}" {{')
        for c in p.clauses:
            steps = " ".join(s.render() for s in c.steps)
            out.append(f"  {c.tag}: {steps} -> {c.scope}")
        out.append("}")
    return "\n".join(out) + "\n"


def validate_pattern_set(ps: PatternSet) -> List[str]:
    """Extra lint pass over an already-constructed set.

    Construction enforces every hard invariant (unique names, known tags,
    clause shape), so there is nothing left to warn about: duplicate tags
    across clauses, negation-only prefixes, ascend-descend round trips and
    single-pattern files are all legal. Returns a list for forward
    compatibility; currently always empty.
    """
    for p in ps.patterns:
        for c in p.clauses:
            if c.tag not in ps.tagset:
                raise ValidationError(f"pattern {p.name!r}: unknown tag {c.tag!r}")
    return []
