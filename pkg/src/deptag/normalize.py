"""Sentence-level lint rules and automatic fixing for requirements text.

Fourteen rules, R1..R14. R1-R8 are mechanical cleanups carrying a
replacement (severity "fixable"); R9-R14 only flag spans a human should
look at (severity "flag_only"). R14 is heuristic and disabled by default.

apply_fixes() applies fixable findings left to right, skipping overlaps,
and re-lints until a fixed point, so its output is idempotent: linting a
fixed sentence yields no fixable findings.
"""

import re
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, NamedTuple, Optional

from .errors import DeptagError

FIXABLE = "fixable"
FLAG_ONLY = "flag_only"

ALL_RULES = tuple(f"R{i}" for i in range(1, 15))
DEFAULT_RULES = frozenset(r for r in ALL_RULES if r != "R14")

MAX_FIX_PASSES = 10


@dataclass(frozen=True)
class LintFinding:
    rule_id: str
    start: int
    end: int
    message: str
    severity: str
    replacement: Optional[str] = None

    def __post_init__(self) -> None:
        if self.rule_id not in ALL_RULES:
            raise ValueError(f"unknown rule id {self.rule_id!r}")
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"bad finding span [{self.start}, {self.end})")
        if self.severity not in (FIXABLE, FLAG_ONLY):
            raise ValueError(f"bad severity {self.severity!r}")
        if (self.replacement is not None) != (self.severity == FIXABLE):
            raise ValueError("replacement must be present exactly for fixable findings")


@dataclass(frozen=True)
class NormalizerConfig:
    """Whitelisted abbreviations survive R6 lower-casing. Rule ids absent
    from enabled_rules are skipped entirely."""

    abbreviation_whitelist: FrozenSet[str] = frozenset()
    enabled_rules: FrozenSet[str] = field(default_factory=lambda: DEFAULT_RULES)

    def __post_init__(self) -> None:
        for rule in self.enabled_rules:
            if rule not in ALL_RULES:
                raise ValueError(f"unknown rule id {rule!r} in enabled_rules")
        for entry in self.abbreviation_whitelist:
            if not entry or entry != entry.strip() or entry != entry.upper():
                raise ValueError(
                    f"whitelist entry {entry!r} must be non-empty, trimmed, upper-case"
                )


class FixResult(NamedTuple):
    fixed: str
    applied: List[LintFinding]


class DedupeResult(NamedTuple):
    kept: List[str]
    removed_count: int


_R1_RE = re.compile(
    r"(?P<lead>^[ \t]+)"
    r"|(?P<trail>[ \t]+$)"
    r"|(?P<prepunct>[ \t]+(?=[.,;:!?]))"
    r"|(?P<run>[ \t]{2,})"
    r"|(?P<punct>[.,;:!?])(?P=punct)+"
)


def _rule_r1(text: str, config: NormalizerConfig) -> List[LintFinding]:
    out = []
    for m in _R1_RE.finditer(text):
        if m.group("punct"):
            repl = m.group("punct")
            msg = f"repeated {repl!r}"
        elif m.group("run"):
            repl = " "
            msg = "repeated whitespace"
        else:
            repl = ""
            msg = (
                "leading whitespace"
                if m.group("lead")
                else "trailing whitespace"
                if m.group("trail")
                else "whitespace before punctuation"
            )
        out.append(LintFinding("R1", m.start(), m.end(), msg, FIXABLE, repl))
    return out


def _rule_r2(text: str, config: NormalizerConfig) -> List[LintFinding]:
    stripped = text.rstrip()
    if not stripped:
        return []
    i = len(stripped) - 1
    ch = stripped[i]
    if ch in ".!?":
        return []
    if ch in ",;:":
        return [LintFinding("R2", i, i + 1, "sentence ends with non-final punctuation", FIXABLE, ".")]
    return [LintFinding("R2", i, i + 1, "missing final period", FIXABLE, ch + ".")]


def _rule_r3(text: str, config: NormalizerConfig) -> List[LintFinding]:
    for i, ch in enumerate(text):
        if ch.isalpha():
            if ch.islower():
                return [
                    LintFinding("R3", i, i + 1, "sentence starts lower-case", FIXABLE, ch.upper())
                ]
            return []
    return []


def _rule_r4(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return [
        LintFinding("R4", m.start(), m.end(), "apostrophe variant", FIXABLE, "'")
        for m in re.finditer(r"[`´]", text)
    ]


def _rule_r5(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return [
        LintFinding("R5", m.start(), m.end(), "bracketed plural", FIXABLE, "s")
        for m in re.finditer(r"(?<=[A-Za-z])\(s\)", text)
    ]


def _rule_r6(text: str, config: NormalizerConfig) -> List[LintFinding]:
    out = []
    for m in re.finditer(r"\b[A-Z]{2,}\b", text):
        word = m.group()
        if word in config.abbreviation_whitelist:
            continue
        out.append(
            LintFinding("R6", m.start(), m.end(), f"all-caps word {word!r}", FIXABLE, word.lower())
        )
    return out


def _rule_r7(text: str, config: NormalizerConfig) -> List[LintFinding]:
    out = []
    for m in re.finditer(r"\"(\w+)\"|“(\w+)”", text):
        term = m.group(1) or m.group(2)
        out.append(LintFinding("R7", m.start(), m.end(), "quoted single term", FIXABLE, term))
    return out


def _rule_r8(text: str, config: NormalizerConfig) -> List[LintFinding]:
    out = []
    for m in re.finditer(r"[ \t]*\(([A-Z]{2,})\)", text):
        abbr = m.group(1)
        words = text[: m.start()].split()
        if len(words) < len(abbr):
            continue
        initials = []
        for w in words[-len(abbr):]:
            first_alpha = next((c for c in w if c.isalpha()), "")
            initials.append(first_alpha.lower())
        if "".join(initials) == abbr.lower():
            out.append(
                LintFinding(
                    "R8", m.start(), m.end(), f"redundant initialism ({abbr})", FIXABLE, ""
                )
            )
    return out


_R9_RE = re.compile(r"^[ \t]*(\[?[A-Za-z]{0,12}[-_.]?\d[\w.\-]*\]?[.:)]?)(?=[ \t])")
_R10_RE = re.compile(
    r"\b(?:[Ss]ections?|[Tt]ables?|[Ff]igures?|[Ff]ig\.|[Cc]hapters?|[Aa]ppendix)"
    r"[ \t]+[A-Za-z0-9]+(?:\.\d+)*"
)
_R11_RE = re.compile(r"\b\w*[A-Za-z]\w*/\w*[A-Za-z]\w*\b")
_R12_RE = re.compile(r"(?:^|(?<=[ \t]))\(?[a-z0-9][.)](?=[ \t])|[•▪◦‣]")
_R13_RE = re.compile(r"\bi\.e\.|\be\.g\.")
_R14_WORD_RE = re.compile(r"\b\w*([A-Za-z])\1\1\w*\b")
_R14_DOUBLE_RE = re.compile(r"\b(\w+)[ \t]+\1\b", re.IGNORECASE)


def _flag(rule_id: str, rx: re.Pattern, text: str, message: str, group: int = 0) -> List[LintFinding]:
    return [
        LintFinding(rule_id, m.start(group), m.end(group), message, FLAG_ONLY)
        for m in rx.finditer(text)
    ]


def _rule_r9(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return _flag("R9", _R9_RE, text, "possible requirement reference number", group=1)


def _rule_r10(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return _flag("R10", _R10_RE, text, "cross-reference to section/table/figure")


def _rule_r11(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return _flag("R11", _R11_RE, text, "slash conjunction; consider 'and'/'or'")


def _rule_r12(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return _flag("R12", _R12_RE, text, "enumeration marker")


def _rule_r13(text: str, config: NormalizerConfig) -> List[LintFinding]:
    return _flag("R13", _R13_RE, text, "inline abbreviation (i.e./e.g.)")


def _rule_r14(text: str, config: NormalizerConfig) -> List[LintFinding]:
    found = _flag("R14", _R14_WORD_RE, text, "suspected misspelling (letter run)")
    found += _flag("R14", _R14_DOUBLE_RE, text, "suspected misspelling (doubled word)")
    return found


_RULE_FUNCS = {
    "R1": _rule_r1,
    "R2": _rule_r2,
    "R3": _rule_r3,
    "R4": _rule_r4,
    "R5": _rule_r5,
    "R6": _rule_r6,
    "R7": _rule_r7,
    "R8": _rule_r8,
    "R9": _rule_r9,
    "R10": _rule_r10,
    "R11": _rule_r11,
    "R12": _rule_r12,
    "R13": _rule_r13,
    "R14": _rule_r14,
}


def lint_sentence(text: str, config: Optional[NormalizerConfig] = None) -> List[LintFinding]:
    """Run every enabled rule and return findings sorted by span."""
    cfg = config if config is not None else NormalizerConfig()
    findings: List[LintFinding] = []
    for rule_id in ALL_RULES:
        if rule_id in cfg.enabled_rules:
            findings.extend(_RULE_FUNCS[rule_id](text, cfg))
    findings.sort(key=lambda f: (f.start, f.end, int(f.rule_id[1:])))
    return findings


def apply_fixes(text: str, config: Optional[NormalizerConfig] = None) -> FixResult:
    """Apply fixable findings until none remain.

    Each pass applies non-overlapping findings left to right (on overlap the
    earlier span wins) and re-lints the result. Flag-only findings are never
    touched. Raises DeptagError if more than MAX_FIX_PASSES passes would be
    needed, which indicates two rules fighting over the same text.
    """
    cfg = config if config is not None else NormalizerConfig()
    current = text
    applied: List[LintFinding] = []
    for _ in range(MAX_FIX_PASSES):
        fixable = [f for f in lint_sentence(current, cfg) if f.severity == FIXABLE]
        if not fixable:
            return FixResult(current, applied)
        pieces = []
        pos = 0
        for f in fixable:
            if f.start < pos:
                continue
            pieces.append(current[pos : f.start])
            pieces.append(f.replacement)
            applied.append(f)
            pos = f.end
        pieces.append(current[pos:])
        current = "".join(pieces)
    raise DeptagError(f"fix loop did not converge after {MAX_FIX_PASSES} passes")


def dedupe_corpus(
    sentences: Iterable[str], config: Optional[NormalizerConfig] = None
) -> DedupeResult:
    """Drop sentences whose fully fixed form was already seen.

    Keeps the raw first occurrence; comparison happens on apply_fixes output
    so spacing, casing and punctuation noise do not defeat the check.
    """
    cfg = config if config is not None else NormalizerConfig()
    seen = set()
    kept: List[str] = []
    removed = 0
    for raw in sentences:
        key = apply_fixes(raw, cfg).fixed
        if key in seen:
            removed += 1
            continue
        seen.add(key)
        kept.append(raw)
    return DedupeResult(kept, removed)
