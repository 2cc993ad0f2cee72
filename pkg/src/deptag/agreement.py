"""Cohen's kappa between two annotation sets, token level.

Two aggregation styles are provided because they answer different
questions: "overall" pools every token into one pair of sequences, so long
sentences dominate; "sentence_avg" averages per-sentence kappas, so every
sentence counts the same regardless of length.
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .annotate import AnnotationRecord
from .errors import ValidationError
from .patterns import DEFAULT_TAGSET, OUTSIDE_TAG


class KappaPair(NamedTuple):
    sentence_avg: float
    overall: float


@dataclass(frozen=True)
class AgreementReport:
    rows: Dict[str, KappaPair]
    per_sentence: List[Tuple[str, float]]
    sentences_compared: int
    tokens_compared: int


def cohen_kappa(
    a: Sequence[str],
    b: Sequence[str],
    categories: Optional[Sequence[str]] = None,
) -> float:
    """Kappa for two equal-length label sequences.

    When chance agreement is exactly 1 (both raters used one identical
    label throughout) the usual formula is 0/0; that degenerate case is
    detected with integer arithmetic and scored 1.0 for identical
    sequences, 0.0 otherwise.
    """
    if len(a) != len(b):
        raise ValidationError(f"sequence length mismatch ({len(a)} vs {len(b)})")
    n = len(a)
    if n == 0:
        raise ValidationError("cannot compute kappa of empty sequences")
    count_a = Counter(a)
    count_b = Counter(b)
    if categories is not None:
        outside = (set(count_a) | set(count_b)) - set(categories)
        if outside:
            raise ValidationError(f"labels outside categories: {sorted(map(str, outside))}")
    expected_num = sum(count_a[k] * count_b[k] for k in set(count_a) | set(count_b))
    if expected_num == n * n:
        return 1.0 if all(x == y for x, y in zip(a, b)) else 0.0
    observed = sum(1 for x, y in zip(a, b) if x == y)
    p_o = observed / n
    p_e = expected_num / (n * n)
    return (p_o - p_e) / (1.0 - p_e)


def _check_pairs(pairs: Sequence[Tuple[Sequence[str], Sequence[str]]]) -> None:
    if not pairs:
        raise ValidationError("no sentence pairs to compare")
    for i, (a, b) in enumerate(pairs):
        if len(a) != len(b):
            raise ValidationError(
                f"pair {i}: sequence length mismatch ({len(a)} vs {len(b)})"
            )


def overall_kappa(
    pairs: Sequence[Tuple[Sequence[str], Sequence[str]]],
    categories: Optional[Sequence[str]] = None,
) -> float:
    """Kappa over the concatenation of all pairs (token-weighted)."""
    _check_pairs(pairs)
    flat_a = [x for a, _ in pairs for x in a]
    flat_b = [x for _, b in pairs for x in b]
    return cohen_kappa(flat_a, flat_b, categories)


def sentence_average_kappa(
    pairs: Sequence[Tuple[Sequence[str], Sequence[str]]],
    categories: Optional[Sequence[str]] = None,
) -> float:
    """Unweighted mean of per-sentence kappas."""
    _check_pairs(pairs)
    values = [cohen_kappa(a, b, categories) for a, b in pairs]
    return math.fsum(values) / len(values)


def per_tag_kappa(
    pairs: Sequence[Tuple[Sequence[str], Sequence[str]]],
    tag: str,
    tagset: Optional[Sequence[str]] = None,
) -> KappaPair:
    """One-vs-rest kappa for a single tag.

    Sequences are binarized to tag / not-tag first. A tag that occurs in
    neither annotation set is perfectly (if vacuously) agreed: kappa 1.0
    via the degenerate rule.
    """
    if tagset is not None and tag not in tagset:
        raise ValidationError(f"unknown tag {tag!r} (tagset: {', '.join(tagset)})")
    binary = [
        (tuple(x == tag for x in a), tuple(y == tag for y in b)) for a, b in pairs
    ]
    return KappaPair(
        sentence_avg=sentence_average_kappa(binary),
        overall=overall_kappa(binary),
    )


def agreement_report(
    auto: Sequence[AnnotationRecord],
    gold: Sequence[AnnotationRecord],
    tagset: Sequence[str] = DEFAULT_TAGSET,
) -> AgreementReport:
    """Compare two annotation exports over their shared sent_ids.

    Rows: "all" (full tagset plus the outside tag) and one one-vs-rest row
    per tag. per_sentence carries the all-labels kappa for each shared
    sentence, in the order sentences appear in ``auto``.
    """
    gold_by_id = {r.sent_id: r for r in gold}
    shared = [r for r in auto if r.sent_id in gold_by_id]
    if not shared:
        raise ValidationError("no overlapping sentences between the two annotation sets")

    categories = list(tagset) + [OUTSIDE_TAG]
    pairs: List[Tuple[Sequence[str], Sequence[str]]] = []
    per_sentence: List[Tuple[str, float]] = []
    for rec in shared:
        other = gold_by_id[rec.sent_id]
        if len(rec.tags) != len(other.tags):
            raise ValidationError(
                f"sentence {rec.sent_id}: token count mismatch "
                f"({len(rec.tags)} vs {len(other.tags)})"
            )
        for source, tags in (("first", rec.tags), ("second", other.tags)):
            bad = set(tags) - set(categories)
            if bad:
                raise ValidationError(
                    f"sentence {rec.sent_id}: {source} set has labels outside "
                    f"the tagset: {sorted(bad)}"
                )
        pairs.append((rec.tags, other.tags))
        per_sentence.append((rec.sent_id, cohen_kappa(rec.tags, other.tags, categories)))

    rows: Dict[str, KappaPair] = {
        "all": KappaPair(
            sentence_avg=sentence_average_kappa(pairs, categories),
            overall=overall_kappa(pairs, categories),
        )
    }
    for tag in tagset:
        rows[tag] = per_tag_kappa(pairs, tag, tagset)

    return AgreementReport(
        rows=rows,
        per_sentence=per_sentence,
        sentences_compared=len(pairs),
        tokens_compared=sum(len(a) for a, _ in pairs),
    )


def report_to_dict(report: AgreementReport) -> Dict[str, object]:
    """Canonical JSON-ready form, shared by the CLI and the HTTP service."""
    return {
        "rows": {
            name: {"sentence_avg": pair.sentence_avg, "overall": pair.overall}
            for name, pair in report.rows.items()
        },
        "per_sentence": [
            {"sent_id": sid, "kappa": value} for sid, value in report.per_sentence
        ],
        "sentences_compared": report.sentences_compared,
        "tokens_compared": report.tokens_compared,
    }
