"""Clause evaluation and pattern application semantics."""

import random

import pytest

from deptag import (
    Annotation,
    Sentence,
    Token,
    ValidationError,
    annotate_sentence,
    apply_pattern,
    build_tree,
    eval_clause,
    explain_match,
    parse_conllu,
    parse_pattern_file,
)
from deptag.patterns import Clause, Pattern, Step
from deptag.patterns import ASCEND, DESCEND, DESCEND_WORD, NEGATE
from goldens import GOLD_PATTERN, GOLD_TAGS, make_random_corpus_text, random_pattern_text


def steps(*specs):
    out = []
    for spec in specs:
        if spec == "..":
            out.append(Step(ASCEND))
        elif spec.startswith("!"):
            out.append(Step(NEGATE, deprel=spec[1:]))
        elif "=" in spec:
            label, _, word = spec.partition("=")
            out.append(Step(DESCEND_WORD, deprel=label, word=word))
        else:
            out.append(Step(DESCEND, deprel=spec))
    return tuple(out)


@pytest.fixture()
def ex01_tree(examples_corpus):
    return build_tree(examples_corpus.sentences[0])


def test_root_step_reaches_unique_root(ex01_tree):
    assert eval_clause(ex01_tree, steps("root")) == frozenset({14})


def test_descend_and_subtree(ex01_tree):
    assert eval_clause(ex01_tree, steps("root", "nsubj")) == frozenset({12})
    assert eval_clause(ex01_tree, steps("root", "advcl")) == frozenset({2, 18})


def test_descend_missing_label_is_no_match(ex01_tree):
    assert eval_clause(ex01_tree, steps("root", "iobj")) is None


def test_negate_keeps_nodes_without_child(ex01_tree):
    assert eval_clause(ex01_tree, steps("root", "!iobj")) == frozenset({14})
    assert eval_clause(ex01_tree, steps("root", "!dobj")) is None


def test_negate_does_not_descend(ex01_tree):
    result = eval_clause(ex01_tree, steps("root", "!iobj", "nsubj"))
    assert result == frozenset({12})


def test_ascend_returns_to_parent(ex01_tree):
    assert eval_clause(ex01_tree, steps("root", "nsubj", "..")) == frozenset({14})


def test_ascend_to_virtual_root_strips_to_empty_match(ex01_tree):
    result = eval_clause(ex01_tree, steps("root", ".."))
    assert result == frozenset()
    assert result is not None


def test_ascend_past_virtual_root_drops_node(ex01_tree):
    assert eval_clause(ex01_tree, steps("root", "..", "..")) is None


def test_case_insensitive_labels_and_words():
    text = (
        "1\tThe\t_\t_\t_\t_\t2\tDET\t_\t_\n"
        "2\tSystem\t_\t_\t_\t_\t3\tNSUBJ\t_\t_\n"
        "3\tRuns\t_\t_\t_\t_\t0\tROOT\t_\t_\n"
    )
    tree = build_tree(parse_conllu(text).sentences[0])
    assert eval_clause(tree, steps("root", "nsubj")) == frozenset({2})
    assert eval_clause(tree, steps("ROOT", "NSUBJ")) == frozenset({2})
    assert eval_clause(tree, steps("root", "nsubj=system")) == frozenset({2})
    assert eval_clause(tree, steps("root", "nsubj=SYSTEM")) == frozenset({2})
    assert eval_clause(tree, steps("root", "nsubj=systems")) is None


def test_strip_subtypes_flag():
    text = (
        "1\tdoor\t_\t_\t_\t_\t2\tnsubj:pass\t_\t_\n"
        "2\tclosed\t_\t_\t_\t_\t0\troot\t_\t_\n"
    )
    tree = build_tree(parse_conllu(text).sentences[0])
    assert eval_clause(tree, steps("root", "nsubj")) is None
    assert eval_clause(tree, steps("root", "nsubj"), strip_subtypes=True) == frozenset({1})
    assert eval_clause(tree, steps("root", "nsubj:pass")) == frozenset({1})


def test_multi_node_fan_out():
    # two advcl children, each with a pobj child: sets stay plural
    text = (
        "1\trun\t_\t_\t_\t_\t0\troot\t_\t_\n"
        "2\tbefore\t_\t_\t_\t_\t1\tadvcl\t_\t_\n"
        "3\tstart\t_\t_\t_\t_\t2\tpobj\t_\t_\n"
        "4\tafter\t_\t_\t_\t_\t1\tadvcl\t_\t_\n"
        "5\tstop\t_\t_\t_\t_\t4\tpobj\t_\t_\n"
    )
    tree = build_tree(parse_conllu(text).sentences[0])
    assert eval_clause(tree, steps("root", "advcl")) == frozenset({2, 4})
    assert eval_clause(tree, steps("root", "advcl", "pobj")) == frozenset({3, 5})


def test_apply_pattern_golden_fixtures(combined_corpus, extended_patterns):
    for sentence in combined_corpus.sentences:
        tree = build_tree(sentence)
        annotation = annotate_sentence(tree, extended_patterns)
        assert annotation.pattern_name == GOLD_PATTERN[sentence.sent_id], sentence.sent_id
        assert list(annotation.tags) == GOLD_TAGS[sentence.sent_id], sentence.sent_id


def test_unmatched_sentence_is_all_outside(combined_corpus, core_patterns):
    by_id = combined_corpus.by_id()
    tree = build_tree(by_id["ex-03"])
    annotation = annotate_sentence(tree, core_patterns)
    assert annotation.pattern_name is None
    assert set(annotation.tags) == {"O"}


def test_first_writer_wins_on_overlap(examples_corpus):
    tree = build_tree(examples_corpus.by_id()["ex-02"])
    rel_first = Pattern(
        name="rel_first",
        clauses=(
            Clause("rel", steps("root"), "node"),
            Clause("ent1", steps("root"), "subtree"),
        ),
    )
    annotation = apply_pattern(tree, rel_first)
    assert annotation.tags[3] == "rel"
    assert [t for i, t in enumerate(annotation.tags) if i != 3] == ["ent1"] * 9

    ent1_first = Pattern(name="ent1_first", clauses=rel_first.clauses[::-1])
    flipped = apply_pattern(tree, ent1_first)
    assert set(flipped.tags) == {"ent1"}


def test_failing_clause_fails_whole_pattern(examples_corpus):
    tree = build_tree(examples_corpus.by_id()["ex-02"])
    pattern = Pattern(
        name="doomed",
        clauses=(
            Clause("rel", steps("root"), "node"),
            Clause("cond", steps("root", "iobj"), "subtree"),
        ),
    )
    assert apply_pattern(tree, pattern) is None


def test_first_matching_pattern_wins(examples_corpus):
    tree = build_tree(examples_corpus.by_id()["ex-02"])
    text = (
        'pattern "never" {\n  rel: root=zzz -> node\n}\n'
        'pattern "narrow" {\n  rel: root -> node\n}\n'
        'pattern "wide" {\n  rel: root -> subtree\n}\n'
    )
    ps = parse_pattern_file(text)
    annotation = annotate_sentence(tree, ps)
    assert annotation.pattern_name == "narrow"
    assert annotation.tags.count("rel") == 1

    reordered = parse_pattern_file(
        'pattern "wide" {\n  rel: root -> subtree\n}\n'
        'pattern "narrow" {\n  rel: root -> node\n}\n'
    )
    assert annotate_sentence(tree, reordered).pattern_name == "wide"


def test_empty_pattern_set_leaves_all_unlabeled(examples_corpus):
    tree = build_tree(examples_corpus.sentences[0])
    annotation = annotate_sentence(tree, parse_pattern_file(""))
    assert annotation.pattern_name is None
    assert set(annotation.tags) == {"O"}


def test_projective_subtree_spans_contiguous(combined_corpus, extended_patterns):
    """On projective fixture trees every subtree-scoped terminal labels a
    contiguous token range."""
    for sentence in combined_corpus.sentences:
        tree = build_tree(sentence)
        for pattern in extended_patterns.patterns:
            for clause in pattern.clauses:
                result = eval_clause(tree, clause.steps)
                if result is None or clause.scope != "subtree":
                    continue
                for node in result:
                    ids = tree.subtree_ids(node)
                    assert ids == list(range(ids[0], ids[-1] + 1))


def test_monotone_failure_under_clause_addition():
    """Appending a clause never turns no_match into a match."""
    rng = random.Random(4242)
    corpus = parse_conllu(make_random_corpus_text(40, seed=77))
    trees = [build_tree(s) for s in corpus.sentences]
    for trial in range(200):
        ps = parse_pattern_file(random_pattern_text(rng, n_patterns=1))
        base = ps.patterns[0]
        extra = Clause("cond", steps("root", rng.choice(["advcl", "nsubj", "dobj"])), "subtree")
        extended = Pattern(name=base.name, clauses=base.clauses + (extra,))
        tree = rng.choice(trees)
        if apply_pattern(tree, base) is None:
            assert apply_pattern(tree, extended) is None


def test_evaluation_does_not_mutate_tree(examples_corpus, extended_patterns):
    sentence = examples_corpus.sentences[0]
    tree = build_tree(sentence)
    before_children = {k: tuple(v) for k, v in tree.children.items()}
    first = annotate_sentence(tree, extended_patterns)
    second = annotate_sentence(tree, extended_patterns)
    assert first == second
    assert {k: tuple(v) for k, v in tree.children.items()} == before_children
    assert sentence == examples_corpus.sentences[0]


def test_annotation_invariant_unmatched_all_outside():
    with pytest.raises(ValidationError):
        Annotation(sent_id="x", tags=("rel", "O"), pattern_name=None)
    ok = Annotation(sent_id="x", tags=("O", "O"), pattern_name=None)
    assert ok.pattern_name is None


def test_explain_match_traces(modifiers_corpus, core_patterns):
    by_id = modifiers_corpus.by_id()
    passive = core_patterns.patterns[2]

    traces = explain_match(build_tree(by_id["mod-case"]), passive)
    assert [t.matched for t in traces] == [True, True, True, True]
    cond_trace = traces[2]
    assert cond_trace.steps == ("root", "prep=in", "pobj=case", "..")
    assert cond_trace.sets == ((0,), (5,), (8,), (9,), (8,))
    assert cond_trace.failed_at is None

    rejected = explain_match(build_tree(by_id["mod-case-dobj"]), passive)
    rel_trace = rejected[0]
    assert rel_trace.matched is False
    assert rel_trace.failed_at == 1
    assert rel_trace.sets == ((0,), (4,), ())
    # later clauses are still traced for diagnostics
    assert len(rejected) == len(passive.clauses)
    assert rejected[2].matched is True
    assert rejected[2].sets[-1] == (8,)


def test_matched_trace_lengths(examples_corpus, core_patterns):
    tree = build_tree(examples_corpus.by_id()["ex-01"])
    for trace in explain_match(tree, core_patterns.patterns[0]):
        assert trace.matched
        assert len(trace.sets) == len(trace.steps) + 1


def _tiny_tree(deprel: str):
    tokens = (
        Token(id=1, form="only", head=0, deprel=deprel),
    )
    return build_tree(Sentence(sent_id="tiny", tokens=tokens, text="only"))


def test_single_token_sentence_matches_root_pattern():
    tree = _tiny_tree("root")
    ps = parse_pattern_file('pattern "p" {\n  rel: root -> node\n}\n')
    annotation = annotate_sentence(tree, ps)
    assert annotation.tags == ("rel",)
    assert annotation.pattern_name == "p"
