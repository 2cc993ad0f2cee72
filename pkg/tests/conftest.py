from pathlib import Path

import pytest

from deptag import parse_conllu, parse_pattern_file

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def examples_text() -> str:
    return (FIXTURES / "examples.conllu").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def modifiers_text() -> str:
    return (FIXTURES / "modifiers.conllu").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def combined_text(examples_text, modifiers_text) -> str:
    return examples_text + "\n" + modifiers_text


@pytest.fixture()
def examples_corpus(examples_text):
    return parse_conllu(examples_text)


@pytest.fixture()
def modifiers_corpus(modifiers_text):
    return parse_conllu(modifiers_text)


@pytest.fixture()
def combined_corpus(combined_text):
    return parse_conllu(combined_text)


@pytest.fixture(scope="session")
def core_pattern_text() -> str:
    return (FIXTURES / "core_patterns.pat").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def extended_pattern_text() -> str:
    return (FIXTURES / "extended_patterns.pat").read_text(encoding="utf-8")


@pytest.fixture()
def core_patterns(core_pattern_text):
    return parse_pattern_file(core_pattern_text)


@pytest.fixture()
def extended_patterns(extended_pattern_text):
    return parse_pattern_file(extended_pattern_text)
