"""Shared fixtures for the index tests."""
import pytest

from text_core import TextIndex, build_text_index


@pytest.fixture
def abab() -> TextIndex:
    return build_text_index(b"abab")


@pytest.fixture
def batman() -> TextIndex:
    return build_text_index(b"NANANANABATMAN")
