from __future__ import annotations

from pathlib import Path

import pytest

from sgo.board import Board, Point
from sgo.records import parse, parse_diagram, parse_point, replay

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def fixture_board(name: str) -> Board:
    return parse_diagram(fixture_text(name))


def replay_fixture(name: str):
    return replay(parse(fixture_text(name)))


def pt(coord: str) -> Point:
    """Shorthand for building points from board coordinates in tests."""
    return parse_point(coord, 25)


@pytest.fixture
def example1_setup() -> Board:
    return fixture_board("example1_setup.txt")


@pytest.fixture
def example2_setup() -> Board:
    return fixture_board("example2_setup.txt")


@pytest.fixture
def stable_board() -> Board:
    return fixture_board("stable_fixpoint.txt")
