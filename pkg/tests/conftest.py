from __future__ import annotations

import pytest

from rankfix.syntax import parse_file

CYCLIC_X = "def X = cat { objects: [x]; hom(x, x) = X; }; main = X;"


@pytest.fixture
def cyclic_env():
    return parse_file(CYCLIC_X)
