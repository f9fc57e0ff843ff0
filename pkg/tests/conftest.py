import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from triadcalc import Functional, Triad  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
EXAMPLES = ROOT / "samples"

I_POS = ["0P", "1P", "2P"]
I_NEG = ["0N", "1N", "2N"]


def make_I() -> Triad:
    return Triad(I_POS, I_NEG, [(f"{r}P", f"{r}N") for r in range(3)])


def _table(pos, neg):
    return {**dict(zip(I_POS, pos)), **dict(zip(I_NEG, neg))}


SHARP = _table(["1P"] * 3, ["1N"] * 3)
FLAT = _table(["1P", "1P", "2P"], ["1N"] * 3)
NATURAL = _table(I_POS, I_NEG)


@pytest.fixture
def I():
    return make_I()


@pytest.fixture
def sharp(I):
    return Functional.from_mapping("sharp", I, SHARP)


@pytest.fixture
def flat(I):
    return Functional.from_mapping("flat", I, FLAT)


@pytest.fixture
def natural(I):
    return Functional.from_mapping("natural", I, NATURAL)


@st.composite
def triads(draw, max_side=6):
    p = draw(st.integers(0, max_side))
    n = draw(st.integers(0, max_side))
    matrix = [[draw(st.booleans()) for _ in range(n)] for _ in range(p)]
    return Triad([f"p{i}" for i in range(p)], [f"n{j}" for j in range(n)], matrix)


@st.composite
def triads_with_functional(draw, max_side=6):
    t = draw(triads(max_side))
    p, n = len(t.positives), len(t.negatives)
    pos = tuple(draw(st.integers(0, p - 1)) for _ in range(p)) if p else ()
    neg = tuple(draw(st.integers(0, n - 1)) for _ in range(n)) if n else ()
    return Functional("f", t, pos, neg)
