import numpy as np
import pytest
from hypothesis import strategies as st

from bellcorr.qstate import BellDiagonalState, from_bell_eigenvalues

REB_FREEZE_STATE = BellDiagonalState(1.0, -0.6, 0.6)
GEO_FREEZE_STATE = BellDiagonalState(0.6, 0.0, 0.4)


@st.composite
def physical_states(draw):
    """Bell-diagonal states built from nonnegative eigenvalues (physical by construction)."""
    raw = draw(st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=4, max_size=4))
    total = sum(raw)
    if total < 1e-6:
        raw, total = [1.0, 1.0, 1.0, 1.0], 4.0
    return from_bell_eigenvalues([x / total for x in raw])


coefficient_triples = st.tuples(*(st.floats(-1.0, 1.0, allow_nan=False),) * 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

