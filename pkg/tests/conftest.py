from __future__ import annotations

import hypothesis
from hypothesis import strategies as st

from borda_manip.core import ManipulationProblem, ScoreVector

hypothesis.settings.register_profile("suite", deadline=None, max_examples=60)
hypothesis.settings.load_profile("suite")


@st.composite
def small_problems(draw, max_m: int = 5, max_score: int = 30):
    m = draw(st.integers(min_value=1, max_value=max_m))
    scores = draw(
        st.tuples(*[st.integers(min_value=0, max_value=max_score) for _ in range(m)])
    )
    d = draw(st.integers(min_value=1, max_value=m))
    return ManipulationProblem(ScoreVector(scores), d)
