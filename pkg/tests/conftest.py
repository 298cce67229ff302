import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from knot_aug.braid import BraidWord
from knot_aug.freealg import Context, FreeAlgElement
from knot_aug.rings import LaurentPoly

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (ok, description); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {text}")


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def laurent(draw, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(-2, 2)), draw(st.integers(-2, 2)), draw(st.integers(-2, 2)))
        terms[e] = terms.get(e, 0) + draw(small_ints)
    return LaurentPoly(terms)


@st.composite
def free_elements(draw, ctx: Context, max_terms=3, max_len=3):
    gens = ctx.generators()
    n = draw(st.integers(0, max_terms))
    x = FreeAlgElement.scalar(ctx, 0)
    for _ in range(n):
        word = draw(st.lists(st.sampled_from(gens), max_size=max_len))
        term = FreeAlgElement.scalar(ctx, draw(st.integers(-3, 3)))
        for g in word:
            term = term * FreeAlgElement.gen(ctx, *g)
        x = x + term
    return x


@st.composite
def braid_words(draw, max_strands=5, max_len=5, min_strands=2):
    n = draw(st.integers(min_strands, max_strands))
    letters = draw(
        st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from((k, -k))), max_size=max_len)
    )
    return BraidWord(n, tuple(letters))


@pytest.fixture(autouse=True)
def _budget_env(monkeypatch):
    monkeypatch.delenv("KNOTAUG_BUDGET", raising=False)
