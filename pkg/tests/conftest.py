import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from pisupport import FieldElement, Polynomial, make_field

settings.register_profile(
    "suite",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

F2 = make_field(2)
F3 = make_field(3)
F5 = make_field(5)
F4 = make_field(2, (1, 1, 1))
F9 = make_field(3, (2, 2, 1))
F2S = make_field(2, vars=("s",))
F3S = make_field(3, vars=("s",))
F2SU = make_field(2, vars=("s", "u"))

TOWERS = [F2, F3, F5, F4, F9, F2S, F3S, F2SU]


@st.composite
def polynomials(draw, desc, max_exp=2, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(
            draw(st.integers(0, max_exp)) for _ in range(desc.nvars)
        )
        code = draw(st.integers(0, desc.order - 1))
        terms[exps] = desc.sfrom_code(code)
    return Polynomial(desc, terms)


@st.composite
def elements(draw, desc):
    if desc.nvars == 0:
        code = draw(st.integers(0, desc.order - 1))
        return FieldElement.from_scalar(desc, desc.sfrom_code(code))
    num = draw(polynomials(desc))
    den = draw(polynomials(desc).filter(lambda q: not q.is_zero()))
    return FieldElement(desc, num, den)


@pytest.fixture
def rng():
    return random.Random(20240811)
