import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from liebullet import Element, bracket, make_context
from liebullet.rational import mpq

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def as_dict(x):
    """Element -> {tuple of names: Fraction}, scalar part dropped."""
    names = x.context.names
    return {tuple(names[i] for i in w): Fraction(int(c.numerator), int(c.denominator)) for w, c in x.terms()}


def from_dict(context, terms):
    return context.element((w, mpq(c.numerator, c.denominator)) for w, c in terms.items())


def lie_monomial(context, letters):
    x = context.gen(letters[-1])
    for g in reversed(letters[:-1]):
        x = bracket(context.gen(g), x)
    return x


@st.composite
def lie_elements(draw, context, degree=None, max_length=None, max_terms=4):
    """Sums of right-nested brackets of generators; homogeneous if ``degree`` is given."""
    max_length = min(max_length or context.truncation, context.truncation)
    names = list(context.names)
    x = context.zero()
    count = draw(st.integers(1, max_terms))
    for _ in range(count):
        length = draw(st.integers(1, max_length))
        letters = draw(st.lists(st.sampled_from(names), min_size=length, max_size=length))
        y = lie_monomial(context, letters)
        if degree is not None and not y.is_homogeneous(degree):
            continue
        num = draw(st.integers(-5, 5).filter(bool))
        den = draw(st.integers(1, 4))
        x = x + y.scale(mpq(num, den))
    return x


@st.composite
def tensor_elements(draw, context, max_length=None, max_terms=6, scalar=True):
    """Arbitrary sparse tensor elements, optionally with a scalar part."""
    max_length = min(max_length or context.truncation, context.truncation)
    n = len(context.names)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        length = draw(st.integers(1, max_length))
        w = tuple(draw(st.lists(st.integers(0, n - 1), min_size=length, max_size=length)))
        terms[w] = mpq(draw(st.integers(-20, 20)), draw(st.integers(1, 30)))
    if scalar:
        terms[()] = mpq(draw(st.integers(-3, 3)), draw(st.integers(1, 5)))
    return Element(context, terms)


def random_lie(rng, context, degree, max_length=None, terms=4):
    """Seeded counterpart of ``lie_elements`` for the fixed-size suites."""
    names = list(context.names)
    max_length = min(max_length or context.truncation, context.truncation)
    x = context.zero()
    tries = 0
    while len(x.terms()) < terms and tries < 200:
        tries += 1
        letters = [rng.choice(names) for _ in range(rng.randint(1, max_length))]
        y = lie_monomial(context, letters)
        if y and y.is_homogeneous(degree):
            x = x + y.scale(mpq(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)))
    return x


def random_tensor(rng, context, max_length=None, terms=5, scalar=True):
    n = len(context.names)
    max_length = min(max_length or context.truncation, context.truncation)
    out = {}
    for _ in range(rng.randint(0, terms)):
        w = tuple(rng.randrange(n) for _ in range(rng.randint(1, max_length)))
        out[w] = mpq(rng.randint(-50, 50), rng.randint(1, 60))
    if scalar:
        out[()] = mpq(rng.randint(-2, 2), rng.randint(1, 3))
    return Element(context, out)


@pytest.fixture
def rng():
    return random.Random(20240617)


@pytest.fixture
def ctx_v():
    """Two even generators."""
    return make_context([("x", 0), ("y", 0)], 6)


@pytest.fixture
def ctx_mixed():
    """Generators of degrees -1, 0, 1, 2."""
    return make_context([("a", -1), ("b", 0), ("c", 1), ("e", 2)], 5)
