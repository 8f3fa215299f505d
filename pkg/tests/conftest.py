from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from berkrh.laurent import LaurentPoly, RationalMap

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PRIMES = st.sampled_from([2, 3, 5, 7])


def small_rationals(max_num=30, max_den=30, nonzero=False):
    q = st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )
    return q.filter(bool) if nonzero else q


def padic_rationals(p_values=(2, 3, 5, 7), max_exp=3):
    """Rationals with a visible p-power part: u * p^k, u a small unit-ish fraction."""
    return st.builds(
        lambda u, base, k: Fraction(u) * Fraction(base) ** k,
        small_rationals(9, 9, nonzero=True),
        st.sampled_from(p_values),
        st.integers(-max_exp, max_exp),
    )


@st.composite
def laurent_polys(draw, min_exp=-3, max_exp=5, max_terms=5, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    exps = draw(st.lists(st.integers(min_exp, max_exp), min_size=n, max_size=n, unique=True))
    coeffs = {e: draw(small_rationals(nonzero=True)) for e in exps}
    return LaurentPoly(coeffs)


@st.composite
def polys(draw, max_deg=6, min_deg=0, coeff=None):
    if coeff is None:
        coeff = small_rationals()
    deg = draw(st.integers(min_deg, max_deg))
    cs = [draw(coeff) for _ in range(deg)] + [draw(small_rationals(nonzero=True))]
    return LaurentPoly.from_coeff_list(cs)


@st.composite
def rational_maps(draw, max_deg=6):
    """Nonconstant reduced rational maps of degree at most ``max_deg``."""
    num = draw(polys(max_deg=max_deg))
    den = draw(polys(max_deg=max_deg))
    phi = RationalMap(num, den)
    if phi.is_constant() or phi.degree > max_deg:
        phi = RationalMap(num + LaurentPoly.monomial(1), LaurentPoly.constant(1))
    if phi.is_constant():
        phi = RationalMap(LaurentPoly.monomial(1))
    return phi


@pytest.fixture
def fixtures_dir():
    return FIXTURES
