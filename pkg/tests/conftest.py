import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from fibpoly.algebra import Poly, field_spec
from fibpoly.fibcore import SeqParams
from fibpoly.instances import FIELDS

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

specs = st.sampled_from(sorted(FIELDS)).map(lambda q: field_spec(*FIELDS[q]))


@st.composite
def polys(draw, spec, max_deg=6, nonzero=False):
    n = draw(st.integers(0 if not nonzero else 1, max_deg + 1))
    coeffs = draw(st.lists(st.integers(0, spec.q - 1), min_size=n, max_size=n))
    f = Poly(spec, coeffs)
    if nonzero and not f:
        f = Poly.one(spec)
    return f


@st.composite
def monic(draw, spec, min_deg=1, max_deg=4):
    d = draw(st.integers(min_deg, max_deg))
    coeffs = draw(st.lists(st.integers(0, spec.q - 1), min_size=d, max_size=d))
    return Poly(spec, coeffs + [1])


@st.composite
def irreducibles(draw, spec, max_deg=3):
    from fibpoly.factorize import is_irreducible

    d = draw(st.integers(1, max_deg))
    f = draw(monic(spec, d, d).filter(is_irreducible))
    return f


@st.composite
def params_and_prime(draw, max_deg_ab=3, max_deg_P=3):
    spec = draw(specs)
    a = draw(polys(spec, max_deg_ab))
    b = draw(polys(spec, max_deg_ab, nonzero=True))
    params = SeqParams(a, b)
    P = draw(irreducibles(spec, max_deg_P).filter(params.coprime_to))
    return params, P
