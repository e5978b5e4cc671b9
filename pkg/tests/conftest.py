import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def vectors(dim=2):
    return st.tuples(*[rationals] * dim)


def Q(*xs):
    return tuple(Fraction(x) for x in xs)
