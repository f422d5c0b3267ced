import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from symcrystal.multiseg import Multisegment, enumerate_theta_restricted, theta_weight
from symcrystal.qarith import Scalar
from symcrystal.vtheta import ThetaVector

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

q = sympy.Symbol("q")


def to_sympy(s: Scalar):
    """Independent view of a scalar as a sympy rational function, parsed from its text form."""
    return sympy.sympify(str(s).replace("^", "**"), locals={"q": q})


def sympy_equal(a, b) -> bool:
    return sympy.simplify(a - b) == 0


laurent_dicts = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=4)
laurents = laurent_dicts.map(Scalar.laurent)
nonzero_laurents = laurents.filter(bool)
rationals = st.tuples(laurents, nonzero_laurents).map(lambda t: t[0] / t[1])

_SMALL = enumerate_theta_restricted(4, 5)
theta_multisegments = st.sampled_from(_SMALL)

_BLOCKS = {}
for _m in _SMALL:
    _BLOCKS.setdefault(theta_weight(_m), []).append(_m)
_WEIGHTS = sorted(_BLOCKS, key=lambda w: w.items)


@st.composite
def homogeneous_vectors(draw, coeffs=nonzero_laurents):
    """A random theta-weight-homogeneous vector with Laurent coefficients."""
    mu = draw(st.sampled_from(_WEIGHTS))
    support = draw(st.lists(st.sampled_from(_BLOCKS[mu]), min_size=1, max_size=3, unique=True))
    return ThetaVector({m: draw(coeffs) for m in support})


segments = st.tuples(st.integers(-3, 3), st.integers(0, 3)).map(lambda t: (2 * t[0] + 1, 2 * t[0] + 1 + 2 * t[1]))
general_multisegments = st.dictionaries(segments, st.integers(1, 2), max_size=3).map(Multisegment)
operator_indices = st.sampled_from([1, -1, 3, -3, 5, -5])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
