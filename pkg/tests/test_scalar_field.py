import pytest
from hypothesis import given, settings, strategies as st

from qtorus.scalar_field import QMode, QModeError, cyclotomic_poly

MODES = [QMode.generic(), QMode.root(1), QMode.root(2), QMode.root(3), QMode.root(4), QMode.root(6)]

laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4)


def test_parse_roundtrip():
    for m in MODES:
        assert QMode.parse(str(m)) == m


@pytest.mark.parametrize("text", ["", "root", "root:0", "root:x", "q=2"])
def test_parse_rejects(text):
    with pytest.raises(QModeError):
        QMode.parse(text)


def test_cyclotomic_degrees():
    assert len(cyclotomic_poly(1)) == 2
    assert len(cyclotomic_poly(6)) == 3  # x^2 - x + 1


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_root_periodic(d):
    mode = QMode.root(d)
    assert mode.q_pow(d) == mode.one()
    assert mode.q_pow(7 * d + 1) == mode.q_pow(1)
    if d > 1:
        assert mode.q_pow(1) != mode.one()


def test_lambda():
    assert QMode.generic().lambda_contains(0)
    assert not QMode.generic().lambda_contains(3)
    r = QMode.root(3)
    assert r.lambda_contains(-6) and not r.lambda_contains(4)


@pytest.mark.parametrize("mode", MODES, ids=str)
def test_eps_square(mode):
    e = mode.eps()
    assert e * e == mode.scalar(-1) / mode.scalar(2)


@pytest.mark.parametrize("mode", MODES, ids=str)
def test_q_ratio_convention(mode):
    for m in range(-4, 5):
        for n in range(-4, 5):
            r = mode.q_ratio(m, n)
            if mode.lambda_contains(n):
                assert r == mode.scalar(m)
            else:
                assert r * (mode.q_pow(n) - mode.one()) == mode.q_pow(m * n) - mode.one()


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent, st.sampled_from(MODES))
def test_field_axioms(a, b, c, mode):
    x, y, z = (_lift(mode, t) for t in (a, b, c))
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if not y.is_zero():
        assert (x / y) * y == x


def _lift(mode, terms):
    out = mode.zero()
    for k, v in terms.items():
        out = out + mode.q_pow(k) * mode.scalar(v)
    return out


def test_json_roundtrip():
    for mode in MODES:
        s = mode.q_pow(2) / (mode.q_pow(1) + mode.scalar(3)) + mode.eps()
        assert mode.scalar_from_json(s.to_json()) == s
