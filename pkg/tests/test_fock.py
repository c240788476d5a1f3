import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from qtorus.fock import (ASTAR, E, A, FockVector, ModeFactor, QuadOp, _combine, act_word,
                         apply_quadratic, apply_word, check_identity_236, make_state, normal_pair,
                         quad_basis, shift_scalar, theta)
from qtorus.fock import test_states as canonical_states
from qtorus.scalar_field import QMode

GENERIC = QMode.generic()
STATES = canonical_states(2, 3, 2)
STATES1 = canonical_states(1, 3, 2)


def as_dict(terms):
    out = {}
    for st_, c, k in terms:
        out[(st_, k)] = out.get((st_, k), 0) + c
    return {key: c for key, c in out.items() if c}


def commutator(u, v, state, tau, anti=False):
    return as_dict(_combine((1, act_word((u, v), state, tau)), (1 if anti else -1, act_word((v, u), state, tau))))


def scalar_times(c, state):
    return {(state, 0): c} if c else {}


def test_state_counts():
    assert len(STATES1) == 104
    assert len(STATES) == 429


def test_seeded_sample_is_deterministic():
    a = canonical_states(1, 2, 2, n_random=5, seed=7)
    b = canonical_states(1, 2, 2, n_random=5, seed=7)
    assert a == b and len(a) > len(canonical_states(1, 2, 2))


def test_make_state_sign():
    s1, st1 = make_state(fermions=[-1, -2])
    s2, st2 = make_state(fermions=[-2, -1])
    assert st1 == st2 and s1 == -s2
    assert make_state(fermions=[-1, -1]) == (0, None)
    with pytest.raises(ValueError):
        make_state(bosons=[("a*", 1, 0)])


@pytest.mark.parametrize("tau", [1, -1])
def test_ccr(tau):
    modes = range(-2, 3)
    for w in STATES[::7]:
        for i, j, x, y in itertools.product((1, 2), (1, 2), modes, modes):
            expect = scalar_times(-1 if (i == j and x + y == 0) else 0, w)
            assert commutator((A, i, x), (ASTAR, j, y), w, tau) == expect
            assert commutator((A, i, x), (A, j, y), w, tau) == {}
            assert commutator((ASTAR, i, x), (ASTAR, j, y), w, tau) == {}


@pytest.mark.parametrize("tau", [1, -1])
def test_car(tau):
    from gmpy2 import mpq
    for w in STATES[::5]:
        for x, y in itertools.product(range(-3, 4), repeat=2):
            got = commutator((E, 0, x), (E, 0, y), w, tau, anti=True)
            assert got == scalar_times(mpq(-1) if x + y == 0 else 0, w)


@pytest.mark.parametrize("tau", [1, -1])
def test_mixed_tau_relation(tau):
    # e(y) a(x) = -tau a(x) e(y)
    for w in STATES[::5]:
        for kind, i, x, y in itertools.product((A, ASTAR), (1, 2), range(-2, 3), range(-2, 3)):
            b, e = (kind, i, x), (E, 0, y)
            lhs = _combine((1, act_word((e, b), w, tau)), (tau, act_word((b, e), w, tau)))
            assert as_dict(lhs) == {}


@pytest.mark.parametrize("tau", [1, -1])
def test_contraction_identities(tau):
    for w in STATES1:
        for x, y in itertools.product(range(-3, 4), repeat=2):
            for u, v, sign in (((A, 1, x), (ASTAR, 1, y), -1), ((E, 0, x), (E, 0, y), -1)):
                prod = act_word((u, v), w, tau)
                c = sign * theta(x - y) if x + y == 0 else 0
                rhs = _combine((1, normal_pair(u, v, w, tau)), (c, ((w, 1, 0),)))
                assert as_dict(prod) == as_dict(rhs)


def test_normal_ordering_symmetry():
    for w in STATES1:
        for x, y in itertools.product(range(-3, 4), repeat=2):
            for u, v in (((A, 1, x), (ASTAR, 1, y)), ((A, 1, x), (A, 1, y))):
                assert as_dict(normal_pair(u, v, w, 1)) == as_dict(normal_pair(v, u, w, 1))
            u, v = (E, 0, x), (E, 0, y)
            assert as_dict(normal_pair(u, v, w, 1)) == as_dict(_combine((-1, normal_pair(v, u, w, 1))))


@pytest.mark.parametrize("family", ["f", "g", "h", "e", "e*", "e0"])
def test_truncation_stability(family):
    i, j = (0, 0) if family == "e0" else (1, 1 if family not in ("e", "e*") else 0)
    for w in STATES1:
        for m in range(-2, 3):
            a = {}
            for t, s_, c, k in quad_basis(family, i, j, m, w, 1):
                a[(t, s_, k)] = a.get((t, s_, k), 0) + c
            b = {}
            for t, s_, c, k in quad_basis(family, i, j, m, w, 1, extra=3):
                b[(t, s_, k)] = b.get((t, s_, k), 0) + c
            assert {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}


@pytest.mark.parametrize("family,odd", [("f", 0), ("g", 0), ("h", 0), ("e0", 0), ("e", 1), ("e*", 1)])
def test_parity(family, odd):
    i, j = (0, 0) if family == "e0" else (1, 1 if not odd else 0)
    for w in STATES1:
        for m in range(-2, 3):
            for _, s_, _, k in quad_basis(family, i, j, m, w, -1):
                # eps is odd: e(0) acts as eps times a sign
                assert (len(s_[1]) + k - len(w[1])) % 2 == odd


def test_spot_values():
    v0 = FockVector.vacuum(GENERIC)
    half = GENERIC.scalar(1) / GENERIC.scalar(2)
    assert apply_quadratic(QuadOp("f", 1, 1, 0, 0, True), v0, 1) == v0.scale(half)
    assert apply_quadratic(QuadOp("e0", 0, 0, 0, 0, True), v0, 1).is_zero()
    assert apply_word([ModeFactor("e", 0, 1), ModeFactor("e", 0, -1)], v0, -1) == -v0
    assert apply_word([ModeFactor("a", 1, 1), ModeFactor("a*", 1, -1)], v0, 1) == -v0
    assert apply_word([ModeFactor("e", 0, 0)], v0, 1) == v0.scale(GENERIC.eps())


def test_shift_only_off_lambda():
    assert shift_scalar(QuadOp("f", 1, 1, 0, 0, True), GENERIC).is_zero()
    assert shift_scalar(QuadOp("f", 1, 2, 0, 1, True), GENERIC).is_zero()
    assert not shift_scalar(QuadOp("e0", 0, 0, 0, 1, True), GENERIC).is_zero()
    assert shift_scalar(QuadOp("e0", 0, 0, 0, 2, True), QMode.root(2)).is_zero()


@pytest.mark.parametrize("mode", [GENERIC, QMode.root(2), QMode.root(3)], ids=str)
def test_theta_sum_identity(mode):
    assert all(check_identity_236(x, m, mode) for x in range(-6, 7) for m in range(-6, 7))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(STATES), st.sampled_from([1, -1]),
       st.lists(st.tuples(st.sampled_from(["a", "a*", "e"]), st.integers(1, 2), st.integers(-2, 2)),
                max_size=4))
def test_json_roundtrip(state, tau, word):
    v = apply_word([ModeFactor(k, i if k != "e" else 0, x) for k, i, x in word],
                   FockVector.basis(GENERIC, state), tau)
    assert FockVector.from_json(GENERIC, json.loads(json.dumps(v.to_json()))) == v
