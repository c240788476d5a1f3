import random

import pytest

from qtorus.matrix_superalg import (ExtElement, MixedParity, SuperMatrix, parity, superbracket_ext,
                                    supertrace)
from qtorus.quantum_torus import TorusElement
from qtorus.scalar_field import QMode


def unit(mode, r, c, m=0, n=0, M=1, N=2):
    return SuperMatrix.unit(mode, M, N, r, c, TorusElement.monomial(mode, m, n))


def test_parity_blocks():
    mode = QMode.generic()
    assert parity(unit(mode, 0, 0)) == 0
    assert parity(unit(mode, 1, 2)) == 0
    assert parity(unit(mode, 0, 1)) == 1
    with pytest.raises(MixedParity):
        parity(unit(mode, 0, 0) + unit(mode, 0, 1))


def test_supertrace_signs():
    mode = QMode.generic()
    A = unit(mode, 0, 0, 1, 1) + unit(mode, 1, 1, 1, 1)
    assert supertrace(A).is_zero()


def test_central_term_generic():
    # [E_00 x^1 y^0, E_00 x^-1 y^0] picks up 1 * c(0)
    mode = QMode.generic()
    z = superbracket_ext(unit(mode, 0, 0, 1, 0), unit(mode, 0, 0, -1, 0))
    assert z.mat.is_zero()
    assert z.c == {0: mode.one()}


def test_cy_term():
    mode = QMode.generic()
    z = superbracket_ext(unit(mode, 0, 0, 0, 1), unit(mode, 0, 0, 0, -1))
    assert z.cy == mode.one() and not z.c


def test_root_mode_central_index():
    mode = QMode.root(2)
    z = superbracket_ext(unit(mode, 0, 0, 1, 1), unit(mode, 0, 0, -1, 1))
    assert set(z.c) == {2}


def test_odd_bracket_is_anticommutator():
    mode = QMode.generic()
    a, b = unit(mode, 0, 1), unit(mode, 1, 0)
    z = superbracket_ext(a, b)
    assert z.mat == a.matmul(b) + b.matmul(a)


def test_super_skew_symmetry():
    rng = random.Random(5)
    for mode in (QMode.generic(), QMode.root(2)):
        for _ in range(100):
            a = unit(mode, rng.randrange(3), rng.randrange(3), rng.randint(-1, 1), rng.randint(-1, 1))
            b = unit(mode, rng.randrange(3), rng.randrange(3), rng.randint(-1, 1), rng.randint(-1, 1))
            sign = -1 if parity(a) and parity(b) else 1
            assert superbracket_ext(a, b) == -superbracket_ext(b, a).scale(mode.scalar(sign))


def test_central_index_outside_lambda_rejected():
    mode = QMode.generic()
    with pytest.raises(ValueError):
        ExtElement(SuperMatrix.zero(mode, 1, 2), {1: mode.one()})


def test_json_roundtrip():
    mode = QMode.root(3)
    z = superbracket_ext(unit(mode, 0, 0, 1, 1), unit(mode, 0, 0, -1, 2)) + \
        ExtElement.from_matrix(unit(mode, 1, 2, 2, -1))
    assert ExtElement.from_json(mode, z.to_json()) == z
