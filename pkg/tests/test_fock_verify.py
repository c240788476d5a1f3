import pytest

from qtorus import fock
from qtorus.fock_verify import (LEMMA_CORRECTIONS, CentralSolver, UnderdeterminedCentral,
                                verify_id236, verify_lemma21, verify_props, verify_theorem)
from qtorus.scalar_field import QMode

GENERIC, ROOT2 = QMode.generic(), QMode.root(2)


@pytest.mark.parametrize("tau", [1, -1])
def test_quadratic_monomials_small(tau):
    r = verify_lemma21(1, -1, 1, tau, degree=2, window=1)
    assert r.ok
    assert len(r.tallies) == 16
    assert {e.relation for e in r.ledger} <= set(LEMMA_CORRECTIONS)


@pytest.mark.parametrize("mode", [GENERIC, ROOT2], ids=str)
@pytest.mark.parametrize("tau", [1, -1])
def test_operator_relations_small(mode, tau):
    r = verify_props(1, -1, 1, tau, mode, degree=2, window=1)
    assert r.ok, r.to_json()["equations"]
    assert any(k.endswith(":shifted") for k in r.tallies)


def test_operator_relations_detect_wrong_shift(monkeypatch):
    orig = fock.shift_scalar
    monkeypatch.setattr(fock, "shift_scalar", lambda op, mode: orig(op, mode) * mode.scalar(3))
    r = verify_props(1, -1, 1, 1, GENERIC, degree=1, window=1)
    assert not r.ok


@pytest.mark.parametrize("mode", [GENERIC, ROOT2], ids=str)
def test_module_central_values(mode):
    r = verify_theorem(1, -1, 1, -1, mode, degree=2, window=1)
    assert r.ok
    c = r.meta["central"]
    assert c["constant"] == "1/2"
    assert c["gamma"]["c_y"]["even"] == "0"
    assert "c_y" in c["free"]
    assert c["matches_stated_c_x"] is False
    assert c["constraining_instance"]["relation"]


def test_module_check_detects_wrong_shift(monkeypatch):
    orig = fock.shift_scalar
    monkeypatch.setattr(fock, "shift_scalar", lambda op, mode: orig(op, mode) * mode.scalar(2))
    r = verify_theorem(1, -1, 1, 1, GENERIC, degree=1, window=1)
    assert not r.ok


def test_module_check_empty_grid():
    with pytest.raises(UnderdeterminedCentral):
        verify_theorem(1, 1, 0, 1, GENERIC, degree=1)


def test_solver_inconsistency():
    s = CentralSolver(GENERIC)
    one = GENERIC.one()
    assert s.add({("c", 0): one}, one, "first")
    assert s.add({("c", 0): one + one}, one + one, "same")
    assert not s.add({("c", 0): one}, GENERIC.zero(), "clash")
    vals, free = s.solve([("c", 0), ("cy",)])
    assert vals[("c", 0)] == one and free == [("cy",)]


def test_theta_sum_report():
    assert verify_id236(-3, 3, ROOT2).tuples_checked == 49
