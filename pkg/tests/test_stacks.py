import pytest

from darboux import Form, build_jet_instance, build_prequantum_instance, contract, d_dR
from darboux.errors import BadMultiplicities, PositiveShift, TwistNotClosed
from darboux.stacks import log_derivative, prequantum_signature
from darboux.verify import verify_instance


@pytest.mark.parametrize("n", [0, -1, -2])
@pytest.mark.parametrize("m0", [1, 2])
def test_jet_passes(n, m0):
    inst = build_jet_instance(n, m0)
    assert verify_instance(inst).passed
    assert contract(inst.reeb, inst.alpha) == 1


def test_jet_zero_form():
    inst = build_jet_instance(0, 1)
    S = inst.signature
    assert inst.alpha == -Form.d(S, "z") + S.gen("p_1") * Form.d(S, "x_1")
    assert S.spec("p_1").degree == 0


def test_jet_errors():
    with pytest.raises(PositiveShift):
        build_jet_instance(1, 1)
    with pytest.raises(BadMultiplicities):
        build_jet_instance(0, 0)


@pytest.mark.parametrize("m0", [1, 2])
def test_prequantum_passes(m0):
    inst = build_prequantum_instance(m0)
    assert verify_instance(inst).passed
    assert contract(inst.reeb, inst.alpha) == 1


def test_prequantum_with_closed_twist():
    sig = prequantum_signature(2)
    x1, x2 = sig.gens("x_1", "x_2")
    tw = x2 * Form.d(sig, "x_1") + x1 * Form.d(sig, "x_2")
    inst = build_prequantum_instance(2, tw)
    assert verify_instance(inst).passed


def test_twist_from_json():
    sig = prequantum_signature(1)
    tw = sig.gen("x_1") * Form.d(sig, "x_1")
    inst = build_prequantum_instance(1, tw.to_json())
    assert inst.alpha == build_prequantum_instance(1, tw).alpha


@pytest.mark.parametrize("make", [
    lambda S: S.gen("x_2") * Form.d(S, "x_1"),
    lambda S: S.gen("p_1") * Form.d(S, "x_1"),
    lambda S: Form.d(S, "x_1") * Form.d(S, "x_2"),
])
def test_bad_twists(make):
    sig = prequantum_signature(2)
    with pytest.raises(TwistNotClosed):
        build_prequantum_instance(2, make(sig))


def test_dt_squared_vanishes():
    sig = prequantum_signature(1)
    assert (Form.d(sig, "t") * Form.d(sig, "t")).is_zero()
    assert d_dR(log_derivative(sig)).is_zero()
