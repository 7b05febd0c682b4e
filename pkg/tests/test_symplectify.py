import dataclasses

import pytest

from darboux import DarbouxSpec, Form, build_contact, canonical_hamiltonian, d_dR, symplectify
from darboux.errors import ContactAxiomsFail, NoPointsGiven, TZero
from darboux.stacks import build_prequantum_instance
from darboux.symplectify import (
    check_symplectification_identities,
    check_symplectification_nondegenerate,
    default_points,
    split_identity_residual,
    verify_symplectification,
)
from darboux.verify import sample_points


def contact(k, m):
    return build_contact(DarbouxSpec(k, m, canonical_hamiltonian(k, m)))


def test_k_minus_one_omega():
    s = symplectify(contact(-1, (1,)))
    S = s.signature_ext
    t, y = S.gen("t"), S.gen("y1_1")
    want = (Form.d(S, "t") * Form.d(S, "z") + y * Form.d(S, "x0_1") * Form.d(S, "t")
            + t * Form.d(S, "y1_1") * Form.d(S, "x0_1"))
    assert s.omega0 == want
    assert S.spec("t").invertible


def test_split_identity():
    s = symplectify(contact(-3, (1, 2)))
    assert split_identity_residual(s).is_zero()
    assert s.omega0 == Form.d(s.signature_ext, "t") * s.alpha_ext + s.signature_ext.gen("t") * d_dR(s.alpha_ext)


@pytest.mark.parametrize("k, m", [(-1, (2,)), (-3, (1, 1)), (-4, (1, 1, 1)), (-2, (1, 2)), (-5, (1, 1, 1))])
def test_full_suite(k, m):
    rep = verify_symplectification(symplectify(contact(k, m)))
    assert rep.passed, rep.failures()
    assert rep["case2_reeb_dt_pairing"].witness["values"] in (["1"], ["-1"], ["-1", "1"])
    assert rep["vdim_shift"].witness["symplectification"] == rep["vdim_shift"].witness["base"] + 1


def test_t0_values_cycle():
    s = symplectify(contact(-1, (1,)))
    assert [t0 for _, t0 in default_points(s)][:4] == [1, 2, -3, 1]


def test_odd_vdim_goes_to_zero():
    rep = verify_symplectification(symplectify(contact(-3, (2, 1))))
    assert rep["vdim_shift"].witness == {"base": -1, "symplectification": 0}


def test_t_zero_rejected():
    s = symplectify(contact(-1, (1,)))
    p = sample_points(s.base.signature, 1)[0]
    with pytest.raises(TZero):
        check_symplectification_nondegenerate(s, [(p, 0)])
    with pytest.raises(NoPointsGiven):
        check_symplectification_nondegenerate(s, [])


def test_tampered_instance_rejected():
    inst = contact(-1, (1,))
    S = inst.signature
    bad = dataclasses.replace(inst, alpha=Form.d(S, "z") + S.gen("y1_1") * Form.d(S, "x0_1") * 2)
    with pytest.raises(ContactAxiomsFail):
        symplectify(bad)


def test_identities_on_prequantum():
    s = symplectify(build_prequantum_instance(1))
    assert s.t_name != "t"
    assert check_symplectification_identities(s).passed
