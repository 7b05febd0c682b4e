import dataclasses
import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux import DarbouxSpec, Form, build_contact, build_symplectic, canonical_hamiltonian, emit_report
from darboux.errors import NoPointsGiven
from darboux.graded import Point
from darboux.linalg import det, left_null_space, null_space, rank
from darboux.verify import (
    NONDEGENERACY,
    check_contact_axioms,
    check_nondegenerate,
    delete_y_term,
    pairing_matrices_at_point,
    sample_points,
    verify_instance,
)


def contact(k, m, canonical=True):
    return build_contact(DarbouxSpec(k, m, canonical_hamiltonian(k, m) if canonical else None))


# -- linear algebra ------------------------------------------------------------

def fractions(n, m):
    return st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3),
                             min_size=m, max_size=m), min_size=n, max_size=n)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: fractions(n, n)))
def test_det_matches_sympy(rows):
    want = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).det()
    assert det(rows) == Fraction(str(want))


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.integers(1, 4).flatmap(lambda m: fractions(n, m))))
def test_null_spaces(rows):
    n, m = len(rows), len(rows[0])
    assert rank(rows) + len(null_space(rows, m)) == m
    for v in null_space(rows, m):
        assert all(sum(r[j] * v[j] for j in range(m)) == 0 for r in rows)
    for v in left_null_space(rows, n):
        assert all(sum(v[i] * rows[i][j] for i in range(n)) == 0 for j in range(m))


# -- pairing matrices -----------------------------------------------------------

def test_k_minus_one_pairing():
    inst = contact(-1, (1,))
    mats = pairing_matrices_at_point(inst, sample_points(inst.signature, 1)[0])
    assert [m.degree_pair for m in mats] == [(0, 1), (1, 0)]
    assert all(m.determinant() in (1, -1) for m in mats)


def test_k_minus_three_pairing_blocks():
    inst = contact(-3, (1, 1))
    mats = pairing_matrices_at_point(inst, sample_points(inst.signature, 1)[0])
    assert [m.degree_pair for m in mats] == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert mats[0].rows == ("xi[x0_1]",) and mats[0].cols == ("xi[y3_1]",)


def test_pairing_with_multiplicity_two():
    inst = contact(-1, (2,))
    mats = pairing_matrices_at_point(inst, sample_points(inst.signature, 1, seed=3)[0])
    assert mats[0].rank() == 2


# -- contact axioms ---------------------------------------------------------------

def test_tampered_alpha_fails_annihilation():
    inst = contact(-1, (1,), canonical=False)
    S = inst.signature
    bad = dataclasses.replace(inst, alpha=Form.d(S, "z") + S.gen("y1_1") * Form.d(S, "x0_1") * 2)
    rep = check_contact_axioms(bad)
    assert not rep["kernel_annihilates_alpha"].passed
    assert rep["reeb_alpha_is_one"].passed


def test_kernel_count():
    inst = contact(-4, (1, 2, 1))
    rep = check_contact_axioms(inst)
    assert rep["kernel_count"].witness == {"count": 8, "expected": 8}


# -- nondegeneracy and mutation ------------------------------------------------------

@pytest.mark.parametrize("k, m", [(-1, (1,)), (-3, (1, 2)), (-4, (1, 1, 1)), (-2, (1, 1))])
def test_grid_nondegenerate(k, m):
    inst = contact(k, m)
    rep = check_nondegenerate(inst, sample_points(inst.signature))
    assert rep[NONDEGENERACY].passed
    assert rep["full_matrix_kernel"].passed


@pytest.mark.parametrize("k, m", [(-1, (1,)), (-3, (1, 1)), (-4, (1, 1, 1)), (-6, (1, 1, 1, 1))])
def test_mutation_gives_singular_witness(k, m):
    inst = contact(k, m)
    rep = verify_instance(delete_y_term(inst))
    c = rep[NONDEGENERACY]
    assert not c.passed
    assert c.witness["det"] == "0"
    assert "matrix" in c.witness and "point" in c.witness


def test_each_y_deletion_fails():
    inst = contact(-3, (1, 2))
    for y in [n for n in inst.signature.names if n.startswith("y")]:
        assert not verify_instance(delete_y_term(inst, y), n_points=2)[NONDEGENERACY].passed


def test_no_points():
    inst = contact(-1, (1,))
    with pytest.raises(NoPointsGiven):
        check_nondegenerate(inst, [])


def test_symplectic_full_matrix_trivial_kernel():
    inst = build_symplectic(DarbouxSpec(-2, (1, 2)))
    assert verify_instance(inst).passed


# -- points ------------------------------------------------------------------------------

def test_sample_points_reproducible():
    inst = contact(-3, (2, 1))
    a = [p.to_json() for p in sample_points(inst.signature, 10, 7)]
    b = [p.to_json() for p in sample_points(inst.signature, 10, 7)]
    assert a == b and len(a) == 10


@settings(max_examples=20, deadline=None)
@given(st.integers(-6, 6).filter(bool), st.integers(0, 1000))
def test_verdict_stable_under_rescaling(c, seed):
    inst = contact(-1, (2,))
    pts = sample_points(inst.signature, 3, seed)
    scaled = [Point(inst.signature, {g: v * c for g, v in p.values.items()}) for p in pts]
    assert verify_instance(inst, pts).verdicts() == verify_instance(inst, scaled).verdicts()


# -- reports -------------------------------------------------------------------------------

def test_report_is_byte_identical():
    inst = contact(-3, (1, 2))
    a = emit_report(verify_instance(inst, seed=5), "json")
    b = emit_report(verify_instance(contact(-3, (1, 2)), seed=5), "json")
    assert a == b
    data = json.loads(a)
    assert data["instance"] == inst.digest()
    assert len(data["points"]) == 10


def test_text_report_lists_checks():
    text = emit_report(verify_instance(contact(-1, (1,))), "text").decode()
    assert NONDEGENERACY in text and "PASS" in text
