"""Jet and prequantum instances, and Artin generators on a Darboux model."""

from darboux import (
    DarbouxSpec,
    Form,
    build_contact,
    build_jet_instance,
    build_prequantum_instance,
    canonical_hamiltonian,
    contract,
    extend_with_artin_generators,
    verify_instance,
)
from darboux.stacks import prequantum_signature
from darboux.verify import virtual_dimension

for n in (0, -1, -2):
    inst = build_jet_instance(n, 2)
    print(f"jet n={n}: alpha = {inst.alpha}   suite:", "PASS" if verify_instance(inst).passed else "FAIL")

sig = prequantum_signature(1)
twist = sig.gen("x_1") * Form.d(sig, "x_1")
for tw in (None, twist):
    inst = build_prequantum_instance(1, tw)
    print(f"prequantum twist={tw}: alpha = {inst.alpha}")
    print("  alpha(t d/dt) =", contract(inst.reeb, inst.alpha), "  suite:",
          "PASS" if verify_instance(inst).passed else "FAIL")

base = build_contact(DarbouxSpec(-3, (1, 1), canonical_hamiltonian(-3, (1, 1))))
for w in (0, 1, 2, 3):
    ext = extend_with_artin_generators(base, w)
    rep = verify_instance(ext)
    print(f"artin w={w}: vdim {virtual_dimension(ext)}, suite {'PASS' if rep.passed else 'FAIL'}")
