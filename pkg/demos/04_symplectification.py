"""Adjoin an invertible t and check that d_dR(t alpha) is nondegenerate.

Also shows the vdim moving from -1 to 0 for an odd shift.
"""

from darboux import DarbouxSpec, build_contact, canonical_hamiltonian, symplectify
from darboux.symplectify import verify_symplectification

for k, m in [(-1, (1,)), (-3, (1, 2)), (-4, (1, 1, 1))]:
    s = symplectify(build_contact(DarbouxSpec(k, m, canonical_hamiltonian(k, m))))
    rep = verify_symplectification(s)
    print(f"k={k} m={m}")
    print("  omega0 =", s.omega0)
    print("  Reeb/dt pairings:", rep["case2_reeb_dt_pairing"].witness["values"])
    print("  vdim:", rep["vdim_shift"].witness)
    print("  all checks:", "PASS" if rep.passed else [c.name for c in rep.failures()])
