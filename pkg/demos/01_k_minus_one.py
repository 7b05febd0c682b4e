"""The smallest contact model: k = -1, one pair, H = x^2.

Builds the instance, prints the differential and the contact form, then
runs the verifier at ten seeded points.
"""

from darboux import DarbouxSpec, build_contact, canonical_hamiltonian, emit_report, verify_instance

spec = DarbouxSpec(-1, (1,), canonical_hamiltonian(-1, (1,)))
inst = build_contact(spec)

print("generators:", inst.signature)
for g in inst.signature.names:
    print(f"  d({g}) = {inst.d(g)}")
print("alpha =", inst.alpha)
print("Reeb  =", inst.reeb)
for label, v in zip(inst.kernel_labels, inst.kernel):
    print(f"  {label} = {v}")

print(emit_report(verify_instance(inst), "text").decode())
