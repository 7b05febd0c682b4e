"""A k = -3 model with multiplicities (1, 3).

H = y_3 x0 + 2 x_1 x_2 x0 satisfies the master equation, so the builder
accepts it. The differential of z picks up the s-terms against y^{-2}.
"""

from darboux import DarbouxSpec, build_alternative_contact_form, build_contact, d_dR, verify_instance
from darboux.models import darboux_signature

sig = darboux_signature(-3, (1, 3), contact=False)
x0, a, b, y = sig.gens("x0_1", "x1_1", "x1_2", "y2_3")
H = y * x0 + a * b * x0 * 2

inst = build_contact(DarbouxSpec(-3, (1, 3), H))
print("H       =", H)
print("d(z)    =", inst.d("z"))
print("d(y3_1) =", inst.d("y3_1"))
print("alpha   =", inst.alpha)

alt = build_alternative_contact_form(inst)
print("alpha'  =", alt.alpha)
diff = inst.alpha * -3 - alt.alpha * -3 - d_dR(inst.psi)
print("k alpha - k alpha' - d_dR psi =", diff)

print("verifier:", "PASS" if verify_instance(inst).passed else "FAIL")
