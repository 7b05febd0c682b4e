"""What happens when H violates the classical master equation.

With m = (1, 2) and H = y x0 + x_1 x_2 the sum (dH/dx)(dH/dy) is x0 x_2,
so d would not square to zero. The builder refuses; the checker says why.
"""

from darboux import DarbouxSpec, build_contact, check_master_equation
from darboux.errors import MasterEquationFails
from darboux.models import darboux_signature, master_equation_sum

sig = darboux_signature(-3, (1, 2), contact=False)
x0, a, b, y = sig.gens("x0_1", "x1_1", "x1_2", "y2_1")

for H in (y * x0, y * x0 + a * b):
    spec = DarbouxSpec(-3, (1, 2), H)
    verdict = check_master_equation(spec)
    print(f"H = {H}: CME sum = {master_equation_sum(-3, (1, 2), H)}  ->  {'ok' if verdict else 'fails'}")
    try:
        build_contact(spec)
        print("  built")
    except MasterEquationFails as e:
        print("  refused:", e)
