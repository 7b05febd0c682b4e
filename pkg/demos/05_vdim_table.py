"""Virtual dimensions across the three shift classes."""

from darboux.cli import vdim_table_report

rep = vdim_table_report([-1, -3, -5, -4, -8, -2, -6])
print(f"{'k':>4} {'class':>9} {'m':<14} {'contact':>8} {'symplectic':>11}")
for r in rep.notes:
    print(f"{r['k']:>4} {r['class']:>9} {str(r['m']):<14} {r['contact']:>8} {r['symplectic']:>11}")
for c in rep.checks:
    print(("PASS " if c.passed else "FAIL ") + c.name)
