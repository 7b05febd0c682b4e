"""Point-wise and symbolic checks on built instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import NoPointsGiven
from .forms import Form, VectorField, contract, d_dR
from .graded import AlgebraSignature, Point, coef_str, evaluate_at_point, sign
from .linalg import det, left_null_space, rank, same_span
from .models import ContactInstance, ShiftClass, SymplecticInstance, build_alternative_contact_form
from .report import CheckReport

DEFAULT_POINTS = 10
DEFAULT_SEED = 0
NONDEGENERACY = "minimal_convention_nondegeneracy"


@dataclass(frozen=True)
class PairingMatrix:
    degree_pair: tuple
    rows: tuple
    cols: tuple
    entries: tuple

    @property
    def square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def determinant(self) -> Fraction:
        return det([list(r) for r in self.entries])

    def rank(self) -> int:
        return rank([list(r) for r in self.entries])

    def to_json(self) -> dict:
        return {
            "degree_pair": list(self.degree_pair),
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": [[coef_str(x) for x in r] for r in self.entries],
        }


# ---------------------------------------------------------------------------
# sampling

def sample_points(sig: AlgebraSignature, n: int = DEFAULT_POINTS, seed: int = DEFAULT_SEED,
                  lo: int = -5, hi: int = 5) -> list[Point]:
    rng = random.Random(seed)
    deg0 = [g for g in sig.generators if g.degree == 0]
    pts = []
    for _ in range(n):
        vals = {}
        for g in deg0:
            v = rng.randint(lo, hi)
            while g.invertible and v == 0:
                v = rng.randint(lo, hi)
            vals[g.name] = v
        pts.append(Point(sig, vals))
    return pts


def _ev(a, p) -> Fraction:
    return evaluate_at_point(a, p)


def _pair(omega: Form, row: VectorField, col: VectorField):
    """``iota_col iota_row omega``."""
    return contract(col, contract(row, omega)).to_scalar()


def _pair_table(omega: Form, fields: Sequence[VectorField]) -> dict:
    """Symbolic pairings between fields of complementary degree."""
    return {(a, b): _pair(omega, fields[a], fields[b])
            for a in range(len(fields)) for b in range(len(fields))}


def _blocks(fields, labels, k, degrees=None):
    by_deg: dict = {}
    for idx, v in enumerate(fields):
        by_deg.setdefault(v.degree, []).append(idx)
    if degrees is None:
        degrees = range(0, -k + 1)
    out = []
    for i in degrees:
        rows = by_deg.get(i, [])
        cols = by_deg.get(-k - i, [])
        out.append((i, rows, cols))
    return out


def _matrices(omega: Form, fields, labels, k, p, table=None, degrees=None) -> list[PairingMatrix]:
    mats = []
    for i, rows, cols in _blocks(fields, labels, k, degrees):
        if not rows and not cols:
            continue
        ent = tuple(
            tuple(_ev(table[(r, c)] if table else _pair(omega, fields[r], fields[c]), p) for c in cols)
            for r in rows)
        mats.append(PairingMatrix((i, -k - i), tuple(labels[r] for r in rows),
                                  tuple(labels[c] for c in cols), ent))
    return mats


# ---------------------------------------------------------------------------
# symbolic checks

def _expected_kernel_count(inst: ContactInstance) -> int:
    return len(inst.signature) - 1


def check_contact_axioms(inst: ContactInstance) -> CheckReport:
    rep = CheckReport(inst.digest())
    sq = inst.d.square_check()
    rep.add("d_squared", sq.passed, sq.witness)
    da = inst.d(inst.alpha) if sq.passed else None
    rep.add("d_alpha", da is not None and da.is_zero(),
            None if da is not None and da.is_zero() else {"d_alpha": str(da) if da is not None else "d^2 != 0"})
    bad = []
    for lab, v in zip(inst.kernel_labels, inst.kernel):
        c = contract(v, inst.alpha)
        if not c.is_zero():
            bad.append({"field": lab, "iota_alpha": str(c)})
    rep.add("kernel_annihilates_alpha", not bad, bad or None)
    r = contract(inst.reeb, inst.alpha)
    rep.add("reeb_alpha_is_one", r == 1, None if r == 1 else {"iota_reeb_alpha": str(r)})
    n, want = len(inst.kernel), _expected_kernel_count(inst)
    rep.add("kernel_count", n == want, {"count": n, "expected": want})
    return rep


def alpha_alt_difference(inst: ContactInstance):
    """``k alpha - k alpha' - d_dR psi``; zero when the two forms agree up to the exact term."""
    alt = build_alternative_contact_form(inst)
    return inst.alpha * inst.k - alt.alpha * inst.k - d_dR(inst.psi)


def check_form_identities(inst) -> CheckReport:
    rep = CheckReport(inst.digest())
    d = inst.d
    dH = d(inst.H)
    rep.add("dH_zero", dH.is_zero(), None if dH.is_zero() else {"dH": str(dH)})
    ham = d_dR(inst.H) + d(inst.phi)
    rep.add("ddR_H_plus_d_phi", ham.is_zero(), None if ham.is_zero() else {"residual": str(ham)})
    omega = inst.omega0 if isinstance(inst, SymplecticInstance) else d_dR(inst.alpha)
    res = d_dR(inst.phi) - omega * inst.k
    rep.add("ddR_phi_eq_k_omega", res.is_zero(), None if res.is_zero() else {"residual": str(res)})
    if isinstance(inst, SymplecticInstance):
        a, b = d(inst.omega0), d_dR(inst.omega0)
        rep.add("d_omega0", a.is_zero(), None if a.is_zero() else {"d_omega0": str(a)})
        rep.add("ddR_omega0", b.is_zero(), None if b.is_zero() else {"ddR_omega0": str(b)})
    elif inst.variant == "standard" and inst.psi is not None and inst.shift is ShiftClass.ODD:
        diff = alpha_alt_difference(inst)
        rep.add("alpha_alt_difference", diff.is_zero(), None if diff.is_zero() else {"residual": str(diff)})
    return rep


def virtual_dimension(inst) -> int:
    return sum(-1 if g.degree % 2 else 1 for g in inst.signature.generators)


def expected_virtual_dimension(inst) -> int | None:
    """Closed form from the class table; None for instances outside the grid."""
    if inst.m is None or inst.k >= 0:
        return None
    k, m = inst.k, inst.m
    cls = ShiftClass.of(k)
    if cls is ShiftClass.ODD:
        v = 0
    else:
        v = sum(2 * mi * sign(i) for i, mi in enumerate(m) if 2 * i != -k)
        v += m[-1] * (2 if cls is ShiftClass.ZERO_MOD_4 else -1)
    if isinstance(inst, ContactInstance):
        v += sign(k)
    return v + len(inst.artin_generators) * sign(k - 1)


def check_virtual_dimension(inst) -> CheckReport:
    rep = CheckReport(inst.digest())
    v = virtual_dimension(inst)
    want = expected_virtual_dimension(inst)
    ok = want is None or v == want
    rep.add("vdim", ok, {"vdim": v, "expected": want})
    return rep


# ---------------------------------------------------------------------------
# nondegeneracy

def pairing_matrices_at_point(inst: ContactInstance, p: Point) -> list[PairingMatrix]:
    omega = d_dR(inst.alpha)
    fields = [v for v, l in zip(inst.kernel, inst.kernel_labels)
              if l[3:-1] not in inst.artin_generators]
    labels = [l for l in inst.kernel_labels if l[3:-1] not in inst.artin_generators]
    return _matrices(omega, fields, labels, inst.k, p)


def _coordinate_fields(inst):
    names = [n for n in inst.signature.names if n not in inst.artin_generators]
    return [VectorField.coordinate(inst.signature, n) for n in names], [f"d/d{n}" for n in names]


def _full_matrix_checks(inst, omega: Form, points, rep: CheckReport, reeb: VectorField | None,
                        name: str = "full_matrix_kernel"):
    """Kernel of Y -> iota_Y omega, degree by degree over the coordinate basis."""
    fields, labels = _coordinate_fields(inst)
    table = _pair_table(omega, fields)
    k = inst.k
    failure = None
    for pi, p in enumerate(points):
        for mat in _matrices(omega, fields, labels, k, p, table):
            i = mat.degree_pair[0]
            ker = left_null_space([list(r) for r in mat.entries], len(mat.rows))
            if reeb is not None and i == -k:
                rv = [_ev(reeb(lab[3:]), p) for lab in mat.rows]
                ok = len(ker) == 1 and same_span(ker, [rv])
            else:
                ok = not ker
            if not ok and failure is None:
                failure = {"point": pi, "degree": i, "kernel": [[coef_str(x) for x in v] for v in ker],
                           "rows": list(mat.rows)}
    rep.add(name, failure is None, failure)
    return rep


def check_nondegenerate(inst, points: Sequence[Point]) -> CheckReport:
    if not points:
        raise NoPointsGiven("need at least one point")
    rep = CheckReport(inst.digest())
    rep.points = [p.to_json() for p in points]
    artin = set(inst.artin_generators)
    if isinstance(inst, ContactInstance):
        omega = d_dR(inst.alpha)
        keep = [j for j, l in enumerate(inst.kernel_labels) if l[3:-1] not in artin]
        fields = [inst.kernel[j] for j in keep]
        labels = [inst.kernel_labels[j] for j in keep]
        table = _pair_table(omega, fields)
        failure = None
        for pi, p in enumerate(points):
            for mat in _matrices(omega, fields, labels, inst.k, p, table):
                dt = mat.determinant() if mat.square else Fraction(0)
                if dt == 0 and failure is None:
                    failure = {"point": pi, "degree_pair": list(mat.degree_pair),
                               "matrix": mat.to_json()["entries"], "det": coef_str(dt),
                               "rows": list(mat.rows), "cols": list(mat.cols)}
        rep.add(NONDEGENERACY, failure is None, failure)
        _full_matrix_checks(inst, omega, points, rep, inst.reeb)
    else:
        _full_matrix_checks(inst, inst.omega0, points, rep, None)
    if artin:
        rep.notes.append({"artin_block": sorted(artin),
                          "degree": inst.k - 1,
                          "status": "reported separately; no pairing asserted"})
    return rep


def delete_y_term(inst: ContactInstance, y: str | None = None) -> ContactInstance:
    """Mutation: drop the summand ``y dx`` of alpha (kernel fields left untouched)."""
    sig = inst.signature
    if y is None:
        y = next(n for n in sig.names if n.startswith("y"))
    yi = sig.index(y)
    terms = {m: c for m, c in inst.alpha.terms.items() if not any(i == yi for i, _ in m)}
    return replace(inst, alpha=Form(sig, 1, terms), variant="mutated")


# ---------------------------------------------------------------------------
# full suite

def verify_instance(inst, points: Sequence[Point] | None = None, n_points: int = DEFAULT_POINTS,
                    seed: int = DEFAULT_SEED) -> CheckReport:
    if points is None:
        points = sample_points(inst.signature, n_points, seed)
    rep = CheckReport(inst.digest())
    if isinstance(inst, ContactInstance):
        rep.extend(check_contact_axioms(inst))
    else:
        sq = inst.d.square_check()
        rep.add("d_squared", sq.passed, sq.witness)
    if inst.d.square_check().passed:
        rep.extend(check_form_identities(inst))
    rep.extend(check_nondegenerate(inst, points))
    rep.extend(check_virtual_dimension(inst))
    rep.instance = inst.digest()
    return rep
