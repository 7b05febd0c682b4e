"""Symplectification on a chart: adjoin an invertible t and take lambda = t alpha."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ContactAxiomsFail, NoPointsGiven, TZero
from .forms import Differential, Form, VectorField, d_dR
from .graded import AlgebraSignature, GeneratorSpec, Point, coef_str
from .linalg import det
from .models import ContactInstance, digest_of
from .report import CheckReport
from .verify import _ev, _matrices, _pair_table, check_contact_axioms, sample_points

T = "t"
DEFAULT_T0 = (1, 2, -3)


@dataclass
class SymplectificationInstance:
    base: ContactInstance
    signature_ext: AlgebraSignature
    d_ext: Differential
    lam: Form
    omega0: Form
    alpha_ext: Form
    kernel_ext: tuple
    reeb_ext: VectorField
    dt_field: VectorField

    kind = "symplectification"

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def t_name(self) -> str:
        return next(iter(self.dt_field.images))

    @property
    def basis(self) -> tuple:
        """Kernel fields, then the Reeb field, then d/dt."""
        return tuple(self.kernel_ext) + (self.reeb_ext, self.dt_field)

    @property
    def basis_labels(self) -> tuple:
        return tuple(self.base.kernel_labels) + ("reeb", "d/dt")

    def to_json(self) -> dict:
        lam = self.lam.to_json()
        lam.pop("gens")
        om = self.omega0.to_json()
        om.pop("gens")
        return {
            "kind": self.kind,
            "base": self.base.to_json(),
            "gens": self.signature_ext.to_json(),
            "lambda": lam,
            "omega0": om,
        }

    def digest(self) -> str:
        return digest_of(self.to_json())


def _fresh_t(sig: AlgebraSignature) -> str:
    name = T
    while name in sig:
        name += "_"
    return name


def symplectify(inst: ContactInstance) -> SymplectificationInstance:
    rep = check_contact_axioms(inst)
    if not rep.passed:
        raise ContactAxiomsFail(", ".join(c.name for c in rep.failures()))
    t = _fresh_t(inst.signature)
    sig = inst.signature.extend([GeneratorSpec(t, 0, invertible=True)])
    d = inst.d.embed(sig)
    alpha = inst.alpha.embed(sig)
    lam = sig.gen(t) * alpha
    omega = d_dR(lam)
    if not d.square_check().passed or not d(lam).is_zero():
        raise ContactAxiomsFail("d(lambda) != 0 after adjoining t")
    kernel = tuple(v.embed(sig) for v in inst.kernel)
    return SymplectificationInstance(
        base=inst, signature_ext=sig, d_ext=d, lam=lam, omega0=omega, alpha_ext=alpha,
        kernel_ext=kernel, reeb_ext=inst.reeb.embed(sig), dt_field=VectorField.coordinate(sig, t),
    )


def split_identity_residual(s: SymplectificationInstance) -> Form:
    """``omega0 - (d_dR t * alpha + t * d_dR alpha)``."""
    sig = s.signature_ext
    t = s.t_name
    return s.omega0 - (Form.d(sig, t) * s.alpha_ext + sig.gen(t) * d_dR(s.alpha_ext))


def default_points(s: SymplectificationInstance, n: int = 10, seed: int = 0,
                   t0s: Sequence[int] = DEFAULT_T0) -> list[tuple[Point, int]]:
    base = sample_points(s.base.signature, n, seed)
    return [(p, t0s[i % len(t0s)]) for i, p in enumerate(base)]


def check_symplectification_nondegenerate(s: SymplectificationInstance,
                                          points: Sequence[tuple[Point, object]]) -> CheckReport:
    if not points:
        raise NoPointsGiven("need at least one point")
    sig = s.signature_ext
    t = s.t_name
    ext_points = []
    for p, t0 in points:
        if Fraction(t0) == 0:
            raise TZero("t0 must be nonzero")
        ext_points.append(Point(sig, {**p.values, t: t0}))
    rep = CheckReport(s.digest())
    rep.points = [p.to_json() for p in ext_points]
    k = s.k
    artin = set(s.base.artin_generators)
    keep = [j for j, l in enumerate(s.basis_labels) if l[3:-1] not in artin]
    fields = [s.basis[j] for j in keep]
    labels = [s.basis_labels[j] for j in keep]
    table = _pair_table(s.omega0, fields)
    nk = len([l for l in labels if l.startswith("xi[")])
    base_fields = fields[:nk]
    base_table = _pair_table(d_dR(s.alpha_ext), base_fields)
    ir, idt = nk, nk + 1

    full_fail = case1_fail = case2_fail = case3_fail = None
    pair_vals = set()
    for pi, (p, (_, t0)) in enumerate(zip(ext_points, points)):
        t0 = Fraction(t0)
        for mat in _matrices(s.omega0, fields, labels, k, p, table):
            dt_ = det([list(r) for r in mat.entries]) if len(mat.rows) == len(mat.cols) else Fraction(0)
            if dt_ == 0 and full_fail is None:
                full_fail = {"point": pi, "degree_pair": list(mat.degree_pair),
                             "matrix": mat.to_json()["entries"], "det": "0"}
        # case 1: kernel block equals t0 times the contact block
        for a in range(nk):
            for b in range(nk):
                if (a, b) not in base_table or fields[a].degree + fields[b].degree != -k:
                    continue
                lhs = _ev(table[(a, b)], p)
                rhs = t0 * _ev(base_table[(a, b)], p)
                if lhs != rhs and case1_fail is None:
                    case1_fail = {"point": pi, "pair": [labels[a], labels[b]],
                                  "value": coef_str(lhs), "expected": coef_str(rhs)}
            for other in (ir, idt):
                v = _ev(table[(a, other)], p)
                if v != 0 and case1_fail is None:
                    case1_fail = {"point": pi, "pair": [labels[a], labels[other]], "value": coef_str(v)}
        # cases 2 and 3: Reeb against d/dt
        c2 = _ev(table[(ir, idt)], p)
        c3 = _ev(table[(idt, ir)], p)
        pair_vals.add(coef_str(c2))
        if c2 not in (1, -1) and case2_fail is None:
            case2_fail = {"point": pi, "value": coef_str(c2)}
        if c3 not in (1, -1) and case3_fail is None:
            case3_fail = {"point": pi, "value": coef_str(c3)}

    rep.add("symplectification_full_nondegenerate", full_fail is None, full_fail)
    rep.add("case1_kernel_block", case1_fail is None, case1_fail)
    rep.add("case2_reeb_dt_pairing", case2_fail is None, case2_fail or {"values": sorted(pair_vals)})
    rep.add("case3_dt_reeb_pairing", case3_fail is None, case3_fail)
    if artin:
        rep.notes.append({"artin_block": sorted(artin), "degree": k - 1,
                          "status": "reported separately; no pairing asserted"})
    return rep


def check_symplectification_identities(s: SymplectificationInstance) -> CheckReport:
    rep = CheckReport(s.digest())
    sq = s.d_ext.square_check()
    rep.add("d_squared", sq.passed, sq.witness)
    dl = s.d_ext(s.lam)
    rep.add("d_lambda", dl.is_zero(), None if dl.is_zero() else {"d_lambda": str(dl)})
    res = split_identity_residual(s)
    rep.add("omega_split", res.is_zero(), None if res.is_zero() else {"residual": str(res)})
    a, b = s.d_ext(s.omega0), d_dR(s.omega0)
    rep.add("d_omega0", a.is_zero(), None if a.is_zero() else {"d_omega0": str(a)})
    rep.add("ddR_omega0", b.is_zero(), None if b.is_zero() else {"ddR_omega0": str(b)})
    return rep


def symplectification_vdim(s: SymplectificationInstance) -> int:
    return sum(-1 if g.degree % 2 else 1 for g in s.signature_ext.generators)


def verify_symplectification(s: SymplectificationInstance, points=None, n_points: int = 10,
                             seed: int = 0) -> CheckReport:
    if points is None:
        points = default_points(s, n_points, seed)
    rep = check_symplectification_identities(s)
    rep.extend(check_symplectification_nondegenerate(s, points))
    base_v = sum(-1 if g.degree % 2 else 1 for g in s.base.signature.generators)
    v = symplectification_vdim(s)
    rep.add("vdim_shift", v == base_v + 1, {"base": base_v, "symplectification": v})
    rep.instance = s.digest()
    return rep
