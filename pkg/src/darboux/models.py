"""
Contact and symplectic Darboux models in the three shift classes.

Variables, for a shift ``k < 0`` and multiplicities ``m[0..floor(-k/2)]``:

* pair index ``i < -k/2``: ``x{i}_{j}`` in degree ``-i`` and ``y{-k-i}_{j}`` in
  degree ``k+i``;
* ``k = 0 mod 4``, ``i = -k/2``: a pair ``x{i}_{j}``, ``y{i}_{j}`` both in degree ``k/2``;
* ``k = 2 mod 4``, ``i = -k/2``: single odd variables ``z{i}_{j}`` in degree ``k/2``;
* contact models add ``z`` in degree ``k``; Artin extensions add ``w_{j}`` in
  degree ``k-1``.

With ``s_i = (-1)^((|x|+1)(|y|+1))`` (so ``+1`` for odd ``k``):

    theta = sum s_i y dx + sum z_mid dz_mid          d_dR theta = omega0
    phi   = sum [-i x dy + s_i (k+i) y dx] + k sum z_mid dz_mid
    psi   = sum (-1)^i i x y                        k theta - phi = d_dR psi
    dx = s_i dH/dy,  dy = dH/dx,  dz_mid = 1/2 dH/dz_mid,  -k dz = H + d psi
    alpha = dz + theta

All partials are graded left partials. With these choices ``dH = 2 * CME``
where ``CME = sum (dH/dx)(dH/dy) + 1/4 sum (dH/dz_mid)^2``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    BadMultiplicities,
    DSquaredFailsOnW,
    MalformedH,
    MasterEquationFails,
    UnknownGenerator,
    UnsupportedClass,
    WrongDegreeH,
)
from .forms import Differential, Form, VectorField, check_d_squared, contract, d_dR
from .graded import AlgebraSignature, GeneratorSpec, ScalarElement, make_algebra, sign
from .report import Check


class ShiftClass(str, Enum):
    ODD = "Odd"
    ZERO_MOD_4 = "ZeroMod4"
    TWO_MOD_4 = "TwoMod4"

    @classmethod
    def of(cls, k: int) -> "ShiftClass":
        if k >= 0:
            raise BadMultiplicities(f"shift must be negative, got {k}")
        if k % 2:
            return cls.ODD
        return cls.ZERO_MOD_4 if k % 4 == 0 else cls.TWO_MOD_4


def shift_class(k: int) -> ShiftClass:
    return ShiftClass.of(k)


@dataclass(frozen=True)
class Pair:
    i: int
    x: str
    y: str
    sign: int  # s_i


@dataclass(frozen=True)
class Layout:
    """Variable names of a Darboux model, before z and w are added."""

    k: int
    m: tuple
    pairs: tuple
    middles: tuple

    @property
    def shift(self) -> ShiftClass:
        return ShiftClass.of(self.k)

    def generators(self) -> list[GeneratorSpec]:
        gens = [GeneratorSpec(p.x, -p.i) for p in self.pairs]
        gens += [GeneratorSpec(p.y, self.k + p.i) for p in self.pairs]
        gens += [GeneratorSpec(z, self.k // 2) for z in self.middles]
        return gens


def multiplicity_length(k: int) -> int:
    return (-k) // 2 + 1


def layout(k: int, m: Sequence[int]) -> Layout:
    cls = ShiftClass.of(k)
    m = tuple(m)
    if len(m) != multiplicity_length(k):
        raise BadMultiplicities(f"k={k} needs {multiplicity_length(k)} multiplicities, got {len(m)}")
    if any((not isinstance(v, int)) or v < 0 for v in m):
        raise BadMultiplicities(f"multiplicities must be nonnegative integers: {m}")
    pairs, middles = [], []
    for i, mi in enumerate(m):
        for j in range(1, mi + 1):
            if 2 * i == -k and cls is ShiftClass.TWO_MOD_4:
                middles.append(f"z{i}_{j}")
            elif 2 * i == -k:
                pairs.append(Pair(i, f"x{i}_{j}", f"y{i}_{j}", sign(i + 1)))
            else:
                s = 1 if cls is ShiftClass.ODD else sign(i + 1)
                pairs.append(Pair(i, f"x{i}_{j}", f"y{-k - i}_{j}", s))
    return Layout(k, m, tuple(pairs), tuple(middles))


def artin_names(n: int, start: int = 1) -> list[str]:
    return [f"w_{j}" for j in range(start, start + n)]


def darboux_signature(k: int, m: Sequence[int], contact: bool = True, artin_w: int = 0) -> AlgebraSignature:
    lay = layout(k, m)
    gens = lay.generators()
    if contact:
        gens.append(GeneratorSpec("z", k))
    gens += [GeneratorSpec(w, k - 1) for w in artin_names(artin_w)]
    return make_algebra(gens)


# ---------------------------------------------------------------------------
# specs

@dataclass
class DarbouxSpec:
    """Input data: shift, multiplicities, Hamiltonian, Artin count."""

    k: int
    m: tuple
    H: object = None  # ScalarElement, element JSON dict, JSON string or None (= 0)
    artin_w: int = 0
    dw: Mapping | None = None

    def __post_init__(self):
        self.m = tuple(self.m)
        layout(self.k, self.m)
        if not isinstance(self.artin_w, int) or self.artin_w < 0:
            raise BadMultiplicities(f"artin_w must be a nonnegative integer, got {self.artin_w!r}")

    @property
    def shift(self) -> ShiftClass:
        return ShiftClass.of(self.k)

    @property
    def layout(self) -> Layout:
        return layout(self.k, self.m)

    def signature(self, contact: bool = True) -> AlgebraSignature:
        return darboux_signature(self.k, self.m, contact, 0)

    def hamiltonian(self, sig: AlgebraSignature | None = None) -> ScalarElement:
        """H over ``sig`` (default: the symplectic signature), validated."""
        if sig is None:
            sig = self.signature(contact=False)
        allowed = {g.name for g in self.layout.generators()}
        H = self.H
        if H is None:
            return sig.zero()
        try:
            if isinstance(H, str):
                H = json.loads(H)
            if isinstance(H, Mapping):
                H = ScalarElement.from_json(H, sig)
            elif isinstance(H, ScalarElement):
                used = H.generators_used()
                if used - allowed:
                    raise MalformedH(f"H uses {sorted(used - allowed)}")
                H = H.embed(sig)
            else:
                raise MalformedH(f"cannot read H of type {type(H).__name__}")
        except UnknownGenerator as e:
            raise MalformedH(f"H refers to unknown generator {e}") from None
        except (ValueError, KeyError, TypeError) as e:
            raise MalformedH(str(e)) from None
        bad = H.generators_used() - allowed
        if bad:
            raise MalformedH(f"H may not involve {sorted(bad)}")
        if H.terms and not H.is_homogeneous(self.k + 1):
            raise WrongDegreeH(f"H has degrees {sorted(H.degrees())}, expected {self.k + 1}")
        return H

    def to_json(self) -> dict:
        H = self.H
        if isinstance(H, ScalarElement):
            H = {"terms": H.to_json()["terms"]}
        elif isinstance(H, str):
            H = json.loads(H)
        d = {"k": self.k, "m": list(self.m), "H": H or {"terms": []}, "artin_w": self.artin_w}
        if self.dw:
            d["dw"] = {n: (v.to_json()["terms"] if isinstance(v, ScalarElement) else v)
                       for n, v in self.dw.items()}
        return d

    @classmethod
    def from_json(cls, data: Mapping) -> "DarbouxSpec":
        return cls(int(data["k"]), tuple(int(v) for v in data["m"]), data.get("H"),
                   int(data.get("artin_w", 0)), data.get("dw"))


def master_equation_sum(k: int, m: Sequence[int], H: ScalarElement) -> ScalarElement:
    """``sum (dH/dx)(dH/dy) + 1/4 sum (dH/dz_mid)^2``."""
    lay = layout(k, m)
    out = H.sig.zero()
    for p in lay.pairs:
        out = out + H.partial(p.x) * H.partial(p.y)
    for z in lay.middles:
        dz = H.partial(z)
        out = out + dz * dz * Fraction(1, 4)
    return out


def check_master_equation(spec: DarbouxSpec) -> Check:
    H = spec.hamiltonian()
    cme = master_equation_sum(spec.k, spec.m, H)
    return Check("master_equation", cme.is_zero(), None if cme.is_zero() else {"cme": str(cme)})


def canonical_hamiltonian(k: int, m: Sequence[int]) -> ScalarElement | None:
    """A nonzero Hamiltonian satisfying the CME, or None when none is offered.

    ``k = -2`` has none: there ``H = sum f_j z_j`` and the CME reads
    ``1/4 sum f_j^2 = 0``, which forces ``f = 0`` over Q.
    """
    sig = darboux_signature(k, m, contact=False)
    lay = layout(k, m)
    if not lay.m[0]:
        return None
    x = sig.gen("x0_1")
    if k == -1:
        H = x * x
        if lay.m[0] >= 2:
            H = H + x * sig.gen("x0_2")
        return H
    ys = [p.y for p in lay.pairs if p.i == 1 and sig.spec(p.y).degree == k + 1]
    if not ys:
        return None
    return sig.gen(ys[0]) * x * x


# ---------------------------------------------------------------------------
# instances

def _terms(a: ScalarElement) -> list:
    return a.to_json()["terms"]


def _form_json(f: Form) -> dict:
    d = f.to_json()
    d.pop("gens")
    return d


def _field_json(v: VectorField) -> dict:
    return v.to_json()


def _field_from_json(data: Mapping, sig: AlgebraSignature) -> VectorField:
    imgs = {n: ScalarElement.from_json({"terms": t}, sig) for n, t in data["images"].items()}
    return VectorField(sig, int(data["degree"]), imgs)


def _differential_from_json(data: Mapping, sig: AlgebraSignature) -> Differential:
    return Differential(sig, {n: ScalarElement.from_json({"terms": t}, sig) for n, t in data.items()})


def digest_of(payload: Mapping) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def kernel_fields(sig: AlgebraSignature, alpha: Form, reeb: VectorField, reeb_gen: str,
                  names: Sequence[str]) -> tuple[list[VectorField], list[str]]:
    """``xi_g = d/dg - alpha(d/dg) R`` for every generator ``g`` other than ``reeb_gen``."""
    fields, labels = [], []
    for g in names:
        if g == reeb_gen:
            continue
        dg = VectorField.coordinate(sig, g)
        a = contract(dg, alpha).to_scalar()
        fields.append(dg - reeb.scaled(a) if a.terms else dg)
        labels.append(f"xi[{g}]")
    return fields, labels


@dataclass
class ContactInstance:
    k: int
    signature: AlgebraSignature
    d: Differential
    alpha: Form
    phi: Form
    H: ScalarElement
    kernel: tuple
    kernel_labels: tuple
    reeb: VectorField
    reeb_generator: str
    sub_algebra_B: tuple
    psi: ScalarElement | None = None
    variant: str = "standard"
    m: tuple | None = None
    meta: dict = field(default_factory=dict)

    kind = "contact"

    @property
    def shift(self) -> ShiftClass | None:
        return ShiftClass.of(self.k) if self.k < 0 else None

    @property
    def artin_generators(self) -> tuple:
        return tuple(n for n in self.signature.names if n not in self.sub_algebra_B)

    @property
    def omega0(self) -> Form:
        return d_dR(self.alpha)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "k": self.k,
            "m": list(self.m) if self.m is not None else None,
            "gens": self.signature.to_json(),
            "d": self.d.to_json(),
            "alpha": _form_json(self.alpha),
            "phi": _form_json(self.phi),
            "H": _terms(self.H),
            "psi": _terms(self.psi) if self.psi is not None else None,
            "kernel": [dict(label=l, **_field_json(v)) for l, v in zip(self.kernel_labels, self.kernel)],
            "reeb": _field_json(self.reeb),
            "reeb_generator": self.reeb_generator,
            "sub_algebra_B": list(self.sub_algebra_B),
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ContactInstance":
        sig = AlgebraSignature.from_json(data["gens"])
        kernel = [_field_from_json(v, sig) for v in data["kernel"]]
        psi = data.get("psi")
        return cls(
            k=int(data["k"]),
            signature=sig,
            d=_differential_from_json(data["d"], sig),
            alpha=Form.from_json(data["alpha"], sig),
            phi=Form.from_json(data["phi"], sig),
            H=ScalarElement.from_json({"terms": data["H"]}, sig),
            kernel=tuple(kernel),
            kernel_labels=tuple(v["label"] for v in data["kernel"]),
            reeb=_field_from_json(data["reeb"], sig),
            reeb_generator=data["reeb_generator"],
            sub_algebra_B=tuple(data["sub_algebra_B"]),
            psi=ScalarElement.from_json({"terms": psi}, sig) if psi is not None else None,
            variant=data.get("variant", "standard"),
            m=tuple(data["m"]) if data.get("m") is not None else None,
            meta=dict(data.get("meta") or {}),
        )

    def digest(self) -> str:
        return digest_of(self.to_json())


@dataclass
class SymplecticInstance:
    k: int
    signature: AlgebraSignature
    d: Differential
    omega0: Form
    phi: Form
    H: ScalarElement
    sub_algebra_B: tuple
    theta: Form | None = None
    variant: str = "standard"
    m: tuple | None = None
    meta: dict = field(default_factory=dict)

    kind = "symplectic"

    @property
    def shift(self) -> ShiftClass:
        return ShiftClass.of(self.k)

    @property
    def artin_generators(self) -> tuple:
        return tuple(n for n in self.signature.names if n not in self.sub_algebra_B)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "k": self.k,
            "m": list(self.m) if self.m is not None else None,
            "gens": self.signature.to_json(),
            "d": self.d.to_json(),
            "omega0": _form_json(self.omega0),
            "phi": _form_json(self.phi),
            "H": _terms(self.H),
            "theta": _form_json(self.theta) if self.theta is not None else None,
            "sub_algebra_B": list(self.sub_algebra_B),
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymplecticInstance":
        sig = AlgebraSignature.from_json(data["gens"])
        th = data.get("theta")
        return cls(
            k=int(data["k"]),
            signature=sig,
            d=_differential_from_json(data["d"], sig),
            omega0=Form.from_json(data["omega0"], sig),
            phi=Form.from_json(data["phi"], sig),
            H=ScalarElement.from_json({"terms": data["H"]}, sig),
            sub_algebra_B=tuple(data["sub_algebra_B"]),
            theta=Form.from_json(th, sig) if th is not None else None,
            variant=data.get("variant", "standard"),
            m=tuple(data["m"]) if data.get("m") is not None else None,
            meta=dict(data.get("meta") or {}),
        )

    def digest(self) -> str:
        return digest_of(self.to_json())


def instance_from_json(data: Mapping):
    kind = data.get("kind")
    if kind == "contact":
        return ContactInstance.from_json(data)
    if kind == "symplectic":
        return SymplecticInstance.from_json(data)
    raise ValueError(f"unknown instance kind {kind!r}")


# ---------------------------------------------------------------------------
# builders

def liouville_data(lay: Layout, sig: AlgebraSignature):
    """Return ``(theta, phi, psi)`` over ``sig``."""
    k = lay.k
    theta = Form.zero(sig, 1)
    phi = Form.zero(sig, 1)
    psi = sig.zero()
    for p in lay.pairs:
        X, Y = sig.gen(p.x), sig.gen(p.y)
        theta = theta + Y * Form.d(sig, p.x) * p.sign
        phi = phi + X * Form.d(sig, p.y) * (-p.i) + Y * Form.d(sig, p.x) * (p.sign * (k + p.i))
        if p.i:
            psi = psi + X * Y * (sign(p.i) * p.i)
    for z in lay.middles:
        Z = sig.gen(z)
        theta = theta + Z * Form.d(sig, z)
        phi = phi + Z * Form.d(sig, z) * k
    return theta, phi, psi


def hamiltonian_images(lay: Layout, H: ScalarElement) -> dict:
    imgs = {}
    for p in lay.pairs:
        imgs[p.x] = H.partial(p.y) * p.sign
        imgs[p.y] = H.partial(p.x)
    for z in lay.middles:
        imgs[z] = H.partial(z) * Fraction(1, 2)
    return imgs


def _resolve_dw(dw, sig: AlgebraSignature, names: Sequence[str], k: int) -> dict:
    out = {}
    if not dw:
        return out
    if not isinstance(dw, Mapping):
        dw = dict(zip(names, dw))
    for n, img in dw.items():
        if n not in names:
            raise UnknownGenerator(f"{n} is not an Artin generator")
        if isinstance(img, ScalarElement):
            img = img.embed(sig)
        elif isinstance(img, Mapping):
            img = ScalarElement.from_json(img, sig)
        else:
            img = ScalarElement.from_json({"terms": img}, sig)
        if img.terms and not img.is_homogeneous(k):
            raise DSquaredFailsOnW(f"d({n}) must have degree {k}")
        out[n] = img
    return out


def _attach_w(d: Differential, sig: AlgebraSignature, ws: Sequence[str], dw, k: int) -> Differential:
    imgs = dict(d.images)
    imgs.update(_resolve_dw(dw, sig, ws, k))
    new = Differential(sig, imgs)
    for w in ws:
        if w in new.images and new(new.images[w]).terms:
            raise DSquaredFailsOnW(f"d^2({w}) = {new(new.images[w])}")
    return new


def _require_cme(spec: DarbouxSpec, H: ScalarElement) -> None:
    cme = master_equation_sum(spec.k, spec.m, H.embed(spec.signature(False)) if H.sig != spec.signature(False) else H)
    if cme.terms:
        raise MasterEquationFails(f"CME = {cme}")


def build_contact(spec: DarbouxSpec) -> ContactInstance:
    lay = spec.layout
    k = lay.k
    base = spec.signature(contact=True)
    H = spec.hamiltonian(base)
    _require_cme(spec, spec.hamiltonian())
    theta, phi, psi = liouville_data(lay, base)
    imgs = hamiltonian_images(lay, H)
    d0 = Differential(base, imgs)
    imgs["z"] = (H + d0(psi)) * Fraction(-1, k)
    d = Differential(base, imgs)
    alpha = Form.d(base, "z") + theta
    reeb = VectorField.coordinate(base, "z")
    kernel, labels = kernel_fields(base, alpha, reeb, "z", base.names)
    inst = ContactInstance(
        k=k, signature=base, d=d, alpha=alpha, phi=phi, H=H, kernel=tuple(kernel),
        kernel_labels=tuple(labels), reeb=reeb, reeb_generator="z",
        sub_algebra_B=tuple(base.names), psi=psi, variant="standard", m=lay.m,
        meta={"shift": lay.shift.value},
    )
    if spec.artin_w:
        inst = extend_with_artin_generators(inst, spec.artin_w, spec.dw)
    return inst


def build_alternative_contact_form(inst: ContactInstance) -> ContactInstance:
    """``-k dz = H`` and ``alpha' = dz + phi/k``; Odd class only."""
    if inst.k >= 0 or inst.shift is not ShiftClass.ODD:
        raise UnsupportedClass(f"alternative form is only implemented for odd k (got k={inst.k})")
    if inst.variant != "standard":
        raise UnsupportedClass(f"expected a standard instance, got variant {inst.variant!r}")
    sig = inst.signature
    k = inst.k
    d = inst.d.with_images(z=inst.H * Fraction(-1, k))
    alpha = Form.d(sig, "z") + inst.phi / k
    reeb = VectorField.coordinate(sig, "z")
    kernel, labels = kernel_fields(sig, alpha, reeb, "z", inst.sub_algebra_B)
    kernel += [VectorField.coordinate(sig, w) for w in inst.artin_generators]
    labels += [f"xi[{w}]" for w in inst.artin_generators]
    return replace(inst, d=d, alpha=alpha, kernel=tuple(kernel), kernel_labels=tuple(labels),
                   reeb=reeb, variant="alternative")


def build_symplectic(spec: DarbouxSpec) -> SymplecticInstance:
    lay = spec.layout
    sig = spec.signature(contact=False)
    H = spec.hamiltonian(sig)
    _require_cme(spec, H)
    theta, phi, _ = liouville_data(lay, sig)
    d = Differential(sig, hamiltonian_images(lay, H))
    inst = SymplecticInstance(
        k=lay.k, signature=sig, d=d, omega0=d_dR(theta), phi=phi, H=H,
        sub_algebra_B=tuple(sig.names), theta=theta, m=lay.m,
        meta={"shift": lay.shift.value},
    )
    if spec.artin_w:
        inst = extend_with_artin_generators(inst, spec.artin_w, spec.dw)
    return inst


def extend_with_artin_generators(inst, n: int, dw=None):
    """Append ``n`` generators ``w`` in degree ``k-1`` with ``dw`` (default 0)."""
    if not isinstance(n, int) or n < 0:
        raise BadMultiplicities(f"number of Artin generators must be >= 0, got {n!r}")
    if n == 0 and not dw:
        return inst
    old = inst.signature
    start = len(inst.artin_generators) + 1
    ws = artin_names(n, start)
    sig = old.extend(GeneratorSpec(w, inst.k - 1) for w in ws)
    d = _attach_w(inst.d.embed(sig), sig, ws, dw, inst.k)
    meta = dict(inst.meta)
    meta["artin_w"] = len(inst.artin_generators) + n
    if isinstance(inst, ContactInstance):
        kernel = [v.embed(sig) for v in inst.kernel] + [VectorField.coordinate(sig, w) for w in ws]
        labels = list(inst.kernel_labels) + [f"xi[{w}]" for w in ws]
        return replace(
            inst, signature=sig, d=d, alpha=inst.alpha.embed(sig), phi=inst.phi.embed(sig),
            H=inst.H.embed(sig), kernel=tuple(kernel), kernel_labels=tuple(labels),
            reeb=inst.reeb.embed(sig), psi=inst.psi.embed(sig) if inst.psi is not None else None,
            meta=meta,
        )
    return replace(
        inst, signature=sig, d=d, omega0=inst.omega0.embed(sig), phi=inst.phi.embed(sig),
        H=inst.H.embed(sig), theta=inst.theta.embed(sig) if inst.theta is not None else None,
        meta=meta,
    )


def h0_surrogate(inst) -> dict:
    """Degree-0 generators and the relations d(g) for g in degree -1."""
    sig = inst.signature
    gens0 = sorted(n for n in sig.names if sig.spec(n).degree == 0)
    rels = sorted(str(inst.d(n)) for n in sig.names if sig.spec(n).degree == -1 and inst.d(n).terms)
    return {"degree0": gens0, "relations": rels}


def check_h0_truncation(original, extended) -> Check:
    a, b = h0_surrogate(original), h0_surrogate(extended)
    return Check("h0_truncation", a == b, None if a == b else {"original": a, "extended": b})


__all__ = [
    "ShiftClass", "shift_class", "Layout", "Pair", "layout", "multiplicity_length",
    "darboux_signature", "DarbouxSpec", "master_equation_sum", "check_master_equation",
    "canonical_hamiltonian", "ContactInstance", "SymplecticInstance", "instance_from_json",
    "kernel_fields", "liouville_data", "hamiltonian_images", "build_contact",
    "build_alternative_contact_form", "build_symplectic", "extend_with_artin_generators",
    "h0_surrogate", "check_h0_truncation", "check_d_squared", "digest_of",
]
