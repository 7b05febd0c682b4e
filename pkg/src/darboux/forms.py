"""
The de Rham algebra DR(A), vector fields and internal differentials.

DR(A) is modelled as the free graded-commutative algebra on the generators
``g`` of A together with their de Rham differentials ``dg``. A form is
bigraded by weight (number of ``dg`` factors) and internal degree, where
``dg`` carries the degree of ``g``. Koszul signs use the total parity
``weight + degree``, so ``dg`` has parity ``deg g + 1`` and

    dg * dh = (-1)^((deg g + 1)(deg h + 1)) dh * dg.

Internally a form term is a single monomial over ``2n`` variables: index
``i < n`` is ``g_i`` and ``n + i`` is ``d g_i``. Sorting puts coefficient
factors first and the wedge word last, which is the stored normal form.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import (
    InconsistentDifferential,
    SignatureMismatch,
    UnknownGenerator,
    WeightMismatch,
)
from .graded import (
    AlgebraSignature,
    Mono,
    ScalarElement,
    coef_str,
    left_partial,
    mono_mul,
    right_partial,
)
from .report import Check


class _DRTables:
    """Parity/degree lookups of the de Rham variables of one signature."""

    _cache: dict = {}

    def __new__(cls, sig: AlgebraSignature):
        hit = cls._cache.get(sig)
        if hit is not None:
            return hit
        self = super().__new__(cls)
        n = len(sig)
        self.n = n
        self.par = tuple(d & 1 for d in sig.degrees) + tuple((d + 1) & 1 for d in sig.degrees)
        self.deg = tuple(sig.degrees) * 2
        cls._cache[sig] = self
        return self


def _weight(m: Mono, n: int) -> int:
    return sum(e for i, e in m if i >= n)


def _degree(m: Mono, deg) -> int:
    return sum(deg[i] * e for i, e in m)


class Form:
    """Weight-homogeneous element of DR(A)."""

    __slots__ = ("sig", "weight", "terms", "_t")

    def __init__(self, sig: AlgebraSignature, weight: int, terms: Mapping[Mono, Fraction] | None = None):
        self.sig = sig
        self.weight = weight
        self._t = _DRTables(sig)
        self.terms = {}
        for m, c in (terms or {}).items():
            if c == 0:
                continue
            if _weight(m, self._t.n) != weight:
                raise WeightMismatch(f"term of weight {_weight(m, self._t.n)} in a weight-{weight} form")
            self.terms[m] = Fraction(c)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, sig: AlgebraSignature, weight: int = 0) -> "Form":
        return cls(sig, weight, {})

    @classmethod
    def scalar(cls, a: ScalarElement | int | Fraction, sig: AlgebraSignature | None = None) -> "Form":
        if isinstance(a, ScalarElement):
            return cls(a.sig, 0, a.terms)
        return cls(sig, 0, {(): Fraction(a)})

    @classmethod
    def d(cls, sig: AlgebraSignature, name: str) -> "Form":
        """The basis 1-form d_dR g."""
        return cls(sig, 1, {((len(sig) + sig.index(name), 1),): Fraction(1)})

    @classmethod
    def wedge_word(cls, sig: AlgebraSignature, names: Iterable[str], coef=1) -> "Form":
        out = cls.scalar(Fraction(coef), sig)
        for n in names:
            out = out * cls.d(sig, n)
        return out

    # -- arithmetic --------------------------------------------------------
    def _lift(self, other) -> "Form":
        if isinstance(other, Form):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig!r} vs {other.sig!r}")
            return other
        if isinstance(other, ScalarElement):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig!r} vs {other.sig!r}")
            return Form.scalar(other)
        if isinstance(other, (int, Fraction)):
            return Form.scalar(other, self.sig)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.weight != self.weight:
            raise WeightMismatch(f"adding weight {self.weight} and {other.weight}")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Form(self.sig, self.weight, out)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.sig, self.weight, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Wedge product (scalars multiply as weight-0 forms)."""
        if isinstance(other, (int, Fraction)):
            return Form(self.sig, self.weight, {m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        par = self._t.par
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = mono_mul(m1, m2, par)
                if s:
                    out[m] = out.get(m, 0) + s * c1 * c2
        return Form(self.sig, self.weight + other.weight, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ScalarElement)):
            other = self._lift(other)
        if not isinstance(other, Form):
            return NotImplemented
        if self.sig != other.sig:
            return False
        if not self.terms and not other.terms:
            return True
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, self.weight, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -----------------------------------------------------------
    def degrees(self) -> set[int]:
        return {_degree(m, self._t.deg) for m in self.terms}

    @property
    def degree(self) -> int | None:
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    # -- structure ---------------------------------------------------------
    def to_scalar(self) -> ScalarElement:
        if self.terms and self.weight != 0:
            raise WeightMismatch("not a weight-0 form")
        return ScalarElement(self.sig, self.terms)

    def coefficient(self, name: str) -> ScalarElement:
        """For a 1-form ``sum a_g dg`` return ``a_g``."""
        if self.terms and self.weight != 1:
            raise WeightMismatch("coefficient() needs a 1-form")
        return right_partial_form(self, name).to_scalar()

    def uses(self) -> set[str]:
        """Generator names appearing either as coefficients or as dg."""
        n = self._t.n
        return {self.sig.names[i % n] for m in self.terms for i, _ in m}

    def embed(self, sig: AlgebraSignature) -> "Form":
        if sig == self.sig:
            return self
        out = Form.zero(sig, self.weight)
        n = self._t.n
        for m, c in self.terms.items():
            coeff = sig.monomial(((self.sig.names[i], e) for i, e in m if i < n), c)
            word = [self.sig.names[i - n] for i, e in m if i >= n for _ in range(e)]
            out = out + Form.scalar(coeff) * Form.wedge_word(sig, word)
        return out

    # -- display / serialization ------------------------------------------
    def _term_str(self, m: Mono) -> str:
        n = self._t.n
        names = self.sig.names
        parts = []
        for i, e in m:
            base = names[i] if i < n else f"d{names[i - n]}"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms):
            c = self.terms[m]
            body = self._term_str(m)
            if body == "1":
                out.append(coef_str(c))
            elif c == 1:
                out.append(body)
            elif c == -1:
                out.append("-" + body)
            else:
                out.append(f"{coef_str(c)}*{body}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self):
        return f"Form[w={self.weight}]({self})"

    def to_json(self) -> dict:
        n = self._t.n
        names = self.sig.names
        terms = []
        for m in sorted(self.terms):
            terms.append({
                "coef": coef_str(self.terms[m]),
                "mono": [[names[i], e] for i, e in m if i < n],
                "wedge": [names[i - n] for i, e in m if i >= n for _ in range(e)],
            })
        return {"gens": self.sig.to_json(), "weight": self.weight, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping, sig: AlgebraSignature | None = None) -> "Form":
        if sig is None:
            sig = AlgebraSignature.from_json(data["gens"])
        out = Form.zero(sig, int(data.get("weight", 0)))
        for t in data.get("terms", []):
            coeff = sig.monomial(((nm, int(e)) for nm, e in t.get("mono", [])), Fraction(t["coef"]))
            out = out + Form.scalar(coeff) * Form.wedge_word(sig, t.get("wedge", []))
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def as_form(x, sig: AlgebraSignature | None = None) -> Form:
    if isinstance(x, Form):
        return x
    if isinstance(x, ScalarElement):
        return Form.scalar(x)
    return Form.scalar(Fraction(x), sig)


# ---------------------------------------------------------------------------
# partial derivatives inside DR(A)

def _left_partial_var(f: Form, var: int) -> Form:
    par = f._t.par
    n = f._t.n
    out: dict = {}
    for m, c in f.terms.items():
        s, r = left_partial(m, var, par)
        if s:
            out[r] = out.get(r, 0) + s * c
    return Form(f.sig, f.weight - (1 if var >= n else 0), out)


def _right_partial_var(f: Form, var: int) -> Form:
    par = f._t.par
    n = f._t.n
    out: dict = {}
    for m, c in f.terms.items():
        s, r = right_partial(m, var, par)
        if s:
            out[r] = out.get(r, 0) + s * c
    return Form(f.sig, f.weight - (1 if var >= n else 0), out)


def right_partial_form(f: Form, name: str) -> Form:
    """Right derivative with respect to the 1-form d_dR g."""
    return _right_partial_var(f, f._t.n + f.sig.index(name))


def apply_derivation(f: Form, images: Callable[[int], Form | None]) -> Form:
    """Extend a derivation from its values on the 2n de Rham variables.

    ``D(F) = sum_v D(v) * dF/dv`` with left partials; this is the unique
    derivation of the parity of the images.
    """
    out = None
    seen = {i for m in f.terms for i, _ in m}
    for v in sorted(seen):
        img = images(v)
        if img is None or not img.terms:
            continue
        part = _left_partial_var(f, v)
        if not part.terms:
            continue
        term = img * part
        out = term if out is None else out + term
    if out is None:
        return Form.zero(f.sig, f.weight)
    return out


def de_rham_differential(f: Form | ScalarElement) -> Form:
    """d_dR: weight +1, degree preserved, d_dR(g) = dg, d_dR(dg) = 0."""
    f = as_form(f)
    n = f._t.n
    sig = f.sig

    def img(v):
        return Form.d(sig, sig.names[v]) if v < n else None

    out = apply_derivation(f, img)
    if not out.terms:
        return Form.zero(sig, f.weight + 1)
    return out


d_dR = de_rham_differential


# ---------------------------------------------------------------------------
# vector fields

class VectorField:
    """Graded derivation of A given by generator images."""

    __slots__ = ("sig", "degree", "images")

    def __init__(self, sig: AlgebraSignature, degree: int, images: Mapping[str, ScalarElement]):
        self.sig = sig
        self.degree = degree
        clean = {}
        for name, img in images.items():
            g = sig.spec(name)
            if not isinstance(img, ScalarElement):
                img = sig.const(img)
            if img.sig != sig:
                raise SignatureMismatch(name)
            if not img.terms:
                continue
            if not img.is_homogeneous(g.degree + degree):
                raise InconsistentDifferential(
                    f"image of {name} has degrees {sorted(img.degrees())}, expected {g.degree + degree}")
            clean[name] = img
        self.images = clean

    @classmethod
    def coordinate(cls, sig: AlgebraSignature, name: str) -> "VectorField":
        """The partial derivative d/dg, of degree -deg g."""
        return cls(sig, -sig.spec(name).degree, {name: sig.one()})

    def __call__(self, name: str) -> ScalarElement:
        return self.images.get(name, self.sig.zero())

    def __add__(self, other: "VectorField") -> "VectorField":
        if other.sig != self.sig:
            raise SignatureMismatch("vector field signatures differ")
        if other.images and self.images and other.degree != self.degree:
            raise InconsistentDifferential("adding vector fields of different degree")
        deg = self.degree if self.images else other.degree
        out = dict(self.images)
        for k, v in other.images.items():
            out[k] = out.get(k, self.sig.zero()) + v
        return VectorField(self.sig, deg, out)

    def __neg__(self):
        return VectorField(self.sig, self.degree, {k: -v for k, v in self.images.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, a: ScalarElement | int | Fraction) -> "VectorField":
        """The field ``a * v`` (coefficient multiplied on the left of each image)."""
        if not isinstance(a, ScalarElement):
            return VectorField(self.sig, self.degree, {k: v * Fraction(a) for k, v in self.images.items()})
        deg = a.degree
        if deg is None:
            if not a.terms:
                return VectorField(self.sig, self.degree, {})
            raise InconsistentDifferential("scaling by an inhomogeneous coefficient")
        return VectorField(self.sig, self.degree + deg, {k: a * v for k, v in self.images.items()})

    def apply(self, a: ScalarElement) -> ScalarElement:
        """``v(a) := iota_v(d_dR a)``."""
        return contract(self, de_rham_differential(a)).to_scalar()

    def embed(self, sig: AlgebraSignature) -> "VectorField":
        return VectorField(sig, self.degree, {k: v.embed(sig) for k, v in self.images.items()})

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.sig == other.sig
                and self.images == other.images and (not self.images or self.degree == other.degree))

    def __repr__(self):
        inner = ", ".join(f"{k}->{v}" for k, v in self.images.items())
        return f"VectorField[deg={self.degree}]({inner})"

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "images": {k: self.images[k].to_json()["terms"] for k in sorted(self.images)}}


def contract(v: VectorField, f: Form | ScalarElement) -> Form:
    """Interior product iota_v, inserting ``v`` into the right-most slot.

    ``iota_v(a dg) = a v(g)``, extended as a right derivation of parity
    ``deg v + 1``:
        iota_v(w * u) = w * iota_v(u) + (-1)^(|u| * (deg v + 1)) iota_v(w) * u
    where ``|u|`` is the total parity (weight + degree) of ``u``.
    """
    f = as_form(f)
    if f.sig != v.sig:
        raise SignatureMismatch("contract: signatures differ")
    sig = f.sig
    if f.weight == 0:
        return Form.zero(sig, 0)
    out = Form.zero(sig, f.weight - 1)
    for name, img in v.images.items():
        part = right_partial_form(f, name)
        if part.terms:
            out = out + part * Form.scalar(img)
    return out


def double_contract(sigma: VectorField, eta: VectorField, f: Form) -> ScalarElement:
    """``iota_eta iota_sigma f`` for a 2-form, as a scalar."""
    return contract(eta, contract(sigma, f)).to_scalar()


# ---------------------------------------------------------------------------
# internal differentials

class Differential:
    """Degree +1 derivation of A given by its values on generators."""

    def __init__(self, sig: AlgebraSignature, images: Mapping[str, ScalarElement] | None = None):
        self.sig = sig
        clean = {}
        for name, img in (images or {}).items():
            g = sig.spec(name)
            if not isinstance(img, ScalarElement):
                img = sig.const(img)
            if img.sig != sig:
                raise SignatureMismatch(name)
            if not img.terms:
                continue
            if not img.is_homogeneous(g.degree + 1):
                raise InconsistentDifferential(
                    f"d({name}) has degrees {sorted(img.degrees())}, expected {g.degree + 1}")
            clean[name] = img
        self.images = clean
        self._square_check: Check | None = None

    def __call__(self, x):
        """Apply to a generator name, a scalar element or a form."""
        if isinstance(x, str):
            if x not in self.sig:
                raise UnknownGenerator(x)
            return self.images.get(x, self.sig.zero())
        if isinstance(x, ScalarElement):
            return self._apply(Form.scalar(x)).to_scalar()
        return self._apply(x)

    def _apply(self, f: Form) -> Form:
        n = len(self.sig)
        names = self.sig.names
        cache: dict = {}

        def img(v):
            if v in cache:
                return cache[v]
            if v < n:
                a = self.images.get(names[v])
                r = Form.scalar(a) if a is not None else None
            else:
                a = self.images.get(names[v - n])
                r = -de_rham_differential(a) if a is not None else None
            cache[v] = r
            return r

        out = apply_derivation(f, img)
        if not out.terms:
            return Form.zero(self.sig, f.weight)
        return out

    def with_images(self, **updates) -> "Differential":
        new = dict(self.images)
        new.update(updates)
        return Differential(self.sig, new)

    def embed(self, sig: AlgebraSignature, extra: Mapping[str, ScalarElement] | None = None) -> "Differential":
        imgs = {k: v.embed(sig) for k, v in self.images.items()}
        imgs.update(extra or {})
        return Differential(sig, imgs)

    def square_check(self) -> Check:
        if self._square_check is None:
            self._square_check = check_d_squared(self)
        return self._square_check

    def __eq__(self, other):
        return isinstance(other, Differential) and self.sig == other.sig and self.images == other.images

    def __repr__(self):
        inner = ", ".join(f"d{k}={v}" for k, v in self.images.items())
        return f"Differential({inner})"

    def to_json(self) -> dict:
        return {k: self.images[k].to_json()["terms"] for k in sorted(self.images)}


def check_d_squared(d: Differential) -> Check:
    """Pass iff d(d(g)) = 0 for every generator; the witness names the first failure."""
    for name in d.sig.names:
        img = d.images.get(name)
        if img is None:
            continue
        dd = d(img)
        if dd.terms:
            return Check("d_squared", False, {"generator": name, "d2": str(dd)})
    return Check("d_squared", True, None)


def apply_internal_differential(d: Differential, f: Form | ScalarElement) -> Form:
    """Extend d to DR(A) with d(d_dR g) = -d_dR(d g); requires d^2 = 0."""
    verdict = d.square_check()
    if not verdict.passed:
        raise InconsistentDifferential(f"d^2 != 0 at {verdict.witness['generator']}")
    return d._apply(as_form(f))


def wedge(a: Form, b: Form) -> Form:
    return as_form(a) * as_form(b)
