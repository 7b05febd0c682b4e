"""
Free graded-commutative polynomial algebras over Q.

Generators live in nonpositive cohomological degrees. Odd generators are
exterior; even generators are polynomial; degree-0 generators flagged
``invertible`` accept negative exponents (Laurent variables).

A monomial is a tuple of ``(index, exponent)`` pairs sorted by generator
index. The low-level helpers below are parametrised by a parity table so
the same Koszul bookkeeping drives both the scalar algebra and the de Rham
algebra built on top of it (see :mod:`darboux.forms`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateName,
    IllFormedMonomial,
    InvertibleNonzeroDegree,
    MissingAssignment,
    PositiveDegree,
    SignatureMismatch,
    UnknownGenerator,
    ZeroForInvertible,
)

Mono = tuple  # tuple[tuple[int, int], ...]

ONE: Mono = ()


# ---------------------------------------------------------------------------
# monomial kernels

def sign(n: int) -> int:
    """(-1)^n as an int, for any integer n."""
    return -1 if n % 2 else 1


def mono_parity(m: Mono, par: Sequence[int]) -> int:
    p = 0
    for i, e in m:
        p += par[i] * e
    return p & 1


def mono_mul(a: Mono, b: Mono, par: Sequence[int]):
    """Product of two normal-form monomials.

    Returns ``(sign, mono)``; ``sign == 0`` when an odd variable would be
    squared.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    swaps = 0
    # parity of the suffix of ``a`` still to the right of the cursor
    out = []
    ia = 0
    na = len(a)
    suffix_odd = mono_parity(a, par)
    for j, f in b:
        while ia < na and a[ia][0] < j:
            out.append(a[ia])
            suffix_odd ^= (par[a[ia][0]] * a[ia][1]) & 1
            ia += 1
        if ia < na and a[ia][0] == j:
            if par[j] & 1:
                return 0, None
            e = a[ia][1] + f
            # a[ia] itself is even, so it does not change suffix parity
            if e:
                out.append((j, e))
            ia += 1
            # variables still pending in a are to the right of j
            if (par[j] * f) & 1:
                swaps += suffix_odd
            continue
        # b-variable j moves left past every remaining a-variable
        if (par[j] * f) & 1:
            swaps += suffix_odd
        out.append((j, f))
    out.extend(a[ia:])
    return (-1 if swaps & 1 else 1), tuple(out)


def left_partial(m: Mono, idx: int, par: Sequence[int]):
    """Left derivative: bring the variable to the front, then strike it."""
    before = 0
    for pos, (i, e) in enumerate(m):
        if i == idx:
            sign = -1 if (par[idx] & before & 1) else 1
            rest = m[:pos] + (((i, e - 1),) if e - 1 else ()) + m[pos + 1:]
            return sign * e, rest
        before += par[i] * e
    return 0, None


def right_partial(m: Mono, idx: int, par: Sequence[int]):
    """Right derivative: bring the variable to the back, then strike it."""
    for pos, (i, e) in enumerate(m):
        if i == idx:
            after = mono_parity(m[pos + 1:], par)
            sign = -1 if (par[idx] & after & 1) else 1
            rest = m[:pos] + (((i, e - 1),) if e - 1 else ()) + m[pos + 1:]
            return sign * e, rest
    return 0, None


# ---------------------------------------------------------------------------
# signatures

@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    invertible: bool = False

    def to_json(self) -> dict:
        d = {"name": self.name, "deg": self.degree}
        if self.invertible:
            d["inv"] = True
        return d


class AlgebraSignature:
    """Ordered generator list of a free graded-commutative Q-algebra."""

    def __init__(self, gens: Iterable[GeneratorSpec]):
        gens = tuple(gens)
        seen = set()
        for g in gens:
            if g.name in seen:
                raise DuplicateName(g.name)
            seen.add(g.name)
            if g.degree > 0:
                raise PositiveDegree(f"{g.name} has degree {g.degree}")
            if g.invertible and g.degree != 0:
                raise InvertibleNonzeroDegree(g.name)
        self.generators = gens
        self.names = tuple(g.name for g in gens)
        self.degrees = tuple(g.degree for g in gens)
        self.parities = tuple(d & 1 for d in self.degrees)
        self._index = {g.name: i for i, g in enumerate(gens)}

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, AlgebraSignature) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}{'*' if g.invertible else ''}" for g in self.generators)
        return f"AlgebraSignature[{inner}]"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def __contains__(self, name):
        return name in self._index

    def spec(self, name: str) -> GeneratorSpec:
        return self.generators[self.index(name)]

    def extend(self, gens: Iterable[GeneratorSpec]) -> "AlgebraSignature":
        return AlgebraSignature(self.generators + tuple(gens))

    def restrict(self, names: Iterable[str]) -> "AlgebraSignature":
        keep = set(names)
        return AlgebraSignature(g for g in self.generators if g.name in keep)

    # element constructors
    def zero(self) -> "ScalarElement":
        return ScalarElement(self, {})

    def one(self) -> "ScalarElement":
        return ScalarElement(self, {ONE: Fraction(1)})

    def const(self, c) -> "ScalarElement":
        return ScalarElement(self, {ONE: Fraction(c)})

    def gen(self, name: str) -> "ScalarElement":
        return ScalarElement(self, {((self.index(name), 1),): Fraction(1)})

    def gens(self, *names: str):
        return tuple(self.gen(n) for n in names)

    def monomial(self, powers: Iterable[tuple[str, int]], coef=1) -> "ScalarElement":
        """Build ``coef * g1^e1 * g2^e2 * ...`` in the order given (Koszul signs applied)."""
        out = self.const(coef)
        for name, e in powers:
            out = out * self._power(name, e)
        return out

    def _power(self, name: str, e: int) -> "ScalarElement":
        i = self.index(name)
        if e == 0:
            return self.one()
        g = self.generators[i]
        if e < 0 and not g.invertible:
            raise IllFormedMonomial(f"negative power of {name}")
        if g.degree & 1 and e > 1:
            raise IllFormedMonomial(f"odd generator {name} with exponent {e}")
        return ScalarElement(self, {((i, e),): Fraction(1)})

    def to_json(self) -> list:
        return [g.to_json() for g in self.generators]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "AlgebraSignature":
        return cls(GeneratorSpec(d["name"], int(d["deg"]), bool(d.get("inv", False))) for d in data)


def make_algebra(gens: Iterable[GeneratorSpec | tuple]) -> AlgebraSignature:
    """Signature with the declaration order as the global generator order."""
    specs = [g if isinstance(g, GeneratorSpec) else GeneratorSpec(*g) for g in gens]
    return AlgebraSignature(specs)


def check_mono(sig: AlgebraSignature, m: Mono) -> None:
    last = -1
    for i, e in m:
        if i <= last:
            raise IllFormedMonomial(f"unsorted monomial {m}")
        last = i
        g = sig.generators[i]
        if e == 0:
            raise IllFormedMonomial("zero exponent stored")
        if e < 0 and not g.invertible:
            raise IllFormedMonomial(f"negative power of {g.name}")
        if g.degree & 1 and e != 1:
            raise IllFormedMonomial(f"odd generator {g.name} with exponent {e}")


def mono_degree(sig: AlgebraSignature, m: Mono) -> int:
    return sum(sig.degrees[i] * e for i, e in m)


def mono_str(names: Sequence[str], m: Mono) -> str:
    if not m:
        return "1"
    return "*".join(names[i] if e == 1 else f"{names[i]}^{e}" for i, e in m)


def coef_str(c: Fraction) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# scalars

class ScalarElement:
    """Sparse Q-linear combination of normal-form monomials."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: Mapping[Mono, Fraction]):
        self.sig = sig
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "ScalarElement":
        if isinstance(other, ScalarElement):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig!r} vs {other.sig!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.sig.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ScalarElement(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarElement(self.sig, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ScalarElement(self.sig, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        par = self.sig.parities
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = mono_mul(m1, m2, par)
                if s:
                    out[m] = out.get(m, 0) + s * c1 * c2
        return ScalarElement(self.sig, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a general element")
        out = self.sig.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.sig.const(other)
        if not isinstance(other, ScalarElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -----------------------------------------------------------
    def degrees(self) -> set[int]:
        return {mono_degree(self.sig, m) for m in self.terms}

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; ``None`` for zero or mixed sums."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or degree in ds)

    def generators_used(self) -> set[str]:
        return {self.sig.names[i] for m in self.terms for i, _ in m}

    # -- calculus ----------------------------------------------------------
    def partial(self, name: str) -> "ScalarElement":
        """Graded left partial derivative with respect to a generator."""
        idx = self.sig.index(name)
        par = self.sig.parities
        out: dict = {}
        for m, c in self.terms.items():
            s, r = left_partial(m, idx, par)
            if s:
                out[r] = out.get(r, 0) + s * c
        return ScalarElement(self.sig, out)

    def evaluate(self, point: "Point") -> Fraction:
        return evaluate_at_point(self, point)

    def embed(self, sig: AlgebraSignature) -> "ScalarElement":
        """Re-express over a signature that contains all generators used."""
        if sig == self.sig:
            return self
        out = sig.zero()
        for m, c in self.terms.items():
            out = out + sig.monomial(((self.sig.names[i], e) for i, e in m), c)
        return out

    # -- display / serialization ------------------------------------------
    def __repr__(self):
        return f"ScalarElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            ms = mono_str(self.sig.names, m)
            if ms == "1":
                parts.append(coef_str(c))
            elif c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append("-" + ms)
            else:
                parts.append(f"{coef_str(c)}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "gens": self.sig.to_json(),
            "terms": [
                {"coef": coef_str(self.terms[m]),
                 "mono": [[self.sig.names[i], e] for i, e in m]}
                for m in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, sig: AlgebraSignature | None = None) -> "ScalarElement":
        """Parse the element JSON; with ``sig`` given, names are resolved against it."""
        if sig is None:
            sig = AlgebraSignature.from_json(data["gens"])
        out = sig.zero()
        for t in data.get("terms", []):
            out = out + sig.monomial(((n, int(e)) for n, e in t["mono"]), Fraction(t["coef"]))
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# points of spec H^0

class Point:
    """Rational values for every degree-0 generator."""

    def __init__(self, sig: AlgebraSignature, assignment: Mapping[str, object]):
        values = {}
        for name, v in assignment.items():
            g = sig.spec(name)
            if g.degree != 0:
                raise UnknownGenerator(f"{name} is not a degree-0 generator")
            v = Fraction(v)
            if g.invertible and v == 0:
                raise ZeroForInvertible(name)
            values[name] = v
        for g in sig.generators:
            if g.degree == 0 and g.name not in values:
                raise MissingAssignment(g.name)
        self.sig = sig
        self.values = values

    def __getitem__(self, name):
        return self.values[name]

    def __eq__(self, other):
        return isinstance(other, Point) and self.sig == other.sig and self.values == other.values

    def __repr__(self):
        return f"Point({self.to_json()})"

    def to_json(self) -> dict:
        return {n: coef_str(self.values[n]) for n in self.sig.names if n in self.values}

    def extend(self, sig: AlgebraSignature, extra: Mapping[str, object]) -> "Point":
        return Point(sig, {**self.values, **extra})


def evaluate_at_point(a: ScalarElement, p: Point | Mapping) -> Fraction:
    """Kill monomials with a negative-degree factor, substitute the rest."""
    sig = a.sig
    if not isinstance(p, Point):
        p = Point(sig, p)
    total = Fraction(0)
    for m, c in a.terms.items():
        val = c
        for i, e in m:
            g = sig.generators[i]
            if g.degree != 0:
                val = Fraction(0)
                break
            try:
                x = p.values[g.name]
            except KeyError:
                raise MissingAssignment(g.name) from None
            if e < 0 and x == 0:
                raise ZeroForInvertible(g.name)
            val *= x ** e
        total += val
    return total
