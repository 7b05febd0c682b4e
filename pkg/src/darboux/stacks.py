"""Affine shadows of the 1-jet and prequantum constructions."""

from __future__ import annotations

import json
from typing import Mapping

from .errors import BadMultiplicities, PositiveShift, TwistNotClosed, UnknownGenerator, WeightMismatch
from .forms import Differential, Form, VectorField, d_dR
from .graded import GeneratorSpec, make_algebra
from .models import ContactInstance, kernel_fields


def build_jet_instance(n: int, m0: int) -> ContactInstance:
    """``alpha = -dz + sum p_i dx_i`` with ``p_i, z`` in degree ``n``, ``d = 0``."""
    if n > 0:
        raise PositiveShift(f"shift must be <= 0, got {n}")
    if m0 < 1:
        raise BadMultiplicities("m0 must be >= 1")
    xs = [f"x_{i}" for i in range(1, m0 + 1)]
    ps = [f"p_{i}" for i in range(1, m0 + 1)]
    sig = make_algebra([GeneratorSpec(x, 0) for x in xs] + [GeneratorSpec(p, n) for p in ps]
                       + [GeneratorSpec("z", n)])
    theta = Form.zero(sig, 1)
    for x, p in zip(xs, ps):
        theta = theta + sig.gen(p) * Form.d(sig, x)
    alpha = -Form.d(sig, "z") + theta
    reeb = -VectorField.coordinate(sig, "z")
    kernel, labels = kernel_fields(sig, alpha, reeb, "z", sig.names)
    return ContactInstance(
        k=n, signature=sig, d=Differential(sig), alpha=alpha, phi=theta * n, H=sig.zero(),
        kernel=tuple(kernel), kernel_labels=tuple(labels), reeb=reeb, reeb_generator="z",
        sub_algebra_B=tuple(sig.names), psi=None, variant="jet", m=None,
        meta={"construction": "jet", "n": n, "m0": m0},
    )


def prequantum_signature(m0: int):
    xs = [f"x_{i}" for i in range(1, m0 + 1)]
    ps = [f"p_{i}" for i in range(1, m0 + 1)]
    return make_algebra([GeneratorSpec(x, 0) for x in xs] + [GeneratorSpec(p, 0) for p in ps]
                        + [GeneratorSpec("t", 0, invertible=True)])


def _read_twist(twist, sig) -> Form:
    if isinstance(twist, str):
        twist = json.loads(twist)
    if isinstance(twist, Mapping):
        try:
            twist = Form.from_json(twist, sig)
        except UnknownGenerator as e:
            raise TwistNotClosed(f"twist refers to unknown generator {e}") from None
    elif isinstance(twist, Form):
        if twist.sig != sig:
            try:
                twist = twist.embed(sig)
            except UnknownGenerator as e:
                raise TwistNotClosed(f"twist refers to unknown generator {e}") from None
    else:
        raise TwistNotClosed(f"cannot read a twist of type {type(twist).__name__}")
    return twist


def build_prequantum_instance(m0: int, twist=None) -> ContactInstance:
    """``alpha = sum p_i dx_i + twist + t^-1 dt`` on a trivial G_m-bundle."""
    if m0 < 1:
        raise BadMultiplicities("m0 must be >= 1")
    sig = prequantum_signature(m0)
    xs = [n for n in sig.names if n.startswith("x_")]
    ps = [n for n in sig.names if n.startswith("p_")]
    tw = Form.zero(sig, 1)
    if twist is not None:
        tw = _read_twist(twist, sig)
        if tw.terms and tw.weight != 1:
            raise TwistNotClosed("twist must be a 1-form")
        if tw.terms and tw.degree != 0:
            raise TwistNotClosed("twist must have degree 0")
        stray = tw.uses() - set(xs)
        if stray:
            raise TwistNotClosed(f"twist must live in the x-variables only, found {sorted(stray)}")
        try:
            closed = d_dR(tw).is_zero()
        except WeightMismatch:
            closed = False
        if not closed:
            raise TwistNotClosed(f"d_dR(twist) = {d_dR(tw)}")
    t = sig.gen("t")
    theta = Form.zero(sig, 1)
    for x, p in zip(xs, ps):
        theta = theta + sig.gen(p) * Form.d(sig, x)
    log_dt = sig.monomial([("t", -1)]) * Form.d(sig, "t")
    alpha = theta + tw + log_dt
    reeb = VectorField.coordinate(sig, "t").scaled(t)
    kernel, labels = kernel_fields(sig, alpha, reeb, "t", sig.names)
    return ContactInstance(
        k=0, signature=sig, d=Differential(sig), alpha=alpha, phi=Form.zero(sig, 1), H=sig.zero(),
        kernel=tuple(kernel), kernel_labels=tuple(labels), reeb=reeb, reeb_generator="t",
        sub_algebra_B=tuple(sig.names), psi=None, variant="prequantum", m=None,
        meta={"construction": "prequantum", "m0": m0, "twist": str(tw)},
    )


def log_derivative(sig, name: str = "t") -> Form:
    """``t^-1 d_dR t``."""
    return sig.monomial([(name, -1)]) * Form.d(sig, name)
