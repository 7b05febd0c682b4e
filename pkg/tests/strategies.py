"""Hypothesis strategies and oracles shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from darboux import GeneratorSpec, make_algebra
from darboux.forms import Form


SIG = make_algebra([
    GeneratorSpec("a", 0), GeneratorSpec("b", 0), GeneratorSpec("u", -1),
    GeneratorSpec("v", -1), GeneratorSpec("e", -2), GeneratorSpec("f", -3),
])


def bubble_sort_word(word, degrees):
    """Koszul-sign oracle: sort a word of generator indices by adjacent swaps.

    Returns (sign, sorted word); sign 0 when an odd generator repeats.
    """
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                if (degrees[w[i]] * degrees[w[i + 1]]) % 2:
                    sign = -sign
                w[i], w[i + 1] = w[i + 1], w[i]
                changed = True
    for i in range(len(w) - 1):
        if w[i] == w[i + 1] and degrees[w[i]] % 2:
            return 0, w
    return sign, w


def word_to_mono(w):
    out = []
    for i in w:
        if out and out[-1][0] == i:
            out[-1] = (i, out[-1][1] + 1)
        else:
            out.append((i, 1))
    return tuple(out)


coefs = st.integers(-4, 4).map(Fraction)


@st.composite
def words(draw, sig=SIG, max_len=4):
    return draw(st.lists(st.integers(0, len(sig) - 1), max_size=max_len))


@st.composite
def elements(draw, sig=SIG, max_terms=4, degree=None):
    """Random ScalarElement; with ``degree`` given, only terms of that degree survive."""
    out = sig.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        w = draw(words(sig))
        term = sig.const(draw(coefs))
        for i in w:
            term = term * sig.gen(sig.names[i])
        if degree is not None:
            term = type(term)(sig, {m: c for m, c in term.terms.items()
                                    if sum(sig.degrees[i] * e for i, e in m) == degree})
        out = out + term
    return out


@st.composite
def homogeneous(draw, sig=SIG):
    deg = draw(st.integers(-5, 0))
    return draw(elements(sig, degree=deg)), deg


@st.composite
def forms(draw, sig=SIG, weight=None, max_terms=3):
    p = draw(st.integers(0, 2)) if weight is None else weight
    out = Form.zero(sig, p)
    for _ in range(draw(st.integers(0, max_terms))):
        coeff = draw(elements(sig, max_terms=2))
        word = draw(st.lists(st.sampled_from(sig.names), min_size=p, max_size=p))
        out = out + Form.scalar(coeff) * Form.wedge_word(sig, word)
    return out


def form_total_parity(f):
    """Set of total parities (weight + degree) present in ``f``."""
    return {(f.weight + d) % 2 for d in f.degrees()}
