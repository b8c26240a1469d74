"""Sparse polynomials and free-module elements with rational coefficients.

A module element is a dict ``{(position, exponents): Fraction}``; a
polynomial is a dict ``{exponents: Fraction}``. Exponents may be negative
when we talk about Laurent monomials on charts, but Groebner code only ever
sees nonnegative ones.

Text format: ``3/2*Z_0^2*Z_1 - Z_2 + 4``. Variables are ``Z_<ray index>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exps = tuple[int, ...]
Term = tuple[int, Exps]
Poly = dict[Exps, Fraction]
Vec = dict[Term, Fraction]


class PolynomialSyntaxError(ValueError):
    pass


# ------------------------------------------------------------ orders


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted degree, then lex; position-over-term for modules.

    With ``tagged`` set the last exponent is an elimination variable that
    dominates everything else.
    """

    weights: tuple[int, ...]
    tagged: bool = False

    def key(self, term: Term):
        pos, e = term
        if self.tagged:
            core = e[:-1]
            return (e[-1], -pos, sum(w * x for w, x in zip(self.weights, core)), core)
        return (-pos, sum(w * x for w, x in zip(self.weights, e)), e)

    def with_tag(self) -> "MonomialOrder":
        return MonomialOrder(self.weights, True)


# -------------------------------------------------------- arithmetic


def monomial_vec(pos: int, exps: Sequence[int], coeff=1) -> Vec:
    return {(pos, tuple(exps)): Fraction(coeff)}


def vec_add(a: Mapping[Term, Fraction], b: Mapping[Term, Fraction], scale=1) -> Vec:
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + scale * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale(a: Mapping[Term, Fraction], c) -> Vec:
    c = Fraction(c)
    return {t: c * v for t, v in a.items()} if c else {}


def vec_shift(a: Mapping[Term, Fraction], mono: Sequence[int], c=1) -> Vec:
    """Multiply by ``c * Z^mono``."""
    c = Fraction(c)
    return {(p, tuple(x + y for x, y in zip(e, mono))): c * v for (p, e), v in a.items()}


def poly_mul(f: Mapping[Exps, Fraction], g: Mapping[Exps, Fraction]) -> Poly:
    out: Poly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_times_vec(f: Mapping[Exps, Fraction], v: Mapping[Term, Fraction]) -> Vec:
    out: Vec = {}
    for e1, c1 in f.items():
        for (p, e2), c2 in v.items():
            t = (p, tuple(x + y for x, y in zip(e1, e2)))
            val = out.get(t, 0) + c1 * c2
            if val:
                out[t] = val
            else:
                out.pop(t, None)
    return out


def poly_to_vec(f: Mapping[Exps, Fraction], pos: int = 0) -> Vec:
    return {(pos, e): Fraction(c) for e, c in f.items() if c}


def vec_component(v: Mapping[Term, Fraction], pos: int) -> Poly:
    return {e: c for (p, e), c in v.items() if p == pos}


def leading_term(v: Mapping[Term, Fraction], order: MonomialOrder) -> Term:
    return max(v, key=order.key)


def divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def is_monomial(v: Mapping[Term, Fraction]) -> bool:
    return len(v) == 1


# ------------------------------------------------------------- text


_FACTOR_RE = re.compile(r"^Z_(\d+)(?:\^(~?\d+))?$")
_COEFF_RE = re.compile(r"^\d+(?:/\d+)?$")
_NEG_EXP_RE = re.compile(r"\^\s*\(?\s*-\s*(\d+)\s*\)?")
_POS_EXP_RE = re.compile(r"\^\s*\(\s*(\d+)\s*\)")


def _split_terms(text: str) -> list[tuple[int, str]]:
    s = _POS_EXP_RE.sub(r"^\1", _NEG_EXP_RE.sub(r"^~\1", text)).replace(" ", "")
    if not s:
        raise PolynomialSyntaxError("empty polynomial")
    pieces = re.split(r"([+-])", s)
    terms, sign = [], 1
    for i, piece in enumerate(pieces):
        if piece in "+-" and piece:
            sign = -sign if piece == "-" else sign
            continue
        if not piece:
            if i == 0:
                continue
            raise PolynomialSyntaxError(f"dangling operator in {text!r}")
        terms.append((sign, piece))
        sign = 1
    if not terms or pieces[-1] in ("+", "-", ""):
        raise PolynomialSyntaxError(f"dangling operator in {text!r}")
    return terms


def parse_polynomial(text: str, nvars: int) -> Poly:
    out: Poly = {}
    for sign, body in _split_terms(text):
        coeff = Fraction(sign)
        exps = [0] * nvars
        for factor in body.split("*"):
            factor = factor.replace(" ", "")
            if not factor:
                raise PolynomialSyntaxError(f"empty factor in {body!r}")
            if _COEFF_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise PolynomialSyntaxError(f"cannot read factor {factor!r}")
            idx = int(m.group(1))
            if idx >= nvars:
                raise PolynomialSyntaxError(f"variable Z_{idx} out of range (ring has {nvars})")
            exps[idx] += int(m.group(2).replace("~", "-")) if m.group(2) is not None else 1
        key = tuple(exps)
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def format_monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"Z_{i}")
        elif e:
            parts.append(f"Z_{i}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(f: Mapping[Exps, Fraction], order: MonomialOrder | None = None) -> str:
    if not f:
        return "0"
    if order is None:
        keys = sorted(f, key=lambda e: (sum(e), e), reverse=True)
    else:
        keys = sorted(f, key=lambda e: order.key((0, e)), reverse=True)
    out = ""
    for i, e in enumerate(keys):
        c = f[e]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = format_monomial(e)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def parse_vector(components: Sequence[str], nvars: int) -> Vec:
    v: Vec = {}
    for pos, text in enumerate(components):
        if text.strip() == "0":
            continue
        v = vec_add(v, poly_to_vec(parse_polynomial(text, nvars), pos))
    return v


def format_vector(v: Mapping[Term, Fraction], rank: int, order: MonomialOrder | None = None) -> list[str]:
    return [format_polynomial(vec_component(v, p), order) for p in range(rank)]


def canonical_vec_key(v: Mapping[Term, Fraction]) -> tuple:
    return tuple(sorted((t, (c.numerator, c.denominator)) for t, c in v.items()))


def vecs_equal(a: Iterable[Mapping[Term, Fraction]], b: Iterable[Mapping[Term, Fraction]]) -> bool:
    return [canonical_vec_key(x) for x in a] == [canonical_vec_key(x) for x in b]
