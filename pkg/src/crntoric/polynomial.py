"""Multivariate polynomials in rate-constant symbols with integer coefficients."""

from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping

Monomial = tuple[tuple[str, int], ...]

_NUM = re.compile(r"(\d+)")


def natural_key(label: str) -> tuple:
    """Sort key placing ``k2`` before ``k10``."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in _NUM.split(label))


def _mono(pairs: Iterable[tuple[str, int]]) -> Monomial:
    acc: dict[str, int] = {}
    for v, e in pairs:
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda p: natural_key(p[0])))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return _mono(a + b)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    db = dict(b)
    for v, e in a:
        db[v] -= e
    return _mono(db.items())


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


class RatePolynomial:
    """Immutable polynomial ``sum c * k1^e1 * k2^e2 ...``.

    Equality and hashing are on the canonical term map, so two polynomials are
    equal exactly when they expand to the same terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c:
                key = _mono(mono)
                clean[key] = clean.get(key, 0) + int(c)
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def var(cls, label: str) -> "RatePolynomial":
        return cls({((label, 1),): 1})

    @classmethod
    def const(cls, c: int) -> "RatePolynomial":
        return cls({(): c})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "RatePolynomial":
        return cls({mono: coeff})

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatePolynomial.const(other)
        if not isinstance(other, RatePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "RatePolynomial":
        if isinstance(other, RatePolynomial):
            return other
        if isinstance(other, int):
            return RatePolynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return RatePolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "RatePolynomial":
        return RatePolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return RatePolynomial(out)

    __rmul__ = __mul__

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def has_positive_coefficients(self) -> bool:
        return bool(self._terms) and all(c > 0 for c in self._terms.values())

    def _sort_key(self, order: Mapping[str, int] | None) -> Callable[[Monomial], tuple]:
        rank = (lambda v: order[v]) if order is not None else natural_key

        def key(mono: Monomial):
            # Graded lex: higher degree first, then larger exponent on the
            # earliest variable first.
            exps = sorted(((rank(v), -e) for v, e in mono))
            return (-mono_degree(mono), [x for pair in exps for x in pair] + [float("inf")])

        return key

    def ordered_terms(self, order: Mapping[str, int] | None = None) -> list[tuple[Monomial, int]]:
        key = self._sort_key(order)
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def leading_term(self) -> tuple[Monomial, int]:
        return self.ordered_terms()[0]

    def content(self) -> Monomial:
        """Greatest monomial dividing every term (per-variable minimum exponent)."""
        return monomial_gcd([self])

    def divide_monomial(self, mono: Monomial) -> "RatePolynomial":
        out = {}
        for m, c in self._terms.items():
            if not mono_divides(mono, m):
                raise ArithmeticError(f"monomial {mono} does not divide term {m}")
            out[mono_div(m, mono)] = c
        return RatePolynomial(out)

    def exact_div(self, divisor: "RatePolynomial") -> "RatePolynomial":
        """Quotient ``self / divisor``; raises ArithmeticError unless exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = divisor.leading_term()
        rem = self
        quot: dict[Monomial, int] = {}
        while rem:
            m, c = rem.leading_term()
            if not mono_divides(lm, m) or c % lc:
                raise ArithmeticError("polynomial division is not exact")
            qm, qc = mono_div(m, lm), c // lc
            quot[qm] = quot.get(qm, 0) + qc
            rem = rem - RatePolynomial.monomial(qm, qc) * divisor
        return RatePolynomial(quot)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate with any numeric type supporting ``*``, ``+`` and ``**``."""
        total = 0
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                term = term * values[v] ** e
            total = total + term
        return total

    def substitute(self, old: str, new: str) -> "RatePolynomial":
        """Rename variable ``old`` to ``new``."""
        return RatePolynomial(
            {tuple((new if v == old else v, e) for v, e in m): c for m, c in self._terms.items()}
        )

    def format(self, order: Mapping[str, int] | None = None) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(self.ordered_terms(order)):
            body = format_monomial(mono, order)
            mag = abs(c)
            if body == "1":
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if i == 0:
                out.append(text if c > 0 else "-" + text)
            else:
                out.append(("+ " if c > 0 else "- ") + text)
        return " ".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatePolynomial({self.format()!r})"

    def to_json(self, order: Mapping[str, int] | None = None) -> list[dict]:
        return [
            {"coeff": c, "powers": {v: e for v, e in mono}}
            for mono, c in self.ordered_terms(order)
        ]


def format_monomial(mono: Monomial, order: Mapping[str, int] | None = None) -> str:
    if not mono:
        return "1"
    rank = (lambda v: order[v]) if order is not None else natural_key
    parts = sorted(mono, key=lambda p: rank(p[0]))
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in parts)


def monomial_gcd(polys: Iterable[RatePolynomial]) -> Monomial:
    """Per-variable minimum exponent over every term of every polynomial."""
    common: dict[str, int] | None = None
    for p in polys:
        for mono in p.terms:
            d = dict(mono)
            if common is None:
                common = d
            else:
                common = {v: min(e, d[v]) for v, e in common.items() if v in d}
    return _mono((common or {}).items())
