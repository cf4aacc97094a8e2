"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a sorted tuple of ``(symbol, exponent)`` pairs; the polynomial
is a mapping from monomials to nonzero :class:`~fractions.Fraction`
coefficients.  Only nonnegative integer exponents are supported.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[tuple[str, int], ...]

_ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items()))


class SparsePolynomial:
    """Immutable polynomial over ``Q`` in named symbols."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c != 0}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, c) -> "SparsePolynomial":
        return cls({_ONE: Fraction(c)})

    @classmethod
    def symbol(cls, name: str) -> "SparsePolynomial":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "SparsePolynomial":
        if isinstance(value, SparsePolynomial):
            return value
        return cls.constant(value)

    @classmethod
    def parse_monomial(cls, text: str) -> "SparsePolynomial":
        """Parse ``'2*k3'``, ``'a_m*beta'``, ``'k1'`` or a bare rational."""
        factors = [f.strip() for f in text.split("*") if f.strip()]
        if not factors:
            raise ValueError(f"empty monomial {text!r}")
        coef = Fraction(1)
        mono: dict[str, int] = {}
        for f in factors:
            if re.fullmatch(r"[+-]?\d+(\.\d+)?(/\d+)?", f):
                coef *= Fraction(f)
            elif re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*(\^\d+)?", f):
                name, _, exp = f.partition("^")
                mono[name] = mono.get(name, 0) + int(exp or 1)
            else:
                raise ValueError(f"cannot parse factor {f!r} in {text!r}")
        return cls({tuple(sorted(mono.items())): coef})

    # protocol ---------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == _ONE for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(_ONE, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            try:
                other = SparsePolynomial.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "SparsePolynomial":
        other = SparsePolynomial.coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return SparsePolynomial(t)

    __radd__ = __add__

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "SparsePolynomial":
        return self + (-SparsePolynomial.coerce(other))

    def __rsub__(self, other) -> "SparsePolynomial":
        return SparsePolynomial.coerce(other) - self

    def __mul__(self, other) -> "SparsePolynomial":
        other = SparsePolynomial.coerce(other)
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, Fraction(0)) + c1 * c2
        return SparsePolynomial(t)

    __rmul__ = __mul__

    # queries ----------------------------------------------------------
    def symbols(self) -> set[str]:
        return {s for m in self._terms for s, _ in m}

    def degree_in(self, symbols: Iterable[str]) -> set[int]:
        """Set of total degrees of the terms restricted to ``symbols``."""
        sym = set(symbols)
        return {sum(e for s, e in m if s in sym) for m in self._terms}

    def is_homogeneous_in(self, symbols: Iterable[str], degree: int) -> bool:
        return self.degree_in(symbols) <= {degree}

    def coefficients(self) -> list[Fraction]:
        return [self._terms[m] for m in self.sorted_monomials()]

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def evaluate(self, values: Mapping[str, float]) -> float:
        total = 0.0
        for m, c in self._terms.items():
            term = float(c)
            for s, e in m:
                term *= float(values[s]) ** e
            total += term
        return total

    def substitute(self, values: Mapping[str, "SparsePolynomial | Fraction | int"]) -> "SparsePolynomial":
        """Replace some symbols by polynomials (or constants), exactly."""
        out = SparsePolynomial()
        for m, c in self._terms.items():
            term = SparsePolynomial.constant(c)
            for s, e in m:
                if s in values:
                    factor = SparsePolynomial.coerce(values[s])
                    for _ in range(e):
                        term = term * factor
                else:
                    term = term * SparsePolynomial({((s, e),): Fraction(1)})
            out = out + term
        return out

    def __repr__(self) -> str:
        return f"SparsePolynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self._terms[m]
            body = "*".join(s if e == 1 else f"{s}^{e}" for s, e in m)
            mag = abs(c)
            cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if body and mag == 1:
                txt = body
            elif body:
                txt = f"{cs}*{body}"
            else:
                txt = cs
            parts.append(("- " if c < 0 else "+ ") + txt)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def determinant(matrix: Sequence[Sequence[SparsePolynomial]]) -> SparsePolynomial:
    """Determinant by Laplace expansion memoised over column subsets.

    Costs ``O(n 2^n)`` polynomial products, fine for the ``n <= 8`` matrices
    that show up in injectivity tests.
    """
    n = len(matrix)
    if n == 0:
        return SparsePolynomial.constant(1)
    a = [[SparsePolynomial.coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    memo: dict[int, SparsePolynomial] = {}

    def minor(row: int, cols: int) -> SparsePolynomial:
        # det of rows row..n-1 restricted to the column bitmask `cols`
        if row == n:
            return SparsePolynomial.constant(1)
        if cols in memo:
            return memo[cols]
        total = SparsePolynomial()
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                entry = a[row][c]
                if entry:
                    sub = minor(row + 1, cols & ~(1 << c))
                    if sub:
                        term = entry * sub
                        total = total + term if sign > 0 else total - term
                sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)
