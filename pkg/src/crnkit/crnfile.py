"""The line-oriented ``.crn`` text format.

::

    # comment
    @name anderies
    @species A1 A2 A3
    @reaction R1: A1 + 2 A2 -> 2 A1 + A2 ; k = k1 ; orders { A1: -1.894, A2: 0.426 }
    @reaction R3: A2 <-> A3 ; k = 0.5, 0.25

``k`` is either a positive decimal (a numeric rate) or a monomial in rate
parameters such as ``k1``, ``2*k3`` or ``a_m*beta``.  Numeric rates must be
given for every reaction or for none; ``symbol = ...`` names the parameter
of a numeric rate.  Without an ``orders`` clause the kinetics is mass
action; with one, unlisted species get order zero.  ``A <-> B`` expands to
reactions ``id.f`` and ``id.b``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from . import exact
from .core import Complex, Reaction, ReactionNetwork
from .errors import DuplicateSpecies, InvalidNetwork, NonPositiveRate, ParseError, UndeclaredSpecies
from .kinetics import PowerLawKineticSystem, _default_symbol
from .polynomial import SparsePolynomial

_NUMBER = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_SPECIES = r"[A-Za-z_][A-Za-z0-9_]*"
_TERM = re.compile(rf"^\s*({_NUMBER})?\s*({_SPECIES})\s*$")
_ID = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.]*$")


def _number(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(num) / Fraction(den)
    return Fraction(text)


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text

    def error(self, cls, message: str, fragment: str | None = None, last: bool = False):
        start = max(self.text.find(" "), 0)
        idx = -1
        if fragment:
            idx = self.text.rfind(fragment) if last else self.text.find(fragment, start)
        return cls(message, self.number, idx + 1 if idx >= 0 else 1)


def _complex(line: _Line, text: str, species: set[str]) -> Complex:
    text = text.strip()
    if text == "0":
        return Complex({})
    if not text:
        raise line.error(ParseError, "empty complex (use 0 for the zero complex)")
    coeffs: dict[str, Fraction] = {}
    for term in text.split("+"):
        m = _TERM.match(term)
        if not m:
            raise line.error(ParseError, f"cannot parse term {term.strip()!r}", term.strip())
        coef = _number(m.group(1)) if m.group(1) else Fraction(1)
        name = m.group(2)
        if name not in species:
            raise line.error(UndeclaredSpecies, f"species {name!r} is not declared", name)
        if coef <= 0:
            raise line.error(ParseError, f"coefficient of {name} must be positive", term.strip())
        coeffs[name] = coeffs.get(name, Fraction(0)) + coef
    return Complex(coeffs)


def _orders(line: _Line, text: str, species: set[str]) -> dict[str, Fraction]:
    m = re.fullmatch(r"\s*orders\s*\{(.*)\}\s*", text)
    if not m:
        raise line.error(ParseError, "malformed orders clause", text.strip())
    out: dict[str, Fraction] = {}
    body = m.group(1).strip()
    if not body:
        return out
    for item in body.split(","):
        name, sep, value = item.partition(":")
        name = name.strip()
        if not sep:
            raise line.error(ParseError, f"expected 'species: order', got {item.strip()!r}", item.strip())
        if name not in species:
            raise line.error(UndeclaredSpecies, f"species {name!r} is not declared", name)
        try:
            out[name] = _number(value)
        except (ValueError, ZeroDivisionError):
            raise line.error(ParseError, f"bad kinetic order {value.strip()!r}", value.strip()) from None
    return out


def _rate(line: _Line, text: str) -> float | str:
    """A numeric rate or a rate-parameter monomial."""
    text = text.strip()
    try:
        value = float(_number(text))
    except (ValueError, ZeroDivisionError):
        try:
            SparsePolynomial.parse_monomial(text)
        except ValueError:
            raise line.error(ParseError, f"bad rate {text!r}", text) from None
        return text
    if not value > 0:
        raise line.error(NonPositiveRate, f"rate constant must be positive, got {text}", text)
    return value


def parse(text: str) -> PowerLawKineticSystem:
    """Parse ``.crn`` text into a kinetic system.

    Raises
    ------
    ParseError
        (or a subclass) carrying the 1-based line and column of the problem.
    """
    species: list[str] = []
    species_line = None
    name = ""
    entries = []  # (line, id, reactant, product, rate, symbol, orders)
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _Line(number, raw)
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("@name"):
            name = body[len("@name"):].strip()
        elif body.startswith("@species"):
            species_line = species_line or line
            for s in body[len("@species"):].split():
                if not re.fullmatch(_SPECIES, s):
                    raise line.error(ParseError, f"invalid species name {s!r}", s)
                if s in species:
                    raise line.error(DuplicateSpecies, f"species {s!r} declared twice", s, last=True)
                species.append(s)
        elif body.startswith("@reaction"):
            entries.extend(_reaction(line, body[len("@reaction"):], set(species)))
        else:
            raise line.error(ParseError, f"unknown directive {body.split()[0]!r}", body.split()[0])
    if not species:
        raise ParseError("no @species declaration", 0, 0)
    if not entries:
        raise ParseError("no @reaction lines", 0, 0)

    used = set()
    for e in entries:
        used |= e[2].support | e[3].support
    unused = [s for s in species if s not in used]
    if unused:
        raise species_line.error(ParseError, f"species {unused} appear in no reaction", unused[0])

    reactions = []
    for line, rid, a, b, *_ in entries:
        try:
            reactions.append(Reaction(rid, a, b))
        except InvalidNetwork as exc:
            raise line.error(ParseError, str(exc), rid) from None
    try:
        net = ReactionNetwork(tuple(species), tuple(reactions))
    except InvalidNetwork as exc:
        raise ParseError(str(exc), 0, 0) from None

    numeric = [isinstance(e[4], float) for e in entries]
    if any(numeric) and not all(numeric):
        line = entries[numeric.index(False)][0]
        raise line.error(ParseError, "numeric rates must be given for every reaction or for none")
    rates = tuple(e[4] for e in entries) if all(numeric) else None
    symbols = []
    for e in entries:
        if e[5] is not None:
            symbols.append(e[5])
        elif isinstance(e[4], str):
            symbols.append(e[4])
        else:
            symbols.append(_default_symbol(e[1]))
    orders = []
    for (_, _, a, _, _, _, ords), rx in zip(entries, reactions):
        if ords is None:
            orders.append(tuple(a.vector(species)))
        else:
            orders.append(tuple(ords.get(s, Fraction(0)) for s in species))
    return PowerLawKineticSystem(net, tuple(orders), rates, tuple(symbols), name)


def _reaction(line: _Line, text: str, species: set[str]):
    head, sep, rest = text.partition(":")
    rid = head.strip()
    if not sep or not _ID.match(rid):
        raise line.error(ParseError, "expected '@reaction <id>: <complex> -> <complex>'", head.strip() or None)
    clauses = rest.split(";")
    arrow = clauses[0]
    reversible = "<->" in arrow
    lhs, sep, rhs = arrow.partition("<->" if reversible else "->")
    if not sep:
        raise line.error(ParseError, "missing '->' or '<->'", arrow.strip())
    a = _complex(line, lhs, species)
    b = _complex(line, rhs, species)
    rates: list = [None, None] if reversible else [None]
    symbol = None
    ords = None
    for clause in clauses[1:]:
        key = clause.strip().split("=", 1)[0].split("{", 1)[0].strip()
        if key == "k":
            values = clause.split("=", 1)[1].split(",")
            if len(values) != len(rates):
                raise line.error(ParseError, f"expected {len(rates)} rate value(s)", clause.strip())
            rates = [_rate(line, v) for v in values]
        elif key == "symbol":
            if reversible:
                raise line.error(ParseError, "symbol clause is not supported on '<->' lines", clause.strip())
            symbol = clause.split("=", 1)[1].strip()
            try:
                SparsePolynomial.parse_monomial(symbol)
            except ValueError:
                raise line.error(ParseError, f"bad rate symbol {symbol!r}", symbol) from None
        elif key == "orders":
            if reversible:
                raise line.error(ParseError, "orders clause is not supported on '<->' lines", clause.strip())
            ords = _orders(line, clause, species)
        else:
            raise line.error(ParseError, f"unknown clause {clause.strip()!r}", clause.strip())
    if reversible:
        return [
            (line, f"{rid}.f", a, b, rates[0], None, None),
            (line, f"{rid}.b", b, a, rates[1], None, None),
        ]
    return [(line, rid, a, b, rates[0], symbol, ords)]


def _format_number(x: Fraction) -> str:
    den = x.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den != 1:
        return exact.format_fraction(x)
    # terminating decimal: print it exactly
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = x - whole
    digits = ""
    while frac:
        frac *= 10
        d = frac.numerator // frac.denominator
        digits += str(d)
        frac -= d
    return f"{sign}{whole}" + (f".{digits}" if digits else "")


def _format_complex(c: Complex, species) -> str:
    if not c.coefficients:
        return "0"
    d = dict(c.coefficients)
    parts = []
    for s in species:
        if s in d:
            parts.append(s if d[s] == 1 else f"{_format_number(d[s])} {s}")
    return " + ".join(parts)


def serialize(sys: PowerLawKineticSystem) -> str:
    """Write a system in canonical ``.crn`` form; ``parse(serialize(s))`` reproduces it."""
    net = sys.network
    lines = []
    if sys.name:
        lines.append(f"@name {sys.name}")
    lines.append("@species " + " ".join(net.species))
    for j, rx in enumerate(net.reactions):
        text = f"@reaction {rx.id}: {_format_complex(rx.reactant, net.species)} -> {_format_complex(rx.product, net.species)}"
        sym = sys.rate_symbols[j]
        if sys.rates is not None:
            text += f" ; k = {sys.rates[j]!r}"
            if sym != _default_symbol(rx.id):
                text += f" ; symbol = {sym}"
        elif sym != _default_symbol(rx.id):
            text += f" ; k = {sym}"
        mass_action = tuple(rx.reactant.vector(net.species))
        if sys.orders[j] != mass_action:
            items = ", ".join(f"{s}: {_format_number(x)}" for s, x in zip(net.species, sys.orders[j]) if x != 0)
            text += f" ; orders {{ {items} }}"
        lines.append(text)
    return "\n".join(lines) + "\n"


def structurally_equal(a: PowerLawKineticSystem, b: PowerLawKineticSystem) -> bool:
    return (
        a.network == b.network
        and a.orders == b.orders
        and a.rates == b.rates
        and a.rate_symbols == b.rate_symbols
        and a.name == b.name
    )


def load(path) -> PowerLawKineticSystem:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
