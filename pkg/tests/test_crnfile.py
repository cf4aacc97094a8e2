from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crnkit import crnfile
from crnkit.core import Complex, Reaction, ReactionNetwork
from crnkit.errors import DuplicateSpecies, NonPositiveRate, ParseError, UndeclaredSpecies
from crnkit.kinetics import PowerLawKineticSystem

F = Fraction


def test_default_orders_are_mass_action():
    sys = crnfile.parse("@species A B\n@reaction R1: A -> B ; k = 1.5")
    assert sys.orders == ((F(1), F(0)),)
    assert sys.rates == (1.5,)


def test_orders_clause():
    text = """
    # Anderies, first reaction only
    @species A1 A2 A3
    @reaction R1: A1 + 2 A2 -> 2 A1 + A2 ; k = k1 ; orders { A1: -1.894, A2: 0.426 }
    @reaction R3: A2 -> A3
    """
    sys = crnfile.parse(text)
    assert sys.orders[0] == (F("-1.894"), F("0.426"), F(0))
    assert sys.rate_symbols[0] == "k1"
    assert sys.rates is None


def test_reversible_sugar():
    sys = crnfile.parse("@species A B\n@reaction R: A <-> 2 B ; k = 2, 0.5")
    assert [rx.id for rx in sys.network.reactions] == ["R.f", "R.b"]
    assert sys.rates == (2.0, 0.5)
    assert sys.orders == ((F(1), F(0)), (F(0), F(2)))


def test_zero_complex_and_fraction_coefficients():
    sys = crnfile.parse("@species A\n@reaction in: 0 -> 1/2 A\n@reaction out: A -> 0")
    assert sys.network.reactions[0].product == Complex({"A": F(1, 2)})


@pytest.mark.parametrize(
    "text, cls, line, col",
    [
        ("@species A B A\n@reaction R: A -> B", DuplicateSpecies, 1, 14),
        ("@species A B\n@reaction R: A -> C", UndeclaredSpecies, 2, 19),
        ("@species A B\n@reaction R: A -> B ; k = -1", NonPositiveRate, 2, 27),
        ("@species A B C\n@reaction R: A -> B", ParseError, 1, 14),
        ("@species A\n@reaction R: A -> A", ParseError, 2, 11),
        ("@species A B\n@reaction R A -> B", ParseError, 2, 11),
        ("@species A B\n@nonsense", ParseError, 2, 1),
        ("@species A B\n@reaction R1: A -> B ; k = 1\n@reaction R2: B -> A", ParseError, 3, 1),
    ],
)
def test_errors_carry_positions(text, cls, line, col):
    with pytest.raises(cls) as info:
        crnfile.parse(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_self_loop_is_rejected():
    with pytest.raises(ParseError):
        crnfile.parse("@species A\n@reaction R1: A -> A")


def test_serialize_is_canonical():
    sys = crnfile.parse("@name demo\n@species A B\n@reaction R1: A -> 2 B ; k = 0.1 ; symbol = k \n@reaction R2: 2 B -> A ; k = 3")
    assert crnfile.serialize(sys) == (
        "@name demo\n@species A B\n"
        "@reaction R1: A -> 2 B ; k = 0.1 ; symbol = k\n"
        "@reaction R2: 2 B -> A ; k = 3.0\n"
    )


def test_load(tmp_path):
    path = tmp_path / "x.crn"
    path.write_text("@species A B\n@reaction R1: A -> B\n@reaction R2: B -> A\n", encoding="utf-8")
    assert crnfile.load(path).network.r == 2


SPECIES = ("X", "Y", "Z")
coef = st.sampled_from([F(1), F(2), F(3), F(1, 2)])
cplx = st.dictionaries(st.sampled_from(SPECIES), coef, max_size=3)
order = st.sampled_from([F(0), F(1), F(-1, 3), F("0.25"), F(-68), F(1, 7)])


@st.composite
def systems(draw):
    pairs = draw(st.lists(st.tuples(cplx, cplx), min_size=1, max_size=6))
    reactions, seen = [], set()
    for a, b in pairs:
        ca, cb = Complex(a), Complex(b)
        if ca == cb or (ca, cb) in seen:
            continue
        seen.add((ca, cb))
        reactions.append(Reaction(f"r{len(reactions)}", ca, cb))
    used = sorted({s for rx in reactions for s in rx.reactant.support | rx.product.support})
    if not reactions or not used:
        return None
    net = ReactionNetwork(tuple(used), tuple(reactions))
    orders = tuple(tuple(draw(order) for _ in used) for _ in reactions)
    rates = draw(st.one_of(st.none(), st.tuples(*[st.floats(1e-6, 1e6) for _ in reactions])))
    return PowerLawKineticSystem(net, orders, rates, name=draw(st.sampled_from(["", "net"])))


@settings(max_examples=150, deadline=None)
@given(systems())
def test_round_trip(sys):
    if sys is None:
        return
    assert crnfile.structurally_equal(crnfile.parse(crnfile.serialize(sys)), sys)
