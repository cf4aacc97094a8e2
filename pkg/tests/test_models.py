from fractions import Fraction

import pytest

from crnkit import core, crnfile, exact, kinetics, models
from crnkit.errors import UnknownModel

F = Fraction


def test_inventory_is_complete():
    for name in models.BUILTIN_NAMES:
        b = models.builtin(name)
        assert b.name == name
        assert b.provenance
        assert (b.system is None) == (name == "schmitz-ldc-tmatrix")


def test_unknown_model():
    with pytest.raises(UnknownModel):
        models.builtin("lorenz")


def test_schmitz_inventory():
    sys = models.builtin("schmitz").system
    net = sys.network
    assert net.r == 13 and net.n == 6 and net.m == 6
    assert kinetics.cf_partition(sys).n_R == 9
    assert all(c.molecularity == 1 for c in net.complexes)
    special = {"r15": ("M1", F(9, 25)), "r21": ("M2", F(47, 5)), "r31": ("M3", F(51, 5))}
    for j, rx in enumerate(net.reactions):
        sp, order = special.get(rx.id, (rx.reactant.support and next(iter(rx.reactant.support)), F(1)))
        row = dict(zip(net.species, sys.orders[j]))
        assert row[sp] == order
        assert sum(1 for v in row.values() if v) == 1


def test_schmitz_subnetwork_is_first_two_pieces():
    sub = models.builtin("schmitz-subnetwork").system
    assert {rx.id for rx in sub.network.reactions} == set(models.SCHMITZ_R1 + models.SCHMITZ_R2)
    full = models.builtin("schmitz").system
    for j, rx in enumerate(sub.network.reactions):
        k = next(i for i, r in enumerate(full.network.reactions) if r.id == rx.id)
        assert dict(zip(sub.species, sub.orders[j])) == {
            s: v for s, v in zip(full.species, full.orders[k]) if s in sub.species
        }


def test_anderies_gt_orders():
    sys = models.builtin("anderies-gt").system
    assert sys.orders == (
        (F("-1.894"), F("0.426"), F(0)),
        (F("-0.271"), F("0.439"), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    )


def test_anderies_0_orders():
    sys = models.builtin("anderies-0").system
    assert [row[:2] for row in sys.orders[:2]] == [(F(-68), F("0.580")), (F(-68), F("0.911"))]


def test_aggregated_schmitz():
    sys = models.builtin("aggregated-schmitz").system
    assert sys.network.r == 4
    assert core.structural_indices(sys.network).deficiency == 0
    assert F("9.8") in {x for row in sys.orders for x in row}


def test_printed_tmatrix_rank():
    tm = models.builtin("schmitz-ldc-tmatrix").tmatrix
    assert len(tm.augmented) == 9 and all(len(r) == 9 for r in tm.augmented)
    assert exact.rank(tm.augmented) == 9
    assert tm.tik


def test_anderies_ldc_is_dynamically_equivalent():
    for sysname, ldcname in (("anderies-gt", "anderies-ldc"), ("anderies-0", "anderies-0-ldc")):
        assert kinetics.dynamic_equivalence(models.builtin(sysname).system, models.builtin(ldcname).system)


@pytest.mark.parametrize("name", [n for n in models.BUILTIN_NAMES if n != "schmitz-ldc-tmatrix"])
def test_builtins_round_trip_through_crn_text(name):
    sys = models.builtin(name).system
    assert crnfile.structurally_equal(crnfile.parse(crnfile.serialize(sys)), sys)


def test_reconstructed_data_is_flagged():
    flagged = {n for n in models.BUILTIN_NAMES if any(p.reconstructed for p in models.builtin(n).provenance)}
    assert {"schmitz", "anderies-0-ldc", "aggregated-schmitz"} <= flagged
