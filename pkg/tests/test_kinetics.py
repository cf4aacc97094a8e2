from fractions import Fraction as F

import numpy as np
import pytest

from crnkit import core, exact, kinetics, models
from crnkit.core import ReactionNetwork
from crnkit.errors import NonPositiveState, NotRDK, SpeciesMismatch
from crnkit.kinetics import PowerLawKineticSystem
from crnkit.polynomial import SparsePolynomial as P

from oracles import abs_jacobian, fd_jacobian, numeric_systems, sample_states

P1, Q1, P2, Q2 = (F(x) for x in models.AND_GT_ORDERS)


def ab_mass_action(k1=1.0, k2=1.0):
    net = ReactionNetwork.from_reactions(("A", "B"), [("f", {"A": 1}, {"B": 1}), ("b", {"B": 1}, {"A": 1})])
    return PowerLawKineticSystem.mass_action(net, rates=(k1, k2), rate_symbols=("k1", "k2"))


def test_classify_builtins(schmitz, anderies_gt):
    assert kinetics.classify(schmitz.system) == kinetics.KineticClass(rdk=False, nik=True, isk=True)
    c = kinetics.classify(anderies_gt.system)
    assert c.rdk and not c.nik
    assert kinetics.classify(ab_mass_action()).rdk and kinetics.classify(ab_mass_action()).nik


def test_schmitz_cf_partition(schmitz):
    part = kinetics.cf_partition(schmitz.system)
    idx = core.structural_indices(schmitz.system.network)
    assert (part.n_R, part.r_mcf) == (9, 10)
    assert schmitz.system.network.r - part.r_mcf == part.n_R - idx.n_r == 3


def test_rdk_partition_collapses(anderies_gt):
    part = kinetics.cf_partition(anderies_gt.system)
    assert part.n_R == core.structural_indices(anderies_gt.system.network).n_r == 4


def test_cf_subsets_share_reactant_and_row(schmitz):
    sys = schmitz.system
    rows = {rx.id: sys.orders[j] for j, rx in enumerate(sys.network.reactions)}
    reactants = {rx.id: rx.reactant for rx in sys.network.reactions}
    for sub in kinetics.cf_partition(sys).subsets:
        assert len({rows[i] for i in sub.reactions}) == 1
        assert len({reactants[i] for i in sub.reactions}) == 1


def test_schmitz_ldc_tmatrix_has_full_rank():
    tm = models.schmitz_ldc_tmatrix()
    assert len(tm.augmented) == 9 and len(tm.augmented[0]) == 9
    assert exact.rank(tm.augmented) == 9 and tm.tik
    assert tm.kinetic_rank() == 6


def test_anderies_ldc_tmatrix_columns():
    sys = models.builtin("anderies-ldc").system
    tm = kinetics.t_matrices(sys)
    assert sorted(map(tuple, tm.columns())) == sorted([(P1, Q1, 0), (P2, Q2, 0), (0, 1, 0), (0, 0, 1)])
    assert len(tm.augmented) == 5
    assert tm.tik == (exact.rank(tm.augmented) == 4)


def test_duplicate_kinetic_columns_not_tik():
    net = ReactionNetwork.from_reactions(
        ("A", "B"), [("f", {"A": 1}, {"B": 1}), ("b", {"B": 1}, {"A": 1})]
    )
    sys = PowerLawKineticSystem(net, ((1, 1), (1, 1)))
    assert not kinetics.t_matrices(sys).tik


def test_tik_columns_distinct_within_class():
    for name in ("anderies-ldc", "anderies-0-ldc", "aggregated-schmitz-ldc"):
        tm = kinetics.t_matrices(models.builtin(name).system)
        if tm.tik:
            cols = tm.columns()
            for cls in tm.classes():
                assert len({tuple(cols[j]) for j in cls}) == len(cls)


def test_t_matrices_requires_rdk(schmitz):
    with pytest.raises(NotRDK):
        kinetics.t_matrices(schmitz.system)


def test_anderies_ldc_kinetic_subspace():
    ks = kinetics.kinetic_subspace_tilde(models.builtin("anderies-ldc").system)
    assert ks.dimension == 2
    assert exact.same_span(ks.basis, [[P2 - P1, Q2 - Q1, 0], [0, -1, 1]])
    assert ks.kinetic_deficiency == 0


def test_mass_action_kinetic_subspace_is_stoichiometric():
    sys = ab_mass_action()
    ks = kinetics.kinetic_subspace_tilde(sys)
    assert exact.same_span(ks.basis, core.reaction_vectors(sys.network))


def test_formal_sfrf_examples(anderies_gt, schmitz):
    a1 = kinetics.formal_sfrf(anderies_gt.system)[0].as_dict()
    assert a1 == {(P1, Q1, 0): P.symbol("k1"), (P2, Q2, 0): -P.symbol("k2")}
    fa = kinetics.formal_sfrf(ab_mass_action())[0].as_dict()
    assert fa == {(1, 0): -P.symbol("k1"), (0, 1): P.symbol("k2")}
    m6 = kinetics.formal_sfrf(schmitz.system)[5].as_dict()
    e5 = (0, 0, 0, 0, 1, 0)
    e6 = (0, 0, 0, 0, 0, 1)
    assert m6 == {e5: P.symbol("k56"), e6: -P.symbol("k61")}


def test_dynamic_equivalence_examples(anderies_gt, schmitz):
    ldc = anderies_gt.context.ldc
    assert kinetics.dynamic_equivalence(anderies_gt.system, ldc)
    assert kinetics.dynamic_equivalence(ldc, anderies_gt.system)
    assert kinetics.dynamic_equivalence(schmitz.system, schmitz.system)
    agg = models.builtin("aggregated-schmitz").system
    assert not kinetics.dynamic_equivalence(schmitz.system, agg)


def test_dynamic_equivalence_transitive_spot_check(anderies_gt):
    a = anderies_gt.system
    b = anderies_gt.context.ldc
    # a reversed copy of the complement: same reactions in a different order
    c = b.subsystem([rx.id for rx in reversed(b.network.reactions)])
    assert kinetics.dynamic_equivalence(a, b) and kinetics.dynamic_equivalence(b, c)
    assert kinetics.dynamic_equivalence(a, c)


def test_species_mismatch():
    other = ReactionNetwork.from_reactions(("X", "Y"), [("f", {"X": 1}, {"Y": 1})])
    with pytest.raises(SpeciesMismatch):
        kinetics.dynamic_equivalence(ab_mass_action(), PowerLawKineticSystem.mass_action(other))


def test_aggregated_linear_conjugacy():
    agg = models.builtin("aggregated-schmitz")
    assert kinetics.linear_conjugacy(agg.system, agg.context.ldc, models.AGG_CONJUGACY)
    assert not kinetics.linear_conjugacy(agg.system, agg.context.ldc, (1, 1, 1))


def test_ab_equilibrium_is_exact():
    assert np.all(kinetics.eval_f(ab_mass_action(), [1.0, 1.0]) == 0)


def test_nonpositive_state_rejected():
    with pytest.raises(NonPositiveState):
        kinetics.eval_f(ab_mass_action(), [1.0, 0.0])


def test_schmitz_published_state_is_a_rounded_equilibrium(schmitz):
    assert kinetics.relative_residual(schmitz.system, models.SCHMITZ_PUBLISHED_STATE) < 0.05


@pytest.mark.parametrize("sys", numeric_systems())
def test_jacobian_matches_finite_differences(sys, rng):
    for x in sample_states(sys, rng):
        j = kinetics.jacobian(sys, x)
        # entrywise error against the sum of absolute contributions
        assert np.all(np.abs(fd_jacobian(sys, x) - j) <= 1e-6 * abs_jacobian(sys, x) + 1e-300)


@pytest.mark.parametrize("sys", numeric_systems())
def test_conservation_law_holds_identically(sys, rng):
    v = core.conservativity(sys.network)
    if v is None:
        pytest.skip("not conservative")
    v = np.array([float(x) for x in v])
    for x in sample_states(sys, rng):
        f = kinetics.eval_f(sys, x)
        terms = kinetics.term_scale(sys, x)
        assert abs(v @ f) <= 1e-12 * (np.abs(v) @ terms)


def test_cf_partition_bounds_on_builtins():
    for name in models.BUILTIN_NAMES:
        sys = models.builtin(name).system
        if sys is None:
            continue
        part = kinetics.cf_partition(sys)
        n_r = core.structural_indices(sys.network).n_r
        assert part.n_R >= n_r
        if kinetics.classify(sys).rdk:
            assert part.n_R == n_r
