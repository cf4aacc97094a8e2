from fractions import Fraction as F

import numpy as np
import pytest

from crnkit import core, exact, kinetics, models
from crnkit.analysis import plp as P
from crnkit.errors import DimensionMismatch, NotAnEquilibrium, PreconditionFailure, PremiseFailure

AND_LT = ("-1", "0.5", "0.3", "-0.2")  # p1 < 0, q1 > 0, p2 > 0, q2 < 0


def family(orders):
    return models.anderies_system(*orders), models.anderies_ldc_system(*orders)


def rates_for(sys, x):
    """Rate parameters making ``x`` an equilibrium of an Anderies system."""
    f = [[float(v) for v in row] for row in sys.orders]
    mono = [float(np.prod(np.power(x, row))) for row in f]
    return {"k1": 1.0, "k2": mono[0] / mono[1], "a_m": 1.0, "beta": x[1] / x[2]}


def test_and_gt_parameter_basis(anderies_gt):
    plp = P.plp_from_ldc(anderies_gt.system, anderies_gt.context.ldc)
    assert plp.parameter_basis == ((F(-1), F(1623, 13), F(1623, 13)),)
    assert abs(float(F(1623, 13)) - 124.846) < 1e-3
    assert P.acr_species(plp) == set()
    for u in plp.flux_space:
        assert exact.dot(u, plp.parameter_basis[0]) == 0


def test_parameter_basis_is_ratio_formula():
    for orders in (models.AND_GT_ORDERS, AND_LT):
        p1, q1, p2, q2 = (F(x) for x in orders)
        r = (p2 - p1) / (q2 - q1)
        plp = P.plp_from_ldc(*family(orders))
        assert plp.parameter_basis == ((F(-1), r, r),)
        assert P.acr_species(plp) == set()


def test_and0_basis_and_acr():
    plp = P.plp_from_ldc(*family(models.AND_0_ORDERS))
    assert plp.parameter_basis == ((F(-1), F(0), F(0)),)
    assert P.acr_species(plp) == {"A2", "A3"}


def test_and0_acr_values_constant_along_curve(rng):
    sys, ldc = family(models.AND_0_ORDERS)
    rates = {"k1": 1.0, "k2": 2.0, "a_m": 1.0, "beta": 1.0}
    rated = sys.with_rates(rates)
    from crnkit import numerics

    x_star = numerics.and0_equilibrium(rates, 50.0)
    plp = P.plp_from_ldc(rated, ldc, x_star)
    v = np.array([float(x) for x in plp.parameter_basis[0]])
    pts = [x_star * np.exp(t * v) for t in rng.uniform(-5, 5, 10)]
    for x in pts:
        assert kinetics.relative_residual(rated, x) <= 1e-9
        assert x[1] == pytest.approx(x_star[1], rel=1e-14)
        assert x[2] == pytest.approx(x_star[2], rel=1e-14)


def test_zero_basis_vector_rejected(anderies_gt):
    plp = P.plp_from_ldc(anderies_gt.system, anderies_gt.context.ldc)
    with pytest.raises(PreconditionFailure):
        P.PLPDescription(plp.reference_equilibrium, ((F(0), F(0), F(0)),), plp.flux_space, plp.system)


def test_premise_failures(anderies_gt):
    with pytest.raises(PremiseFailure, match="weakly reversible"):
        P.plp_from_ldc(anderies_gt.system, anderies_gt.system)
    with pytest.raises(PremiseFailure, match="dynamic equivalence"):
        P.plp_from_ldc(anderies_gt.system, models.builtin("anderies-0-ldc").system)


def test_reference_state_must_be_an_equilibrium(anderies_gt):
    rated = anderies_gt.system.with_rates({"k1": 1.0, "k2": 1.0, "a_m": 1.0, "beta": 1.0})
    with pytest.raises(NotAnEquilibrium):
        P.plp_from_ldc(rated, anderies_gt.context.ldc, [1.0, 2.0, 3.0])
    with pytest.raises(PreconditionFailure):
        P.plp_from_ldc(rated, anderies_gt.context.ldc)


def test_canonical_rates_make_ones_an_equilibrium(anderies_gt):
    plp = P.plp_from_ldc(anderies_gt.system, anderies_gt.context.ldc)
    assert plp.canonical_rates
    assert kinetics.relative_residual(plp.system, np.ones(3)) <= 1e-12


def test_and0_curve_is_mono_and_co_mono():
    res = P.curve_multiplicity(P.plp_from_ldc(*family(models.AND_0_ORDERS)))
    assert not res.stoich_class.multi and not res.co_class.multi


def test_and_gt_second_equilibrium_in_class(rng):
    sys, ldc = family(models.AND_GT_ORDERS)
    r = float(F(1623, 13))
    for _ in range(5):
        x = np.exp(rng.normal(0, 1, 3))
        assert abs(x[0] - r * (x[1] + x[2])) > 1e-6
        rated = sys.with_rates(rates_for(sys, x))
        res = P.curve_multiplicity(P.plp_from_ldc(rated, ldc, x))
        st = res.stoich_class
        assert st.multi and st.t != 0
        w, partner = np.array(st.witness), np.array(st.partner)
        assert kinetics.relative_residual(rated, w) <= 1e-9
        assert kinetics.relative_residual(rated, partner) <= 1e-9
        assert abs(w.sum() - partner.sum()) <= 1e-10 * (w.sum() + partner.sum())
        assert not np.allclose(w, partner)


def test_and_lt_mono_on_sampled_classes(rng):
    sys, ldc = family(AND_LT)
    for _ in range(5):
        x = np.exp(rng.normal(0, 1, 3))
        rated = sys.with_rates(rates_for(sys, x))
        res = P.curve_multiplicity(P.plp_from_ldc(rated, ldc, x))
        assert not res.stoich_class.multi and res.stoich_class.for_all_instances


def test_and_gt_co_class_search_finds_no_partner(anderies_gt):
    res = P.curve_multiplicity(P.plp_from_ldc(anderies_gt.system, anderies_gt.context.ldc))
    # v = (-1, R, R): A1 and A2 always move in opposite directions
    assert not res.co_class.multi and res.co_class.for_all_instances


def test_dimension_mismatch(anderies_gt):
    plp = P.plp_from_ldc(anderies_gt.system, anderies_gt.context.ldc)
    with pytest.raises(DimensionMismatch):
        P.curve_multiplicity(plp, conservation=(1, 1))


def test_sign_space_patterns(anderies_gt):
    net = anderies_gt.system.network
    s_basis = exact.row_basis(core.reaction_vectors(net))
    assert P.sign_realizable(s_basis, (-1, 1, 1))
    ks = kinetics.kinetic_subspace_tilde(anderies_gt.context.ldc)
    perp = exact.orthogonal_complement(ks.basis, 3)
    assert P.sign_realizable(perp, (-1, 1, 1))
    assert P.realizable_patterns(perp, 3) == {(-1, 1, 1), (1, -1, -1)}
    assert not P.sign_realizable(perp, (0, 0, 0))


def test_verify_linear_conjugacy(anderies_gt):
    a = anderies_gt.system
    assert P.verify_linear_conjugacy(a, a, (1, 1, 1))
    assert P.verify_linear_conjugacy(a, anderies_gt.context.ldc, (1, 1, 1))
    assert not P.verify_linear_conjugacy(a, models.builtin("aggregated-schmitz").system, (1, 1, 1))
