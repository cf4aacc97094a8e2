
import numpy as np
import pytest
import sympy

from crnkit import core, exact, models
from crnkit.analysis import injectivity as inj
from crnkit.polynomial import SparsePolynomial

ANDERIES_DET = (
    "-k1*k2*p1*z1*z3 + k1*k2*p2*z2*z3 - k1*k3*p1*z1*z4 + k1*k3*p2*z2*z4"
    " + k2*k3*q1*z1*z4 - k2*k3*q2*z2*z4"
)


def to_sympy(poly: SparsePolynomial):
    return sympy.expand(sympy.sympify(str(poly).replace("^", "**")))


def symbolic_anderies_orders():
    p1, q1, p2, q2 = (SparsePolynomial.symbol(s) for s in ("p1", "q1", "p2", "q2"))
    return [[p1, q1, 0], [p2, q2, 0], [0, 1, 0], [0, 0, 1]]


def sympy_mstar_det(n_mat, orders, rows):
    """Independent assembly of M* = N diag(z) F diag(k) with rows replaced by (1, 1, 1)."""
    m, r = len(n_mat), len(n_mat[0])
    z = sympy.symbols(f"z1:{r + 1}")
    k = sympy.symbols(f"k1:{m + 1}")
    n = sympy.Matrix(n_mat)
    f = sympy.Matrix(orders)
    mat = n * sympy.diag(*z) * f * sympy.diag(*k)
    for i in rows:
        mat[i, :] = sympy.ones(1, m)
    return sympy.expand(mat.det())


def test_anderies_symbolic_determinant(anderies_gt):
    n_mat = core.stoichiometric_matrix(anderies_gt.system.network)
    res = inj.mstar_determinant(n_mat, symbolic_anderies_orders())
    assert res.replaced_rows == (2,)
    got = to_sympy(res.determinant)
    p1, q1, p2, q2 = sympy.symbols("p1 q1 p2 q2")
    oracle = sympy_mstar_det(n_mat, [[p1, q1, 0], [p2, q2, 0], [0, 1, 0], [0, 0, 1]], [2])
    assert sympy.expand(got - oracle) == 0
    assert sympy.expand(got - sympy.sympify(ANDERIES_DET)) == 0
    assert len(res.determinant.coefficients()) == 6


def test_row_choice_changes_determinant_by_a_constant(anderies_gt):
    n_mat = core.stoichiometric_matrix(anderies_gt.system.network)
    p1, q1, p2, q2 = sympy.symbols("p1 q1 p2 q2")
    orders = [[p1, q1, 0], [p2, q2, 0], [0, 1, 0], [0, 0, 1]]
    base = sympy_mstar_det(n_mat, orders, [2])
    for row in (0, 1):
        other = sympy_mstar_det(n_mat, orders, [row])
        ratio = sympy.simplify(other / base)
        assert ratio.is_number


def and_lt_orders():
    return ("-1", "0.5", "0.3", "-0.2")  # p1 < 0, q1 > 0, p2 > 0, q2 < 0


def test_and_lt_is_injective():
    res = inj.injectivity_determinant(models.anderies_system(*and_lt_orders()))
    assert res.signs == {1}
    assert res.injective


def test_and_gt_is_inconclusive(anderies_gt):
    res = inj.injectivity_determinant(anderies_gt.system)
    assert res.signs == {-1, 1}
    assert res.verdict == "inconclusive"


def test_schmitz_is_injective(schmitz):
    assert inj.injectivity_determinant(schmitz.system).injective


@pytest.mark.parametrize("name", ["schmitz", "anderies-gt", "anderies-0", "aggregated-schmitz"])
def test_homogeneity_and_numeric_cross_check(name, rng):
    sys = models.builtin(name).system
    res = inj.injectivity_determinant(sys)
    s = core.rank(sys.network)
    assert res.determinant.is_homogeneous_in(res.z_symbols, s)
    assert res.determinant.is_homogeneous_in(res.k_symbols, s)
    n_mat = core.stoichiometric_matrix(sys.network)
    for _ in range(5):
        z = rng.uniform(0.5, 2.0, sys.network.r)
        k = rng.uniform(0.5, 2.0, sys.network.m)
        values = dict(zip(res.z_symbols, z)) | dict(zip(res.k_symbols, k))
        expect = np.linalg.det(inj.numeric_mstar(n_mat, sys.orders, res.kernel_rows, res.replaced_rows, z, k))
        got = res.determinant.evaluate(values)
        assert abs(got - expect) <= 1e-9 * max(abs(expect), 1e-300)


def test_kernel_rows_are_left_kernel(schmitz):
    res = inj.injectivity_determinant(schmitz.system)
    n_mat = core.stoichiometric_matrix(schmitz.system.network)
    for w in res.kernel_rows:
        assert all(x == 0 for x in exact.matvec(exact.transpose(n_mat), w))
