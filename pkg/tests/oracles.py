"""Independent oracles shared by the property tests and the acceptance suite."""
from itertools import product

import mpmath
import numpy as np
import pytest
from scipy.optimize import linprog

from crnkit import core, kinetics, models
from crnkit.core import ReactionNetwork


def signed_feasible(a_eq, signs, free_cols=0):
    """Is there y with a_eq @ y = 0 and the first len(signs) coordinates signed?

    Extra ``free_cols`` trailing coordinates are unconstrained.
    """
    n = len(signs) + free_cols
    bounds = []
    for s in signs:
        bounds.append((1, None) if s > 0 else (None, -1) if s < 0 else (0, 0))
    bounds += [(None, None)] * free_cols
    a = np.asarray(a_eq, dtype=float).reshape(-1, n)
    res = linprog(np.zeros(n), A_eq=a, b_eq=np.zeros(a.shape[0]), bounds=bounds, method="highs")
    return res.status == 0


def oracle_concordant(net):
    """Brute force over (alpha, sigma) sign patterns with float LPs.

    sigma is parametrised as N @ lam (image form), alpha as a kernel vector.
    """
    n = np.array([[float(x) for x in row] for row in core.stoichiometric_matrix(net)])
    m, r = n.shape
    pos = {s: i for i, s in enumerate(net.species)}
    supports = [[pos[s] for s in rx.reactant.support] for rx in net.reactions]
    for tau in product((-1, 0, 1), repeat=m):
        if not any(tau):
            continue
        # sigma - N lam = 0 with sigma signed, lam free
        if not signed_feasible(np.hstack([np.eye(m), -n]), tau, free_cols=r):
            continue
        for alpha in product((-1, 0, 1), repeat=r):
            ok = True
            for a, sup in zip(alpha, supports):
                signs = {tau[i] for i in sup}
                if a != 0 and a not in signs:
                    ok = False
                elif a == 0 and not (signs <= {0} or {1, -1} <= signs):
                    ok = False
                if not ok:
                    break
            if ok and signed_feasible(n, alpha):
                return False
    return True


def random_network(rng):
    m = int(rng.integers(1, 4))
    r = int(rng.integers(1, 4))
    species = tuple(f"S{i}" for i in range(m))
    reactions = []
    seen = set()
    while len(reactions) < r:
        a = tuple(int(c) for c in rng.integers(0, 3, m))
        b = tuple(int(c) for c in rng.integers(0, 3, m))
        if a == b or (a, b) in seen:
            continue
        seen.add((a, b))
        reactions.append((f"r{len(reactions)}", dict(zip(species, a)), dict(zip(species, b))))
    return ReactionNetwork.from_reactions(species, reactions)


def numeric_systems():
    """Every built-in system, with deterministic positive rates where none are given."""
    rng = np.random.default_rng(7)
    out = []
    for name in models.BUILTIN_NAMES:
        sys = models.builtin(name).system
        if sys is None:
            continue
        if sys.rates is None:
            sys = sys.with_rates(list(rng.uniform(0.5, 2.0, sys.network.r)))
        out.append(pytest.param(sys, id=name))
    return out


def sample_states(sys, rng, n=20):
    if sys.name == "schmitz":
        base = np.array(models.SCHMITZ_PUBLISHED_STATE)
        return [base * rng.uniform(0.5, 2.0, 6) for _ in range(n)]
    return [np.exp(rng.normal(0.0, 1.0, sys.network.m)) for _ in range(n)]


def mp_f(sys, x):
    """Rate function evaluated independently in 150-digit arithmetic (orders of -68 span ~90 decades)."""
    vecs = core.reaction_vectors(sys.network)
    out = [mpmath.mpf(0)] * sys.network.m
    for k, row, vec in zip(sys.rates, sys.orders, vecs):
        rate = mpmath.mpf(k)
        for xi, e in zip(x, row):
            if e != 0:
                rate *= xi ** (mpmath.mpf(e.numerator) / e.denominator)
        out = [o + rate * int(v) if v.denominator == 1 else o + rate * mpmath.mpf(v.numerator) / v.denominator
               for o, v in zip(out, vec)]
    return out


def abs_jacobian(sys, x):
    n = np.array([[float(v) for v in vec] for vec in core.reaction_vectors(sys.network)])  # r x m
    f = np.array([[float(v) for v in row] for row in sys.orders])
    rates = kinetics.reaction_rates(sys, x)
    return np.abs(n).T @ (np.abs(f) * rates[:, None]) / x[None, :]


def fd_jacobian(sys, x):
    """Central differences of ``mp_f`` with a 1e-30 relative step at 150 digits."""
    m = sys.network.m
    out = np.empty((m, m))
    with mpmath.workdps(150):
        xm = [mpmath.mpf(float(v)) for v in x]
        for h in range(m):
            step = xm[h] * mpmath.mpf("1e-30")
            up, dn = list(xm), list(xm)
            up[h] += step
            dn[h] -= step
            out[:, h] = [float((a - b) / (2 * step)) for a, b in zip(mp_f(sys, up), mp_f(sys, dn))]
    return out
