"""
Anderies model: log-parametrized equilibria and multistationarity
=================================================================

The three-pool Anderies model has deficiency one and negative kinetic
orders, so classical deficiency theorems say nothing about it.  A
weakly reversible deficiency-zero complement with the same dynamics gives
an explicit description of all positive equilibria as a log-linear family.
Searching along that family decides whether two equilibria share a
stoichiometric class.
"""

# %%
# The parameter basis
# -------------------
# Without numeric rates the toolkit picks canonical rates that make
# (1, 1, 1) an equilibrium.  The single basis vector is exact rational.

import numpy as np

from crnkit import kinetics, models, numerics
from crnkit.analysis import plp

gt = models.builtin("anderies-gt")
desc = plp.plp_from_ldc(gt.system, gt.context.ldc)
(basis,) = desc.parameter_basis
print("basis:", [str(b) for b in basis], "=", [round(float(b), 3) for b in basis])
print("ACR species:", plp.acr_species(desc) or "none")

# %%
# A second equilibrium in the same class
# --------------------------------------
# Any equilibrium is ``x* exp(t v)`` for the basis vector ``v``.  A root
# ``t != 0`` of the class constraint is a second equilibrium.

res = plp.curve_multiplicity(desc)
st = res.stoich_class
print("multistationary:", st.multi, " t =", round(st.t, 5))
print("witness:", np.round(st.witness, 6), " partner:", np.round(st.partner, 6))

# %%
# With numeric rates the two equilibria can be very far apart: at a large
# class total the second one has almost all carbon in the first pool.

rates = {"k1": 1.0, "k2": 2.0, "a_m": 1.0, "beta": 0.5}
for x in numerics.anderies_equilibria(gt.system, rates, 10.0):
    r = kinetics.relative_residual(gt.system.with_rates(rates), x)
    print(np.array2string(x, precision=4), f"residual {r:.1e}")

# %%
# Absolute concentration robustness
# ---------------------------------
# With equal orders on A1 in both carbon-uptake reactions, the basis vector
# has zero entries on A2 and A3, and those species take one value at every
# positive equilibrium.

zero = models.builtin("anderies-0")
desc0 = plp.plp_from_ldc(zero.system, zero.context.ldc)
print("AND_0 basis:", [str(b) for b in desc0.parameter_basis[0]])
print("ACR species:", sorted(plp.acr_species(desc0)))
