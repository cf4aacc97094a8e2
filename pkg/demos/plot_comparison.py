"""
Comparing an aggregated carbon cycle with the Anderies complement
=================================================================

Lumping the six Schmitz pools onto three gives a deficiency-zero network
with the same pool structure as the Anderies model.  A fixed list of
properties compares the two side by side.
"""

# %%
# Property reports
# ----------------

from crnkit import models
from crnkit.analysis import report


def analyze(name):
    b = models.builtin(name)
    return report.analyze(b.system, b.context)


left, right = analyze("aggregated-schmitz"), analyze("anderies-0-ldc")

# %%
# The comparison table
# --------------------
# Rows marked with ``*`` differ.

for row in report.compare(left, right):
    mark = "*" if row.differs else " "
    print(f"{mark} {row.field:16s} {row.left:30s} {row.right}")

# %%
# Aggregation itself changes very little: against the full Schmitz model
# only the complex count and the deficiency of the known complement differ.

for row in report.differences(analyze("schmitz"), left):
    print(f"{row.field}: {row.left} -> {row.right}")
