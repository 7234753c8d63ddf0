# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Coupling constants and the mixing angle
#
# The natural fibre metric on a connection space comes from an invariant
# metric on the structure group.  For U(2) the invariant metrics form a
# two-parameter family, not a ray: an overall scale (the coupling
# constant) and an angle.  This notebook verifies the count numerically
# and explores the angle.

# %%
import math

import numpy as np

from bundlecalc.coupling import (
    U2_ALGEBRA,
    ad_invariant_metric,
    ew_directions,
    invariant_form_family_dimension,
    invariant_metric_family_dimension,
    is_ad_invariant,
    strength_order,
    su2_structure,
    weinberg_angle,
    DEFAULT_STRENGTHS,
)

# %% [markdown]
# ## The family is two-dimensional
#
# Stack the invariance constraints on the 10-dimensional space of
# symmetric 4x4 forms and count the nullspace.  u(2) gives 2; the simple
# algebra su(2) alone gives 1 (scale only), which is why the angle is a
# genuinely electroweak phenomenon.

# %%
print("u(2) family dimension: ", invariant_metric_family_dimension())
print("su(2) family dimension:", invariant_form_family_dimension(su2_structure()))

# %% [markdown]
# The canonical family is diag(1/g'^2, 1/g^2, 1/g^2, 1/g^2) in the basis
# (center, three Pauli-halves), with tan(angle) = g'/g.

# %%
metric = ad_invariant_metric(g=0.65, theta_w=0.49)
print(metric.gram)
print("invariant:", is_ad_invariant(metric))
print("angle read back:", weinberg_angle(metric))

# %% [markdown]
# ## Orthogonal photon, W, and Z directions
#
# With the breaking section along the second coordinate axis, the photon
# direction is center + s3.  The Z direction is the metric-orthogonal
# complement of the photon inside the diagonal subalgebra, so it moves
# with the metric; the W plane is span{s1, s2}.  All three are mutually
# orthogonal for every member of the family, which is what makes the
# angle physically meaningful.

# %%
for g, theta in [(1.0, math.pi / 4), (0.65, 0.49)]:
    m = ad_invariant_metric(g, theta)
    d = ew_directions(m)
    print(f"g={g}, theta={theta:.3f}")
    print("  photon:", np.round(d.photon, 6))
    print("  z:     ", np.round(d.z, 6))
    print("  <photon, z>_m =", float(d.photon @ m.gram @ d.z))

# %% [markdown]
# At the symmetric point g = g' the Z direction is center - s3; away from
# it the direction tilts.  The angle itself is scale-invariant: only the
# shape of the metric matters, not its size.

# %%
m = ad_invariant_metric(0.8, 0.6)
print(weinberg_angle(m), "==", weinberg_angle(17.0 * np.asarray(m.gram)))

# %% [markdown]
# ## Interaction strengths
#
# The scale factor measures interaction strength; sorting the configured
# couplings reproduces the strong > electromagnetic > weak ordering.
# The magnitudes are placeholders, only the order is meaningful.

# %%
print(strength_order(DEFAULT_STRENGTHS))
