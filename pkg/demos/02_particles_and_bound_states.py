# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # The species catalog and bound states
#
# Every particle species is a record pairing taxonomy data with two
# bundle expressions: the free-particle bundle and the interacting one.
# Charges are integer thirds of the electron's charge (electron = +3, up
# quark = -2, down quark = +1), so a proton `uud` mirrors the electron
# and hydrogen is neutral.

# %%
from bundlecalc import format_expr
from bundlecalc.registry import Interaction, antiparticle, can_interact, default_registry

catalog = default_registry()
print(f"{len(catalog)} species, {len(catalog.carriers())} carriers")

for symbol in ["e", "nu_e", "u", "u~", "gamma", "W-"]:
    s = catalog.find(symbol)
    alpha = "-" if s.interacting_bundle is None else format_expr(s.interacting_bundle)
    print(
        f"{s.symbol:5s} charge {s.charge_thirds:+d}/3  "
        f"free={format_expr(s.free_bundle):15s} interacting={alpha}"
    )

# %% [markdown]
# Antiparticle formation is bundle conjugation: charges negate, the
# quark/antiquark classes swap, and applying it twice is the identity.

# %%
for symbol in ["e", "u", "gamma", "W-"]:
    s = catalog.find(symbol)
    print(f"antiparticle({s.symbol}) = {antiparticle(s, catalog).symbol}")

# %% [markdown]
# Interaction capabilities follow the taxonomy: only colored species feel
# the strong force, only charged ones the electromagnetic force, and all
# matter species the weak force.

# %%
for symbol in ["e", "nu_e", "u"]:
    s = catalog.find(symbol)
    flags = [
        kind.value
        for kind in (Interaction.STRONG, Interaction.ELECTROMAGNETIC, Interaction.WEAK)
        if can_interact(s, kind)
    ]
    print(f"{s.symbol:5s} interacts: {', '.join(flags)}")

# %% [markdown]
# ## Bound states
#
# A composite of interacting particles binds when three gates pass:
# electric neutrality (charge sum zero), color cancellation (3-space
# factors consumed by pairings and determinant triples, i.e. equal counts
# mod 3), and exchange statistics over the color factor of identical
# members.  When all three pass, the tensor product of the interacting
# bundles maps onto a natural bundle, shown as the target.

# %%
from bundlecalc.bound import Composite, bound_state_target, verdict_to_json

def bind(pairs):
    composite = Composite.from_symbols(catalog, pairs)
    verdict = bound_state_target(composite)
    label = " + ".join(f"{count} {sym}" for sym, count in pairs)
    print(f"{label:25s} -> {verdict.classification.value:13s} target={verdict_to_json(composite, verdict)['target']}")

bind([("u", 1), ("u~", 1)])        # a meson
bind([("u", 2), ("d", 1)])         # a baryon proper (charged, so no target)
bind([("u~", 2), ("d~", 1)])       # an antibaryon
bind([("e", 1), ("e~", 1)])        # positronium-like atom
bind([("u", 2), ("d", 1), ("e", 1)])  # hydrogen
bind([("u", 2)])                   # two quarks cannot cancel color

# %% [markdown]
# Exchange statistics exclude configurations whose skew multiplicity over
# the rank-3 color factor vanishes: three identical quarks fill the
# one-dimensional channel, four cannot.

# %%
from bundlecalc.bound import statistics_multiplicity
from bundlecalc.registry import Statistics

for k in range(1, 5):
    print(f"skew multiplicity of {k} identical quarks over color:",
          statistics_multiplicity(3, k, Statistics.FERMION))

bind([("u", 3)])
bind([("u", 4), ("d", 2)])
