# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Symmetry breaking as rewrites
#
# Neither interacting-particle bundles nor connection spaces are natural
# (directly observable).  Two rewrites restore naturality: a formal
# thought experiment that trivializes the interaction bundle outright,
# and the spontaneous electroweak reduction that happens in nature.

# %%
from bundlecalc import normalize, parse
from bundlecalc.breaking import FormalBreaking, SpontaneousEW, break_registry, carriers, ew_break, formal_break
from bundlecalc.registry import Interaction, SU3_GAUGE, U1_GAUGE, default_registry

def show(label, expr):
    print(f"{label:35s} ->  {normalize(expr)}")

# %% [markdown]
# ## Formal breaking
#
# Trivializing the strong 3-space bundle makes each quark flavor appear
# in three copies, and turns the connection space into eight cotangent
# slots: the gluon species.  Trivializing the electromagnetic line leaves
# matter in its free bundle and one cotangent slot: the photon.

# %%
show("strong break of rho*sigma", formal_break(SU3_GAUGE, parse("rho*sigma")))
show("strong break of conn(SU3)", formal_break(SU3_GAUGE, parse("conn(SU3)")))
show("electromagnetic break of lam*sigma", formal_break(U1_GAUGE, parse("lam*sigma")))
show("electromagnetic break of conn(U1)", formal_break(U1_GAUGE, parse("conn(U1)")))

# %% [markdown]
# Applied to the whole catalog, the strong break multiplies each quark
# flavor into three color-indexed species.

# %%
catalog = default_registry()
colored = break_registry(FormalBreaking(SU3_GAUGE), catalog)
print(len(catalog), "species before,", len(colored), "after")
print([s.symbol for s in colored if s.symbol.startswith("u") and "~" not in s.symbol])

# %% [markdown]
# ## Spontaneous electroweak breaking
#
# A section of the plane bundle with constant positive length reduces
# U(2) to U(1): the plane splits into a trivial line (spanned by the
# section) plus the charge line, and its determinant becomes the charge
# line.  The generation bundle then decomposes with the right charges:
# the neutrino slot carries exponent 0 and the electron slots exponent 1.

# %%
show("iota", ew_break(parse("iota")))
show("ext2(iota)", ew_break(parse("ext2(iota)")))
show("iota*sigmaL + ext2(iota)*sigmaR", ew_break(parse("iota*sigmaL + ext2(iota)*sigmaR")))

# %% [markdown]
# The U(2) connection space splits into the photon slot, one complex
# cotangent slot housing the charged W pair, and a neutral cotangent slot
# for the Z.  Real rank is conserved: 4 x 4 = 16.

# %%
show("conn(U2)", ew_break(parse("conn(U2)")))

for kind in (Interaction.ELECTROMAGNETIC, Interaction.STRONG, Interaction.ELECTROWEAK):
    report = carriers(kind)
    names = ", ".join(e.name for e in report.entries)
    print(f"{kind.value:16s} carriers: {names}  (total slot rank {report.total_slot_rank()})")

# %% [markdown]
# Chaining the spontaneous break with a formal electromagnetic break
# agrees with the formal electroweak break wherever both apply.

# %%
from bundlecalc.registry import U2_GAUGE

for text in ["iota", "ext2(iota)", "conn(U2)", "iota*iota"]:
    chained = formal_break(U1_GAUGE, ew_break(parse(text)))
    direct = formal_break(U2_GAUGE, parse(text))
    print(f"{text:12s} chained = direct:", normalize(chained) == normalize(direct))
