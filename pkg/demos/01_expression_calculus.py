# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # The bundle expression calculus
#
# Expressions denote complex vector bundles built from a handful of
# generators: a line bundle `lam` with integer powers, a plane bundle
# `iota`, a 3-space bundle `rho`, the Weyl spinor bundles `sigmaL` and
# `sigmaR`, the real cotangent bundle `Tstar`, trivial bundles written as
# plain naturals, and connection spaces `conn(G)`.  The calculus closes
# them under direct sum (`+`), tensor product (`*`), complex conjugation
# (`conj`), and exterior powers (`ext<k>`).

# %%
from bundlecalc import fibre_dim, normalize, parse

def show(text):
    print(f"{text:40s} ->  {normalize(parse(text))}")

# %% [markdown]
# ## Normal forms
#
# `normalize` rewrites any expression to a sorted multiset of tensor
# monomials.  Line-bundle powers merge additively, so a power times its
# conjugate is the trivial line: charge bookkeeping is just integer
# arithmetic in the exponent.

# %%
show("lam^2 * lam^-2")
show("lam^3 * lam^4")
show("conj(lam^3)")

# %% [markdown]
# Conjugation is an involution that distributes over sums and products.
# The two Weyl spinor bundles are each other's conjugates, and their sum
# (the full Dirac bundle, alias `sigma`) is self-conjugate.

# %%
show("conj(conj(rho))")
show("conj(sigma)")
show("(sigmaL + sigmaR) * rho")

# %% [markdown]
# ## Exterior powers
#
# Degrees beyond the rank vanish.  The determinant line of the plane
# bundle is a generator of its own (`ext2(iota)`), the determinant of the
# 3-space bundle is trivialized by its unit section, and degree 2 of the
# 3-space bundle pairs with the conjugate bundle.

# %%
show("ext2(iota)")
show("ext3(iota)")
show("ext2(rho)")
show("ext3(rho)")
show("ext4(rho)")
show("ext2(iota + lam)")

# %% [markdown]
# ## Ranks
#
# Fibre dimension is additive over sums, multiplicative over products,
# and binomial over exterior powers.  Purely complex expressions report
# complex rank; anything containing the cotangent bundle or a connection
# space reports real rank.

# %%
for text in ["iota", "rho*sigma", "ext2(rho + iota)", "Tstar", "lam*Tstar", "conn(SU3)"]:
    print(f"dim {text:20s} =  {fibre_dim(parse(text))}")

# %% [markdown]
# Equality of bundles is equality of normal forms, so reordered and
# reassociated expressions compare equal.

# %%
from bundlecalc import equal_normal

print(equal_normal(parse("iota*rho"), parse("rho*iota")))
print(equal_normal(parse("sigmaL + lam*sigma"), parse("sigmaL + lam*sigmaL + lam*sigmaR")))
print(equal_normal(parse("lam"), parse("lam^-1")))
