"""Reduced positive definite forms, composition and class group structure."""

# %%
from quadrank import definite as qd
from quadrank.definite import DefiniteForm

for D in (-15, -23, -84):
    forms = qd.enumerate_reduced(D)
    print(D, [f.coeffs for f in forms], qd.class_group_structure(D).to_list())

# %% Composition in Cl(-23): (2,1,3) generates a cyclic group of order 3
f = DefiniteForm(2, 1, 3)
print([qd.power(f, k).coeffs for k in range(4)])
print(qd.order_of(f))

# %% The two forms of the d = 31 instance span only a cyclic group
print(qd.span(DefiniteForm(2, -1, 4), DefiniteForm(2, 1, 4)).to_list())

# %% A larger group with several 2-parts
print(qd.class_group_structure(-4 * 3 * 5 * 7 * 11).to_list())
