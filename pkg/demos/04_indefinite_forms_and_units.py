"""Indefinite forms: reduction cycles, narrow and wide class groups, units."""

# %%
from quadrank import indefinite as qi

print(qi.cycle_of(qi.principal_form(5)).forms)
print(len(qi.cycle_of(qi.principal_form(229))))

# %% Narrow class groups and their quotient by the class of -principal
for D in (5, 12, 60, 145, 229):
    h, G = qi.narrow_class_group(D)
    u = qi.fundamental_unit(D)
    print(D, h, G.to_list(), qi.wide_class_structure(D).to_list(), "unit norm", u.norm)

# %% Fundamental units can be large even for small discriminants
u = qi.fundamental_unit(1969)
print(u.t, u.u, u.norm, u.t**2 - 1969 * u.u**2)
