"""Integer arithmetic: primality, factoring under a budget, square-freeness."""

# %%
from quadrank.arith import factorize, is_probable_prime, squarefree_status

print(factorize(4032))
print(is_probable_prime(2**89 - 1))

# %% A semiprime with two 10-digit factors splits quickly with Pollard rho.
print(factorize(1000000007 * 998244353))

# %% With a tiny budget the split fails and the cofactor is reported as is.
fac = factorize(1000000007 * 998244353, budget=10)
print(fac.status, fac.cofactor)
print(squarefree_status(1000000007 * 998244353, budget=10))

# %% A perfect-square cofactor is still recognised as not square-free.
print(squarefree_status(1000000007**2 * 998244353**2, budget=10))
