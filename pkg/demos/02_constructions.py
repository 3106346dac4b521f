"""The (a, b, c, n) family: discriminants and the x_i, y_i that come with them."""

# %%
from quadrank.construct import ANY, COROLLARY, RELAXED_PRIME, STRICT, build_corollary, build_imaginary, build_real, check_hypotheses

cons = build_imaginary(1, 2, 2, 3)
print(cons)
for x, y in ((cons.x1, cons.y1), (cons.x2, cons.y2)):
    print(x * x - 4 * y**cons.n, "=", -cons.disc_val)

# %% Hypothesis reports under different bounds
print(check_hypotheses(cons, STRICT))
print(check_hypotheses(cons, RELAXED_PRIME))

# %% a = b = 1 gives the one-parameter family 4c^n - n^2
cor = build_corollary(2, 3)
print(cor.disc_val, check_hypotheses(cor, COROLLARY).admissible)

# %% The real side negates the discriminant
re = build_real(1, 2, 4, 4)
print(re.disc_val, re.x1, re.y1, re.x2, re.y2)
print(check_hypotheses(re, ANY))
