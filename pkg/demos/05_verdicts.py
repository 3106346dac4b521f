"""Per-instance verdicts: do f1 and f2 really give n-rank 2?"""

# %%
from quadrank.construct import ANY, COROLLARY, RELAXED_PRIME, build_corollary, build_imaginary, build_real
from quadrank.verify import verify

for abcn in ((1, 2, 2, 2), (1, 2, 2, 3), (4, 7, 4, 3)):
    v = verify(build_imaginary(*abcn), ANY, full_group=True)
    print(abcn, v.code, v.ord_f1, v.ord_f2, v.span.to_list(), v.full_group.to_list())

# %% The corollary instance d = 23
print(verify(build_corollary(2, 3), COROLLARY).code)

# %% Under the relaxed bound d > 4abc^2 this instance is admissible,
# yet h(-127) = 5 so 5-rank 2 is impossible
v = verify(build_imaginary(1, 2, 2, 5), RELAXED_PRIME, full_group=True)
print(v.code, v.class_number, v.notes)

# %% Real mode reports the narrow group, with the wide picture alongside
v = verify(build_real(1, 2, 4, 4), ANY, full_group=True)
print(v.code, v.full_group.to_list(), v.wide)
