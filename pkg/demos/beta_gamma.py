# Flows on Pert_{n,k+1}: the beta derivation and the gamma operator.
#
# A family m -> m + t * udot * m^(k+1) acting on Pert_{n,k+1} fixes the
# projection onto Pert_{n,k}.  Its action on that projection's tangent
# module carries the same coefficients as beta, scaled by k + 1.

import itertools

from pertdef import EndoFamily, beta_field, gamma_action, gamma_beta_check

# %% one variable, k = 1, udot = 3
fam = EndoFamily.top_order(1, 1, {(0, 0, 0): 3})
print("beta(m) =", beta_field(fam).images[0])
print("gamma(f) =", gamma_action(fam).entries[0][0], "* f")
print(gamma_beta_check(fam))

# %% two variables, k = 2
udot = {}
for key, v in {(0, 0, 0, 1): 1, (1, 1, 1, 1): -2, (0, 1, 1, 1): 5}.items():
    for perm in set(itertools.permutations(key[1:])):
        udot[(key[0],) + perm] = v
fam = EndoFamily.top_order(2, 2, udot)
for a, img in enumerate(beta_field(fam).images):
    print(f"beta(m{a + 1}) =", img)
op = gamma_action(fam)
for b in range(2):
    for a in range(2):
        print(f"gamma^{b + 1}_{a + 1} =", op.entries[b][a])
print(gamma_beta_check(fam))
