# Third-order chart of a quadric in four variables.
#
# The free parameters are the symmetric tensors A (order 2) and B (order 3).
# Every coefficient is an exact rational.

import itertools
import random
from fractions import Fraction

from pertdef import Hypersurface, SolutionParams, kernel_basis, parse_poly, pert_solve, residual

rng = random.Random(0)

F = parse_poly("x1^2 - 2*x2^2 + x3*x4 + x1*x3 - x2 - x3", 4)
x_star = (0, 0, 0, 0)

# tangent directions at the base point: the kernel of dF(x*) = (0, -1, -1, 0)
frame = kernel_basis([[0, -1, -1, 0]])[:2]
hyp = Hypersurface(F, x_star, tuple(frame))
print("tangent frame:", [[str(x) for x in v] for v in frame])


def sym_tensor(rank):
    out = {}
    for g in range(2):
        for lower in itertools.combinations_with_replacement(range(2), rank):
            v = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            for perm in set(itertools.permutations(lower)):
                out[(g,) + perm] = v
    return out


params = SolutionParams.pert(3, A=sym_tensor(2), B=sym_tensor(3))
p = pert_solve(hyp, params).p
for i, coord in enumerate(p):
    print(f"x{i + 1} =", coord)
print("residual:", residual(F, p))
