# The unit circle as a first example.
#
# Solve x^2 + y^2 = 1 near (1, 0) over the truncated ring Pert_{1,3},
# compare with the Taylor series of sqrt(1 - l^2), then build the same
# chart from two dual-number directions and fold it back.

from pertdef import Hypersurface, def_chart_build, parse_poly, pert_solve, residual
from pertdef.morphisms import embed_column, retract_column

F = parse_poly("(x1^2 + x2^2 - 1)/2", 2)
circle = Hypersurface(F, (1, 0), ((0, 1),))

# %% perturbative chart
p = pert_solve(circle, k=3).p
print("x(l) =", p[0])
print("y(l) =", p[1])
print("F(p) =", residual(F, p))

# %% deformational chart: two first-order steps along (0, 1)
d = def_chart_build(circle, [[(0, 1)], [(0, 1)]]).p
print("x(e1, e2) =", d[0])
print("y(e1, e2) =", d[1])

# the Def chart is symmetric in the two slots, so it comes from a Pert chart
back = retract_column(d)
print("retracted:", [str(c) for c in back])
print("embed(retract(d)) == d:", embed_column(back) == d)
