# Perturbative and symmetric deformational charts carry the same data.
#
# For a cubic surface: solve over Pert_{2,3}, embed the result into
# Def_{2,3} via l -> e1 + e2 + e3, and compare with the Def chart built from
# matching symmetric parameters.

from pertdef import Hypersurface, SolutionParams, parse_poly, verify_theorem

F = parse_poly("x1^3 + x2^2*x3 - x3 + x1*x2", 3)
hyp = Hypersurface.with_auto_frame(F, (0, 0, 0), 2)
print("tangent frame:", [[str(x) for x in v] for v in hyp.tangent_frame])

A = {(0, 0, 0): 1, (1, 0, 1): 2, (1, 1, 0): 2}
report = verify_theorem(hyp, SolutionParams.pert(3, A=A))
print(report)
