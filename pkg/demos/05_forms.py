"""
Exterior calculus on a flat chart
=================================

Three manifolds of dimensions 2, 3, 3 sharing one coordinate.
"""

from fractions import Fraction

from combman.diffgeo import (ChartSpec, DifferentialForm, check_d_identity, constant, coordinate,
                             exterior_derivative, manifold_block, tangent_dimension, wedge)

chart = ChartSpec(3, 1, (2, 3, 3))
D = tangent_dimension(chart)
print("D =", D, "blocks:", [manifold_block(chart, i) for i in range(chart.s)])

x = [coordinate(D, i) for i in range(D)]
alpha = DifferentialForm(D, 1, {(0,): x[1] * x[2], (3,): x[0] * x[0] * Fraction(1, 2)})
beta = DifferentialForm(D, 1, {(1,): x[4]})

print("d alpha     :", {k: str(v) for k, v in exterior_derivative(alpha).terms.items()})
print("d d alpha   :", exterior_derivative(exterior_derivative(alpha)).is_zero())

k = alpha.degree
lhs = exterior_derivative(wedge(alpha, beta))
rhs = wedge(exterior_derivative(alpha), beta) + (-1) ** k * wedge(alpha, exterior_derivative(beta))
print("Leibniz     :", lhs == rhs)

X = [x[1], constant(D, 1)] + [constant(D, 0)] * (D - 2)
Y = [constant(D, 0), x[0] * x[3]] + [constant(D, 0)] * (D - 2)
print("identity residual (exact, float):",
      check_d_identity(alpha, X, Y), check_d_identity(alpha, X, Y, exact=False))
