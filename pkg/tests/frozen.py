"""Regression constants, computed once by the tight-tolerance quadrature
oracle (relative 1e-12) and frozen here.  test_acceptance re-derives each
one at session time and every evaluator path must reproduce them."""

# S at order 0, argument 3, endpoint 3: the midpoint of the two standard
# single-parameter sweeps
S0_3_3 = 0.031180758184859769

# Macdonald function at order 0, argument 3
K0_3 = 0.034739504386279248

# upper incomplete gamma at order 0, argument 1 (exponential integral E1(1))
E1_1 = 0.21938393439552027

# upper incomplete gamma at order -1.5, argument 2
GAMMA_M15_2 = 0.011832994103345997

# upper incomplete gamma at order 0, argument 3
GAMMA_0_3 = 0.013048381094197037

# order +-1/2 closed-form grid: (order, argument, endpoint) -> value
S_HALF_GRID = {
    (0.5, 2.0, 1.0): 0.075284680177509859,
    (-0.5, 2.0, 1.0): 0.044653091790551588,
    (0.5, 0.5, 0.5): 0.93858456804730422,
    (-0.5, 0.5, 0.5): 0.54812555575826416,
    (0.5, 5.0, 4.0): 0.0034101509389685485,
    (-0.5, 5.0, 4.0): 0.0030522223131828333,
    (0.5, 3.0, 3.0): 0.033784664574023066,
    (-0.5, 3.0, 3.0): 0.030317402485975475,
}
