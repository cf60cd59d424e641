# Zero test for numeric-mode scalars
NUMERIC_ZERO_TOL = 1e-10

# Exact scalars that are not Gaussian rationals: evaluated to this many digits
# before a symbolic zero test is attempted
EXACT_ZERO_DIGITS = 60
EXACT_ZERO_TOL = 1e-40

# Hermitian classification: |disc| below this is refused in numeric mode
CLASSIFY_TOLERANCE_BAND = 1e-9

# Random congruences tried when the direct witness construction fails
WITNESS_RETRIES = 12

# Newton solve of the chain equation A*conj(A)*V^2 - V + A*conj(A)*U^2 = 0
NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 60

# Adaptive RK45 for the chain distribution
ODE_RTOL = 1e-11
ODE_ATOL = 1e-13

# Frame checks
FLATNESS_THRESHOLD = 1e-6
FRAME_DET_FLOOR = 1e-12  # |det| below this is a degenerate frame
