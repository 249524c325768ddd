"""Pinned regression constants.

The analysis leaves several implicit constants unspecified; the values below
were measured once with the brute-force oracles in the test suite and are
frozen here. Tests assert against these, not against re-derived values.
"""

# sup of |g(z)| / (|z|^(1-d) + |z|^(1+d)) at delta = 1/2 over the log-grid of
# moduli 2^-40 .. 2^40 (2e6 points); the analytic envelope is 4/e ~ 1.4715.
GROWTH_RATIO_SUP_DELTA_HALF = 1.32549

# empirical suprema of the two difference quotients of the g split at
# alpha = 1/2 over 10^6 seeded random pairs plus adversarial near-equal
# probes (observed 2.081 / 2.581), frozen with headroom
HOLDER_RATIO_SUP_ALPHA_HALF = 2.25
LOG_LIPSCHITZ_RATIO_SUP = 2.80

# Gagliardo / multiplier norm ratio on 1-d unit-torus band-limited fields,
# N = 256, cutoffs cycling {8, 16, 32, 64, 96}: observed over 10^3 seeded
# fields (0.25: 2.685..2.980, 0.5: 2.141..2.434, 0.75: 1.688..2.369), widened
# by 3 percent. The lower endpoints certify the equivalence constant c > 0.
GAGLIARDO_MULTIPLIER_RATIO = {
    0.25: (2.60, 3.07),
    0.5: (2.07, 2.51),
    0.75: (1.63, 2.45),
}

# generous envelope for the one-off cross-check inside the H^s growth
# experiment, which runs on arbitrary spectra and geometries (observed range
# across rough/band-limited data and Dirichlet extensions: 1.86 .. 2.98)
GAGLIARDO_EQUIVALENCE_BOUNDS = (1.2, 4.5)

# final consecutive-pair threshold of the dyadic eps ladder 2^-2 .. 2^-12,
# relative to sqrt(mass) of the datum (observed 3.4e-3 on the reference
# Gaussian run, frozen with headroom)
EPS_CAUCHY_FINAL_MAX = 5e-3
