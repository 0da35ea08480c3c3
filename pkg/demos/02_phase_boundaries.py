#!/usr/bin/env python3
"""The two boundary curves of the phase diagram: spinodal and coexistence.

psi(K) is where a polarized local maximum first appears; gamma(K) is where it
takes over as the global maximum (a first-order transition).  The script
tabulates both, verifies the exact slope law gamma'(K) = -(2/3) m1 against a
finite difference, and locates the onset of transitions at negative J (the
antiferromagnetic pair coupling regime).
"""

from cubicmf import gamma, gamma_slope_fd, psi

print(f"{'K':>6} {'psi(K)':>12} {'gamma(K)':>12} {'m1 on curve':>12} "
      f"{'slope':>10} {'fd slope':>10}")
for K in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0]:
    spin = psi(K)
    sample = gamma(K)
    fd = gamma_slope_fd(K, 1e-4) if K > 1e-4 else float("nan")
    print(
        f"{K:>6.2f} {spin.value:>12.8f} {sample.gammaK:>12.8f} {sample.m1:>12.8f} "
        f"{sample.slope:>10.6f} {fd:>10.6f}"
    )

print()
print("slope tends to 0 as K -> 0+ (continuous merge into the critical point)")
print("slope tends to -2/3 as K grows (m1 -> 1 along the curve)")

# the curve crosses J = 0: transitions persist for antiferromagnetic J
lo, hi = 1.0, 3.0
for _ in range(60):
    mid = 0.5 * (lo + hi)
    if gamma(mid).gammaK > 0.0:
        lo = mid
    else:
        hi = mid
print(f"\ngamma(K) changes sign at K ~ {0.5 * (lo + hi):.6f}:")
for K in [0.5 * (lo + hi) - 0.3, 0.5 * (lo + hi) + 0.3, 4.0, 8.0]:
    print(f"  gamma({K:.3f}) = {gamma(K).gammaK:+.6f}")
