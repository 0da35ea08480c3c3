#!/usr/bin/env python3
"""Tour of the free-energy landscape phi(m) = (K/3)m^3 + (J/2)m^2 - I(m).

Walks the pair coupling J through the four stationary-point regimes at fixed
K = 1 and prints what the landscape looks like in each: where its critical
points sit, their curvatures, and which one carries the equilibrium.
"""

import numpy as np

from cubicmf import (
    CouplingPair,
    classify,
    landscape_at,
    m_star,
    phi,
    psi,
    solve_consistency,
)

K = 1.0
spin = psi(K)
print(f"K = {K}")
print(f"spinodal threshold psi(K) = {spin.value:.6f} (tangency point m = {spin.argmin:.6f})")
print()

cases = [
    ("far below the spinodal", 0.25),
    ("just above the spinodal", spin.value + 0.01),
    ("between the maxima swap", 0.8),
    ("at the boundary J = 1", 1.0),
    ("beyond J = 1", 1.2),
]

for title, J in cases:
    params = CouplingPair(K, J)
    roots = solve_consistency(params)
    tag = classify(params)
    equilibrium = m_star(params)
    print(f"--- J = {J:.6f} ({title}) ---")
    print(f"  classification: {type(tag).__name__}")
    for r in roots:
        rep = landscape_at(r, params)
        kind = "max" if rep.d2 < 0 else ("min" if rep.d2 > 0 else "flat")
        print(f"  stationary m = {r:+.6f}  phi = {rep.phi:.6f}  phi'' = {rep.d2:+.4f}  ({kind})")
    ms = ", ".join(f"{p.m:+.6f}" for p in equilibrium.points)
    print(f"  equilibrium magnetization(s): {ms}")
    print()

# the landscape is tilted toward positive m whenever K > 0
m = np.linspace(0.05, 0.95, 7)
params = CouplingPair(K, 0.8)
print("asymmetry check at J = 0.8: phi(m) - phi(-m) (positive for K > 0)")
for mi in m:
    print(f"  m = {mi:.2f}: {phi(mi, params) - phi(-mi, params):+.6f}")
