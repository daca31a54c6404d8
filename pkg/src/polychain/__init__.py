"""Numerics lab: longest convex chains in a triangle + polarization problems.

Subpackages of interest:
  geometry -- the inscribed parabola, tangent splits, affine perimeter
  chains   -- longest-convex-chain solvers (DP, pruned DP, brute force)
  harness  -- seeded Monte Carlo experiment runner and statistics
  circle   -- polarization on the unit circle, Fejer factorization, Phi step
  gram     -- inverse eigenvectors of Gram matrices and conjecture scans
"""

__version__ = "0.1.0"
