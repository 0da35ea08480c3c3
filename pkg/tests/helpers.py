"""Shared oracles for the test suite: finite differences, brute-force scans."""

import numpy as np

from cubicmf import CouplingPair, classify, entropy


def central_diff(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def sign_change_count(params: CouplingPair, n: int = 100_000) -> int:
    """Sign changes of phi' on a uniform interior grid (independent root-count oracle)."""
    m = np.linspace(-1.0 + 1e-6, 1.0 - 1e-6, n)
    d1 = params.K * m**2 + params.J * m - np.arctanh(m)
    s = np.sign(d1)
    return int(np.sum(s[1:] * s[:-1] < 0))


def largest_maximizer(K: float, J: float) -> float:
    """The largest positive local maximizer (m1 below J=1, m2 at or above)."""
    tag = classify(CouplingPair(K, J))
    return tag.m2 if hasattr(tag, "m2") else tag.m1


class PhiGrid:
    """Dense-grid brute-force argmax of the landscape (selector oracle).

    Entropy and monomials are precomputed once; each query is three vector
    operations plus an argmax.
    """

    def __init__(self, n: int = 10**6 + 1):
        self.m = np.linspace(-1.0, 1.0, n)
        self.spacing = 2.0 / (n - 1)
        self._I = entropy(self.m)
        self._m2 = self.m**2
        self._m3 = self.m**3

    def argmax(self, K: float, J: float) -> float:
        values = (K / 3.0) * self._m3 + (J / 2.0) * self._m2 - self._I
        return float(self.m[int(np.argmax(values))])
