"""Sturm chains for counting positive real roots, and the pole count of the
tangent-matching function E(y).

Polynomials are coefficient arrays, low degree first.  The chain follows the
classical recurrence f_i = -rem(f_{i-2}, f_{i-1}); division is performed on
max-norm-scaled copies to limit error growth, and a remainder whose norm
falls below a relative tolerance before the chain reaches degree zero is
treated as evidence of a multiple root.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import EndpointIsRoot, MultipleRootSuspected
from .plant import NormalizedPlant, abcd_coeffs
from .rootfind import count_sign_changes

REL_TOL = 1e-12


def _trim(c: np.ndarray, scale: float) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=float))
    keep = np.nonzero(np.abs(c) > REL_TOL * scale)[0]
    return c[: keep[-1] + 1] if keep.size else np.zeros(0)


@dataclass
class SturmChain:
    """Chain f_0, f_1, ... with its coefficient tables (psi_{i,j} = chain[i][j])."""

    chain: list[np.ndarray]
    certified: bool = True

    @property
    def degree(self) -> int:
        return len(self.chain[0]) - 1

    def signs_at_zero(self) -> list[int]:
        return [int(np.sign(f[0])) for f in self.chain if abs(f[0]) > 0]

    def signs_at_infinity(self) -> list[int]:
        return [int(np.sign(f[-1])) for f in self.chain]


def _sign_changes(signs: list[int]) -> int:
    s = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a * b < 0)


def build_chain(poly) -> SturmChain:
    """Sturm chain of a real polynomial (coefficients low-to-high).

    Raises MultipleRootSuspected when a remainder vanishes before the chain
    reaches a constant: the input then shares a factor with its derivative."""
    scale = float(np.max(np.abs(poly)))
    if scale == 0:
        raise ValueError("zero polynomial has no Sturm chain")
    f0 = _trim(np.asarray(poly, dtype=float), scale)
    chain = [f0]
    if len(f0) > 1:
        f1 = npoly.polyder(f0)
        chain.append(f1)
        while len(chain[-1]) > 1:
            a, b = chain[-2], chain[-1]
            norm = max(np.max(np.abs(a)), np.max(np.abs(b)))
            _, rem = npoly.polydiv(a / norm, b / norm)
            rem = _trim(rem * norm, scale)
            if rem.size == 0:
                raise MultipleRootSuspected(
                    "Sturm remainder vanished before degree 0; multiple root suspected"
                )
            chain.append(-rem)
    return SturmChain(chain=chain)


def count_positive_roots(chain: SturmChain) -> int:
    """Positive real roots of f_0: sign changes at 0 minus sign changes at +inf."""
    f0 = chain.chain[0]
    scale = float(np.max(np.abs(f0)))
    if abs(f0[0]) <= REL_TOL * scale:
        raise EndpointIsRoot("f0(0) = 0: endpoint of the counting interval is a root")
    n0 = _sign_changes(chain.signs_at_zero())
    ninf = _sign_changes(chain.signs_at_infinity())
    return n0 - ninf


def e_pole_polynomial(np_: NormalizedPlant) -> np.ndarray:
    """f0(x) with x = y^2 whose positive roots are the squared pole ordinates
    of E: C^2 + D^2 + A*C + B*D expressed through the even/odd split
    A = a(x), B = y*b(x), C = c(x), D = y*d(x)."""
    a, b, c, d = abcd_coeffs(np_)
    cc = npoly.polymul(c, c)
    dd = np.concatenate(([0.0], npoly.polymul(d, d)))  # x * d(x)^2
    ac = npoly.polymul(a, c)
    bd = np.concatenate(([0.0], npoly.polymul(b, d)))  # x * b(x)d(x)
    f0 = npoly.polyadd(npoly.polyadd(cc, dd), npoly.polyadd(ac, bd))
    return _trim(f0, float(np.max(np.abs(f0))))


def grid_pole_count(np_: NormalizedPlant, x_max: float = 2500.0) -> int:
    """Fallback dense-grid count of positive roots of the E-pole polynomial."""
    f0 = e_pole_polynomial(np_)
    return count_sign_changes(lambda x: npoly.polyval(x, f0), 1e-9, x_max, step=x_max / 200000)


def pole_count_of_E(np_: NormalizedPlant) -> tuple[int, bool]:
    """(number of poles of E(y) with y > 0, certified flag).

    Certified counts come from the Sturm chain; when a multiple root is
    suspected the dense-grid fallback is used and the count is not certified."""
    f0 = e_pole_polynomial(np_)
    if len(f0) <= 1:
        return 0, True
    try:
        chain = build_chain(f0)
        return count_positive_roots(chain), True
    except (MultipleRootSuspected, EndpointIsRoot):
        return grid_pole_count(np_), False
