"""Quasi-polynomial harmonic machinery.

Evaluates the real/imaginary characteristic components F, G and their
building blocks F1, G1, the tangent-matching function E(y) with its two
branches, the classification constants Phi1/Phi2, tangency defects E_d and
the extremum envelope of |G1|.

All derivatives of P and Q are closed-form (quotient rule on the polynomial
coefficient tables); finite differences appear only in tests.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ExistenceFail, NoRealBranch
from .plant import ControllerPoint, NormalizedPlant, abcd_coeffs
from .rootfind import find_roots

POLE_TOL = 1e-12
TAN_POLE_MARGIN = 1e-3
ENV_SCAN_MAX = "DELAYSTAB_SCAN_MAX"


def default_scan_max() -> float:
    env = os.environ.get(ENV_SCAN_MAX)
    if env:
        return float(env)
    return 4 * np.pi


@dataclass(frozen=True)
class BranchPoint:
    """A sampled point of one branch of the tangent-matching function."""

    y: float
    branch: int  # -1 or +1
    value: float


class HarmonicContext:
    """Immutable evaluator bundle for one normalized plant.

    Caches the polynomial coefficient tables of A, B, C, D, the rational
    numerators/denominator of P and Q, and their first and second
    derivatives.  All evaluators are pure and accept scalars or arrays.
    """

    def __init__(self, np_: NormalizedPlant, y_scan_max: float | None = None):
        self.plant = np_
        self.y_scan_max = float(y_scan_max) if y_scan_max is not None else default_scan_max()
        a, b, c, d = abcd_coeffs(np_)
        self._A = _strip(_even_poly(a))
        self._B = _strip(_odd_poly(b))
        self._C = _strip(_even_poly(c))
        self._D = _strip(_odd_poly(d))
        self._Np = _strip(npoly.polyadd(npoly.polymul(self._A, self._C), npoly.polymul(self._B, self._D)))
        self._Nq = _strip(npoly.polysub(npoly.polymul(self._B, self._C), npoly.polymul(self._A, self._D)))
        self._Den = _strip(npoly.polyadd(npoly.polymul(self._C, self._C), npoly.polymul(self._D, self._D)))
        self._dNp = npoly.polyder(self._Np)
        self._d2Np = npoly.polyder(self._dNp)
        self._dNq = npoly.polyder(self._Nq)
        self._d2Nq = npoly.polyder(self._dNq)
        self._dDen = npoly.polyder(self._Den)
        self._d2Den = npoly.polyder(self._dDen)

    # -- rational P, Q and derivatives -------------------------------------

    def PQ(self, y):
        y = np.asarray(y, dtype=float)
        den = npoly.polyval(y, self._Den)
        P = npoly.polyval(y, self._Np) / den
        Q = npoly.polyval(y, self._Nq) / den
        return P, Q

    def PQ_derivs(self, y):
        """(P, Q, P', Q', P'', Q'') at y, quotient rule on coefficient tables."""
        y = np.asarray(y, dtype=float)
        den = npoly.polyval(y, self._Den)
        dden = npoly.polyval(y, self._dDen)
        d2den = npoly.polyval(y, self._d2Den)
        out = []
        for num, dnum, d2num in (
            (self._Np, self._dNp, self._d2Np),
            (self._Nq, self._dNq, self._d2Nq),
        ):
            f = npoly.polyval(y, num)
            df = npoly.polyval(y, dnum)
            d2f = npoly.polyval(y, d2num)
            v = f / den
            dv = (df * den - f * dden) / den**2
            d2v = ((d2f * den - f * d2den) * den - 2 * dden * (df * den - f * dden)) / den**3
            out.append((v, dv, d2v))
        (P, dP, d2P), (Q, dQ, d2Q) = out
        return P, Q, dP, dQ, d2P, d2Q

    # -- characteristic components -----------------------------------------

    def F1(self, y):
        y = np.asarray(y, dtype=float)
        P, Q = self.PQ(y)
        return y * (Q * np.cos(y) + P * np.sin(y))

    def G1(self, y):
        y = np.asarray(y, dtype=float)
        P, Q = self.PQ(y)
        return -P * np.cos(y) + Q * np.sin(y)

    def G1_derivs(self, y):
        """(dG1/dy, d2G1/dy2) in closed form."""
        y = np.asarray(y, dtype=float)
        P, Q, dP, dQ, d2P, d2Q = self.PQ_derivs(y)
        cy, sy = np.cos(y), np.sin(y)
        g1p = (-dP + Q) * cy + (P + dQ) * sy
        g1pp = (P - d2P + 2 * dQ) * cy + (-Q + d2Q + 2 * dP) * sy
        return g1p, g1pp

    def FG(self, point: ControllerPoint, y):
        """Real and imaginary components F, G of H(jy)."""
        y = np.asarray(y, dtype=float)
        he = point.h_i - point.h_d * y * y
        F = he - self.F1(y)
        G = y * (point.h - self.G1(y))
        return F, G

    def H_parts(self, point: ControllerPoint, sigma):
        """The two additive parts of H(sigma): the delayed rational term and
        the PID polynomial.  Their pointwise magnitudes give the natural
        scale for detecting near-zeros of H on a contour."""
        sigma = np.asarray(sigma, dtype=complex)
        num = np.ones_like(sigma)
        for ti in self.plant.t:
            num = num * (1 + ti * sigma)
        den = np.ones_like(sigma)
        for zi in self.plant.z:
            den = den * (1 + zi * sigma)
        t1 = sigma * np.exp(sigma) * num / den
        t2 = point.h_i + point.h * sigma + point.h_d * sigma**2
        return t1, t2

    def H_complex(self, point: ControllerPoint, sigma):
        """Direct complex evaluation of the characteristic function H(sigma)."""
        t1, t2 = self.H_parts(point, sigma)
        return t1 + t2

    # -- classification constants --------------------------------------------

    def phi(self) -> tuple[float, float]:
        U, V = self.plant.U, self.plant.V
        U1 = U[1] if len(U) > 1 else 0.0
        U2 = U[2] if len(U) > 2 else 0.0
        V1 = V[1] if len(V) > 1 else 0.0
        V2 = V[2] if len(V) > 2 else 0.0
        phi1 = 1.0 + U1 - V1
        phi2 = 1.0 + 2 * U1 + 2 * U2 - 2 * U1 * V1 + 2 * V1 * V1 - 2 * V1 - 2 * V2
        return phi1, phi2

    # -- tangent matching function E ------------------------------------------

    def E_discriminant(self, y):
        P, Q = self.PQ(y)
        return P * P + Q * Q - 1.0

    def E_branch(self, y, branch: int):
        """Branch of E(y) as an array; NaN where no real branch exists,
        +/-inf at poles of E."""
        y = np.asarray(y, dtype=float)
        P, Q = self.PQ(y)
        disc = P * P + Q * Q - 1.0
        root = np.sqrt(np.where(disc >= 0, disc, np.nan))
        num = -Q + branch * root
        den = 1.0 + P
        with np.errstate(divide="ignore", invalid="ignore"):
            val = num / den
        pole = np.abs(den) < POLE_TOL
        val = np.where(pole & (np.abs(num) > POLE_TOL), np.sign(num) * np.inf, val)
        return val

    def E_branch_deriv(self, y, branch: int):
        """dE/dy on one branch, closed form via P', Q'."""
        y = np.asarray(y, dtype=float)
        P, Q, dP, dQ, _, _ = self.PQ_derivs(y)
        disc = P * P + Q * Q - 1.0
        S = np.sqrt(np.where(disc > 0, disc, np.nan))
        dS = (P * dP + Q * dQ) / S
        den = 1.0 + P
        with np.errstate(divide="ignore", invalid="ignore"):
            return ((-dQ + branch * dS) * den - (-Q + branch * S) * dP) / (den * den)

    def eval_E(self, y: float, branch: int) -> float:
        """Scalar E(y) on one branch with the existence checks."""
        if abs(y) < 1e-14:
            st2, sz2 = self._sum_sq()
            if st2 <= sz2:
                raise ExistenceFail("E(0) does not exist: sum t_i^2 <= sum z_i^2")
            return 0.0
        disc = float(self.E_discriminant(np.array([y]))[0])
        if disc < 0:
            raise NoRealBranch(f"no real branch of E at y={y}")
        return float(self.E_branch(np.array([y]), branch)[0])

    def _sum_sq(self) -> tuple[float, float]:
        return (
            float(sum(ti * ti for ti in self.plant.t)),
            float(sum(zi * zi for zi in self.plant.z)),
        )

    def E_slopes_at_zero(self) -> tuple[float, float]:
        """(E'_-(0), E'_+(0)) in closed form."""
        U, V = self.plant.U, self.plant.V
        U1 = U[1] if len(U) > 1 else 0.0
        U2 = U[2] if len(U) > 2 else 0.0
        V1 = V[1] if len(V) > 1 else 0.0
        V2 = V[2] if len(V) > 2 else 0.0
        rad = U1 * U1 - 2 * U2 - V1 * V1 + 2 * V2
        if rad < 0:
            raise NoRealBranch("imaginary slope of E at y=0: sum t_i^2 < sum z_i^2")
        base = 0.5 * (-U1 + V1)
        half = 0.5 * np.sqrt(rad)
        return base - half, base + half

    def slopes_above_half(self) -> int:
        """How many of the two branch slopes at y=0 exceed tan'(y/2)|_0 = 0.5."""
        lo, hi = self.E_slopes_at_zero()
        return int(lo > 0.5) + int(hi > 0.5)

    # -- tangency defects E_d ---------------------------------------------------

    def tangency_points(self, y_max: float | None = None) -> list[tuple[float, float, int]]:
        """All (y_t, E_d, branch) where tan(y/2) and a branch of E have equal
        slope; E_d = tan(y_t/2) - E(y_t).  Empty when no tangency exists."""
        y_max = y_max if y_max is not None else self.y_scan_max
        out = []
        for branch in (-1, +1):
            def g(y, branch=branch):
                with np.errstate(invalid="ignore", divide="ignore"):
                    t = np.tan(y / 2.0)
                    return 0.5 * (1.0 + t * t) - self.E_branch_deriv(y, branch)

            for lo, hi in _tan_segments(1e-6, y_max):
                for yt in find_roots(g, lo, hi):
                    Ev = float(self.E_branch(np.array([yt]), branch)[0])
                    if not np.isfinite(Ev):
                        continue
                    out.append((float(yt), float(np.tan(yt / 2.0) - Ev), branch))
        out.sort()
        return out

    # -- extremum envelope of |G1| ---------------------------------------------

    def h_m(self, y):
        """Envelope value |G1| at an extremum, expressed through P and Q only."""
        y = np.asarray(y, dtype=float)
        P, Q, dP, dQ, _, _ = self.PQ_derivs(y)
        num = np.abs(P * P + Q * Q + P * dQ - dP * Q)
        den = np.sqrt((dP - Q) ** 2 + (P + dQ) ** 2)
        return num / den

    def hm_envelope(self, y_max: float | None = None):
        """(y_r1, [(y_m, |G1(y_m)|), ...]): extrema of G1 up to the first one
        beyond y_r1, the largest positive stationary point of the envelope."""
        y_max = y_max if y_max is not None else self.y_scan_max
        y_m = find_roots(lambda y: self.G1_derivs(y)[0], 1e-9, y_max)
        step = 1e-6

        def dhm(y):
            return (self.h_m(y + step) - self.h_m(y - step)) / (2 * step)

        env_roots = find_roots(dhm, 1e-3, y_max)
        y_r1 = float(env_roots[-1]) if env_roots.size else None
        extrema = []
        for ym in y_m:
            extrema.append((float(ym), float(np.abs(self.G1(np.array([ym]))[0]))))
            if y_r1 is None or ym > y_r1:
                break
        return y_r1, extrema

    def elimination_he(self, y, h: float):
        """h_e on the constraint boundary: y*sqrt(P^2+Q^2-h^2)."""
        y = np.asarray(y, dtype=float)
        P, Q = self.PQ(y)
        return y * np.sqrt(P * P + Q * Q - h * h)


def _even_poly(e: np.ndarray) -> np.ndarray:
    out = np.zeros(2 * len(e) - 1)
    out[0::2] = e
    return out


def _odd_poly(o: np.ndarray) -> np.ndarray:
    out = np.zeros(2 * len(o))
    out[1::2] = o
    return out


def _strip(c: np.ndarray) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=float))
    nz = np.nonzero(np.abs(c) > 0)[0]
    return c[: nz[-1] + 1] if nz.size else np.zeros(1)


def _tan_segments(lo: float, hi: float, margin: float = TAN_POLE_MARGIN):
    """Subintervals of (lo, hi] that avoid the poles of tan(y/2) at odd
    multiples of pi, with a safety margin."""
    poles = np.arange(np.pi, hi + np.pi, 2 * np.pi)
    edges = [lo]
    for p in poles:
        if lo < p - margin < hi:
            edges += [p - margin, p + margin]
    edges.append(hi)
    segs = []
    for a, b in zip(edges[0::2], edges[1::2]):
        if b > a:
            segs.append((a, b))
    return segs
