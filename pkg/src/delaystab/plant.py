"""Plant data, dimensionless normalization and the trig-free polynomials.

All internal computation is dimensionless: time constants and the delay are
reduced to t_i = T_i/L, z_i = Z_i/L, and controller gains to
h = K*Kp, h_i = K*Ki*L, h_d = K*Kd/L.  Physical quantities appear only at
the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PlantValidationError, ZeroOnImaginaryAxis

ZERO_TOL = 1e-10


@dataclass(frozen=True)
class PlantSpec:
    """Physical plant: gain K, delay L, pole factors (1+T_i s), zero factors (1+Z_i s)."""

    gain: float
    delay: float
    time_constants: tuple[float, ...]
    zero_constants: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "time_constants", tuple(float(v) for v in self.time_constants))
        object.__setattr__(self, "zero_constants", tuple(float(v) for v in self.zero_constants))
        if not np.isfinite(self.gain) or abs(self.gain) <= ZERO_TOL:
            raise PlantValidationError("plant gain must be finite and nonzero")
        if not np.isfinite(self.delay) or self.delay <= 0:
            raise PlantValidationError("plant delay must be positive")
        if len(self.time_constants) < 1:
            raise PlantValidationError("at least one time constant is required")
        for v in self.time_constants:
            if not np.isfinite(v) or abs(v) <= ZERO_TOL:
                raise PlantValidationError("time constants must be finite and nonzero")
        for v in self.zero_constants:
            if not np.isfinite(v) or abs(v) <= ZERO_TOL:
                raise PlantValidationError("zero constants must be finite and nonzero")

    @property
    def n(self) -> int:
        return len(self.time_constants)

    @property
    def m(self) -> int:
        return len(self.zero_constants)

    def to_dict(self) -> dict:
        return {
            "gain": self.gain,
            "delay": self.delay,
            "time_constants": list(self.time_constants),
            "zero_constants": list(self.zero_constants),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlantSpec":
        try:
            return cls(
                gain=float(d["gain"]),
                delay=float(d["delay"]),
                time_constants=tuple(float(v) for v in d["time_constants"]),
                zero_constants=tuple(float(v) for v in d.get("zero_constants", [])),
            )
        except PlantValidationError:
            raise
        except Exception as exc:
            raise PlantValidationError(f"malformed plant JSON: {exc}") from exc


def elementary_symmetric(values: tuple[float, ...]) -> np.ndarray:
    """Table e[k] of k-fold products, computed by incremental polynomial
    multiplication of the factors (1 + v*x); e[0] = 1."""
    coeffs = np.array([1.0])
    for v in values:
        coeffs = np.convolve(coeffs, np.array([1.0, v]))
    return coeffs


@dataclass(frozen=True)
class NormalizedPlant:
    """Dimensionless plant with cached symmetric coefficient tables.

    U[k] is the sum of all k-fold products of the t_i (U[0] = 1), and V[k]
    the analogue over the z_i.
    """

    t: tuple[float, ...]
    z: tuple[float, ...]
    U: np.ndarray = field(compare=False, repr=False, default=None)
    V: np.ndarray = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.U is None:
            object.__setattr__(self, "U", elementary_symmetric(self.t))
        if self.V is None:
            object.__setattr__(self, "V", elementary_symmetric(self.z))

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def m(self) -> int:
        return len(self.z)


def normalize(plant: PlantSpec) -> NormalizedPlant:
    """Reduce a physical plant to its dimensionless form.

    Rejects plants where a time constant coincides with a zero constant
    (common factor between numerator and denominator): no cancellation is
    attempted.
    """
    t = tuple(T / plant.delay for T in plant.time_constants)
    z = tuple(Z / plant.delay for Z in plant.zero_constants)
    for zi in z:
        for ti in t:
            if abs(ti - zi) <= ZERO_TOL * max(1.0, abs(ti)):
                raise PlantValidationError(
                    f"time constant {ti}L coincides with zero constant {zi}L; "
                    "common pole/zero factors are not cancelled"
                )
    return NormalizedPlant(t=t, z=z)


@dataclass(frozen=True)
class ControllerPoint:
    """Dimensionless PID gains: h = K*Kp, h_i = K*Ki*L, h_d = K*Kd/L."""

    h: float
    h_i: float
    h_d: float

    def __post_init__(self):
        if not all(np.isfinite(v) for v in (self.h, self.h_i, self.h_d)):
            raise PlantValidationError("controller gains must be finite")


def denormalize_gains(point: ControllerPoint, plant: PlantSpec) -> tuple[float, float, float]:
    """Physical (Kp, Ki, Kd) for a dimensionless controller point."""
    return (
        point.h / plant.gain,
        point.h_i / (plant.gain * plant.delay),
        point.h_d * plant.delay / plant.gain,
    )


def normalize_gains(Kp: float, Ki: float, Kd: float, plant: PlantSpec) -> ControllerPoint:
    return ControllerPoint(
        h=plant.gain * Kp,
        h_i=plant.gain * Ki * plant.delay,
        h_d=plant.gain * Kd / plant.delay,
    )


def _even_odd_coeffs(e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split an elementary-symmetric table into the alternating-sign
    coefficient arrays (in x = y^2) of the real and imaginary parts of
    prod(1 + j*v*y):  real = sum e[2i](-1)^i x^i,  imag = y * sum e[2i+1](-1)^i x^i."""
    k = np.arange(len(e))
    signed = e * (-1.0) ** (k // 2)
    real = signed[0::2]
    imag = signed[1::2]
    if imag.size == 0:
        imag = np.zeros(1)
    return real, imag


def abcd_coeffs(np_: NormalizedPlant):
    """Coefficient arrays (low-to-high, in x = y^2) of A, B/y, C, D/y."""
    a, b = _even_odd_coeffs(np_.U)
    c, d = _even_odd_coeffs(np_.V)
    return a, b, c, d


def eval_ABCD(np_: NormalizedPlant, y):
    """Real/imaginary split of prod(1 + j t_i y) and prod(1 + j z_i y):
    A + jB and C + jD.  Accepts scalars or arrays.  For m = 0: C = 1, D = 0."""
    y = np.asarray(y, dtype=float)
    a, b, c, d = abcd_coeffs(np_)
    x = y * y
    A = np.polynomial.polynomial.polyval(x, a)
    B = y * np.polynomial.polynomial.polyval(x, b)
    C = np.polynomial.polynomial.polyval(x, c)
    D = y * np.polynomial.polynomial.polyval(x, d)
    return A, B, C, D


def eval_PQ(np_: NormalizedPlant, y):
    """Rational split P + jQ = (A + jB)/(C + jD).

    Raises ZeroOnImaginaryAxis when C^2 + D^2 vanishes (a plant zero lies at
    +/- j y / L)."""
    A, B, C, D = eval_ABCD(np_, y)
    den = C * C + D * D
    if np.any(den <= ZERO_TOL):
        raise ZeroOnImaginaryAxis("plant zero on the imaginary axis at this frequency")
    P = (A * C + B * D) / den
    Q = (B * C - A * D) / den
    return P, Q
