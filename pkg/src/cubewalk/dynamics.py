"""Continuous-time quantum walk on cubelike graphs.

The walk operator is U(t) = exp(−itA).  Because all cubelike adjacency
matrices are diagonalized by the same character basis, the transition
amplitude between vertices a and b depends only on δ = a⊕b:

    T_δ(t) = Σ_v (−1)^(δᵀv) e^(−iλ_v t)          (unnormalized; |·| ≤ 2ⁿ)

and one WHT of the phase vector e^(−iλt) yields T for every δ at once.
The fidelity is F_δ(t) = |T_δ(t)| / 2ⁿ.

At quarter periods t = pπ/q with q | 2 every phase is a power of −i, so
T_δ is a Gaussian integer and fidelities quantize exactly: F ∈ {0, 1} at
t = π/2, with the unit at δ = u (the xor-sum of the set).  The exact path
below does all of that in int64, no rounding anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitspace import ConnectionSet, DimensionMismatchError, GroupElement
from .spectral import spectrum, wht


class UnsupportedAngleError(ValueError):
    """Exact evaluation was requested outside the quarter-period grid."""


FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class RationalAngle:
    """A time of the form (p/q)·π with p ≥ 0, q ≥ 1, stored in lowest terms."""

    p: int
    q: int = 1

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"denominator must be positive, got {self.q}")
        if self.p < 0:
            raise ValueError(f"numerator must be nonnegative, got {self.p}")
        g = math.gcd(self.p, self.q)
        if self.p == 0:
            object.__setattr__(self, "q", 1)
        elif g > 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @property
    def radians(self) -> float:
        return math.pi * self.p / self.q

    @property
    def is_quarter_exact(self) -> bool:
        """True when the angle sits on the exact grid (multiples of π/2)."""
        return self.q in (1, 2)

    def __str__(self) -> str:
        if self.p == 0:
            return "0"
        head = "pi" if self.p == 1 else f"{self.p}*pi"
        return head if self.q == 1 else f"{head}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> RationalAngle:
        """Accept 'p/q' or 'p', and the printed forms like 'pi/2', '3*pi/4'."""
        s = text.strip().lower().replace(" ", "")
        if not s:
            raise ValueError("empty angle")
        if s == "0":
            return cls(0)
        if "pi" in s:
            s = s.replace("*pi", "pi")
            head, _, tail = s.partition("pi")
            p = int(head) if head else 1
            q = int(tail[1:]) if tail.startswith("/") else 1
            if tail and not tail.startswith("/"):
                raise ValueError(f"bad angle {text!r}")
            return cls(p, q)
        num, _, den = s.partition("/")
        try:
            return cls(int(num), int(den) if den else 1)
        except ValueError:
            raise ValueError(f"bad angle {text!r}") from None


HALF_PI = RationalAngle(1, 2)
PI = RationalAngle(1, 1)


@dataclass(frozen=True)
class GaussianInteger:
    """Element of Z[i]; amplitudes on the exact grid land here."""

    re: int
    im: int

    def __add__(self, other: GaussianInteger) -> GaussianInteger:
        return GaussianInteger(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInteger) -> GaussianInteger:
        return GaussianInteger(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInteger:
        return GaussianInteger(-self.re, -self.im)

    def __mul__(self, other) -> GaussianInteger:
        if isinstance(other, GaussianInteger):
            return GaussianInteger(self.re * other.re - self.im * other.im,
                                   self.re * other.im + self.im * other.re)
        if isinstance(other, int):
            return GaussianInteger(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def abs2(self) -> int:
        """Squared modulus re² + im², exact."""
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if self.re == 0:
            return im
        return f"{self.re}{im}" if self.im < 0 else f"{self.re}+{im}"


def gaussian_unit(k: int) -> GaussianInteger:
    """i^k as a Gaussian integer."""
    return _UNITS[k % 4]


_UNITS = (GaussianInteger(1, 0), GaussianInteger(0, 1),
          GaussianInteger(-1, 0), GaussianInteger(0, -1))

# (−i)^k component tables for the vectorized exact path.
_RE_UNIT = np.array([1, 0, -1, 0], dtype=np.int64)
_IM_UNIT = np.array([0, -1, 0, 1], dtype=np.int64)


# ── float path ────────────────────────────────────────────────────────────

def all_amplitudes(omega: ConnectionSet, t: float) -> np.ndarray:
    """Unnormalized amplitudes T_δ(t) for every δ, complex128."""
    lam = spectrum(omega).values
    return wht(np.exp(-1j * float(t) * lam))


def amplitude(omega: ConnectionSet, a: GroupElement, b: GroupElement,
              t: float) -> complex:
    """Transition amplitude ⟨b| e^(−itA) |a⟩, unnormalized by 2ⁿ."""
    if a.n != omega.n or b.n != omega.n:
        raise DimensionMismatchError(
            f"vertices of Z2^{a.n}/Z2^{b.n} against a set on Z2^{omega.n}")
    return complex(all_amplitudes(omega, t)[a.bits ^ b.bits])


def all_fidelities(omega: ConnectionSet, t) -> np.ndarray:
    """F_δ(t) = |T_δ(t)|/2ⁿ for every δ; index δ = a⊕b.

    ``t`` may be a float (radians) or a RationalAngle.  Angles on the
    quarter-period grid are evaluated through the exact integer path, so
    the returned 0.0 and 1.0 entries are exact, not approximations.
    """
    size = 1 << omega.n
    if isinstance(t, RationalAngle):
        if t.is_quarter_exact:
            re, im = exact_components(omega, t)
            return np.sqrt((re * re + im * im).astype(np.float64)) / size
        t = t.radians
    return np.abs(all_amplitudes(omega, float(t))) / size


# ── exact path (q | 2) ────────────────────────────────────────────────────

def exact_components(omega: ConnectionSet,
                     t: RationalAngle) -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of T_δ(t) as int64 arrays, one per δ.

    Each eigenvalue phase is e^(−iλ·pπ/q) = (−i)^(λp·(2/q) mod 4), so both
    component vectors are WHTs of small integer tables.  Only q ∈ {1, 2}
    keeps the phases in Z[i]; anything else raises UnsupportedAngleError.
    """
    if not t.is_quarter_exact:
        raise UnsupportedAngleError(
            f"exact amplitudes need a multiple of pi/2, got {t}")
    lam = spectrum(omega).values
    k = (lam * (t.p * (2 // t.q))) % 4
    return wht(_RE_UNIT[k]), wht(_IM_UNIT[k])


def all_amplitudes_exact(omega: ConnectionSet,
                         t: RationalAngle) -> list[GaussianInteger]:
    re, im = exact_components(omega, t)
    return [GaussianInteger(int(r), int(i)) for r, i in zip(re, im)]


def amplitude_exact(omega: ConnectionSet, delta: GroupElement,
                    t: RationalAngle) -> GaussianInteger:
    """T_δ(t) as a Gaussian integer; requires t to be a multiple of π/2."""
    if delta.n != omega.n:
        raise DimensionMismatchError(
            f"delta of Z2^{delta.n} against a set on Z2^{omega.n}")
    re, im = exact_components(omega, t)
    return GaussianInteger(int(re[delta.bits]), int(im[delta.bits]))


# ── measurement ───────────────────────────────────────────────────────────

def _probabilities_by_delta(omega: ConnectionSet, t) -> np.ndarray:
    """P(δ) = F_δ(t)², computed without a lossy sqrt on the exact path."""
    size = 1 << omega.n
    if isinstance(t, RationalAngle):
        if t.is_quarter_exact:
            re, im = exact_components(omega, t)
            # abs² ≤ 4ⁿ ≤ 2⁴⁸ fits float64 exactly; /4ⁿ is a power of two.
            return (re * re + im * im).astype(np.float64) / (size * size)
        t = t.radians
    fid = np.abs(all_amplitudes(omega, float(t))) / size
    return fid * fid


def measurement_distribution(omega: ConnectionSet, a: GroupElement,
                             t) -> np.ndarray:
    """Outcome distribution of a position measurement at time t.

    Entry b is the probability that the walker started at ``a`` is found
    at vertex b.  On the exact grid the distribution is computed from
    integer squared moduli, so it sums to 1.0 exactly; at t = π/2 it is a
    point mass at a⊕u.
    """
    if a.n != omega.n:
        raise DimensionMismatchError(
            f"vertex of Z2^{a.n} against a set on Z2^{omega.n}")
    p_delta = _probabilities_by_delta(omega, t)
    idx = np.arange(1 << omega.n) ^ a.bits
    return p_delta[idx]
