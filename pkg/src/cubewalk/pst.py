"""Perfect state transfer: certificates, exact decision, routing.

Closed form.  Every cubelike graph is periodic with period π, returning to
its start with global phase (−1)^d.  At the quarter period t = π/2 the
walk teleports by the xor-sum of the connection set: when u = ⊕Ω ≠ 0 there
is perfect state transfer x → x⊕u with global phase e^(−idπ/2), and when
u = 0 the walk revives at its start instead.

Exact decision.  PST 0 → δ at time τπ happens iff all 2ⁿ unit terms of
T_δ(τπ) line up, which reduces to congruences on the spectral gaps
Δ_v = d − λ_v (all even):

    Δ_v·τ ∈ ℤ  and  Δ_v·τ ≡ δᵀv (mod 2)    for every v.

Validity is 1-periodic in τ (adding π shifts every term by the same sign
(−1)^d), so writing τ = num/Δ* for the smallest nonzero gap Δ* leaves
finitely many candidates in (0, 1]; the first that passes is the earliest
transfer time.  ``decide_pst_exact`` is therefore sound and complete over
rational multiples of π, with no floating point anywhere.

Routing.  Removing one basis generator eᵢ from the folded-cube set leaves
a set with xor-sum eᵢ, so any target is reached by chaining quarter-period
hops along its set bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitspace import ConnectionSet, DimensionMismatchError, GroupElement
from .dynamics import (FLOAT_TOL, HALF_PI, GaussianInteger, RationalAngle,
                       amplitude, amplitude_exact, gaussian_unit)
from .spectral import spectrum


class CertificationError(RuntimeError):
    """A claimed transfer time failed re-verification."""


@dataclass(frozen=True)
class PstCertificate:
    """A verified statement: fidelity 1 at offset δ at the given time.

    ``phase`` is the global phase of the transfer, a Gaussian unit for
    times on the exact grid and a complex number otherwise.  ``method``
    records how the time was found: "closed-form" for the xor-sum rule at
    π/2, "exact-decision" for times from the congruence decision.
    """

    n: int
    delta: GroupElement
    time: RationalAngle
    phase: GaussianInteger | complex
    method: str


@dataclass(frozen=True)
class RouteStage:
    omega: ConnectionSet
    hop: GroupElement
    time: RationalAngle
    certificate: PstCertificate


@dataclass(frozen=True)
class RoutingPlan:
    """A chain of quarter-period PST hops whose xor reaches the target."""

    n: int
    target: GroupElement
    base: ConnectionSet
    stages: tuple[RouteStage, ...]

    @property
    def total_time(self) -> RationalAngle:
        return RationalAngle(len(self.stages), 2)


def pst_at_half_pi(omega: ConnectionSet) -> PstCertificate | None:
    """Closed-form quarter-period transfer, or None when the xor-sum is 0.

    When u ≠ 0 the certificate is verified against the exact transform
    before being returned, so a non-None result is unconditionally true.
    A None means the walk revives at its start at π/2 instead.
    """
    u = omega.u
    if u.bits == 0:
        return None
    phase = gaussian_unit(-omega.d % 4)  # e^(−idπ/2)
    got = amplitude_exact(omega, u, HALF_PI)
    if got != phase * (1 << omega.n):
        raise RuntimeError(
            "internal: quarter-period closed form disagrees with the "
            f"transform on {omega}")
    return PstCertificate(n=omega.n, delta=u, time=HALF_PI, phase=phase,
                          method="closed-form")


# ── exact decision ────────────────────────────────────────────────────────

def _alignment_time(values: np.ndarray, delta_bits: int) -> tuple[int, int] | None:
    """Earliest τ = p/q in (0, 1] aligning all phases for offset δ, if any."""
    gaps = int(values[0]) - values  # Δ_v = d − λ_v, all even, Δ_0 = 0
    positive = gaps > 0
    if not positive.any():
        # Only the edgeless graph lands here; it never transfers.
        return None
    smallest = int(gaps[positive].min())
    wstar = int(np.flatnonzero(gaps == smallest)[0])
    idx = np.arange(values.size)
    parity = (np.bitwise_count(idx & delta_bits) & 1).astype(np.int64)
    start = int(parity[wstar]) or 2  # τ > 0, so skip num = 0
    for num in range(start, smallest + 1, 2):
        g = math.gcd(num, smallest)
        p, q = num // g, smallest // g
        if np.all((gaps * p) % (2 * q) == parity * q):
            return (p, q)
    return None


def decide_pst_exact(omega: ConnectionSet,
                     delta: GroupElement) -> RationalAngle | None:
    """Earliest time (p/q)·π with PST 0 → δ, or None if there is no such time.

    δ must be nonzero; the decision is exact integer arithmetic throughout
    and complete over all rational multiples of π.
    """
    if delta.n != omega.n:
        raise DimensionMismatchError(
            f"delta of Z2^{delta.n} against a set on Z2^{omega.n}")
    if delta.bits == 0:
        raise ValueError("delta must be nonzero; the trivial revival at "
                         "t = pi holds for every set")
    found = _alignment_time(spectrum(omega).values, delta.bits)
    return None if found is None else RationalAngle(*found)


def pst_offsets(omega: ConnectionSet) -> dict[int, RationalAngle]:
    """All offsets δ with PST and their earliest times, one spectrum pass."""
    values = spectrum(omega).values
    out: dict[int, RationalAngle] = {}
    for db in range(1, values.size):
        found = _alignment_time(values, db)
        if found is not None:
            out[db] = RationalAngle(*found)
    return out


def certify(omega: ConnectionSet, delta: GroupElement, time: RationalAngle,
            method: str = "exact-decision") -> PstCertificate:
    """Re-verify a claimed transfer and package it as a certificate.

    Times on the exact grid are checked in integer arithmetic; other
    rational times fall back to the float path within FLOAT_TOL.  Raises
    CertificationError when the fidelity is not 1.
    """
    size = 1 << omega.n
    if time.is_quarter_exact:
        amp = amplitude_exact(omega, delta, time)
        if amp.abs2() != size * size:
            raise CertificationError(
                f"fidelity at {time} for delta={delta} is not 1")
        phase: GaussianInteger | complex = GaussianInteger(amp.re // size,
                                                           amp.im // size)
    else:
        z = amplitude(omega, GroupElement.zero(omega.n), delta, time.radians)
        if abs(abs(z) - size) > FLOAT_TOL * size:
            raise CertificationError(
                f"fidelity at {time} for delta={delta} is not 1")
        phase = z / size
    return PstCertificate(n=omega.n, delta=delta, time=time, phase=phase,
                          method=method)


# ── routing ───────────────────────────────────────────────────────────────

def folded_cube(n: int) -> ConnectionSet:
    """Basis generators plus the all-ones diagonal; xor-sum 0 for n ≥ 2.

    At n = 1 the diagonal coincides with e₁ and the set silently collapses
    to {1}.
    """
    ones = (1 << n) - 1
    labels = {1 << i for i in range(n)} | {ones}
    return ConnectionSet(n, tuple(labels))


def plan_route(n: int, target: GroupElement | int) -> RoutingPlan:
    """Quarter-period hop sequence reaching ``target`` from any start.

    Stage i uses the folded-cube set with basis generator eᵢ removed; its
    xor-sum is then eᵢ, so the stage teleports by eᵢ in time π/2.  One
    stage per set bit of the target, ascending.  Every stage certificate
    is verified before the plan is returned.
    """
    if isinstance(target, int):
        target = GroupElement(target, n)
    if target.n != n:
        raise DimensionMismatchError(
            f"target of Z2^{target.n} for a route on Z2^{n}")
    if target.bits == 0:
        raise ValueError("target must be nonzero; the empty route is trivial")
    base = folded_cube(n)
    stages = []
    if n == 1:
        # {1} already has xor-sum e₁; removing it would leave nothing.
        cert = pst_at_half_pi(base)
        stages.append(RouteStage(omega=base, hop=cert.delta, time=cert.time,
                                 certificate=cert))
    else:
        for i in range(n):
            if not (target.bits >> i) & 1:
                continue
            hop = GroupElement(1 << i, n)
            stage_set = ConnectionSet(
                n, tuple(e for e in base.elements if e != hop.bits))
            cert = pst_at_half_pi(stage_set)
            if cert is None or cert.delta != hop:
                raise RuntimeError("internal: stage set lost its xor-sum")
            stages.append(RouteStage(omega=stage_set, hop=hop,
                                     time=cert.time, certificate=cert))
    acc = 0
    for stage in stages:
        acc ^= stage.hop.bits
    if acc != target.bits:
        raise RuntimeError("internal: route hops do not reach the target")
    return RoutingPlan(n=n, target=target, base=base, stages=tuple(stages))
