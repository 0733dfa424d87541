"""Fourier analysis on Z₂ⁿ: Walsh-Hadamard transform and integer spectra.

The characters of Z₂ⁿ are χ_w(x) = (−1)^(wᵀx).  In the character basis the
adjacency matrix of any cubelike graph X(Z₂ⁿ, Ω) is diagonal with integer
eigenvalues

    λ_v = Σ_{w∈Ω} (−1)^(wᵀv),          v ∈ Z₂ⁿ,

so one unnormalized Walsh-Hadamard transform of the indicator vector of Ω
produces the full spectrum at once.  The transform here is the plain
butterfly in natural (binary-counter) order, without 1/√2 factors, hence
wht(wht(x)) == 2ⁿ·x.

Each eigenvalue is further pinned down modulo 4 by the xor-sum u of the
connection set; ``classify_congruences`` checks the applicable congruence
for every eigenvalue and reports the multiplicity index k it determines.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitspace import DimensionMismatchError, ConnectionSet, GroupElement


def wht(data) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform of a length-2ⁿ vector.

    Integer input stays exact in int64; float and complex input go through
    float64/complex128.  The input array is not modified.
    """
    arr = np.asarray(data)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d array, got shape {arr.shape}")
    size = arr.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError(f"length {size} is not a power of two")
    if arr.dtype == bool or np.issubdtype(arr.dtype, np.integer):
        out = arr.astype(np.int64)
    elif np.issubdtype(arr.dtype, np.complexfloating):
        out = arr.astype(np.complex128)
    else:
        out = arr.astype(np.float64)
    h = 1
    while h < size:
        out = out.reshape(-1, 2, h)
        top = out[:, 0, :].copy()
        out[:, 0, :] = top + out[:, 1, :]
        out[:, 1, :] = top - out[:, 1, :]
        out = out.reshape(size)
        h <<= 1
    return out


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues of a cubelike adjacency matrix, indexed by character.

    ``values[v]`` is λ_v as defined in the module docstring.  Invariants
    (all exact): values[0] = d, Σλ_v = 0, Σλ_v² = 2ⁿ·d, and every λ_v has
    the parity of d.
    """

    n: int
    d: int
    values: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n


def spectrum(omega: ConnectionSet) -> Spectrum:
    """Integer spectrum of X(Z₂ⁿ, Ω) via one WHT of the indicator of Ω."""
    values = wht(omega.indicator())
    values.setflags(write=False)
    return Spectrum(n=omega.n, d=omega.d, values=values)


# ── congruence classification ────────────────────────────────────────────

# Every eigenvalue sits in one of three residue classes mod 4, selected by
# the xor-sum u and the parity of uᵀv:
#
#   u = 0:            λ_v = d − 4k,      0 ≤ k ≤ ⌊d/2⌋        (all v)
#   u ≠ 0, u ∉ Ω:     λ_v = d − 4k       when uᵀv even
#                     λ_v = d + 2 − 4k   when uᵀv odd,  0 ≤ k ≤ ⌊(d+1)/2⌋
#   u ∈ Ω:            λ_v = d − 4k       when uᵀv even
#                     λ_v = d − 2 − 4k   when uᵀv odd,  0 ≤ k ≤ ⌊(d−1)/2⌋
#
# The even-parity rows share the k-range of their case's odd row.

CASE_SUM_ZERO = "xor-sum zero"
CASE_SUM_OUTSIDE = "xor-sum outside set"
CASE_SUM_INSIDE = "xor-sum in set"


@dataclass(frozen=True)
class CongruenceEntry:
    v: int
    eigenvalue: int
    k: int | None
    congruence_class: str
    ok: bool


@dataclass(frozen=True, eq=False)
class CongruenceReport:
    n: int
    d: int
    u: GroupElement
    u_in_set: bool
    case: str
    entries: tuple[CongruenceEntry, ...]

    @property
    def all_pass(self) -> bool:
        return all(e.ok for e in self.entries)


def classify_congruences(spec: Spectrum, u: GroupElement,
                         u_in_set: bool) -> CongruenceReport:
    """Check the mod-4 congruence of every eigenvalue against its class.

    ``u`` must be the xor-sum of the connection set that produced ``spec``
    and ``u_in_set`` says whether u itself is a member.  Each entry records
    the residue class that applies at v, the recovered index k, and whether
    the eigenvalue actually satisfies the congruence and the k-range.  A
    correct spectrum always passes; the report exists so that consistency
    can be audited wholesale.
    """
    if u.n != spec.n:
        raise DimensionMismatchError(
            f"xor-sum of Z2^{u.n} against a spectrum on Z2^{spec.n}")
    if u.bits == 0 and u_in_set:
        raise ValueError("the zero element cannot be a set member")
    d = spec.d
    if u.bits == 0:
        case = CASE_SUM_ZERO
        bound = d // 2
    elif not u_in_set:
        case = CASE_SUM_OUTSIDE
        bound = (d + 1) // 2
    else:
        case = CASE_SUM_INSIDE
        bound = (d - 1) // 2

    entries = []
    for v in range(spec.size):
        lam = int(spec.values[v])
        odd = (u.bits & v).bit_count() & 1
        if not odd:
            base, klass = d, "d mod 4"
        elif case == CASE_SUM_OUTSIDE:
            base, klass = d + 2, "d+2 mod 4"
        else:
            base, klass = d - 2, "d-2 mod 4"
        diff = base - lam
        if diff % 4 == 0:
            k = diff // 4
            ok = 0 <= k <= bound
        else:
            k = None
            ok = False
        entries.append(CongruenceEntry(v=v, eigenvalue=lam, k=k,
                                       congruence_class=klass, ok=ok))
    return CongruenceReport(n=spec.n, d=d, u=u, u_in_set=u_in_set,
                            case=case, entries=tuple(entries))


def classify_set(omega: ConnectionSet) -> CongruenceReport:
    """Convenience wrapper: spectrum plus congruence report for one set."""
    return classify_congruences(spectrum(omega), omega.u,
                                omega.u.bits in omega.elements)
