"""Dense-matrix reference path, kept deliberately independent.

Everything else in the package works through the Walsh-Hadamard transform.
This module rebuilds the same objects the slow, literal way so the two
routes can be compared: the regular representation as explicit Kronecker
products of bit-flip blocks, the adjacency matrix as their sum, and the
walk operator both by dense diagonalization and by scipy's expm.  None of
it imports the transform; agreement between the two routes is evidence,
not tautology.

Dense work is capped at n ≤ 10 (a 1024×1024 complex matrix); the fast
path has no such limit.

Tolerances: the two evolution routes must agree within 1e-8 in max norm,
and any returned unitary must satisfy ‖UU† − I‖_max ≤ 1e-10.  Adjacency
commutators and eigenvalue diagonalization are exact integer statements.
"""

from __future__ import annotations

import functools
import random

import numpy as np
from scipy.linalg import expm

from .bitspace import ConnectionSet, DimensionMismatchError, GroupElement

DENSE_CAP = 10
EVOLVE_TOL = 1e-8
UNITARY_TOL = 1e-10


class DenseCapError(ValueError):
    """The request exceeds the dense-matrix size cap."""


class OracleMismatchError(RuntimeError):
    """The two independent computation routes disagree beyond tolerance."""


_FLIP = np.array([[0, 1], [1, 0]], dtype=np.int64)
_EYE2 = np.eye(2, dtype=np.int64)


def _check_cap(n: int) -> None:
    if n > DENSE_CAP:
        raise DenseCapError(
            f"dense path is capped at n <= {DENSE_CAP}, got {n}")


def regular_rep(w: GroupElement) -> np.ndarray:
    """Permutation matrix of x ↦ x⊕w as a Kronecker product.

    Factor i of the product is a bit flip when bit i of w is set, identity
    otherwise, ordered most significant first to match the binary vertex
    labels.
    """
    _check_cap(w.n)
    mat = np.ones((1, 1), dtype=np.int64)
    for i in range(w.n - 1, -1, -1):
        mat = np.kron(mat, _FLIP if (w.bits >> i) & 1 else _EYE2)
    return mat


def adjacency_dense(omega: ConnectionSet) -> np.ndarray:
    """Σ_{w∈Ω} ρ(w): the adjacency matrix of X(Z₂ⁿ, Ω), dense int64."""
    _check_cap(omega.n)
    size = 1 << omega.n
    acc = np.zeros((size, size), dtype=np.int64)
    for w in omega.members():
        acc += regular_rep(w)
    return acc


@functools.lru_cache(maxsize=None)
def _hadamard(n: int) -> np.ndarray:
    block = np.array([[1, 1], [1, -1]], dtype=np.int64)
    mat = np.ones((1, 1), dtype=np.int64)
    for _ in range(n):
        mat = np.kron(mat, block)
    mat.setflags(write=False)
    return mat


def dense_eigenvalues(omega: ConnectionSet) -> np.ndarray:
    """Eigenvalues by explicit conjugation H A H / 2ⁿ, exact in int64.

    The conjugated matrix must come out diagonal with entries divisible by
    2ⁿ; anything else means the adjacency matrix was not cubelike, which
    cannot happen for a ConnectionSet.
    """
    adj = adjacency_dense(omega)
    had = _hadamard(omega.n)
    size = 1 << omega.n
    conj = had @ adj @ had
    diag = np.diagonal(conj).copy()
    off = conj - np.diag(diag)
    if np.any(off):
        raise OracleMismatchError("H A H is not diagonal")
    if np.any(diag % size):
        raise OracleMismatchError("H A H diagonal is not divisible by 2^n")
    return diag // size


def evolve_dense(omega: ConnectionSet, t: float,
                 cross_check: bool = True) -> np.ndarray:
    """Walk operator U(t) = exp(−itA) by dense diagonalization.

    With ``cross_check`` the result is also compared entrywise against
    scipy's scaling-and-squaring expm; disagreement beyond EVOLVE_TOL or a
    unitarity defect beyond UNITARY_TOL raises OracleMismatchError.
    """
    lam = dense_eigenvalues(omega)
    had = _hadamard(omega.n).astype(np.float64)
    size = 1 << omega.n
    phases = np.exp(-1j * float(t) * lam)
    unitary = (had * phases[None, :]) @ had / size
    gram = unitary @ unitary.conj().T
    defect = float(np.abs(gram - np.eye(size)).max())
    if defect > UNITARY_TOL:
        raise OracleMismatchError(f"unitarity defect {defect:.3e}")
    if cross_check:
        other = evolve_expm(omega, t)
        dev = float(np.abs(unitary - other).max())
        if dev > EVOLVE_TOL:
            raise OracleMismatchError(
                f"diagonalization and expm disagree by {dev:.3e}")
    return unitary


def evolve_expm(omega: ConnectionSet, t: float) -> np.ndarray:
    """Walk operator through scipy.linalg.expm, the second dense route."""
    adj = adjacency_dense(omega)
    return expm(-1j * float(t) * adj.astype(np.float64))


def commutation_check(first: ConnectionSet, second: ConnectionSet) -> int:
    """Max |entry| of [A₁, A₂]; exactly 0 for any two cubelike sets."""
    if first.n != second.n:
        raise DimensionMismatchError(
            f"sets on Z2^{first.n} and Z2^{second.n} do not share a graph")
    a = adjacency_dense(first)
    b = adjacency_dense(second)
    comm = a @ b - b @ a
    return int(np.abs(comm).max())


def _random_set(rng: random.Random, n: int) -> ConnectionSet:
    mask = rng.randrange(1, 1 << ((1 << n) - 1))
    labels = []
    m = mask
    while m:
        low = m & -m
        labels.append(low.bit_length())  # bit j of the mask is label j+1
        m ^= low
    return ConnectionSet(n, tuple(labels))


def verify_equivalence(*, trials: int = 100, pair_trials: int = 50,
                       seed: int = 0, n_max: int = 6) -> dict:
    """Drive the dense routes against the transform path on random inputs.

    Returns a report with the worst deviations observed; ``ok`` is True
    when every deviation is inside its tolerance.  The closed-form route
    under test is dynamics.all_amplitudes, reshaped into a matrix via
    U[b, a] = T(a⊕b)/2ⁿ.
    """
    from .dynamics import all_amplitudes
    from .spectral import spectrum

    if n_max > DENSE_CAP:
        raise DenseCapError(
            f"dense path is capped at n <= {DENSE_CAP}, got n_max={n_max}")
    rng = random.Random(seed)
    closed_dev = 0.0
    expm_dev = 0.0
    unitary_dev = 0.0
    spectrum_dev = 0.0
    for _ in range(trials):
        n = rng.randint(1, n_max)
        omega = _random_set(rng, n)
        t = rng.uniform(0.0, 2.0 * np.pi)
        size = 1 << n
        dense = evolve_dense(omega, t, cross_check=False)
        other = evolve_expm(omega, t)
        expm_dev = max(expm_dev, float(np.abs(dense - other).max()))
        gram = dense @ dense.conj().T
        unitary_dev = max(unitary_dev,
                          float(np.abs(gram - np.eye(size)).max()))
        idx = np.arange(size)
        fast = all_amplitudes(omega, t)[idx[:, None] ^ idx[None, :]] / size
        closed_dev = max(closed_dev, float(np.abs(dense - fast).max()))
        eigs = np.sort(np.linalg.eigvalsh(adjacency_dense(omega)
                                          .astype(np.float64)))
        exact = np.sort(spectrum(omega).values)
        spectrum_dev = max(spectrum_dev,
                           float(np.abs(eigs - exact).max()))
    commutator_max = 0
    for _ in range(pair_trials):
        a = _random_set(rng, 4)
        b = _random_set(rng, 4)
        commutator_max = max(commutator_max, commutation_check(a, b))
    ok = (closed_dev <= EVOLVE_TOL and expm_dev <= EVOLVE_TOL
          and unitary_dev <= UNITARY_TOL and spectrum_dev <= EVOLVE_TOL
          and commutator_max == 0)
    return {
        "trials": trials,
        "pair_trials": pair_trials,
        "seed": seed,
        "n_max": n_max,
        "closed_form_dev": closed_dev,
        "expm_dev": expm_dev,
        "unitarity_dev": unitary_dev,
        "spectrum_dev": spectrum_dev,
        "commutator_max": commutator_max,
        "ok": ok,
    }
