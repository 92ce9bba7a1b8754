"""Two-qubit linear algebra: Pauli matrices, Bell-diagonal states, spectra, entropy.

Matrices are plain ``numpy`` complex arrays in the computational basis
ordered |00>, |01>, |10>, |11>.  Arrays stored inside value objects are
marked read-only so the objects can be shared freely between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensityMatrix, NotBellDiagonal, NotHermitian, PhysicalityViolation

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
PHYSICALITY_TOL = 1e-12
BELL_TOL = 1e-9

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


I2 = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices (first factor acts on qubit A)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"kron expects two 2x2 matrices, got {a.shape} and {b.shape}")
    return np.kron(a, b)


SIGMA_PAIRS = tuple(_frozen(np.kron(s, s)) for s in PAULIS)
IDENTITY4 = _frozen(np.eye(4))


@dataclass(frozen=True)
class BellCoeffs:
    """Correlation triple (c1, c2, c3) of a Bell-diagonal state.

    Construction fails with :class:`PhysicalityViolation` when any of the
    four eigenvalues of the associated density matrix is negative.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise PhysicalityViolation(f"{name}={v} is not finite")
            object.__setattr__(self, name, v)
        lam = self.eigenvalues()
        if min(lam) < -PHYSICALITY_TOL:
            raise PhysicalityViolation(
                f"coefficients {self.as_tuple()} give negative eigenvalue {min(lam):.3e}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def eigenvalues(self) -> tuple[float, float, float, float]:
        """The four closed-form eigenvalues, in the fixed order used by the entropy formula."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return (
            (1 - c1 - c2 - c3) / 4,
            (1 - c1 + c2 + c3) / 4,
            (1 + c1 - c2 + c3) / 4,
            (1 + c1 + c2 - c3) / 4,
        )

    @classmethod
    def from_probabilities(cls, lam) -> "BellCoeffs":
        """Inverse of :meth:`eigenvalues` for a probability vector over the Bell basis."""
        l1, l2, l3, l4 = (float(x) for x in lam)
        return cls(l3 + l4 - l1 - l2, l2 + l4 - l1 - l3, l2 + l3 - l1 - l4)


def random_bell_coeffs(rng: np.random.Generator) -> BellCoeffs:
    """Uniformly distributed physical coefficients (flat Dirichlet over the simplex)."""
    return BellCoeffs.from_probabilities(rng.dirichlet(np.ones(4)))


def _check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL):
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > tol:
        raise NotHermitian(f"matrix deviates from Hermitian by {dev:.3e}")


def eigenvalues_hermitian(m) -> tuple[float, ...]:
    """Eigenvalues of a small complex Hermitian matrix, ascending.

    Cyclic Jacobi: each rotation zeroes one off-diagonal pair exactly, and
    sweeps repeat until the off-diagonal Frobenius mass drops below
    ``JACOBI_TOL`` (scaled by the matrix norm when that exceeds one).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    _check_hermitian(m)
    n = m.shape[0]
    a = [[complex(x) for x in row] for row in ((m + m.conj().T) / 2).tolist()]
    scale = max(1.0, math.sqrt(sum(abs(x) ** 2 for row in a for x in row)))

    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off < JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                e = apq / r
                tau = (a[q][q].real - a[p][p].real) / (2 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1 + tau * tau))
                c = 1 / math.sqrt(1 + t * t)
                s = t * c
                se, sec = s * e, s * e.conjugate()
                # A <- A J with J[p,p]=J[q,q]=c, J[p,q]=s*e, J[q,p]=-s*conj(e)
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - sec * akq
                    a[k][q] = se * akp + c * akq
                # A <- J^H A
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - se * aqk
                    a[q][k] = sec * apk + c * aqk
                a[p][q] = a[q][p] = 0j
                a[p][p] = complex(a[p][p].real)
                a[q][q] = complex(a[q][q].real)
    return tuple(sorted(a[i][i].real for i in range(n)))


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def entropy_from_spectrum(lam) -> float:
    """Shannon entropy in bits; values in [-PSD_TOL, 0) count as zero."""
    return -sum(_xlog2x(max(float(x), 0.0)) for x in lam)


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    """Validated 4x4 density matrix (Hermitian, unit trace, positive semidefinite)."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidDensityMatrix(f"expected a 4x4 matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidDensityMatrix("matrix has non-finite entries")
        try:
            _check_hermitian(m)
        except NotHermitian as exc:
            raise InvalidDensityMatrix(str(exc)) from None
        tr = complex(np.trace(m))
        if abs(tr - 1) > TRACE_TOL:
            raise InvalidDensityMatrix(f"trace {tr} differs from 1")
        lam = eigenvalues_hermitian(m)
        if lam[0] < -PSD_TOL:
            raise InvalidDensityMatrix(f"negative eigenvalue {lam[0]:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "_spectrum", lam)

    @property
    def spectrum(self) -> tuple[float, ...]:
        return self._spectrum

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)

    def __repr__(self):
        return f"TwoQubitDensity(\n{np.array2string(self.mat, precision=6)})"


def bell_matrix(c: BellCoeffs) -> np.ndarray:
    """Unvalidated (I + sum_i c_i sigma_i x sigma_i) / 4 as a plain array."""
    return (IDENTITY4 + c.c1 * SIGMA_PAIRS[0] + c.c2 * SIGMA_PAIRS[1] + c.c3 * SIGMA_PAIRS[2]) / 4


def bell_to_density(c: BellCoeffs) -> TwoQubitDensity:
    """Density matrix (I + sum_i c_i sigma_i x sigma_i) / 4."""
    if not isinstance(c, BellCoeffs):
        c = BellCoeffs(*c)
    return TwoQubitDensity(bell_matrix(c))


def density_to_bell(rho: TwoQubitDensity) -> BellCoeffs:
    """Recover (c1, c2, c3) via c_i = Tr(rho sigma_i x sigma_i).

    Raises :class:`NotBellDiagonal` when the state is not of Bell-diagonal form.
    """
    m = np.asarray(rho, dtype=complex)
    coeffs = tuple(float(np.trace(m @ s).real) for s in SIGMA_PAIRS)
    try:
        c = BellCoeffs(*coeffs)
    except PhysicalityViolation:
        raise NotBellDiagonal(f"extracted coefficients {coeffs} are unphysical") from None
    rebuilt = (IDENTITY4 + sum(ci * s for ci, s in zip(coeffs, SIGMA_PAIRS))) / 4
    dev = float(np.max(np.abs(m - rebuilt)))
    if dev > BELL_TOL:
        raise NotBellDiagonal(f"state differs from its Bell-diagonal projection by {dev:.3e}")
    return c


def is_bell_diagonal(rho: TwoQubitDensity) -> bool:
    try:
        density_to_bell(rho)
    except NotBellDiagonal:
        return False
    return True


def von_neumann_entropy(rho: TwoQubitDensity) -> float:
    """-Tr(rho log2 rho) in bits, with 0 log 0 = 0."""
    if isinstance(rho, TwoQubitDensity):
        lam = rho.spectrum
    else:
        lam = eigenvalues_hermitian(rho)
    return entropy_from_spectrum(lam)


def dephase(rho: TwoQubitDensity) -> TwoQubitDensity:
    """Drop every off-diagonal entry in the computational basis."""
    m = np.asarray(rho, dtype=complex)
    return TwoQubitDensity(np.diag(np.diag(m).real).astype(complex))
