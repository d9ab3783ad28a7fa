"""
Two-Level Algebra
Exact 2x2 complex linear algebra: Pauli matrices, products, adjoints, traces
and the closed-form exponential of i*a.sigma
"""

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from .errors import DomainError

ComplexMat2 = npt.NDArray[np.complex128]
Ket2 = npt.NDArray[np.complex128]

# Below this |a| the ratio sin|a|/|a| is taken from its series
SMALL_ANGLE = 1e-8

STRUCTURAL_TOL = 1e-12


def _frozen(rows) -> ComplexMat2:
    m = np.array(rows, dtype=np.complex128)
    m.flags.writeable = False
    return m


IDENTITY = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_UP = _frozen([1, 0])
KET_DOWN = _frozen([0, 1])


def as_mat2(m) -> ComplexMat2:
    """Coerce to a fresh (2, 2) complex array, rejecting NaN/Inf"""
    arr = np.array(m, dtype=np.complex128)
    if arr.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix entries must be finite")
    return arr


def as_ket(v) -> Ket2:
    """Coerce to a fresh length-2 complex vector, rejecting NaN/Inf"""
    arr = np.array(v, dtype=np.complex128)
    if arr.shape != (2,):
        raise DomainError(f"expected a 2-component ket, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("ket components must be finite")
    return arr


def ket_norm2(v: Ket2) -> float:
    return float(np.vdot(v, v).real)


def is_normalized(v: Ket2, tol: float = STRUCTURAL_TOL) -> bool:
    return abs(ket_norm2(v) - 1.0) <= tol


def pauli_vector(a: Sequence[float]) -> ComplexMat2:
    """a . sigma for a real 3-vector"""
    ax, ay, az = (float(c) for c in a)
    return np.array([[az, ax - 1j * ay], [ax + 1j * ay, -az]], dtype=np.complex128)


def pauli_components(m: ComplexMat2) -> tuple[complex, complex, complex, complex]:
    """Coefficients (c0, cx, cy, cz) with m = c0*I + cx*sx + cy*sy + cz*sz"""
    c0 = (m[0, 0] + m[1, 1]) / 2
    cx = (m[0, 1] + m[1, 0]) / 2
    cy = (m[1, 0] - m[0, 1]) / 2j
    cz = (m[0, 0] - m[1, 1]) / 2
    return complex(c0), complex(cx), complex(cy), complex(cz)


def pauli_expi(a: Sequence[float]) -> ComplexMat2:
    """
    exp(i a.sigma) = cos|a| I + i sin|a|/|a| (a.sigma)

    Parameters
    ----------
    a : sequence of 3 floats
        Real, dimensionless rotation vector.

    Returns
    -------
    ComplexMat2
        Unitary 2x2 matrix.
    """
    vec = np.asarray(a, dtype=float)
    if vec.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise DomainError("rotation vector must be finite")

    angle = math.sqrt(float(vec @ vec))
    if angle < SMALL_ANGLE:
        sinc = 1.0 - angle * angle / 6.0
    else:
        sinc = math.sin(angle) / angle
    return math.cos(angle) * IDENTITY + 1j * sinc * pauli_vector(vec)


def product(m: ComplexMat2, n: ComplexMat2) -> ComplexMat2:
    return m @ n


def adjoint(m: ComplexMat2) -> ComplexMat2:
    return m.conj().T.copy()


def trace(m: ComplexMat2) -> complex:
    return complex(m[0, 0] + m[1, 1])


def determinant(m: ComplexMat2) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def commutator(m: ComplexMat2, n: ComplexMat2) -> ComplexMat2:
    return m @ n - n @ m


def frobenius_norm(m: ComplexMat2) -> float:
    return float(np.linalg.norm(m))


def is_hermitian(m: ComplexMat2, tol: float = STRUCTURAL_TOL) -> bool:
    return frobenius_norm(m - adjoint(m)) <= tol * max(1.0, frobenius_norm(m))


def is_unitary(m: ComplexMat2, tol: float = STRUCTURAL_TOL) -> bool:
    return frobenius_norm(m @ adjoint(m) - IDENTITY) <= tol


def expectation(op: ComplexMat2, ket: Ket2) -> complex:
    """<ket|op|ket>"""
    return complex(np.vdot(ket, op @ ket))


def matrix_element(bra: Ket2, op: ComplexMat2, ket: Ket2) -> complex:
    """<bra|op|ket>"""
    return complex(np.vdot(bra, op @ ket))


def eigen_gap(m: ComplexMat2) -> float:
    """Spread of the eigenvalues of a Hermitian matrix"""
    values = np.linalg.eigvalsh(m)
    return float(values[-1] - values[0])
