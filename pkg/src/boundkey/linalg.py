"""Dense complex matrix kernel for two-qubit and four-qubit operators.

Dimensions are capped at 16. The eigensolver is a cyclic Jacobi sweep on
the complex Hermitian matrix (off-diagonal threshold 1e-14, budget 100
sweeps): at these sizes determinism matters more than asymptotic speed.
All functions are pure and safe to call concurrently.
"""

import numpy as np

from . import _kernels

ALLOWED_DIMS = (1, 2, 4, 8, 16)

HERMITICITY_TOL = 1e-14
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

ORDERING_R1 = ("A", "B", "A'", "B'")
ORDERING_R2 = ("A", "A'", "B", "B'")
ORDERINGS = {"R1": ORDERING_R1, "R2": ORDERING_R2}


class JacobiConvergenceError(RuntimeError):
    """Eigensolver failed to reach the off-diagonal threshold in budget."""


def as_complex_matrix(m) -> np.ndarray:
    """Validate and return a C-contiguous complex128 copy of a matrix.

    Requires a 2-d array with both dimensions in {1, 2, 4, 8, 16} and all
    entries finite.
    """
    a = np.array(m, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    if a.shape[0] not in ALLOWED_DIMS or a.shape[1] not in ALLOWED_DIMS:
        raise ValueError(f"matrix dimensions {a.shape} not in {ALLOWED_DIMS}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    return a


def hermiticity_residual(m) -> float:
    """Max entrywise deviation of ``m`` from its conjugate transpose."""
    a = np.asarray(m)
    return float(np.abs(a - a.conj().T).max())


def as_hermitian_matrix(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Like :func:`as_complex_matrix` but requires a square Hermitian input."""
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    res = hermiticity_residual(a)
    if res > tol:
        raise ValueError(f"matrix is not Hermitian: residual {res:.3e} > {tol:.1e}")
    return a


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the 16-dimensional cap enforced.

    entry((i*rb + k), (j*cb + l)) = a(i, j) * b(k, l).
    """
    am = as_complex_matrix(a)
    bm = as_complex_matrix(b)
    rows = am.shape[0] * bm.shape[0]
    cols = am.shape[1] * bm.shape[1]
    if rows > 16 or cols > 16:
        raise ValueError(f"tensor product size {rows}x{cols} exceeds the 16-dim cap")
    return np.kron(am, bm)


def hermitian_eigh(m, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Columns of the returned matrix are the eigenvectors; the
    diagonalization satisfies ``v @ diag(w) @ v.conj().T == m`` to about
    1e-13 in max norm.
    """
    a = as_hermitian_matrix(m)
    w, v, sweeps = _kernels.jacobi_cyclic(a, True, JACOBI_TOL, max_sweeps)
    if sweeps < 0:
        raise JacobiConvergenceError(
            f"Jacobi sweep budget {max_sweeps} exhausted on a {a.shape[0]}x{a.shape[0]} matrix"
        )
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted ascending."""
    a = as_hermitian_matrix(m)
    w, _, sweeps = _kernels.jacobi_cyclic(a, False, JACOBI_TOL, max_sweeps)
    if sweeps < 0:
        raise JacobiConvergenceError(
            f"Jacobi sweep budget {max_sweeps} exhausted on a {a.shape[0]}x{a.shape[0]} matrix"
        )
    return np.sort(w)


def min_eigenvalue(m) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(hermitian_eigenvalues(m)[0])


def singular_values(m) -> np.ndarray:
    """Singular values (descending) via one-sided Jacobi column rotations.

    Column pairs are rotated until every inner product is below 1e-14
    relative to the column norms; the singular values are then the column
    norms. Avoids forming m^H m, which would cost half the digits of any
    near-zero singular value.
    """
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("singular_values expects a square matrix")
    sv = _kernels.jacobi_svd(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sv[0] < 0.0:
        raise JacobiConvergenceError("Jacobi sweep budget exhausted in singular value computation")
    return np.sort(sv)[::-1]


def trace_norm(m) -> float:
    """Sum of singular values; for Hermitian input, the sum of absolute eigenvalues."""
    return float(singular_values(m).sum())


def partial_transpose(m, ordering=ORDERING_R1, transposed=("B", "B'")) -> np.ndarray:
    """Transpose a subset of the four qubit factors of a 16x16 operator.

    ``ordering`` names the qubit living on each of the four index bits,
    most significant first; ``transposed`` lists the factors whose row and
    column indices are swapped. The operation is an involution and
    preserves trace and Hermiticity.
    """
    a = as_complex_matrix(m)
    if a.shape != (16, 16):
        raise ValueError(f"partial transpose requires a 16x16 matrix, got {a.shape}")
    labels = tuple(ordering)
    if len(labels) != 4 or len(set(labels)) != 4:
        raise ValueError(f"ordering must name four distinct qubit factors, got {labels!r}")
    positions = []
    for t in transposed:
        if t not in labels:
            raise ValueError(f"unknown subsystem label {t!r}; ordering is {labels!r}")
        positions.append(labels.index(t))
    out = a.reshape((2,) * 8)
    for pos in positions:
        out = np.swapaxes(out, pos, pos + 4)
    return np.ascontiguousarray(out.reshape(16, 16))


def shannon_entropy_bits(values) -> float:
    """Entropy -sum(v log2 v) in bits with the 0 log 0 = 0 convention.

    Accepts any iterable of weights in [0, 1 + 1e-12]; values in
    [-1e-12, 0) are clamped to zero, anything below 1e-300 is treated as
    an exact zero. The weights need not sum to one.
    """
    total = 0.0
    for v in np.asarray(values, dtype=np.float64).ravel():
        if v < -1e-12 or v > 1.0 + 1e-12:
            raise ValueError(f"entropy weight {v!r} outside [0, 1]")
        if v < 1e-300:
            continue
        total -= v * np.log2(v)
    return float(total)
