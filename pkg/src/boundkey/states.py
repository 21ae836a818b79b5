"""Constructors for the bound-entangled four-qubit state families.

Every state is a 16x16 density operator on key qubits A, B plus shield
qubits A', B', stored with row index ``8*i_A + 4*j_B + 2*k_A' + l_B'``
(ordering tag R1). Viewed as a 4x4 grid of 4x4 blocks, the outer index is
the key pair and each block acts on the shield pair. The alternative tag
R2 reads the same bits as (A, A', B, B'); it is the reading under which
all families are manifestly PPT, see :func:`ppt_report`.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import (
    ORDERINGS,
    as_complex_matrix,
    hermiticity_residual,
    min_eigenvalue,
    partial_transpose,
)

SQRT2 = float(np.sqrt(2.0))

# upper end of the parameter range shared by families 2 and 3
P_MAX_FAMILY23 = 1.0 / (4.0 + 2.0 * SQRT2)

FAMILY_DOMAINS = {
    "Family1": (0.0, 0.5),
    "Family2": (0.125, P_MAX_FAMILY23),
    "Family3": (0.125, P_MAX_FAMILY23),
    "Horodecki": (0.0, 0.5),
}

PSD_TOL = -1e-10
TRACE_TOL = 1e-12
HERM_TOL = 1e-14

_TAU1 = np.array(
    [
        [1 / 6, 0, 0, 0],
        [0, 1 / 3, -1 / 6, 0],
        [0, -1 / 6, 1 / 3, 0],
        [0, 0, 0, 1 / 6],
    ],
    dtype=np.complex128,
)
_TAU2 = np.array(
    [
        [1 / 3, 0, 0, 0],
        [0, 1 / 6, 1 / 6, 0],
        [0, 1 / 6, 1 / 6, 0],
        [0, 0, 0, 1 / 3],
    ],
    dtype=np.complex128,
)


@dataclass(frozen=True)
class DensityMatrix16:
    """A 16x16 density operator with its ordering tag and family label."""

    matrix: np.ndarray
    ordering: str = "R1"
    family: str = "Custom"
    p: float = float("nan")


@dataclass(frozen=True)
class ValidationReport:
    trace_residual: float
    min_eigenvalue: float
    hermiticity_residual: float

    @property
    def ok(self) -> bool:
        return (
            self.trace_residual <= TRACE_TOL
            and self.min_eigenvalue >= PSD_TOL
            and self.hermiticity_residual <= HERM_TOL
        )


@dataclass(frozen=True)
class PptReport:
    """Minimum partial-transpose eigenvalues under both ordering tags.

    The transpose always acts on the B and B' factors; R1 reads the index
    bits as (A, B, A', B'), R2 as (A, A', B, B').
    """

    min_eig_r1: float
    min_eig_r2: float

    @property
    def ppt_r1(self) -> bool:
        return self.min_eig_r1 >= PSD_TOL

    @property
    def ppt_r2(self) -> bool:
        return self.min_eig_r2 >= PSD_TOL


def make_tau():
    """The two 4x4 shield blocks every corner/middle block is built from.

    Both are unit-trace and positive semidefinite, and they sum to I/2.
    """
    return _TAU1.copy(), _TAU2.copy()


def _assemble(blocks) -> np.ndarray:
    m = np.zeros((16, 16), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            b = blocks[i][j]
            if b is not None:
                m[4 * i : 4 * i + 4, 4 * j : 4 * j + 4] = b
    return m


def _check_domain(family: str, p: float) -> float:
    lo, hi = FAMILY_DOMAINS[family]
    p = float(p)
    if not (lo <= p <= hi):
        raise ValueError(f"{family} parameter p={p!r} outside domain [{lo}, {hi}]")
    return p


def make_family1(p: float) -> DensityMatrix16:
    """One-parameter family with all four corner blocks equal.

    Corner blocks are 2p*tau1 and the two middle diagonal blocks are
    (1/2 - p)*tau2, all normalized by 1/(1 + 2p); p in [0, 1/2].
    """
    p = _check_domain("Family1", p)
    corner = 2 * p * _TAU1
    middle = (0.5 - p) * _TAU2
    m = _assemble(
        [
            [corner, None, None, corner],
            [None, middle, None, None],
            [None, None, middle, None],
            [corner, None, None, corner],
        ]
    ) / (1 + 2 * p)
    return DensityMatrix16(m, "R1", "Family1", p)


def family2_sigmas(p: float):
    """The four 4x4 blocks (sigma_0..sigma_3) generating family 2."""
    s0 = 0.5 * np.array(
        [[p, 0, 0, p], [0, 2 * p, 0, 0], [0, 0, 0, 0], [p, 0, 0, p]],
        dtype=np.complex128,
    )
    s1 = 0.5 * np.array(
        [[p, 0, 0, -p], [0, 0, 0, 0], [0, 0, 2 * p, 0], [-p, 0, 0, p]],
        dtype=np.complex128,
    )
    head = 1 - 4 * p - 2 * SQRT2 * p
    s2 = 0.5 * np.array(
        [
            [head, 0, 0, 0],
            [0, (SQRT2 + 1) * p, p, 0],
            [0, p, (SQRT2 - 1) * p, 0],
            [0, 0, 0, 0],
        ],
        dtype=np.complex128,
    )
    s3 = 0.5 * np.array(
        [
            [head, 0, 0, 0],
            [0, (SQRT2 - 1) * p, -p, 0],
            [0, -p, (SQRT2 + 1) * p, 0],
            [0, 0, 0, 0],
        ],
        dtype=np.complex128,
    )
    return s0, s1, s2, s3


def make_family2(p: float) -> DensityMatrix16:
    """Bell-diagonal family with (sigma_0 +/- sigma_1) corners.

    Corners hold sigma_0 +/- sigma_1, middles sigma_2 +/- sigma_3, overall
    factor 1/2; p in [1/8, 1/(4 + 2*sqrt(2))]. Its partial transpose over
    {B, B'} under R1 equals the state itself.
    """
    p = _check_domain("Family2", p)
    s0, s1, s2, s3 = family2_sigmas(p)
    m = 0.5 * _assemble(
        [
            [s0 + s1, None, None, s0 - s1],
            [None, s2 + s3, s2 - s3, None],
            [None, s2 - s3, s2 + s3, None],
            [s0 - s1, None, None, s0 + s1],
        ]
    )
    return DensityMatrix16(m, "R1", "Family2", p)


def family3_sigma2(p: float) -> np.ndarray:
    """Diagonal middle block of family 3."""
    s2 = np.zeros((4, 4), dtype=np.complex128)
    s2[1, 1] = s2[2, 2] = p / SQRT2
    s2[0, 0] = s2[3, 3] = 0.25 - (1 + 1 / SQRT2) * p
    return s2


def make_family3(p: float) -> DensityMatrix16:
    """Variant of family 2 with diagonal middle blocks 2*sigma_2.

    Same corners and domain as family 2; the middle coherence block is
    absent, which keeps its unfiltered key rate negative everywhere.
    """
    p = _check_domain("Family3", p)
    s0, s1, _, _ = family2_sigmas(p)
    mid = 2 * family3_sigma2(p)
    m = 0.5 * _assemble(
        [
            [s0 + s1, None, None, s0 - s1],
            [None, mid, None, None],
            [None, None, mid, None],
            [s0 - s1, None, None, s0 + s1],
        ]
    )
    return DensityMatrix16(m, "R1", "Family3", p)


def make_horodecki(p: float) -> DensityMatrix16:
    """The d=2, k=1 member of the Horodecki key-distillable family.

    Corner diagonal blocks (p/2)(tau1 + tau2), corner off-diagonal blocks
    (p/2)(tau1 - tau2), middles (1/2 - p)*tau2; p in [0, 1/2].
    """
    p = _check_domain("Horodecki", p)
    cp = (p / 2) * (_TAU1 + _TAU2)
    cm = (p / 2) * (_TAU1 - _TAU2)
    middle = (0.5 - p) * _TAU2
    m = _assemble(
        [
            [cp, None, None, cm],
            [None, middle, None, None],
            [None, None, middle, None],
            [cm, None, None, cp],
        ]
    )
    return DensityMatrix16(m, "R1", "Horodecki", p)


_FAMILY_MAKERS = {
    "Family1": make_family1,
    "Family2": make_family2,
    "Family3": make_family3,
    "Horodecki": make_horodecki,
}


def make_family(family, p: float) -> DensityMatrix16:
    """Dispatch constructor; accepts 1/2/3 or a family label string."""
    if isinstance(family, int):
        label = f"Family{family}"
    else:
        label = str(family)
    if label not in _FAMILY_MAKERS:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(_FAMILY_MAKERS)}")
    return _FAMILY_MAKERS[label](p)


def make_projector_a() -> np.ndarray:
    """Corner-mixing operator relating the Horodecki family to family 1.

    The 16x16 block matrix (1/2) [[I,0,0,I],[0,I,0,0],[0,0,I,0],[I,0,0,I]]
    with 4x4 identity blocks. It acts as a projector on the corner blocks
    only; its square halves the middle blocks.
    """
    eye = np.eye(4, dtype=np.complex128)
    half = 0.5 * eye
    return _assemble(
        [
            [half, None, None, half],
            [None, half, None, None],
            [None, None, half, None],
            [half, None, None, half],
        ]
    )


def check_relation_family1(p: float) -> float:
    """Max entrywise residual of family 1 against the conjugated Horodecki state.

    Computes A rho_(p,2,1) A^dag, renormalizes, and compares with
    make_family1(p). Exact algebra gives zero; double precision stays
    below 1e-12 across the domain.
    """
    a = make_projector_a()
    rho = make_horodecki(p).matrix
    conj = a @ rho @ a.conj().T
    conj = conj / np.trace(conj).real
    return float(np.abs(conj - make_family1(p).matrix).max())


def _matrix_of(state_or_matrix) -> np.ndarray:
    if isinstance(state_or_matrix, DensityMatrix16):
        return state_or_matrix.matrix
    return np.asarray(state_or_matrix)


def validate_state(state_or_matrix) -> ValidationReport:
    """Trace, positivity and Hermiticity residuals of a density matrix."""
    m = as_complex_matrix(_matrix_of(state_or_matrix))
    herm = hermiticity_residual(m)
    trace_res = abs(float(np.trace(m).real) - 1.0)
    # symmetrized copy so the eigensolver accepts slightly perturbed input
    eig = min_eigenvalue((m + m.conj().T) / 2)
    return ValidationReport(trace_res, eig, herm)


def ppt_report(state_or_matrix) -> PptReport:
    """Partial-transpose positivity over {B, B'} under both ordering tags."""
    m = _matrix_of(state_or_matrix)
    eigs = {}
    for tag, ordering in ORDERINGS.items():
        pt = partial_transpose(m, ordering, ("B", "B'"))
        eigs[tag] = min_eigenvalue((pt + pt.conj().T) / 2)
    return PptReport(eigs["R1"], eigs["R2"])


def state_to_json(state: DensityMatrix16) -> dict:
    """JSON-ready dict with the matrix as nested [re, im] pairs."""
    m = state.matrix
    return {
        "family": state.family,
        "p": state.p,
        "ordering": state.ordering,
        "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in m],
    }


def state_from_json(doc: dict) -> DensityMatrix16:
    """Inverse of :func:`state_to_json`."""
    m = np.array(
        [[complex(re, im) for re, im in row] for row in doc["matrix"]],
        dtype=np.complex128,
    )
    return DensityMatrix16(m, doc["ordering"], doc["family"], float(doc["p"]))
