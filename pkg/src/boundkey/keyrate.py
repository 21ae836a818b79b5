"""One-way distillable key rate from block trace norms.

The 16x16 state is read as a 4x4 grid of shield blocks sigma^(ijkl)
indexed by the key-qubit pair. Four weights condense its key content:

    x = (|sigma^0000| + |sigma^1111|) / 2 + |sigma^0011|
    y = (|sigma^0000| + |sigma^1111|) / 2 - |sigma^0011|
    z = (|sigma^0101| + |sigma^1010|) / 2 + |sigma^0110|
    w = (|sigma^0101| + |sigma^1010|) / 2 - |sigma^0110|

with |.| the trace norm. The rate is 1 - S where S is the Shannon entropy
of (x, y, z, w) in bits; it lower-bounds the distillable key rate. The
weights encode the optimal twisting implicitly, so no unitary search is
performed.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import min_eigenvalue, shannon_entropy_bits, trace_norm
from .states import SQRT2, DensityMatrix16, FAMILY_DOMAINS

NORM_EQ_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-12


@dataclass(frozen=True)
class PrivacyWeights:
    """The four squeezed weights; nonnegative, summing to one for states of
    the block-diagonal families."""

    x: float
    y: float
    z: float
    w: float

    def as_tuple(self):
        return (self.x, self.y, self.z, self.w)

    def to_json(self):
        return {"x": self.x, "y": self.y, "z": self.z, "w": self.w}


@dataclass(frozen=True)
class KeyRateReport:
    weights: PrivacyWeights
    entropy: float
    kdw: float
    path: str = "generic"

    def to_json(self):
        doc = self.weights.to_json()
        doc.update({"entropy": self.entropy, "kdw": self.kdw, "path": self.path})
        return doc


@dataclass(frozen=True)
class PbitConditionReport:
    """Sufficient condition for a strictly positive distillable key rate.

    Requires the two corner diagonal norms and the corner coherence norm
    to coincide while both middle diagonal norms stay strictly below it.
    """

    corner_norms: tuple
    coherence_norm: float
    middle_norms: tuple
    satisfied: bool

    def to_json(self):
        return {
            "corner_norms": list(self.corner_norms),
            "coherence_norm": self.coherence_norm,
            "middle_norms": list(self.middle_norms),
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class BellDiagReport:
    """Key-distillability condition for Bell-diagonal-with-shield states:
    |sigma0 - sigma1| > 1/2 with sigma0 orthogonal to sigma1."""

    difference_norm: float
    overlap: float
    satisfied: bool

    def to_json(self):
        return {
            "difference_norm": self.difference_norm,
            "overlap": self.overlap,
            "satisfied": self.satisfied,
        }


def decompose_blocks(state_or_matrix) -> np.ndarray:
    """The sixteen 4x4 blocks as an array of shape (4, 4, 4, 4).

    ``blocks[m, n]`` is the submatrix at outer row m = 2i + j, outer
    column n = 2k + l, i.e. sigma^(ijkl).
    """
    m = state_or_matrix.matrix if isinstance(state_or_matrix, DensityMatrix16) else np.asarray(state_or_matrix)
    if m.shape != (16, 16):
        raise ValueError(f"expected a 16x16 matrix, got {m.shape}")
    return np.ascontiguousarray(m.reshape(4, 4, 4, 4).transpose(0, 2, 1, 3))


def assemble_blocks(blocks) -> np.ndarray:
    """Inverse of :func:`decompose_blocks`."""
    b = np.asarray(blocks)
    if b.shape != (4, 4, 4, 4):
        raise ValueError(f"expected blocks of shape (4, 4, 4, 4), got {b.shape}")
    return np.ascontiguousarray(b.transpose(0, 2, 1, 3).reshape(16, 16))


def _clamp_weight(v: float) -> float:
    if v < -1e-12:
        raise ValueError(f"privacy weight {v!r} is negative beyond tolerance")
    return max(v, 0.0)


def weights_from_norms(n0000, n1111, n0011, n0101, n1010, n0110) -> PrivacyWeights:
    """Privacy weights from the six key-block trace norms."""
    corner = (n0000 + n1111) / 2
    middle = (n0101 + n1010) / 2
    return PrivacyWeights(
        _clamp_weight(corner + n0011),
        _clamp_weight(corner - n0011),
        _clamp_weight(middle + n0110),
        _clamp_weight(middle - n0110),
    )


def xyzw(blocks) -> PrivacyWeights:
    """Privacy weights from the six key blocks of a decomposition."""
    b = np.asarray(blocks)
    return weights_from_norms(
        trace_norm(b[0, 0]),
        trace_norm(b[3, 3]),
        trace_norm(b[0, 3]),
        trace_norm(b[1, 1]),
        trace_norm(b[2, 2]),
        trace_norm(b[1, 2]),
    )


def kdw_from_xyzw(weights: PrivacyWeights, path: str = "generic") -> KeyRateReport:
    """Key rate 1 - S(x, y, z, w) in bits."""
    entropy = shannon_entropy_bits(weights.as_tuple())
    return KeyRateReport(weights, entropy, 1.0 - entropy, path)


def kdw_of_state(state_or_matrix) -> KeyRateReport:
    """Key rate of a state via block decomposition and trace norms."""
    return kdw_from_xyzw(xyzw(decompose_blocks(state_or_matrix)))


def xyzw_family1_closed_form(p: float) -> PrivacyWeights:
    """Unfiltered family-1 weights: x = 4p/(1+2p), y = 0, z = w = (1-2p)/(2(1+2p))."""
    x = 4 * abs(p / (1 + 2 * p))
    zw = 0.5 * abs((1 - 2 * p) / (1 + 2 * p))
    return PrivacyWeights(x, 0.0, zw, zw)


def xyzw_family2_closed_form(p: float) -> PrivacyWeights:
    """Unfiltered family-2 weights: x = 4p, y = 0, z/w = (1 - 4p +/- 2*sqrt(2)p)/2."""
    return PrivacyWeights(
        4 * p,
        0.0,
        (1 - 4 * p + 2 * SQRT2 * p) / 2,
        (1 - 4 * p - 2 * SQRT2 * p) / 2,
    )


def kdw_family2_closed_form(p: float) -> float:
    """Closed-form family-2 key rate 1 + 4p log2(4p) + z log2 z + w log2 w.

    The w term uses (1 - 4p - 2*sqrt(2)*p)/2; with the weights summing to
    one this agrees with the generic block path to better than 1e-10.
    """
    lo, hi = FAMILY_DOMAINS["Family2"]
    if not (lo <= p <= hi):
        raise ValueError(f"Family2 parameter p={p!r} outside domain [{lo}, {hi}]")
    weights = xyzw_family2_closed_form(p)
    return kdw_from_xyzw(weights, path="closed-form-family2").kdw


def pbit_sufficient_condition(blocks) -> PbitConditionReport:
    """Check the equal-corner-norms / small-middle-norms key condition."""
    b = np.asarray(blocks)
    n0000 = trace_norm(b[0, 0])
    n1111 = trace_norm(b[3, 3])
    n0011 = trace_norm(b[0, 3])
    n0101 = trace_norm(b[1, 1])
    n1010 = trace_norm(b[2, 2])
    equal = abs(n0000 - n0011) <= NORM_EQ_TOL and abs(n1111 - n0011) <= NORM_EQ_TOL
    small = n0101 < n0011 and n1010 < n0011
    return PbitConditionReport(
        (n0000, n1111), n0011, (n0101, n1010), bool(equal and small)
    )


def belldiag_condition(sigma0, sigma1) -> BellDiagReport:
    """Check |sigma0 - sigma1| > 1/2 and Tr(sigma0 sigma1) = 0 for PSD blocks."""
    s0 = np.asarray(sigma0, dtype=np.complex128)
    s1 = np.asarray(sigma1, dtype=np.complex128)
    for name, s in (("sigma0", s0), ("sigma1", s1)):
        if min_eigenvalue((s + s.conj().T) / 2) < -1e-10:
            raise ValueError(f"{name} must be positive semidefinite")
    diff = trace_norm(s0 - s1)
    overlap = float(np.trace(s0 @ s1).real)
    satisfied = diff > 0.5 and abs(overlap) <= ORTHOGONALITY_TOL
    return BellDiagReport(diff, overlap, bool(satisfied))


def belldiag_blocks(state_or_matrix):
    """Recover (sigma0, sigma1) from the corner blocks of a Bell-diagonal state."""
    b = decompose_blocks(state_or_matrix)
    return b[0, 0] + b[0, 3], b[0, 0] - b[0, 3]
