"""Diagonal local filters and their action on four-qubit states.

A filter is L = L_A (x) L_B with L_A = diag(a, b, c, d) acting on the key
index pair and L_B = diag(r, s, t, u) on the shield pair. On block (m, n)
of the state it acts as L_m sigma L_n^dag with L_m = letter_m *
diag(r, s, t, u), so everything reduces to scalar prefactors times a
two-sided diagonal scaling. Filtering keeps the surviving ensemble with
probability Tr(L rho L^dag).
"""

from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix16

# optimization floor for the filter parameters: the effective-rate
# objective approaches its supremum as b, c -> 0, so the open interval
# (0, 1] is cut off at a small floor to keep the optimum attained
PARAM_FLOOR = 1e-4
PARAM_NAMES = ("a", "b", "c", "d", "r", "s", "t", "u")


class FilteredOutError(RuntimeError):
    """The filter rejected essentially the entire ensemble."""


@dataclass(frozen=True)
class LocalFilter:
    """Eight diagonal filter parameters, each in [PARAM_FLOOR, 1]."""

    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    d: float = 1.0
    r: float = 1.0
    s: float = 1.0
    t: float = 1.0
    u: float = 1.0

    def __post_init__(self):
        for name, value in zip(PARAM_NAMES, self.as_tuple()):
            if not (PARAM_FLOOR <= value <= 1.0):
                raise ValueError(
                    f"filter parameter {name}={value!r} outside [{PARAM_FLOOR}, 1]"
                )

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.r, self.s, self.t, self.u)

    def to_json(self):
        return [float(v) for v in self.as_tuple()]

    @classmethod
    def from_params(cls, params) -> "LocalFilter":
        vals = [float(v) for v in params]
        if len(vals) != 8:
            raise ValueError(f"expected 8 filter parameters, got {len(vals)}")
        return cls(*vals)

    @classmethod
    def identity(cls) -> "LocalFilter":
        return cls()

    @property
    def outer(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    @property
    def inner(self) -> np.ndarray:
        return np.array([self.r, self.s, self.t, self.u])


@dataclass(frozen=True)
class FilteredState:
    state: DensityMatrix16
    success_probability: float
    source_filter: LocalFilter


def filter_blocks(f: LocalFilter):
    """The four diagonal blocks L_1..L_4 = letter * diag(r, s, t, u)."""
    inner = np.diag(f.inner).astype(np.complex128)
    return tuple(letter * inner for letter in f.outer)


def full_filter_matrix(f: LocalFilter) -> np.ndarray:
    """The 16x16 filter diag(L_1, L_2, L_3, L_4)."""
    m = np.zeros((16, 16), dtype=np.complex128)
    for k, block in enumerate(filter_blocks(f)):
        m[4 * k : 4 * k + 4, 4 * k : 4 * k + 4] = block
    return m


def success_probability(state: DensityMatrix16, f: LocalFilter) -> float:
    """Tr(L rho L^dag): the surviving fraction of the ensemble."""
    diag = np.real(np.diag(state.matrix)).reshape(4, 4)
    weights = np.outer(f.outer**2, f.inner**2)
    return float(np.sum(weights * diag))


def apply_filter(state: DensityMatrix16, f: LocalFilter) -> FilteredState:
    """Filter a state blockwise and renormalize.

    Block (m, n) of the output is L_m sigma^(mn) L_n^dag / M with
    M = Tr(L rho L^dag). Raises FilteredOutError when M < 1e-12.
    """
    prob = success_probability(state, f)
    if prob < 1e-12:
        raise FilteredOutError(
            f"filter keeps a fraction {prob:.3e} of the ensemble; there is no output state"
        )
    scale = np.kron(f.outer, f.inner)
    numerator = state.matrix * np.outer(scale, scale)
    filtered = DensityMatrix16(numerator / prob, state.ordering, "Custom", state.p)
    return FilteredState(filtered, prob, f)
