"""Finite-difference oracle for ``H = -d^2/dx^2 + V(x)`` with complex ``V``.

The operator is the three-point discretization on a uniform grid with the
wavefunction pinned to zero just outside both ends.  Eigenvalues come from a
general complex eigensolver; nothing here assumes Hermiticity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import lapack, solve_banded

__all__ = [
    "ConvergenceError",
    "Grid",
    "DEFAULT_GRID",
    "TridiagonalOperator",
    "Pairing",
    "SpectrumReport",
    "discretize",
    "eigenvalues_all",
    "bound_spectrum",
    "eigenvector",
    "residual",
    "match_spectra",
    "conjugate_pair_check",
    "central_derivative",
    "second_derivative",
    "spectrum_report",
]

MAX_DENSE_N = 6000


class ConvergenceError(RuntimeError):
    """The QR iteration failed to deflate an eigenvalue."""

    def __init__(self, index: int, n: int):
        super().__init__(
            f"QR iteration failed to converge at deflation index {index} of {n}; "
            f"eigenvalues {index}..{n - 1} did converge"
        )
        self.index = index


@dataclass(frozen=True)
class Grid:
    half_width: float
    count: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.count < 3:
            raise ValueError("grid needs at least 3 nodes")

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / (self.count - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.count)

    @classmethod
    def from_spacing(cls, half_width: float, h: float) -> "Grid":
        return cls(half_width, int(round(2.0 * half_width / h)) + 1)


DEFAULT_GRID = Grid(20.0, 2001)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Complex symmetric tridiagonal matrix: ``diag`` plus constant ``off``."""

    diag: np.ndarray
    off: float
    h: float

    @property
    def size(self) -> int:
        return self.diag.size

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        out = self.diag * v
        out[:-1] += self.off * v[1:]
        out[1:] += self.off * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        n = self.size
        mat = np.diag(self.diag.astype(complex))
        idx = np.arange(n - 1)
        mat[idx, idx + 1] = self.off
        mat[idx + 1, idx] = self.off
        return mat

    def norm(self) -> float:
        """Infinity norm (largest absolute row sum)."""
        rows = np.abs(self.diag) + 2.0 * abs(self.off)
        rows[[0, -1]] -= abs(self.off)
        return float(np.max(rows))

    def trace(self) -> complex:
        return complex(np.sum(self.diag))


def discretize(potential: Callable[[np.ndarray], np.ndarray], grid: Grid) -> TridiagonalOperator:
    h = grid.h
    v = np.asarray(potential(grid.nodes), dtype=complex)
    return TridiagonalOperator(diag=2.0 / h**2 + v, off=-1.0 / h**2, h=h)


def eigenvalues_all(op: TridiagonalOperator) -> np.ndarray:
    """All eigenvalues of a general complex matrix (LAPACK ``zgeev``).

    ``zgeev`` balances, reduces to Hessenberg form and runs shifted QR with
    deflation; no symmetry of the input is used.

    Raises:
        ConvergenceError: QR failed; carries the deflation index.
    """
    if op.size > MAX_DENSE_N:
        raise ValueError(f"dense eigensolve capped at N={MAX_DENSE_N}, got {op.size}")
    w, _, _, info = lapack.zgeev(op.to_dense(), compute_vl=0, compute_vr=0, overwrite_a=1)
    if info > 0:
        raise ConvergenceError(int(info), op.size)
    if info < 0:
        raise ValueError(f"zgeev rejected argument {-info}")
    return np.asarray(w)


def _default_im_tol(e: complex) -> float:
    return 1e-6 * max(1.0, abs(e.real))


def bound_spectrum(eigs: Sequence[complex], re_max: float = 0.0, im_tol: float | None = None) -> list:
    """Eigenvalues with ``Re E < re_max``, ascending by real part.

    Entries whose imaginary part is within ``im_tol`` are returned as floats;
    the default tolerance is ``1e-6 * max(1, |Re E|)``.
    """
    out = []
    for e in sorted((complex(v) for v in eigs if complex(v).real < re_max), key=lambda c: (c.real, c.imag)):
        tol = _default_im_tol(e) if im_tol is None else im_tol
        out.append(e.real if abs(e.imag) <= tol else e)
    return out


def eigenvector(op: TridiagonalOperator, energy: complex, iterations: int = 4) -> np.ndarray:
    """Eigenvector for an approximate eigenvalue by shifted inverse iteration."""
    n = op.size
    shift = complex(energy) + 1e-10 * max(1.0, abs(energy))
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = op.off
    ab[1, :] = op.diag - shift
    ab[2, :-1] = op.off
    rng = np.random.default_rng(0)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    for _ in range(iterations):
        v = solve_banded((1, 1), ab, v)
        v /= np.linalg.norm(v)
    return v


def residual(op: TridiagonalOperator, psi, energy: complex) -> float:
    """``||H psi - E psi|| / ||psi||`` over interior nodes (end rows excluded)."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != op.diag.shape:
        raise ValueError("psi is not sampled on the operator's grid")
    denom = np.linalg.norm(psi[1:-1])
    if denom == 0.0:
        raise ValueError("psi vanishes on the interior")
    r = op.matvec(psi) - energy * psi
    return float(np.linalg.norm(r[1:-1]) / denom)


@dataclass
class Pairing:
    """Result of matching two eigenvalue lists."""

    matched: list[tuple[int, int, complex, complex, float]] = field(default_factory=list)
    unmatched_a: list[complex] = field(default_factory=list)
    unmatched_b: list[complex] = field(default_factory=list)

    @property
    def gaps(self) -> list[float]:
        return [m[4] for m in self.matched]

    @property
    def max_gap(self) -> float:
        return max(self.gaps, default=0.0)

    @property
    def total(self) -> bool:
        return not self.unmatched_a and not self.unmatched_b


def match_spectra(a: Sequence[complex], b: Sequence[complex], tol: float | None = None) -> Pairing:
    """Greedy pairing: repeatedly take the closest unused ``(a_i, b_j)`` pair.

    Pairs farther apart than ``tol`` are left unmatched.  ``matched`` is
    ordered by index into ``a``.
    """
    candidates = sorted(
        (abs(complex(x) - complex(y)), i, j) for i, x in enumerate(a) for j, y in enumerate(b)
    )
    used_a: set[int] = set()
    used_b: set[int] = set()
    matched = []
    for gap, i, j in candidates:
        if tol is not None and gap > tol:
            break
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        matched.append((i, j, a[i], b[j], float(gap)))
    matched.sort()
    return Pairing(
        matched=matched,
        unmatched_a=[a[i] for i in range(len(a)) if i not in used_a],
        unmatched_b=[b[j] for j in range(len(b)) if j not in used_b],
    )


def conjugate_pair_check(eigs: Sequence[complex], im_tol: float = 1e-6, pair_tol: float = 1e-4) -> bool:
    """True iff every eigenvalue with ``|Im| > im_tol`` has a conjugate partner."""
    vals = np.asarray(eigs, dtype=complex)
    for i, e in enumerate(vals):
        if abs(e.imag) <= im_tol:
            continue
        dist = np.abs(vals - np.conj(e))
        dist[i] = np.inf
        if not np.any(dist <= pair_tol):
            return False
    return True


def central_derivative(samples, h: float) -> np.ndarray:
    """First derivative: central differences inside, one-sided second order at the ends."""
    samples = np.asarray(samples)
    if samples.size < 3:
        raise ValueError("need at least 3 samples")
    return np.gradient(samples, h, edge_order=2)


def second_derivative(samples, h: float) -> np.ndarray:
    """Second derivative, second order everywhere (four-point stencil at the ends)."""
    g = np.asarray(samples)
    if g.size < 4:
        raise ValueError("need at least 4 samples")
    out = np.empty_like(g)
    out[1:-1] = g[2:] - 2.0 * g[1:-1] + g[:-2]
    out[0] = 2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]
    out[-1] = 2.0 * g[-1] - 5.0 * g[-2] + 4.0 * g[-3] - g[-4]
    return out / h**2


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    bound: list
    residuals: list[float]
    pairing: Pairing | None = None


def spectrum_report(
    op: TridiagonalOperator,
    reference: Sequence[complex] | None = None,
    re_max: float = 0.0,
    im_tol: float | None = None,
    match_tol: float | None = None,
) -> SpectrumReport:
    """Solve, filter bound levels, attach eigenpair residuals and an optional pairing."""
    eigs = eigenvalues_all(op)
    bound = bound_spectrum(eigs, re_max=re_max, im_tol=im_tol)
    residuals = [residual(op, eigenvector(op, e), e) for e in bound]
    pairing = None if reference is None else match_spectra(list(reference), bound, tol=match_tol)
    return SpectrumReport(eigenvalues=eigs, bound=bound, residuals=residuals, pairing=pairing)
