"""Lorentzian inner products on a 3-dimensional Lie algebra.

Signature convention is (+, +, -): a valid metric matrix is symmetric with
two positive and one negative eigenvalue (equivalently det < 0 together
with a non-degenerate spectrum).  The standard frame inner product is
J = diag(1, 1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BasisLabel
from .tolerance import DEFAULT_TOL, ToleranceConfig

#: Gram matrix of an orthonormal frame (y1, y2, y3) with y3 timelike.
J21 = np.diag([1.0, 1.0, -1.0])


@dataclass(frozen=True)
class MetricTensor:
    """A symmetric bilinear form given by its matrix in some basis.

    Construction only enforces symmetry and finiteness; signature is
    checked separately by validate_metric so that rejected inputs can be
    reported with diagnostics instead of an exception.
    """

    entries: np.ndarray
    basis_label: BasisLabel = BasisLabel.NATURAL
    tolerance: ToleranceConfig = field(default=DEFAULT_TOL)

    def __post_init__(self) -> None:
        h = np.asarray(self.entries, dtype=float)
        if h.shape != (3, 3):
            raise ValueError("metric matrix must be 3x3")
        if not np.all(np.isfinite(h)):
            raise ValueError("metric matrix must be finite")
        asym = float(np.max(np.abs(h - h.T)))
        scale = 1.0 + float(np.max(np.abs(h)))
        if asym > self.tolerance.abs_tol * scale:
            raise ValueError(f"metric matrix is not symmetric (residual {asym:g})")
        object.__setattr__(self, "entries", 0.5 * (h + h.T))

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.asarray(u, float) @ self.entries @ np.asarray(v, float))


@dataclass(frozen=True)
class SignatureDiagnostics:
    """Outcome of a signature check on a symmetric matrix."""

    accepted: bool
    signature: tuple[int, int, int]        # (n_plus, n_zero, n_minus)
    eigenvalues: tuple[float, float, float]  # ascending
    det: float
    reason: str | None = None


def validate_metric(h: MetricTensor,
                    tol: ToleranceConfig | None = None) -> SignatureDiagnostics:
    """Check that h has Lorentzian signature (+, +, -)."""
    tol = tol or h.tolerance
    eigs = np.linalg.eigvalsh(h.entries)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    n_zero = int(np.sum(np.abs(eigs) <= tol.classification_tol * scale))
    n_plus = int(np.sum(eigs > tol.classification_tol * scale))
    n_minus = 3 - n_zero - n_plus
    det = float(np.linalg.det(h.entries))
    sig = (n_plus, n_zero, n_minus)
    if n_zero > 0:
        reason = "degenerate form (eigenvalue within tolerance of zero)"
        return SignatureDiagnostics(False, sig, tuple(map(float, eigs)), det, reason)
    if sig != (2, 0, 1):
        reason = f"signature {sig} is not Lorentzian (+,+,-)"
        return SignatureDiagnostics(False, sig, tuple(map(float, eigs)), det, reason)
    return SignatureDiagnostics(True, sig, tuple(map(float, eigs)), det, None)


def pull_back_metric(h: MetricTensor, S: np.ndarray,
                     basis_label: BasisLabel = BasisLabel.CUSTOM) -> MetricTensor:
    """Matrix of the same form in the basis with vectors S e_j: S^T [h] S."""
    S = np.asarray(S, dtype=float)
    return MetricTensor(S.T @ h.entries @ S, basis_label=basis_label,
                        tolerance=h.tolerance)


@dataclass(frozen=True)
class OrthonormalFrame:
    """Columns are frame vectors (y1, y2, y3) with Gram matrix J21.

    In particular h(y1,y1) = h(y2,y2) = 1 and h(y3,y3) = -1.
    """

    columns: np.ndarray

    def __post_init__(self) -> None:
        cols = np.asarray(self.columns, dtype=float)
        if cols.shape != (3, 3):
            raise ValueError("frame must be a 3x3 column matrix")
        object.__setattr__(self, "columns", cols)


def frame_gram_residual(frame: OrthonormalFrame, h: MetricTensor) -> float:
    gram = frame.columns.T @ h.entries @ frame.columns
    return float(np.max(np.abs(gram - J21)))


def orthonormal_frame(h: MetricTensor,
                      tol: ToleranceConfig | None = None) -> OrthonormalFrame:
    """Build an orthonormal frame for a valid Lorentzian metric.

    Eigenvectors of [h] are rescaled by 1/sqrt(|lambda|) and ordered so
    the timelike direction comes last.  The frame is not unique (any
    O(2,1) right-multiple works); when [h] is exactly J the identity is
    returned so the canonical frames of diagonal examples stay literal.
    """
    tol = tol or h.tolerance
    diag = validate_metric(h, tol)
    if not diag.accepted:
        raise ValueError(f"cannot build a frame: {diag.reason}")
    if np.array_equal(h.entries, J21):
        return OrthonormalFrame(np.eye(3))
    eigvals, eigvecs = np.linalg.eigh(h.entries)
    order = np.concatenate([np.where(eigvals > 0)[0], np.where(eigvals < 0)[0]])
    cols = eigvecs[:, order] / np.sqrt(np.abs(eigvals[order]))
    # deterministic sign: make the largest-magnitude entry of each column positive
    for k in range(3):
        pivot = int(np.argmax(np.abs(cols[:, k])))
        if cols[pivot, k] < 0:
            cols[:, k] = -cols[:, k]
    frame = OrthonormalFrame(cols)
    res = frame_gram_residual(frame, h)
    scale = 1.0 + float(np.max(np.abs(h.entries)))
    if res > tol.abs_tol * scale * 100:
        raise ArithmeticError(f"frame Gram residual {res:g} too large")
    return frame
