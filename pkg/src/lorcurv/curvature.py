"""Curvature of a left-invariant Lorentzian metric, computed in an
orthonormal frame of the Lie algebra.

Everything is algebraic: the Levi-Civita connection of a left-invariant
metric is determined by the Koszul formula on frame brackets, so the
whole curvature package reduces to finite-dimensional linear algebra.

Sign convention for the curvature operator:

    R_{u,v} = nabla_{[u,v]} - [nabla_u, nabla_v]

so for the round model of curvature k one has
R_{u,v} w = k (h(u,w) v - h(v,w) u) and ric = 2k h.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import LieAlgebra3, change_basis
from .metric import J21, MetricTensor, OrthonormalFrame, frame_gram_residual, \
    orthonormal_frame
from .oneill import ONeillClassification, classify_self_adjoint
from .tolerance import DEFAULT_TOL, ToleranceConfig

_SIGNS = np.array([1.0, 1.0, -1.0])


@dataclass(frozen=True)
class Connection:
    """Levi-Civita connection in frame coordinates.

    gamma[i, j, k] is the k-th component of nabla_{y_i} y_j; brackets holds
    the structure constants of the frame vectors, so that covariant
    derivatives and curvature never need to leave frame coordinates.
    """

    gamma: np.ndarray      # (3, 3, 3)
    brackets: np.ndarray   # (3, 3, 3), frame structure constants

    def nabla(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(u, float),
                         np.asarray(v, float), self.gamma)

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(u, float),
                         np.asarray(v, float), self.brackets)


def levi_civita(alg: LieAlgebra3, h: MetricTensor,
                frame: OrthonormalFrame) -> Connection:
    """Koszul formula specialised to an orthonormal frame.

    2 h(nabla_a b, y_k) = h([a,b], y_k) + h([y_k, a], b) + h([y_k, b], a)
    and h(x, y_k) = sign_k x_k in frame coordinates.
    """
    frame_alg = change_basis(alg, frame.columns)
    c = frame_alg.structure_constants
    gamma = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                gamma[i, j, k] = 0.5 * _SIGNS[k] * (
                    _SIGNS[k] * c[i, j, k]
                    + _SIGNS[j] * c[k, i, j]
                    + _SIGNS[i] * c[k, j, i])
    return Connection(gamma, c)


def riemann(conn: Connection, u: np.ndarray, v: np.ndarray,
            w: np.ndarray) -> np.ndarray:
    """R_{u,v} w = nabla_{[u,v]} w - nabla_u nabla_v w + nabla_v nabla_u w."""
    return (conn.nabla(conn.bracket(u, v), w)
            - conn.nabla(u, conn.nabla(v, w))
            + conn.nabla(v, conn.nabla(u, w)))


def ricci_tensor(conn: Connection) -> np.ndarray:
    """Matrix of ric(u, v) = sum_a sign_a h(R_{u, y_a} v, y_a) in the frame.

    With frame coordinates the trace collapses to summing the a-th
    component of R_{y_i, y_a} y_j.
    """
    e = np.eye(3)
    ric = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            ric[i, j] = sum(riemann(conn, e[i], e[a], e[j])[a] for a in range(3))
    return 0.5 * (ric + ric.T)


def ricci_operator(ric: np.ndarray) -> np.ndarray:
    """Raise an index with J: Ric = J [ric] (J-self-adjoint)."""
    return J21 @ np.asarray(ric, dtype=float)


def scalar_curvature(ricci_op: np.ndarray) -> float:
    return float(np.trace(ricci_op))


def frame_inner(u: np.ndarray, v: np.ndarray) -> float:
    return float(np.asarray(u, float) @ J21 @ np.asarray(v, float))


def sectional(conn: Connection, u: np.ndarray, v: np.ndarray,
              tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """kappa(u, v) = h(R_{u,v} u, v) / (h(u,u) h(v,v) - h(u,v)^2).

    Raises ValueError on a degenerate (lightlike) plane, where the
    denominator vanishes and the curvature of the plane is undefined.
    """
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    den = frame_inner(u, u) * frame_inner(v, v) - frame_inner(u, v) ** 2
    scale = float((u @ u) * (v @ v))
    if abs(den) <= tol.abs_tol * (1.0 + scale):
        raise ValueError("sectional curvature undefined on a degenerate plane")
    return frame_inner(riemann(conn, u, v, u), v) / den


def cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Lorentzian cross product in an orthonormal frame:
    y1 x y2 = -y3, y2 x y3 = y1, y3 x y1 = y2."""
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    return np.array([u[1] * v[2] - u[2] * v[1],
                     u[2] * v[0] - u[0] * v[2],
                     -(u[0] * v[1] - u[1] * v[0])])


def milnor_sectional(ric: np.ndarray, rho: float, u: np.ndarray,
                     v: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Sectional curvature from Ricci data alone:

    h(u,u) h(v,v) kappa(u,v) = ric(u x v, u x v) - ||u x v||^2 rho / 2

    valid for h-orthonormal u, v; here u, v are only required to span a
    non-degenerate plane and are orthonormalised internally.
    """
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    nu = frame_inner(u, u)
    if abs(nu) <= tol.abs_tol * (1.0 + float(u @ u)):
        raise ValueError("u must be non-null")
    u1 = u / np.sqrt(abs(nu))
    v1 = v - np.sign(nu) * frame_inner(u1, v) * u1
    nv = frame_inner(v1, v1)
    if abs(nv) <= tol.abs_tol * (1.0 + float(v1 @ v1)):
        raise ValueError("plane is degenerate")
    v1 = v1 / np.sqrt(abs(nv))
    w = cross(u1, v1)
    nw = frame_inner(w, w)
    ric_ww = float(w @ np.asarray(ric, float) @ w)
    return (ric_ww - nw * rho / 2.0) / (np.sign(nu) * np.sign(nv))


@dataclass(frozen=True)
class CurvatureReport:
    """All curvature data of (algebra, metric) in one orthonormal frame."""

    frame: OrthonormalFrame
    connection: Connection
    ric_matrix: np.ndarray                      # symmetric, frame coords
    ricci_op: np.ndarray                        # J * ric
    scalar: float
    sectional: tuple[float, float, float]       # kappa(y1,y2), (y2,y3), (y3,y1)
    principal_ricci: tuple[complex, complex, complex]
    oneill: ONeillClassification

    def to_dict(self) -> dict:
        return {
            "frame": self.frame.columns.tolist(),
            "ric": self.ric_matrix.tolist(),
            "ricci_operator": self.ricci_op.tolist(),
            "scalar": self.scalar,
            "sectional": {"k12": self.sectional[0], "k23": self.sectional[1],
                          "k31": self.sectional[2]},
            "principal_ricci": [{"re": z.real, "im": z.imag}
                                for z in self.principal_ricci],
            "oneill": {
                "type": self.oneill.type_tag.value,
                "normal_form": self.oneill.normal_form.tolist(),
                "transition": self.oneill.transition.tolist(),
                "discriminant": self.oneill.discriminant,
                "boundary_warning": bool(self.oneill.boundary_warning),
            },
        }


def curvature_report(alg: LieAlgebra3, h: MetricTensor,
                     frame: OrthonormalFrame | None = None,
                     tol: ToleranceConfig = DEFAULT_TOL) -> CurvatureReport:
    """Compute the full curvature report of a left-invariant metric."""
    if frame is None:
        frame = orthonormal_frame(h, tol)
    res = frame_gram_residual(frame, h)
    scale = 1.0 + float(np.max(np.abs(h.entries)))
    if res > tol.classification_tol * scale:
        raise ValueError(f"frame is not h-orthonormal (residual {res:g})")
    conn = levi_civita(alg, h, frame)
    ric = ricci_tensor(conn)
    op = ricci_operator(ric)
    rho = scalar_curvature(op)
    e = np.eye(3)
    kappas = (sectional(conn, e[0], e[1], tol),
              sectional(conn, e[1], e[2], tol),
              sectional(conn, e[2], e[0], tol))
    eigs = np.linalg.eigvals(op)
    principal = tuple(sorted((complex(z) for z in eigs),
                             key=lambda z: (round(z.real, 12), z.imag)))
    cls = classify_self_adjoint(op, tol)
    return CurvatureReport(frame, conn, ric, op, rho, kappas, principal, cls)
