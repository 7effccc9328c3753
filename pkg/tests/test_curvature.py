import numpy as np
import pytest

from lorcurv import (
    FamilyTag,
    MetricTensor,
    classification_basis,
    canonical_matrix,
    cross,
    curvature_report,
    frame_gram_residual,
    levi_civita,
    make_family_algebra,
    milnor_sectional,
    orthonormal_frame,
    pull_back_metric,
    riemann,
    sectional,
)
from lorcurv.curvature import frame_inner
from lorcurv.metric import J21


def _report(tag, form_id, params):
    basis = classification_basis(tag)
    alg = make_family_algebra(tag, basis)
    h = MetricTensor(canonical_matrix(tag, form_id, params), basis_label=basis)
    return curvature_report(alg, h)


def test_connection_is_metric_compatible():
    """h(nabla_a b, c) + h(b, nabla_a c) = 0 for frame vectors (orthonormal
    frame, constant inner products)."""
    tag = FamilyTag("Gc", 2.0)
    alg = make_family_algebra(tag)
    h = MetricTensor(canonical_matrix(tag, "Gc_gt1.2", {"mu": 1.0, "tau": 0.0}))
    frame = orthonormal_frame(h)
    conn = levi_civita(alg, h, frame)
    e = np.eye(3)
    for a in range(3):
        for b in range(3):
            for c in range(3):
                lhs = frame_inner(conn.nabla(e[a], e[b]), e[c]) \
                    + frame_inner(e[b], conn.nabla(e[a], e[c]))
                assert abs(lhs) < 1e-10


def test_connection_is_torsion_free():
    tag = FamilyTag("Gc", 0.5)
    basis = classification_basis(tag)
    alg = make_family_algebra(tag, basis)
    h = MetricTensor(canonical_matrix(tag, "Gc_lt1.4", {"mu": 2.0}),
                     basis_label=basis)
    frame = orthonormal_frame(h)
    conn = levi_civita(alg, h, frame)
    e = np.eye(3)
    for a in range(3):
        for b in range(3):
            lhs = conn.nabla(e[a], e[b]) - conn.nabla(e[b], e[a]) \
                - conn.bracket(e[a], e[b])
            assert np.max(np.abs(lhs)) < 1e-10


def test_riemann_antisymmetry(rng):
    tag = FamilyTag("Gc", 1.0)
    basis = classification_basis(tag)
    alg = make_family_algebra(tag, basis)
    h = MetricTensor(canonical_matrix(tag, "G1.3", {"mu": 1.0, "nu": 2.0}),
                     basis_label=basis)
    conn = levi_civita(alg, h, orthonormal_frame(h))
    for _ in range(20):
        u, v, w = rng.normal(size=(3, 3))
        assert np.allclose(riemann(conn, u, v, w), -riemann(conn, v, u, w))
        # pair symmetry: h(R_uv w, x) = h(R_wx u, v)
        x = rng.normal(size=3)
        assert frame_inner(riemann(conn, u, v, w), x) == pytest.approx(
            frame_inner(riemann(conn, w, x, u), v), abs=1e-9)


def test_flat_form_zero_report():
    rep = _report(FamilyTag("GI"), "GI.3", {})
    assert np.max(np.abs(rep.ricci_op)) < 1e-9
    assert abs(rep.scalar) < 1e-9
    assert max(abs(k) for k in rep.sectional) < 1e-9


def test_constant_curvature_model():
    """GI form 2 is the round model: R_uv w = k(h(u,w)v - h(v,w)u)."""
    rep = _report(FamilyTag("GI"), "GI.2", {"mu": 2.0})
    k = rep.scalar / 6.0
    e = np.eye(3)
    for i in range(3):
        for j in range(3):
            for m in range(3):
                rv = riemann(rep.connection, e[i], e[j], e[m])
                model = k * (frame_inner(e[i], e[m]) * e[j]
                             - frame_inner(e[j], e[m]) * e[i])
                assert np.max(np.abs(rv - model)) < 1e-10


def test_sectional_rejects_degenerate_plane():
    rep = _report(FamilyTag("GI"), "GI.1", {"mu": 1.0})
    u = np.array([1.0, 0.0, 0.0])
    v = np.array([0.0, 1.0, 1.0])   # null, orthogonal to u
    with pytest.raises(ValueError):
        sectional(rep.connection, u, v)


def test_cross_products():
    e = np.eye(3)
    assert np.allclose(cross(e[0], e[1]), -e[2])
    assert np.allclose(cross(e[1], e[2]), e[0])
    assert np.allclose(cross(e[2], e[0]), e[1])


def test_milnor_identity_random_pairs(rng):
    rep = _report(FamilyTag("Gc", 0.75), "Gc_lt1.10-1",
                  {"nu": 2.0, "tau": 0.5})
    hits = 0
    while hits < 200:
        u, v = rng.normal(size=(3, 3))[:2]
        try:
            direct = sectional(rep.connection, u, v)
            from_ric = milnor_sectional(rep.ric_matrix, rep.scalar, u, v)
        except ValueError:
            continue
        assert abs(direct - from_ric) < 1e-8 * (1 + abs(direct))
        hits += 1


def test_scalar_equals_twice_kappa_sum():
    rep = _report(FamilyTag("Gc", 5.0), "Gc_gt1.2", {"mu": 3.0, "tau": -2.0})
    assert rep.scalar == pytest.approx(2 * sum(rep.sectional), abs=1e-9)


def test_report_covariance(rng):
    """Scalar curvature, principal Ricci values and type are frame/basis
    independent: recompute after an arbitrary change of basis."""
    tag = FamilyTag("Gc", 2.0)
    alg = make_family_algebra(tag)
    h = MetricTensor(canonical_matrix(tag, "Gc_gt1.1", {"mu": 2.0}))
    rep1 = curvature_report(alg, h)
    for _ in range(5):
        S = rng.normal(size=(3, 3)) + 2 * np.eye(3)
        from lorcurv import change_basis
        alg2 = change_basis(alg, S)
        h2 = pull_back_metric(h, S)
        rep2 = curvature_report(alg2, h2)
        assert rep2.scalar == pytest.approx(rep1.scalar, abs=1e-8)
        assert rep2.oneill.type_tag == rep1.oneill.type_tag
        p1 = np.array(rep1.principal_ricci)
        p2 = np.array(rep2.principal_ricci)
        assert np.max(np.abs(p1 - p2)) < 1e-7


def test_report_rejects_bad_frame():
    tag = FamilyTag("GI")
    alg = make_family_algebra(tag)
    h = MetricTensor(np.diag([1.0, 1.0, -1.0]))
    from lorcurv import OrthonormalFrame
    with pytest.raises(ValueError):
        curvature_report(alg, h, frame=OrthonormalFrame(2 * np.eye(3)))


def test_to_dict_serializes():
    import json
    rep = _report(FamilyTag("Gc", 1.0), "G1.6", {"mu": 1.0})
    payload = json.dumps(rep.to_dict())
    assert "{21}" in payload
