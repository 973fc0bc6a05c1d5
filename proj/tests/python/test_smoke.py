import math

import pytest

import jensentk as jtk


def test_shapes_and_measures():
    cube = jtk.zoo("cube:3")
    assert cube.kind == "parallelotope"
    assert cube.dim == 3
    assert jtk.volume(cube) == pytest.approx(8.0, abs=1e-12)
    assert jtk.surface(cube) == pytest.approx(24.0, abs=1e-12)

    ball = jtk.ball(2, [0.5, -0.5], 2.0)
    assert jtk.volume(ball) == pytest.approx(4.0 * math.pi, rel=1e-12)
    assert jtk.body_centroid(ball) == pytest.approx([0.5, -0.5], abs=1e-12)


def test_triangle_counterexample():
    T = jtk.zoo("triangle-T")
    gap = jtk.jensen_gap(T, jtk.coordproj(1, 1))
    assert gap["verdict"] == "violated"
    assert gap["bodyMean"]["value"] == pytest.approx(1.0 / 3, abs=1e-12)
    assert gap["boundaryMean"]["value"] == pytest.approx(1 - math.sqrt(2) / 2, abs=1e-12)
    assert gap["gap"] == pytest.approx(2.0 / 3 - math.sqrt(2) / 2, abs=1e-10)

    direction, violation = jtk.affine_worst_case(T)
    assert violation == pytest.approx(math.sqrt(2) / 2 - 2.0 / 3, abs=1e-10)
    assert direction == pytest.approx([1.0, 0.0], abs=1e-9)


def test_verdict_report_roundtrip():
    sq = jtk.parallelotope([0.0, 0.0], [[1.0, 0.0], [0.0, 1.0]])
    suite = jtk.standard_suite(2, jtk.body_centroid(sq), seed=5)
    assert len(suite) == 4 * 2 + 24

    report = jtk.jensen_verdict(sq, suite)
    assert not report["counterexampleFound"]
    assert report["conclusion"] == "consistent with Jensen-type"
    assert len(report["suite"]) == len(suite)
    assert report["insphere"]["tangentToAll"]
    assert report["centroidGap"] < 1e-8

    csv = jtk.report_csv(sq, suite)
    assert csv.count("\n") == len(suite) + 1
    assert "holds" in csv


def test_means_and_bounds():
    sq = jtk.zoo("cube:2")
    f = jtk.quadform([[1.0, 0.0], [0.0, 1.0]], [0.0, 0.0])
    body = jtk.mean_over_body(sq, f)
    bnd = jtk.mean_over_boundary(sq, f)
    assert body["value"] == pytest.approx(2.0 / 3, abs=1e-12)
    assert bnd["value"] == pytest.approx(4.0 / 3, abs=1e-12)
    assert body["method"] == "exact"

    ib = jtk.insphere_bound(sq, f)
    assert ib["rhsTheorem"] == pytest.approx(8.0 / 9, abs=1e-12)
    assert ib["holdsTheorem"] and ib["holdsCorollary"]

    g = jtk.cone(base_vertices=[[-1.0, 0.0], [1.0, 0.0]], apex=[0.0, 1.0])
    cb = jtk.cone_bound(g, jtk.quadform([[1.0, 0.0], [0.0, 0.0]], [0.0, 0.0]))
    assert cb["lhs"]["value"] == pytest.approx(1.0 / 6, abs=1e-12)
    assert cb["rhs"] == pytest.approx(2.0 / 9, abs=1e-12)
    assert cb["holds"]


def test_search_and_json():
    T = jtk.zoo("triangle-T")
    result = jtk.maxaffine_search(T, pieces=1, restarts=4, budget=3000, seed=11)
    assert result["certificate"]["verdict"] == "violated"
    assert result["bestViolation"] >= 0.95 * 0.040440

    text = jtk.shape_to_json(T)
    back = jtk.shape_from_json(text)
    assert jtk.volume(back) == pytest.approx(jtk.volume(T), rel=1e-12)

    fns = jtk.functions_from_json('[{"kind":"pnorm","p":2.0,"center":[0.0,0.0]}]')
    assert len(fns) == 1
    assert fns[0]([3.0, 4.0]) == pytest.approx(5.0, abs=1e-12)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        jtk.zoo("no-such-shape")
    with pytest.raises(RuntimeError):
        jtk.maxaffine_search(jtk.zoo("triangle-T"), pieces=0)
    with pytest.raises(RuntimeError):
        jtk.chebyshev_center(jtk.ball(2, [0.0, 0.0], 1.0))
