import math

import numpy as np
import pytest

from circle_energy.chordarc import (CUSP_JUNCTION_X, PairSampler,
                                    PolygonDomain, chordarc_constant,
                                    cusp_domain, internal_chordarc_constant,
                                    load_vertices, regular_polygon,
                                    save_vertices)
from circle_energy.errors import (DomainError, InsufficientDataError,
                                  ValidationError)

SQUARE = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
L_SHAPE = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0],
           [0.0, 2.0]]


# -- polygon basics -------------------------------------------------------------

def test_square_metrics():
    sq = PolygonDomain(SQUARE)
    assert sq.perimeter == pytest.approx(4.0)
    assert len(sq.reflex_vertices) == 0
    assert sq.contains((0.5, 0.5))
    assert not sq.contains((1.5, 0.5))
    assert sq.contains((1.0, 0.5))  # boundary counts as inside


def test_boundary_point_and_arclength_roundtrip():
    sq = PolygonDomain(SQUARE)
    p = sq.boundary_point(2, 0.5)
    assert p.coords == pytest.approx((0.5, 1.0))
    assert p.s == pytest.approx(2.5)
    q = sq.point_at_arclength(2.5)
    assert q.coords == pytest.approx(p.coords)
    wrap = sq.point_at_arclength(4.0 + 2.5)
    assert wrap.coords == pytest.approx(p.coords)
    with pytest.raises(DomainError):
        sq.boundary_point(4, 0.5)
    with pytest.raises(DomainError):
        sq.boundary_point(0, 1.5)


def test_boundary_arc_length_shorter_side():
    sq = PolygonDomain(SQUARE)
    a = sq.boundary_point(0, 0.5)   # (0.5, 0), s = 0.5
    b = sq.point_at_arclength(3.5)  # (0, 0.5)
    assert sq.boundary_arc_length(a, b) == pytest.approx(1.0)


def test_polygon_validation():
    with pytest.raises(DomainError):
        PolygonDomain([[0, 0], [1, 0]])
    with pytest.raises(ValidationError):
        PolygonDomain([[0, 0], [0, 1], [1, 1], [1, 0]])      # clockwise
    with pytest.raises(ValidationError):
        PolygonDomain([[0, 0], [1, 1], [1, 0], [0, 1]])      # self-crossing
    with pytest.raises(ValidationError):
        PolygonDomain([[0, 0], [0, 0], [1, 0], [1, 1]])      # degenerate edge


def test_regular_polygon_perimeter():
    gon = regular_polygon(256, 1.0)
    assert gon.perimeter == pytest.approx(2 * 256 * math.sin(math.pi / 256),
                                          rel=1e-12)
    assert len(gon.reflex_vertices) == 0


# -- geodesics -------------------------------------------------------------------

def test_convex_internal_distance_is_chord():
    sq = PolygonDomain(SQUARE)
    a = sq.boundary_point(0, 0.25)
    b = sq.boundary_point(2, 0.25)
    assert sq.internal_distance(a, b) == pytest.approx(
        math.hypot(*(np.asarray(a.coords) - b.coords)))


def test_l_shape_geodesic_turns_at_reflex_corner():
    # (1.5, 1) to (0.5, 2) must bend at (1, 1): 1/2 + sqrt(5)/2, golden ratio
    dom = PolygonDomain(L_SHAPE)
    assert list(dom.reflex_vertices) == [3]
    p = dom.boundary_point(2, 0.5)
    q = dom.boundary_point(4, 0.5)
    assert dom.internal_distance(p, q) == pytest.approx((1 + math.sqrt(5)) / 2,
                                                        rel=1e-12)
    chord = math.hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
    assert dom.internal_distance(p, q) > chord


def test_internal_distance_triangle_inequality():
    dom = PolygonDomain(L_SHAPE)
    pts = [dom.point_at_arclength(s) for s in (0.5, 2.3, 4.1, 6.0, 7.2)]
    for a in pts:
        for b in pts:
            for c in pts:
                dab = dom.internal_distance(a, b)
                dbc = dom.internal_distance(b, c)
                dac = dom.internal_distance(a, c)
                assert dac <= dab + dbc + 1e-9


def test_internal_distance_between_chord_and_arc():
    dom = PolygonDomain(L_SHAPE)
    a = dom.point_at_arclength(1.0)
    b = dom.point_at_arclength(5.0)
    chord = math.hypot(a.coords[0] - b.coords[0], a.coords[1] - b.coords[1])
    ell = dom.internal_distance(a, b)
    assert chord - 1e-12 <= ell <= dom.boundary_arc_length(a, b) + 1e-12


# -- sampled constants --------------------------------------------------------------

def test_square_constants_near_two():
    # sup ratio 2 at midpoints of opposite edges (arc 2 against chord 1)
    sq = PolygonDomain(SQUARE)
    cc = chordarc_constant(sq)
    assert cc == pytest.approx(2.0, rel=1e-3)
    assert cc <= 2.0
    assert internal_chordarc_constant(sq) == pytest.approx(cc, abs=1e-9)


def test_regular_256gon_constants_near_half_pi():
    gon = regular_polygon(256, 1.0)
    cc = chordarc_constant(gon)
    ic = internal_chordarc_constant(gon)
    assert abs(cc - ic) < 1e-9                      # convex: geodesic = chord
    assert cc == pytest.approx(math.pi / 2, rel=0.02)
    assert cc == pytest.approx(1.5708751806617491, rel=1e-9)  # frozen sample


def test_sampler_determinism():
    gon = regular_polygon(64, 1.0)
    s = PairSampler(seed=3)
    assert chordarc_constant(gon, s) == chordarc_constant(gon, PairSampler(seed=3))


def test_insufficient_pairs_raise():
    sq = PolygonDomain(SQUARE)
    tiny = PairSampler(n_uniform=20, n_antipodal=5)
    with pytest.raises(InsufficientDataError):
        chordarc_constant(sq, tiny)


# -- the inward cusp -----------------------------------------------------------------

def test_cusp_junction_on_unit_circle():
    assert CUSP_JUNCTION_X ** 2 + CUSP_JUNCTION_X ** 4 == pytest.approx(1.0,
                                                                        abs=1e-15)


def test_cusp_domain_shape():
    dom = cusp_domain(64)
    assert dom.vertices.shape == (517, 2)
    assert dom.perimeter == pytest.approx(7.03262315745483, rel=1e-12)
    # the only reflex vertex is the cusp tip at the origin
    assert len(dom.reflex_vertices) == 1
    tip = dom.vertices[dom.reflex_vertices[0]]
    assert tip == pytest.approx((0.0, 0.0), abs=1e-15)


def test_cusp_membership():
    dom = cusp_domain(32)
    assert not dom.contains((0.5, 0.0))     # inside the pinched notch
    assert dom.contains((-0.5, 0.0))
    assert dom.contains((0.5, 0.5))
    assert dom.contains((0.5, -0.5))


def test_cusp_contrast_between_constants():
    # boundary pairs straddling the tip see an enormous arc/chord ratio while
    # geodesics cut across the notch; measured 64.0 against 3.51 at res 64
    dom = cusp_domain(64)
    cc = chordarc_constant(dom)
    ic = internal_chordarc_constant(dom)
    assert cc > 50.0
    assert ic < 10.0
    assert ic == pytest.approx(3.509017108299031, rel=1e-6)


def test_cusp_resolution_guard():
    with pytest.raises(DomainError):
        cusp_domain(8)
    with pytest.raises(DomainError):
        cusp_domain(16.5)


def test_cusp_ratio_grows_with_resolution():
    lo = chordarc_constant(cusp_domain(32))
    hi = chordarc_constant(cusp_domain(128))
    assert hi > lo > 10.0


# -- vertex files -----------------------------------------------------------------------

def test_vertex_file_roundtrip(tmp_path):
    dom = cusp_domain(32)
    path = tmp_path / "verts.txt"
    save_vertices(dom, path)
    again = load_vertices(path)
    np.testing.assert_array_equal(again.vertices, dom.vertices)
    assert again.perimeter == dom.perimeter


def test_vertex_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0.0 0.0\n1.0\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_vertices(path)


def test_vertex_file_skips_comments(tmp_path):
    path = tmp_path / "sq.txt"
    path.write_text("# unit square\n0 0\n1 0\n\n1 1\n0 1\n", encoding="utf-8")
    dom = load_vertices(path)
    assert dom.perimeter == pytest.approx(4.0)
