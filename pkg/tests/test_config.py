"""Configuration constructors, windows, validation and duality checks."""

from __future__ import annotations

import pytest

from invpack.configs import (
    Window,
    check_duality,
    config_names,
    kleinian_class,
    make_config,
    make_id,
    parse_id,
    tangency_graph,
    validate_base_dual,
)
from invpack.exact import QuadExt
from invpack.inversive import InversiveCircle, PairClass, classify_pair


def key_of(c):
    return tuple(float(x) for x in (c.co_curvature, c.curvature, c.h1, c.h2))


class TestWindow:
    def test_parse(self):
        w = Window.parse("-1,-2,3,4")
        assert (w.x0, w.y0, w.x1, w.y1) == (-1.0, -2.0, 3.0, 4.0)

    def test_parse_rejects_bad_order(self):
        with pytest.raises(ValueError):
            Window.parse("1,0,-1,0")

    def test_meets_and_contains(self):
        w = Window.square(2.0)
        assert w.meets_disk(3.0, 0.0, 1.0)  # touches the edge
        assert not w.meets_disk(3.1, 0.0, 1.0)
        assert w.contains_disk(0.5, 0.5, 1.0)
        assert not w.contains_disk(1.5, 0.0, 1.0)

    def test_shrunk_to_nothing(self):
        assert Window.square(1.0).shrunk(2.0) is None


class TestIds:
    def test_roundtrip(self):
        for ident in ("b0", "d3", "b2@-1,4", "d0@7,-2"):
            kind, idx, shift = parse_id(ident)
            assert make_id(kind, idx, shift) == ident

    def test_bad_prefix(self):
        with pytest.raises(ValueError):
            parse_id("x1")


class TestSquareConfig:
    def setup_method(self):
        self.cfg = make_config("square")

    def test_motif_and_lattice(self):
        assert self.cfg.d == 1
        assert len(self.cfg.motif_base) == 1
        assert len(self.cfg.motif_dual) == 1
        assert self.cfg.motif_base[0].key() == (
            QuadExt(-1), QuadExt(1), QuadExt(0), QuadExt(0))
        assert self.cfg.motif_dual[0].key() == (
            QuadExt(1), QuadExt(1), QuadExt(1), QuadExt(1))

    def test_window_enumeration_counts(self):
        w = Window.square(4.0)
        bases = self.cfg.circles_in_window("base", w)
        duals = self.cfg.circles_in_window("dual", w)
        # base centers on (2i,2j) inside [-4,4]^2; unit disks at |x|=6 miss it
        assert len(bases) == 25
        # dual centers on odd pairs up to (5,5); the four far corners miss
        assert len(duals) == 32
        inside = self.cfg.circles_in_window("base", w, predicate="inside")
        assert len(inside) == 9

    def test_known_members(self):
        b = self.cfg.circle_from_id("b0@1,0")
        assert key_of(b) == (3.0, 1.0, 2.0, 0.0)
        d = self.cfg.circle_from_id("d0@0,0")
        assert key_of(d) == (1.0, 1.0, 1.0, 1.0)

    def test_contains_circle_lookup(self):
        c = self.cfg.circle_from_id("b0@-2,3")
        assert self.cfg.contains_circle(c, "base") == "b0@-2,3"
        assert self.cfg.contains_circle(c, "dual") is None
        # reversed orientation is a different oriented circle
        assert self.cfg.contains_circle(c.reversed(), "base") is None

    def test_validation_passes(self):
        rep = validate_base_dual(self.cfg, Window.square(6.0))
        assert rep.ok, rep.lines()

    def test_duality_passes(self):
        rep = check_duality(self.cfg, Window.square(6.0))
        assert rep.ok, rep.lines()

    def test_kleinian(self):
        assert kleinian_class(self.cfg) == "doubly-periodic"


class TestTriangularConfig:
    def setup_method(self):
        self.cfg = make_config("triangular")

    def test_dual_motif_values(self):
        d = self.cfg.motif_dual[0]
        s3 = QuadExt.sqrt_d(3)
        assert d.curvature == s3
        assert d.co_curvature == s3
        assert d.h1 == s3
        assert d.h2 == QuadExt(1, 0, 1, 3)

    def test_ring_counts(self):
        # each base is ringed by 6 duals, each dual by 3 bases
        w = Window.square(5.0)
        bases = self.cfg.circles_in_window("base", w)
        duals = self.cfg.circles_in_window("dual", w)
        center_base = next(g for g in bases if g.ident == "b0@0,0")
        ring = [
            g for g in duals
            if classify_pair(center_base.circle, g.circle) is PairClass.ORTHOGONAL
        ]
        assert len(ring) == 6
        center_dual = next(g for g in duals if g.ident == "d0@0,0")
        ring = [
            g for g in bases
            if classify_pair(center_dual.circle, g.circle) is PairClass.ORTHOGONAL
        ]
        assert len(ring) == 3

    def test_validation_passes(self):
        rep = validate_base_dual(self.cfg, Window.square(6.0))
        assert rep.ok, rep.lines()

    def test_duality_passes(self):
        rep = check_duality(self.cfg, Window.square(6.0))
        assert rep.ok, rep.lines()


class TestHexagonalConfig:
    def setup_method(self):
        self.cfg = make_config("hexagonal")

    def test_swapped_scaled_roles(self):
        d = self.cfg.motif_dual[0]
        s3 = QuadExt.sqrt_d(3)
        assert d.curvature == QuadExt(0, 1, 3, 3)  # radius sqrt(3)
        assert d.co_curvature == -s3
        b = self.cfg.motif_base[0]
        assert b.curvature == QuadExt(1, 0, 1, 3)
        assert b.h1 == s3

    def test_ring_counts(self):
        w = Window.square(6.0)
        bases = self.cfg.circles_in_window("base", w)
        duals = self.cfg.circles_in_window("dual", w)
        center_dual = next(g for g in duals if g.ident == "d0@0,0")
        ring = [
            g for g in bases
            if classify_pair(center_dual.circle, g.circle) is PairClass.ORTHOGONAL
        ]
        assert len(ring) == 6
        some_base = next(g for g in bases if g.ident == "b0@0,0")
        ring = [
            g for g in duals
            if classify_pair(some_base.circle, g.circle) is PairClass.ORTHOGONAL
        ]
        assert len(ring) == 3

    def test_validation_passes(self):
        rep = validate_base_dual(self.cfg, Window.square(8.0))
        assert rep.ok, rep.lines()


class TestApollonianConfig:
    def setup_method(self):
        self.cfg = make_config("apollonian")

    def test_counts_and_orientation(self):
        assert len(self.cfg.motif_base) == 4
        assert len(self.cfg.motif_dual) == 4
        enclosing = self.cfg.motif_base[3]
        assert float(enclosing.curvature) < 0
        # exact curvature 2*sqrt(3)-4
        assert enclosing.curvature == QuadExt(-4, 2, 1, 3)

    def test_enclosing_tangencies(self):
        enclosing = self.cfg.motif_base[3]
        for small in self.cfg.motif_base[:3]:
            assert (
                classify_pair(enclosing, small)
                is PairClass.EXTERNALLY_TANGENT
            )
        for outer in self.cfg.motif_dual[1:]:
            assert classify_pair(enclosing, outer) is PairClass.ORTHOGONAL

    def test_validation_passes(self):
        rep = validate_base_dual(self.cfg, Window.square(6.0))
        assert rep.ok, rep.lines()

    def test_duality_window_covers_duals(self):
        rep = check_duality(self.cfg, Window.square(7.0))
        assert rep.ok, rep.lines()
        hosted = [c for c in rep.checks if "dual graph" in c.name]
        assert hosted and hosted[0].detail.startswith("3 faces")

    def test_kleinian(self):
        assert kleinian_class(self.cfg) == "finite"


class TestTangencyGraph:
    def test_square_grid_graph(self):
        cfg = make_config("square")
        w = Window.square(3.0)
        g = tangency_graph(cfg.circles_in_window("base", w), w)
        assert len(g.vertices) == 9
        assert len(g.edges) == 12
        assert len(g.faces) == 4
        assert all(len(f) == 4 for f in g.faces)

    def test_face_boundaries_ring_a_dual(self):
        cfg = make_config("square")
        w = Window.square(3.0)
        g = tangency_graph(cfg.circles_in_window("base", w), w)
        from invpack.inversive import inversive_product

        duals = cfg.circles_in_window("dual", w)
        for face in g.faces:
            hosts = [
                d for d in duals
                if all(
                    inversive_product(d.circle, g.vertices[i].circle) == 0
                    for i in face
                )
            ]
            assert len(hosts) == 1


class TestMakeConfig:
    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown configuration"):
            make_config("dodecahedral")

    def test_names_listing(self):
        names = config_names()
        assert "square" in names and "wallpaper:pgg" in names
        assert len([n for n in names if n.startswith("wallpaper:")]) == 17

    def test_corrupted_config_detected(self):
        cfg = make_config("square")
        # shift the dual off-center: orthogonality with corner bases breaks
        from invpack.inversive import from_center_radius

        cfg2 = type(cfg)(
            "broken",
            1,
            cfg.motif_base,
            [from_center_radius((QuadExt(1), QuadExt(1)), QuadExt(1, 0, 2))],
            cfg.lattice,
        )
        rep = validate_base_dual(cfg2, Window.square(4.0))
        assert not rep.ok
        failed = [c for c in rep.checks if c.passed is False]
        assert failed and all(
            c.witnesses or "no circles" in c.detail for c in failed
        )
