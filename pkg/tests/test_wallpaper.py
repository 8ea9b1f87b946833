"""Cell-refined configurations for the seventeen plane symmetry groups."""

from __future__ import annotations

import pytest

from invpack.configs import Window, make_config, validate_base_dual, check_duality
from invpack.exact import QuadExt
from invpack.inversive import from_center_radius, inversive_product
from invpack.wallpaper import (
    SQ_MID_R,
    SQ_TINY_OFF,
    SQ_TINY_R,
    TRI_MID_R,
    TRI_TINY_OFF,
    TRI_TINY_R,
    make_wallpaper,
    radical_circle,
)

SQUARE_GROUPS = ("p1", "p2", "pm", "pg", "cm", "pmm", "pmg", "pgg",
                 "cmm", "p4", "p4g", "p4m")
TRIANGULAR_GROUPS = ("p3", "p3m1", "p31m", "p6", "p6m")

# motif sizes are determined by the refinement tables and the cell period
MOTIF_SIZES = {
    "p1": (6, 12), "p2": (14, 28), "pm": (12, 18), "pg": (10, 18),
    "cm": (10, 18), "pmm": (24, 36), "pmg": (24, 36), "pgg": (24, 36),
    "cmm": (16, 28), "p4": (12, 24), "p4g": (24, 48), "p4m": (1, 1),
    "p3": (18, 36), "p3m1": (2, 4), "p31m": (21, 42), "p6": (15, 30),
    "p6m": (1, 2),
}


def q2(a, b=0, q=1):
    return QuadExt(a, b, q, 2)


def q3(a, b=0, q=1):
    return QuadExt(a, b, q, 3)


class TestGapFillers:
    def test_square_tangency_identities(self):
        # middle touches the tiny exactly at the declared offset
        assert SQ_TINY_OFF == SQ_MID_R + SQ_TINY_R
        # tiny touches the two bases flanking its side; the side midpoint
        # sits one unit from the cell center
        dist_sq = q2(1) + (q2(1) - SQ_TINY_OFF) ** 2
        assert dist_sq == (q2(1) + SQ_TINY_R) ** 2

    def test_triangular_tangency_identities(self):
        assert TRI_TINY_OFF == TRI_MID_R + TRI_TINY_R
        # tiny sits against the two bases at the ends of its side; the
        # vertices are at circumradius 2/sqrt(3) from the centroid, so
        # |tiny - vertex|^2 = off^2 - (2/sqrt(3))*off + 4/3
        off = TRI_TINY_OFF
        dist_sq = off ** 2 - q3(0, 2, 3) * off + q3(4, 0, 3)
        assert dist_sq == (q3(1) + TRI_TINY_R) ** 2


class TestRadicalCircle:
    def test_side_dual_of_refined_cell(self):
        one = q2(1)
        base_a = from_center_radius((q2(0), q2(0)), one)
        base_b = from_center_radius((q2(2), q2(0)), one)
        tiny = from_center_radius((q2(1), q2(9, -4, 7)), SQ_TINY_R)
        rad = radical_circle((base_a, base_b, tiny))
        assert rad.exact_center() == (q2(1), q2(3, -1, 7))
        assert rad.exact_radius() == q2(3, -1, 7)
        for c in (base_a, base_b, tiny):
            assert inversive_product(rad, c) == 0

    def test_corner_dual_of_refined_cell(self):
        one = q2(1)
        base_a = from_center_radius((q2(0), q2(0)), one)
        tiny = from_center_radius((q2(1), q2(9, -4, 7)), SQ_TINY_R)
        middle = from_center_radius((q2(1), q2(1)), SQ_MID_R)
        rad = radical_circle((base_a, tiny, middle))
        assert rad.exact_center() == (q2(-2, 2), q2(2, -1))
        assert rad.exact_radius() == q2(3, -2)

    def test_rejects_concentric_inputs(self):
        a = from_center_radius((q2(0), q2(0)), q2(1))
        b = from_center_radius((q2(0), q2(0)), q2(2))
        c = from_center_radius((q2(3), q2(0)), q2(1))
        with pytest.raises(ArithmeticError):
            radical_circle((a, b, c))


class TestMotifs:
    @pytest.mark.parametrize("group", SQUARE_GROUPS + TRIANGULAR_GROUPS)
    def test_motif_sizes(self, group):
        cfg = make_wallpaper(group)
        assert (len(cfg.motif_base), len(cfg.motif_dual)) == MOTIF_SIZES[group]
        assert cfg.name == f"wallpaper:{group}"
        assert cfg.lattice is not None

    def test_p1_contains_expected_refined_circles(self):
        cfg = make_config("wallpaper:p1")
        # cell at (1,1) is S-refined: middle, tiny and three side duals
        middle = from_center_radius((q2(1), q2(1)), SQ_MID_R)
        assert cfg.contains_circle(middle, "base") is not None
        tiny = from_center_radius((q2(1), q2(9, -4, 7)), SQ_TINY_R)
        assert cfg.contains_circle(tiny, "base") is not None
        side = from_center_radius((q2(1), q2(3, -1, 7)), q2(3, -1, 7))
        assert cfg.contains_circle(side, "dual") is not None
        corner = from_center_radius((q2(-2, 2), q2(2, -1)), q2(3, -2))
        assert cfg.contains_circle(corner, "dual") is not None
        # cell at (1,3) is W-refined, so its tiny sits left of center
        tiny_w = from_center_radius((q2(9, -4, 7), q2(3)), SQ_TINY_R)
        assert cfg.contains_circle(tiny_w, "base") is not None

    def test_p31m_contains_expected_refined_circles(self):
        cfg = make_config("wallpaper:p31m")
        # up cell at (0,0) is SW-refined
        centroid = (q3(0), q3(0, 2, 3))
        middle = from_center_radius(centroid, TRI_MID_R)
        assert cfg.contains_circle(middle, "base") is not None
        tiny = from_center_radius(
            (q3(-9, 4, 11), q3(12, 13, 33)), TRI_TINY_R)
        assert cfg.contains_circle(tiny, "base") is not None

    def test_unrefined_down_cells_get_centroid_duals(self):
        cfg = make_config("wallpaper:p3m1")
        # p3m1 leaves down cells alone; the one hanging from (1,1) keeps a
        # single centroid dual
        centroid = (q3(1), q3(0, 1, 3))
        dual = from_center_radius(centroid, q3(0, 1, 3))
        assert cfg.contains_circle(dual, "dual") is not None

    def test_p4m_and_p6m_reduce_to_unrefined(self):
        sq = make_config("wallpaper:p4m")
        assert sq.motif_base[0].key() == make_config("square").motif_base[0].key()
        hexa = make_config("wallpaper:p6m")
        tri = make_config("triangular")
        assert hexa.motif_dual[0].key() == tri.motif_dual[0].key()


class TestValidation:
    @pytest.mark.parametrize("group", SQUARE_GROUPS + TRIANGULAR_GROUPS)
    def test_base_dual_validation(self, group):
        cfg = make_wallpaper(group)
        rep = validate_base_dual(cfg, Window.square(3.0))
        assert rep.ok, "\n".join(rep.lines())

    @pytest.mark.parametrize("group", ("pgg", "p4g", "p31m"))
    def test_duality(self, group):
        cfg = make_wallpaper(group)
        rep = check_duality(cfg, Window.square(4.0))
        assert rep.ok, "\n".join(rep.lines())
