"""Reflection-orbit enumeration producing circle packings.

Three orbit modes share one engine: "packing" reflects the base family
across duals, "dual" reflects the dual family across duals, and "super"
reflects both families across both.  Enumeration is breadth first.  The
orbit is infinite, so runs are bounded by a window, a minimum radius and
a maximum height, where the height of a circle is the length of the
shortest reflection word producing it from a seed.

Completeness over the window rests on a locality bound.  Producing a
circle of radius >= rho across a mirror of radius R requires the source
circle to sit within sqrt(R^2 r_src / rho + r_src^2) of the mirror
center, so every ancestor of a circle meeting the window W lives inside
W padded by a per-level step built from that bound.  In the descending
modes each reflection shrinks radii by at least r -> R r / (R + 2 r),
so deeper levels use smaller steps; mirrors and seeds are catalogued
over the total pad and each layer is kept over the pad remaining below
it.  Lines never arise in the descending modes and are dropped in super
mode, where an orbit member through a mirror center inverts to one.

Heights and witness words in "packing" and "dual" modes are recomputed
by peeling: a non-seed circle lies inside exactly one dual, and
reflecting it back out strictly grows its radius until a seed is
reached.  The peeled word length is asserted to match the BFS level.
In "super" mode base mirrors do not shrink radii monotonically, so the
recorded height is the BFS level over the catalogued region, with the
witness word taken from the first discovery.

Square, triangular and hexagonal families run on integer coordinate
lattices (each inversive coordinate is an integer times a fixed scale),
so layers advance through exact int64 matrix actions.  Other exact
configurations walk circle objects in field arithmetic; float runs use
rounded-grid deduplication at 1e-9.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .configs import Configuration, GeneratorCircle, Window, parse_id
from .exact import QuadExt, as_float
from .inversive import (
    InversiveCircle,
    PlanarIsometry,
    apply_isometry,
    inversive_product,
    reflect,
)

GroupWord = List[str]

MODES = ("packing", "dual", "super")

_SEED_KINDS = {"packing": ("base",), "dual": ("dual",), "super": ("base", "dual")}
_MIRROR_KINDS = {"packing": ("dual",), "dual": ("dual",), "super": ("base", "dual")}
_CIRCLE_KIND = {"packing": "base", "dual": "dual", "super": "super"}


# ---------------------------------------------------------------------------
# words


def reduce_word(
    word: Sequence[str], commutes: Optional[Callable[[str, str], bool]] = None
) -> GroupWord:
    """Cancel adjacent equal letters; with a commutation predicate, first
    sort adjacent commuting letters by id so hidden cancellations surface."""
    out = list(word)
    changed = True
    while changed:
        changed = False
        if commutes is not None:
            i = 0
            while i + 1 < len(out):
                a, b = out[i], out[i + 1]
                if a > b and commutes(a, b):
                    out[i], out[i + 1] = b, a
                    changed = True
                    i = max(i - 1, 0)
                else:
                    i += 1
        i = 0
        while i + 1 < len(out):
            if out[i] == out[i + 1]:
                del out[i : i + 2]
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
    return out


def commuting_letters(cfg: Configuration) -> Callable[[str, str], bool]:
    """Predicate telling whether two generator reflections commute, which
    for circle reflections means the mirrors are orthogonal or equal."""
    cache: Dict[Tuple[str, str], bool] = {}

    def commutes(a: str, b: str) -> bool:
        key = (a, b) if a <= b else (b, a)
        hit = cache.get(key)
        if hit is None:
            if a == b:
                hit = True
            else:
                prod = inversive_product(
                    cfg.circle_from_id(a), cfg.circle_from_id(b)
                )
                hit = _scalar_is_zero(prod)
            cache[key] = hit
        return hit

    return commutes


def apply_word(
    cfg: Configuration, word: Sequence[str], v: InversiveCircle
) -> InversiveCircle:
    """Apply a reflection word to a circle; the leftmost letter acts last.

    Mirrors are taken exact or float to match ``v``, so a float circle can
    be driven through an exact configuration without mixing scalar kinds.
    """
    for letter in reversed(list(word)):
        mirror = cfg.circle_from_id(letter)
        if not v.is_exact and mirror.is_exact:
            mirror = mirror.as_floats()
        v = reflect(mirror, v)
    return v


def normal_form(
    cfg: Configuration, items: Sequence[Union[str, PlanarIsometry]]
) -> Tuple[GroupWord, PlanarIsometry]:
    """Rewrite a mixed product of reflection letters and isometries as a
    reduced reflection word followed by a single isometry.

    Isometries are pushed right through reflections by conjugating each
    mirror: g then sigma_d equals sigma_{g(d)} then g.  Raises ValueError
    when a conjugated mirror is not a configuration circle, i.e. when the
    isometry does not preserve the family.
    """
    word: GroupWord = []
    gamma = PlanarIsometry.identity()
    for item in items:
        if isinstance(item, PlanarIsometry):
            gamma = gamma * item
            continue
        kind, _, _ = parse_id(item)
        moved = apply_isometry(gamma, cfg.circle_from_id(item))
        ident = cfg.contains_circle(moved, kind)
        if ident is None:
            raise ValueError(
                f"isometry does not preserve the {kind} family: "
                f"image of {item} is not a configuration circle"
            )
        word.append(ident)
    return reduce_word(word), gamma


# ---------------------------------------------------------------------------
# packing containers


@dataclass(frozen=True)
class GenerationLimits:
    max_height: int = 3
    min_radius: float = 0.01
    window: Window = Window(-8.0, -8.0, 8.0, 8.0)

    def __post_init__(self) -> None:
        if self.max_height < 0:
            raise ValueError("max_height must be nonnegative")
        if self.min_radius <= 0:
            raise ValueError("min_radius must be positive")


@dataclass
class PackedCircle:
    circle: InversiveCircle
    kind: str
    height: int
    word: Tuple[str, ...]
    source: str


@dataclass
class Packing:
    config: Configuration
    mode: str
    limits: GenerationLimits
    circles: List[PackedCircle]

    def __len__(self) -> int:
        return len(self.circles)

    def __iter__(self):
        return iter(self.circles)

    def find(self, circle: InversiveCircle) -> Optional[PackedCircle]:
        quotient = self.mode != "packing"
        index = getattr(self, "_index", None)
        if index is None:
            index = {_lookup_key(p.circle, quotient): p for p in self.circles}
            self._index = index
        return index.get(_lookup_key(circle, quotient))

    def height_of(self, circle: InversiveCircle) -> int:
        hit = self.find(circle)
        if hit is None:
            raise KeyError(
                "circle is not part of the generated packing "
                f"(center ~ {circle.center() if not circle.is_line else 'line'})"
            )
        return hit.height


# ---------------------------------------------------------------------------
# scalar helpers


def _scalar_is_zero(x) -> bool:
    if isinstance(x, QuadExt):
        return x.sign() == 0
    return abs(float(x)) < 1e-9


def _float_key(c: InversiveCircle) -> Tuple[float, float, float, float]:
    return tuple(round(as_float(x), 9) for x in c.key())


def _lookup_key(c: InversiveCircle, quotient: bool):
    """Dedup key: exact coordinates when available, a rounded grid for
    floats; quotient keys identify the two orientations of a circle."""
    k = c.key() if c.is_exact else _float_key(c)
    if quotient:
        for x in k:
            s = x.sign() if isinstance(x, QuadExt) else (0 if x == 0 else math.copysign(1, x))
            if s < 0:
                return tuple(-v for v in k)
            if s > 0:
                return k
    return k


# ---------------------------------------------------------------------------
# catalogs and margins


def _motif_max_radius(cfg: Configuration, kinds: Sequence[str]) -> float:
    r_max = 0.0
    for kind in kinds:
        motif = cfg.motif_base if kind == "base" else cfg.motif_dual
        for c in motif:
            if not c.is_line:
                r_max = max(r_max, abs(c.radius()))
    return r_max


def _margin_schedule(cfg: Configuration, mode: str, limits: GenerationLimits) -> List[float]:
    """Minkowski pads for the per-level keep windows.

    A circle kept at level k only matters if some descendant meets the
    target window, so level k is searched over the window expanded by
    pads[k].  A source of radius r can place an image of radius >= rho
    across a mirror of radius R only when its disk comes within
    sqrt(R^2 r / rho + r^2) + R + r of the window the image must meet,
    which gives the per-level step.  In the descending modes every
    reflection shrinks the radius to at most R r / (R + 2 r), so the
    steps of deeper levels shrink with it; in super mode radii may grow
    and the fixed motif-scale step only covers chains whose intermediate
    circles stay at motif scale.

    pads[0] is also the catalog pad for seeds and mirrors.  Index H is 0.
    """
    height = limits.max_height
    rho = limits.min_radius
    mirror_r = _motif_max_radius(cfg, _MIRROR_KINDS[mode])
    src = _motif_max_radius(cfg, _SEED_KINDS[mode])
    steps = []
    for _ in range(height):
        steps.append(math.sqrt(mirror_r**2 * src / rho + src**2) + mirror_r + src + 1e-9)
        if mode != "super":
            src = mirror_r * src / (mirror_r + 2.0 * src) * (1.0 + 1e-5)
    pads = [0.0] * (height + 1)
    for k in range(height - 1, -1, -1):
        pads[k] = pads[k + 1] + steps[k]
    return pads


def _catalog(
    cfg: Configuration, kinds: Sequence[str], w: Window, pad: float
) -> List[GeneratorCircle]:
    out: List[GeneratorCircle] = []
    for kind in kinds:
        out.extend(cfg.circles_in_window(kind, w, "meets", expand=pad))
    out.sort(key=lambda g: g.ident)
    return out


# ---------------------------------------------------------------------------
# peeling (exact heights and witness words for the descending modes)


def _keys_close(c1: InversiveCircle, c2: InversiveCircle, tol: float = 1e-6) -> bool:
    return all(
        abs(as_float(a) - as_float(b)) <= tol for a, b in zip(c1.key(), c2.key())
    )


def _seed_id(cfg: Configuration, c: InversiveCircle, kind: str, quotient: bool):
    if c.is_exact:
        ident = cfg.contains_circle(c, kind)
        if ident is None and quotient:
            ident = cfg.contains_circle(c.reversed(), kind)
        return ident
    if c.is_line:
        return None
    (cx, cy), r = c.center(), abs(c.radius())
    local = Window(cx - r - 0.5, cy - r - 0.5, cx + r + 0.5, cy + r + 0.5)
    for g in cfg.circles_in_window(kind, local):
        if _keys_close(c, g.circle):
            return g.ident
        if quotient and _keys_close(c.reversed(), g.circle):
            return g.ident
    return None


class _PeelIndex:
    """Spatial lookup over the cataloged duals and seeds.

    Peeling retraces discovery chains, and every circle on such a chain
    sits inside its discovery mirror, so the containing dual is always in
    the mirror catalog; a float center/radius prefilter narrows the
    candidates before the exact containment test.
    """

    def __init__(self, duals: Sequence[GeneratorCircle], seeds: Sequence[GeneratorCircle]):
        self.duals = [
            g
            for g in duals
            if not g.circle.is_line and as_float(g.circle.curvature) > 0
        ]
        geo = [(g.circle.center(), abs(g.circle.radius())) for g in self.duals]
        self.d_cx = np.array([c[0] for c, _ in geo] or [0.0])
        self.d_cy = np.array([c[1] for c, _ in geo] or [0.0])
        self.d_r = np.array([r for _, r in geo] or [0.0])
        self.seeds = list(seeds)
        self.seed_keys = np.array(
            [[as_float(x) for x in g.circle.key()] for g in self.seeds]
            or np.zeros((0, 4))
        )

    def host(self, c: InversiveCircle) -> Optional[GeneratorCircle]:
        """The unique dual whose disk contains c, or None."""
        if c.is_line or as_float(c.curvature) <= 0:
            return None
        if not self.duals:
            return None
        (cx, cy), r = c.center(), abs(c.radius())
        slack = self.d_r - r + 1e-6
        cand = (slack > 0) & (
            (self.d_cx - cx) ** 2 + (self.d_cy - cy) ** 2 <= slack**2
        )
        hosts: List[GeneratorCircle] = []
        for i in np.nonzero(cand)[0]:
            g = self.duals[i]
            mirror = g.circle if c.is_exact else g.circle.as_floats()
            prod = inversive_product(c, mirror)
            if _ge(prod, 1) and _ge(c.curvature, mirror.curvature):
                if not _keys_close(c, mirror, 1e-9):
                    hosts.append(g)
        if not hosts:
            return None
        if len(hosts) > 1:
            raise ArithmeticError(
                f"circle at ~{c.center()} sits inside {len(hosts)} duals; "
                "the dual family is not disjoint"
            )
        return hosts[0]

    def seed_ident(self, c: InversiveCircle, quotient: bool) -> Optional[str]:
        if c.is_line or not len(self.seed_keys):
            return None
        key = np.array([as_float(x) for x in c.key()])
        hit = np.abs(self.seed_keys - key).max(axis=1) <= 1e-6
        if quotient:
            hit |= np.abs(self.seed_keys + key).max(axis=1) <= 1e-6
        idx = np.nonzero(hit)[0]
        return self.seeds[idx[0]].ident if len(idx) else None


def _ge(x, y) -> bool:
    if isinstance(x, QuadExt):
        return x >= y
    return float(x) >= float(y) - 1e-9


def _peel(
    cfg: Configuration,
    circle: InversiveCircle,
    seed_kind: str,
    quotient: bool,
    index: _PeelIndex,
) -> Tuple[GroupWord, str]:
    word: GroupWord = []
    cur = circle
    for _ in range(96):
        if cur.is_exact:
            ident = _seed_id(cfg, cur, seed_kind, quotient)
        else:
            ident = index.seed_ident(cur, quotient)
        if ident is not None:
            return word, ident
        host = index.host(cur)
        if host is None:
            raise ArithmeticError(
                "peeling reached a circle that is neither a seed nor "
                f"inside any dual (center ~ {cur.center()})"
            )
        word.append(host.ident)
        mirror = host.circle if cur.is_exact else host.circle.as_floats()
        cur = reflect(mirror, cur)
    raise ArithmeticError("peeling did not terminate in 96 steps")


# ---------------------------------------------------------------------------
# lattice-typed integer lanes


def _slot_table(cfg: Configuration) -> Optional[Dict[str, Tuple[QuadExt, ...]]]:
    one = QuadExt(1, 0, 1, cfg.d)
    if cfg.name == "square":
        return {"base": (one,) * 4, "dual": (one,) * 4}
    if cfg.d != 3:
        return None
    s3 = QuadExt.sqrt_d(3)
    if cfg.name == "triangular":
        return {"base": (one, one, one, s3), "dual": (s3, s3, s3, one)}
    if cfg.name == "hexagonal":
        return {"base": (3 * one, one, s3, one), "dual": (s3, s3 / 3, one, s3)}
    return None


def _int_coords(c: InversiveCircle, slots: Tuple[QuadExt, ...]) -> Optional[List[int]]:
    out: List[int] = []
    for x, s in zip(c.key(), slots):
        if not isinstance(x, QuadExt):
            return None
        q = x / s
        if not q.is_integer():
            return None
        out.append(q.as_integer())
    return out


def _reflection_matrix(mirror: InversiveCircle) -> List[List[QuadExt]]:
    """Matrix of v -> v - 2<v,m>m in (co-curvature, curvature, h1, h2)."""
    m = mirror.key()
    qm = (-m[1] / 2, -m[0] / 2, m[2], m[3])
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            val = -2 * (m[i] * qm[j])
            if i == j:
                val = val + 1
            row.append(val)
        rows.append(row)
    return rows


def _typed_int_matrix(
    mirror: InversiveCircle, slots: Tuple[QuadExt, ...]
) -> np.ndarray:
    mat = _reflection_matrix(mirror)
    out = np.zeros((4, 4), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            entry = mat[i][j] * slots[j] / slots[i]
            if not entry.is_integer():
                raise ArithmeticError(
                    "mirror action does not preserve the integer lattice"
                )
            out[i, j] = entry.as_integer()
    return out


# ---------------------------------------------------------------------------
# breadth-first search lanes


@dataclass
class _Found:
    circle: InversiveCircle
    level: int
    word: Optional[GroupWord]  # filled by super mode, peeled otherwise
    source: Optional[str]


def _canonical_sign(rows: np.ndarray) -> np.ndarray:
    s = np.sign(rows[:, 0])
    for j in (1, 2, 3):
        undecided = s == 0
        if not undecided.any():
            break
        s[undecided] = np.sign(rows[undecided, j])
    s[s == 0] = 1
    return s


class _ArrayLane:
    """BFS over numpy rows: int64 rows scaled by per-kind slots, or raw
    float64 rows with grid deduplication."""

    def __init__(
        self,
        cfg: Configuration,
        mode: str,
        limits: GenerationLimits,
        mirrors: List[GeneratorCircle],
        seeds: List[GeneratorCircle],
        slots: Optional[Dict[str, Tuple[QuadExt, ...]]],
        pads: List[float],
        threads: int,
    ) -> None:
        self.cfg = cfg
        self.mode = mode
        self.limits = limits
        self.mirrors = mirrors
        self.slots = slots
        self.pads = pads
        self.threads = max(1, threads)
        self.quotient = mode != "packing"
        self.exact = slots is not None
        self.kinds = list(_SEED_KINDS[mode])
        if slots is not None:
            self.slot_f = {
                k: np.array([float(s) for s in slots[k]]) for k in self.kinds
            }
        else:
            self.slot_f = {k: np.ones(4) for k in self.kinds}
        self.dtype = np.int64 if self.exact else np.float64

        # per kind: rows plus per-row metadata
        self.rows: Dict[str, List[np.ndarray]] = {k: [] for k in self.kinds}
        self.level: Dict[str, List[int]] = {k: [] for k in self.kinds}
        self.parent: Dict[str, List[Tuple[str, int]]] = {k: [] for k in self.kinds}
        self.via: Dict[str, List[Optional[str]]] = {k: [] for k in self.kinds}
        self.seed_of: Dict[str, List[Optional[str]]] = {k: [] for k in self.kinds}
        self.seen: Dict[bytes, None] = {}

        self.mirror_vec = {
            g.ident: np.array([as_float(x) for x in g.circle.key()])
            for g in mirrors
        }
        self.mirror_geo: Dict[str, Tuple[float, float, float]] = {}
        for g in mirrors:
            if not g.circle.is_line:
                (cx, cy) = g.circle.center()
                self.mirror_geo[g.ident] = (cx, cy, abs(g.circle.radius()))
        self.mirror_mats: Dict[Tuple[str, str], np.ndarray] = {}

        seed_rows: Dict[str, List[np.ndarray]] = {k: [] for k in self.kinds}
        seed_ids: Dict[str, List[str]] = {k: [] for k in self.kinds}
        for g in seeds:
            if not g.circle.is_line and abs(g.circle.radius()) < limits.min_radius:
                continue
            row = self._row_of(g.circle, g.kind)
            if row is None:
                raise ArithmeticError(
                    f"seed {g.ident} does not fit the integer lattice"
                )
            seed_rows[g.kind].append(row)
            seed_ids[g.kind].append(g.ident)
        for k in self.kinds:
            if not seed_rows[k]:
                continue
            arr = np.array(seed_rows[k], dtype=self.dtype)
            self._dedup_append(arr, k, 0, None, None, seed_ids[k])

    # -- plumbing ------------------------------------------------------

    def _row_of(self, c: InversiveCircle, kind: str) -> Optional[np.ndarray]:
        if self.exact:
            coords = _int_coords(c, self.slots[kind])
            if coords is None:
                return None
            return np.array(coords, dtype=np.int64)
        return np.array([as_float(x) for x in c.key()])

    def _keys_of(self, rows: np.ndarray) -> List[bytes]:
        if self.exact:
            canon = rows
        else:
            canon = np.round(rows * 1e9)
        if self.quotient:
            canon = canon * _canonical_sign(canon)[:, None]
        canon = np.ascontiguousarray(canon.astype(np.int64) if not self.exact else canon)
        return [r.tobytes() for r in canon]

    def _dedup_append(
        self,
        rows: np.ndarray,
        kind: str,
        level: int,
        parents: Optional[np.ndarray],
        via: Optional[str],
        seed_ids: Optional[List[str]],
    ) -> int:
        keys = self._keys_of(rows)
        fresh_idx = []
        prefix = kind.encode()
        for i, key in enumerate(keys):
            full = prefix + key
            if full not in self.seen:
                self.seen[full] = None
                fresh_idx.append(i)
        if not fresh_idx:
            return 0
        picked = rows[fresh_idx]
        self.rows[kind].append(picked)
        self.level[kind].extend([level] * len(fresh_idx))
        if parents is None:
            self.parent[kind].extend([("", -1)] * len(fresh_idx))
        else:
            self.parent[kind].extend(
                [(kind, int(parents[i])) for i in fresh_idx]
            )
        self.via[kind].extend([via] * len(fresh_idx))
        if seed_ids is None:
            self.seed_of[kind].extend([None] * len(fresh_idx))
        else:
            self.seed_of[kind].extend([seed_ids[i] for i in fresh_idx])
        return len(fresh_idx)

    def _stacked(self, kind: str) -> np.ndarray:
        if not self.rows[kind]:
            return np.zeros((0, 4), dtype=self.dtype)
        return np.concatenate(self.rows[kind], axis=0)

    def _float_view(self, rows: np.ndarray, kind: str) -> np.ndarray:
        return rows.astype(np.float64) * self.slot_f[kind]

    # -- expansion -----------------------------------------------------

    def _matrix_for(self, ident: str, circle: InversiveCircle, kind: str) -> np.ndarray:
        key = (ident, kind)
        mat = self.mirror_mats.get(key)
        if mat is None:
            if self.exact:
                mat = _typed_int_matrix(circle, self.slots[kind])
            else:
                mat = np.array(
                    [
                        [as_float(x) for x in row]
                        for row in _reflection_matrix(circle)
                    ]
                )
            self.mirror_mats[key] = mat
        return mat

    def run(self) -> None:
        lim = self.limits
        for level in range(1, lim.max_height + 1):
            pad = self.pads[level]
            win = (
                lim.window.x0 - pad,
                lim.window.y0 - pad,
                lim.window.x1 + pad,
                lim.window.y1 + pad,
            )
            tasks = []
            for kind in self.kinds:
                offs = 0
                chunks = []
                for arr, lvl0 in zip(self.rows[kind], self._chunk_levels(kind)):
                    if lvl0 == level - 1:
                        chunks.append((offs, arr))
                    offs += len(arr)
                if not chunks:
                    continue
                prev = np.concatenate([c[1] for c in chunks], axis=0)
                base_index = np.concatenate(
                    [np.arange(o, o + len(a)) for o, a in chunks]
                )
                fv = self._float_view(prev, kind)
                for g in self.mirrors:
                    if self.mode != "super" and not self._mirror_alive(g, win):
                        continue
                    # build matrices here so worker threads only read
                    self._matrix_for(g.ident, g.circle, kind)
                    tasks.append((kind, prev, base_index, fv, g))

            results = self._run_tasks(tasks, win)
            for kind, ident, rows_new, parents in results:
                if len(rows_new):
                    self._dedup_append(rows_new, kind, level, parents, ident, None)

    def _mirror_alive(self, g: GeneratorCircle, win) -> bool:
        # In descending modes the source sits outside the mirror, so the
        # image curve lands inside the closed mirror disk; a mirror whose
        # disk misses the level window cannot contribute a kept row.
        if g.ident not in self.mirror_geo:
            return True
        cx, cy, rad = self.mirror_geo[g.ident]
        rad = rad * (1.0 + 1e-6) + 1e-9
        dx = max(win[0] - cx, 0.0, cx - win[2])
        dy = max(win[1] - cy, 0.0, cy - win[3])
        return dx * dx + dy * dy <= rad * rad

    def _chunk_levels(self, kind: str) -> List[int]:
        # level of the first row of each stored chunk; chunks are
        # level-homogeneous because appends happen once per level
        out = []
        offs = 0
        for arr in self.rows[kind]:
            out.append(self.level[kind][offs])
            offs += len(arr)
        return out

    def _run_tasks(self, tasks, win):
        def work(task):
            kind, prev, base_index, fv, g = task
            return self._expand(kind, prev, base_index, fv, g, win)

        if self.threads == 1 or len(tasks) < 2:
            return [work(t) for t in tasks]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(work, tasks))

    def _expand(self, kind, prev, base_index, fv, g, win):
        mv = self.mirror_vec[g.ident]
        qm = np.array([-mv[1] / 2.0, -mv[0] / 2.0, mv[2], mv[3]])
        p = fv @ qm
        if self.mode == "super":
            mask = np.abs(p) > 1e-7
        else:
            mask = p <= -1.0 + 1e-6
        # Predict the image radius before paying for the matmul.  The image
        # curvature is b - 2 p m_b exactly, so rows whose image would fall
        # under the radius floor are dropped here with a loose tolerance;
        # the exact post-filter below stays authoritative.
        floor = self.limits.min_radius * (1.0 - 1e-6)
        mask &= np.abs(fv[:, 1] - 2.0 * p * mv[1]) * floor <= 1.0
        if not mask.any():
            return (kind, g.ident, np.zeros((0, 4), dtype=self.dtype), None)
        src = prev[mask]
        mat = self._matrix_for(g.ident, g.circle, kind)
        img = src @ mat.T
        ifv = img.astype(np.float64) * self.slot_f[kind]
        b = ifv[:, 1]
        ok = b != 0
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.abs(1.0 / b)
            cx = ifv[:, 2] / b
            cy = ifv[:, 3] / b
        ok &= r >= self.limits.min_radius - 1e-12
        dx = np.maximum(np.maximum(win[0] - cx, 0.0), cx - win[2])
        dy = np.maximum(np.maximum(win[1] - cy, 0.0), cy - win[3])
        ok &= dx * dx + dy * dy <= r * r
        parents = base_index[mask][ok]
        return (kind, g.ident, img[ok], parents)

    # -- output ----------------------------------------------------------

    def materialize(self, idx: int, kind: str, rows: np.ndarray) -> InversiveCircle:
        row = rows[idx]
        if self.exact:
            coords = tuple(
                QuadExt(int(u), 0, 1, self.cfg.d) * s
                for u, s in zip(row, self.slots[kind])
            )
            return InversiveCircle(*coords)
        return InversiveCircle(*(float(x) for x in row))

    def finals(self) -> List[_Found]:
        lim = self.limits
        out: List[_Found] = []
        for kind in self.kinds:
            rows = self._stacked(kind)
            if not len(rows):
                continue
            fv = rows.astype(np.float64) * self.slot_f[kind]
            b = fv[:, 1]
            ok = b != 0
            with np.errstate(divide="ignore", invalid="ignore"):
                r = np.abs(1.0 / b)
                cx = fv[:, 2] / b
                cy = fv[:, 3] / b
            ok &= r >= lim.min_radius - 1e-12
            dx = np.maximum(np.maximum(lim.window.x0 - cx, 0.0), cx - lim.window.x1)
            dy = np.maximum(np.maximum(lim.window.y0 - cy, 0.0), cy - lim.window.y1)
            ok &= dx * dx + dy * dy <= r * r
            for idx in np.nonzero(ok)[0]:
                circle = self.materialize(idx, kind, rows)
                word: Optional[GroupWord] = None
                source = self.seed_of[kind][idx]
                if self.mode == "super":
                    word = []
                    cur: Tuple[str, int] = (kind, int(idx))
                    while True:
                        k, i = cur
                        via = self.via[k][i]
                        if via is None:
                            source = self.seed_of[k][i]
                            break
                        word.append(via)
                        cur = self.parent[k][i]
                out.append(_Found(circle, self.level[kind][idx], word, source))
        return out


class _CircleLane:
    """Sequential BFS over circle objects for configurations without an
    integer lattice typing (finite and cell-refined families)."""

    def __init__(
        self,
        cfg: Configuration,
        mode: str,
        limits: GenerationLimits,
        mirrors: List[GeneratorCircle],
        seeds: List[GeneratorCircle],
        pads: List[float],
    ) -> None:
        self.cfg = cfg
        self.mode = mode
        self.limits = limits
        self.mirrors = mirrors
        self.pads = pads
        self.quotient = mode != "packing"
        self.found: List[_Found] = []
        self.seen: Dict[object, None] = {}
        self.frontier: List[InversiveCircle] = []
        for g in sorted(seeds, key=lambda s: s.ident):
            if not g.circle.is_line and abs(g.circle.radius()) < limits.min_radius:
                continue
            if self._note(g.circle, 0, [], g.ident):
                self.frontier.append(g.circle)

    def _note(self, c, level, word, source) -> bool:
        key = _lookup_key(c, self.quotient)
        if key in self.seen:
            return False
        self.seen[key] = None
        self.found.append(_Found(c, level, list(word), source))
        return True

    def run(self) -> None:
        lim = self.limits
        frontier = list(zip(self.frontier, [f for f in self.found]))
        for level in range(1, lim.max_height + 1):
            pad = self.pads[level]
            nxt = []
            for c, rec in frontier:
                cf = c.as_floats()
                for g in self.mirrors:
                    p = as_float(inversive_product(cf, g.circle.as_floats()))
                    if self.mode == "super":
                        if abs(p) <= 1e-7:
                            continue
                    elif p > -1.0 + 1e-6:
                        continue
                    img = reflect(g.circle, c)
                    if img.is_line:
                        continue
                    r = abs(img.radius())
                    if r < lim.min_radius - 1e-12:
                        continue
                    (cx, cy) = img.center()
                    if not lim.window.meets_disk(cx, cy, r + pad):
                        continue
                    word = [g.ident] + rec.word if self.mode == "super" else []
                    if self._note(img, level, word, rec.source):
                        nxt.append((img, self.found[-1]))
            frontier = nxt

    def finals(self) -> List[_Found]:
        lim = self.limits
        out = []
        for rec in self.found:
            c = rec.circle
            r = abs(c.radius())
            if r < lim.min_radius - 1e-12:
                continue
            (cx, cy) = c.center()
            if lim.window.meets_disk(cx, cy, r):
                out.append(
                    _Found(
                        c,
                        rec.level,
                        rec.word if self.mode == "super" else None,
                        rec.source,
                    )
                )
        return out


# ---------------------------------------------------------------------------
# driver


def generate(
    cfg: Configuration,
    mode: str = "packing",
    limits: Optional[GenerationLimits] = None,
    exact: bool = True,
    threads: int = 1,
) -> Packing:
    """Enumerate the orbit of the seed family over the window.

    Every returned circle meets the window, has radius >= min_radius and
    height <= max_height.  Output order is deterministic: by height, then
    curvature, then center, independent of thread count.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if limits is None:
        limits = GenerationLimits()
    pads = _margin_schedule(cfg, mode, limits)
    mirrors = _catalog(cfg, _MIRROR_KINDS[mode], limits.window, pads[0])
    seeds = _catalog(cfg, _SEED_KINDS[mode], limits.window, pads[0])

    slots = _slot_table(cfg) if exact else None
    use_arrays = not exact or slots is not None
    if use_arrays:
        lane = _ArrayLane(cfg, mode, limits, mirrors, seeds, slots, pads, threads)
        lane.run()
        found = lane.finals()
    else:
        clane = _CircleLane(cfg, mode, limits, mirrors, seeds, pads)
        clane.run()
        found = clane.finals()

    quotient = mode != "packing"
    peel_index = _PeelIndex(
        mirrors if mode != "super" else [], seeds if mode != "super" else []
    )
    circles: List[PackedCircle] = []
    for rec in found:
        circle = rec.circle
        if quotient and not circle.is_line and as_float(circle.curvature) < 0:
            circle = circle.reversed()
        if mode == "super":
            height, word, source = rec.level, rec.word or [], rec.source
        else:
            seed_kind = _SEED_KINDS[mode][0]
            word, source = _peel(cfg, circle, seed_kind, quotient, peel_index)
            height = len(word)
            if height != rec.level:
                raise ArithmeticError(
                    f"BFS level {rec.level} disagrees with peeled height "
                    f"{height} at center ~ {circle.center()}"
                )
        circles.append(
            PackedCircle(
                circle,
                _CIRCLE_KIND[mode],
                height,
                tuple(word),
                source or "",
            )
        )

    circles.sort(key=_output_key)
    return Packing(cfg, mode, limits, circles)


def _output_key(p: PackedCircle):
    c = p.circle
    return (
        p.height,
        as_float(c.curvature),
        as_float(c.h1),
        as_float(c.h2),
        as_float(c.co_curvature),
    )


def height_of(packing: Packing, circle: InversiveCircle) -> int:
    """Height of a circle inside a generated packing."""
    return packing.height_of(circle)
