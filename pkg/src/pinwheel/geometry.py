"""Pinwheel proto-tiles, the discovered substitution rule, and patch machinery.

The 5-piece decomposition of the inflated triangle is found by an exact
backtracking search over placements, then filtered by the structural
constraints (type census, angle table, central child).  Nothing about the
subdivision geometry is hard-coded; the search result is validated by
:func:`verify_rule` and can be frozen to JSON for reproducibility.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    ANGLE_ZERO,
    LAMBDA,
    QRoot5,
    V_ZERO,
    Vec2,
    Angle,
    RigidMotion,
    ZERO,
    unit_phase,
    ExactComplex,
)
from .polygon import (
    Polygon,
    Triangle,
    signed_area2,
    subtract_triangle,
    triangle_inside_polygon,
    triangles_overlap,
)


class PinwheelError(Exception):
    pass


class NoMatchingDecomposition(PinwheelError):
    """The exact search produced no candidate satisfying the rule constraints."""


class ResourceGuardError(PinwheelError):
    pass


DEFAULT_MAX_LEVEL = 10


def _max_level() -> int:
    env = os.environ.get("PINWHEEL_MAX_LEVEL")
    return int(env) if env else DEFAULT_MAX_LEVEL


@dataclass(frozen=True)
class ProtoTile:
    """A (1,2,sqrt5) right triangle in standard orientation, puncture at the origin."""

    id: int
    vertices: tuple[Vec2, Vec2, Vec2]
    puncture: Vec2

    def side_lengths_squared(self) -> list[QRoot5]:
        v = self.vertices
        return sorted(
            ((v[1] - v[0]).norm2(), (v[2] - v[1]).norm2(), (v[0] - v[2]).norm2())
        )

    def signed_area2(self) -> QRoot5:
        return signed_area2(list(self.vertices))

    def puncture_edge_distances(self) -> list[QRoot5]:
        """Exact distance from the puncture to each edge line."""
        out = []
        v = self.vertices
        for i in range(3):
            a, b = v[i], v[(i + 1) % 3]
            d = b - a
            ln = _edge_length(d)
            out.append(abs(d.cross(self.puncture - a)) / ln)
        return out


def _edge_length(d: Vec2) -> QRoot5:
    from .exact import qr5_sqrt

    ln = qr5_sqrt(d.norm2())
    if ln is None:
        raise PinwheelError("edge length not representable in Q(sqrt5)")
    return ln


def default_prototiles() -> tuple[ProtoTile, ProtoTile]:
    """The two pinwheel proto-tiles: legs 1 and 2, barycentric puncture at 0.

    p0 is the triangle (0,0),(2,0),(2,1) shifted by its barycenter
    (4/3, 1/3); p1 is its mirror image across the x-axis.
    """
    f = Fraction
    a = Vec2(QRoot5(f(-4, 3)), QRoot5(f(-1, 3)))
    b = Vec2(QRoot5(f(2, 3)), QRoot5(f(-1, 3)))
    c = Vec2(QRoot5(f(2, 3)), QRoot5(f(2, 3)))
    p0 = ProtoTile(0, (a, b, c), V_ZERO)
    p1 = ProtoTile(1, (_mirror(a), _mirror(b), _mirror(c)), V_ZERO)
    return p0, p1


def _mirror(v: Vec2) -> Vec2:
    return Vec2(v.x, -v.y)


PROTOTILES = default_prototiles()


@dataclass(frozen=True)
class Tile:
    """A placed proto-tile: realized shape = pose applied to the proto."""

    proto: int
    pose: RigidMotion

    def vertices(self) -> Triangle:
        p = PROTOTILES[self.proto]
        return tuple(self.pose.apply(v) for v in p.vertices)  # type: ignore[return-value]

    def puncture(self) -> Vec2:
        return self.pose.translation


@dataclass(frozen=True)
class Placement:
    """One child of the substitution rule: proto type plus pose inside lambda*p."""

    proto: int
    pose: RigidMotion


@dataclass(frozen=True)
class SubstitutionRule:
    """Per parent proto: the five child placements, indexed by digit 1..5."""

    children: tuple[tuple[Placement, ...], tuple[Placement, ...]]

    def child(self, parent: int, digit: int) -> Placement:
        return self.children[parent][digit - 1]

    def type_matrix(self) -> list[list[int]]:
        """Entry [i][j] counts children of type i inside omega(p_j)."""
        m = [[0, 0], [0, 0]]
        for j in (0, 1):
            for pl in self.children[j]:
                m[pl.proto][j] += 1
        return m

    def to_json(self) -> dict:
        def enc(pl: Placement) -> dict:
            return {
                "proto": pl.proto,
                "angle": pl.pose.angle.to_json(),
                "tx": pl.pose.translation.x.to_json(),
                "ty": pl.pose.translation.y.to_json(),
            }

        return {"p0": [enc(p) for p in self.children[0]],
                "p1": [enc(p) for p in self.children[1]]}

    @classmethod
    def from_json(cls, d: dict) -> "SubstitutionRule":
        def dec(e: dict) -> Placement:
            return Placement(
                int(e["proto"]),
                RigidMotion(
                    Angle.from_json(e["angle"]),
                    Vec2(QRoot5.from_json(e["tx"]), QRoot5.from_json(e["ty"])),
                ),
            )

        return cls((tuple(dec(e) for e in d["p0"]), tuple(dec(e) for e in d["p1"])))


@dataclass
class Patch:
    """The labeled patch omega^N(p_root); tiles keyed by digit strings.

    Labels read coarsest-first: the leading digit names the child of the
    root supertile, the trailing digit the position at the finest scale.
    """

    level: int
    root: int
    tiles: dict[str, Tile]


def inflated_region(proto_id: int, level: int = 1) -> Polygon:
    """The region lambda^level * p covered by omega^level(p)."""
    scale = LAMBDA ** level
    poly = [v.scaled(scale) for v in PROTOTILES[proto_id].vertices]
    if signed_area2(poly).sign() < 0:
        poly.reverse()
    return poly


# ---------------------------------------------------------------------------
# decomposition search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _RawPlacement:
    """Search-internal placement with a raw exact rotation (cos, sin)."""

    proto: int
    c: QRoot5
    s: QRoot5
    tau: Vec2

    def apply(self, p: Vec2) -> Vec2:
        return Vec2(p.x * self.c - p.y * self.s + self.tau.x,
                    p.x * self.s + p.y * self.c + self.tau.y)

    def triangle(self) -> Triangle:
        pr = PROTOTILES[self.proto]
        return tuple(self.apply(v) for v in pr.vertices)  # type: ignore[return-value]


def _turn_less(b1: Vec2, v1: Vec2, b2: Vec2, v2: Vec2) -> bool:
    from .polygon import _angle_less

    return _angle_less(b1, v1, b2, v2)


def _sharpest_corner(piece: Polygon) -> int:
    """Index of the vertex with the smallest interior angle (lex tie-break)."""
    n = len(piece)
    best = 0
    for i in range(1, n):
        b_i = piece[(i + 1) % n] - piece[i]
        w_i = piece[i - 1] - piece[i]
        b_b = piece[(best + 1) % n] - piece[best]
        w_b = piece[best - 1] - piece[best]
        if _turn_less(b_i, w_i, b_b, w_b):
            best = i
        elif not _turn_less(b_b, w_b, b_i, w_i):
            if (str(piece[i].x), str(piece[i].y)) < (str(piece[best].x), str(piece[best].y)):
                best = i
    return best


def _corner_candidates(piece: Polygon, corner: int) -> list[_RawPlacement]:
    """Tiles with a vertex at the corner, flush against the outgoing edge.

    Every tiling of the piece has exactly one tile flush against the
    outgoing boundary edge at the sharpest corner, so enumerating these six
    placements (2 protos x 3 corners) finds each tiling exactly once.
    """
    from .exact import qr5_sqrt

    v = piece[corner]
    d_out = piece[(corner + 1) % len(piece)] - v
    out: list[_RawPlacement] = []
    for proto_id in (0, 1):
        pr = PROTOTILES[proto_id]
        ccw = pr.signed_area2().sign() > 0
        for ci in range(3):
            cur = pr.vertices[ci]
            nxt = pr.vertices[(ci + 1) % 3]
            prv = pr.vertices[(ci - 1) % 3]
            cw_edge = (nxt - cur) if ccw else (prv - cur)
            m2 = cw_edge.norm2() * d_out.norm2()
            r = qr5_sqrt(m2)
            if r is None:
                raise PinwheelError(
                    "candidate rotation leaves Q(sqrt5); search cannot certify it"
                )
            c = cw_edge.dot(d_out) / r
            s = cw_edge.cross(d_out) / r
            rot_cur = Vec2(cur.x * c - cur.y * s, cur.x * s + cur.y * c)
            tau = v - rot_cur
            out.append(_RawPlacement(proto_id, c, s, tau))
    return out


def _search(regions: list[Polygon], remaining: int,
            placed: list[_RawPlacement], found: list[list[_RawPlacement]]) -> None:
    if not regions:
        if remaining == 0:
            found.append(list(placed))
        return
    if remaining == 0:
        return
    piece, rest = regions[0], regions[1:]
    corner = _sharpest_corner(piece)
    for cand in _corner_candidates(piece, corner):
        tri = cand.triangle()
        if not triangle_inside_polygon(tri, piece):
            continue
        pieces = subtract_triangle(piece, tri)
        placed.append(cand)
        _search(pieces + rest, remaining - 1, placed, found)
        placed.pop()


_LATTICE_LOOKUP: dict[ExactComplex, Angle] | None = None


def _lattice_angle(c: QRoot5, s: QRoot5) -> Angle:
    global _LATTICE_LOOKUP
    if _LATTICE_LOOKUP is None:
        _LATTICE_LOOKUP = {}
        for k in range(-8, 9):
            for q in range(4):
                ang = Angle(k, q)
                _LATTICE_LOOKUP[unit_phase(ang)] = ang
    ang = _LATTICE_LOOKUP.get(ExactComplex(c, s))
    if ang is None:
        raise PinwheelError("placement rotation is not on the angle lattice")
    return ang


def find_decompositions(proto: ProtoTile, pieces: int = 5) -> list[list[Placement]]:
    """All exact tilings of lambda*proto by congruent proto-tile copies.

    Backtracking over corner placements; every returned candidate covers
    the inflated triangle with interior-disjoint tiles by construction.
    """
    region = [v.scaled(LAMBDA) for v in proto.vertices]
    if signed_area2(region).sign() < 0:
        region.reverse()
    found: list[list[_RawPlacement]] = []
    _search([region], pieces, [], found)
    out = []
    for cand in found:
        placements = [
            Placement(rp.proto, RigidMotion(_lattice_angle(rp.c, rp.s), rp.tau))
            for rp in cand
        ]
        placements.sort(key=lambda pl: (pl.proto, pl.pose.angle.k, pl.pose.angle.q,
                                        str(pl.pose.translation.x), str(pl.pose.translation.y)))
        out.append(placements)
    return out


# The angle table forced by the geometry: children 3,4 of omega(p0) keep the
# type (angles theta and theta+pi, digit 3 central); children 1,2,5 flip to
# the mirror type (angles theta, theta, theta+pi/2).  The p1 column is the
# mirror conjugate.
ANGLE_TABLE = {
    0: {1: (1, Angle(1, 0)), 2: (1, Angle(1, 0)), 3: (0, Angle(1, 0)),
        4: (0, Angle(1, 2)), 5: (1, Angle(1, 1))},
    1: {1: (0, Angle(-1, 0)), 2: (0, Angle(-1, 0)), 3: (1, Angle(-1, 0)),
        4: (1, Angle(-1, 2)), 5: (0, Angle(-1, 3))},
}


def _edge_overlaps_boundary(tri: Triangle, region: Polygon) -> bool:
    """Some edge of tri lies (partially) along an edge of the region."""
    n = len(region)
    for i in range(3):
        a, b = tri[i], tri[(i + 1) % 3]
        d1 = b - a
        for j in range(n):
            p, q = region[j], region[(j + 1) % n]
            d2 = q - p
            if d1.cross(d2).sign() != 0 or d1.cross(p - a).sign() != 0:
                continue
            n2 = d1.norm2()
            t_p = (p - a).dot(d1)
            t_q = (q - a).dot(d1)
            lo, hi = (t_p, t_q) if t_p < t_q else (t_q, t_p)
            if min(hi, n2) > max(lo, ZERO):
                return True
    return False


def _assign_digits(cand: list[Placement], region: Polygon) -> list[Placement] | None:
    """Digit order 1..5 per the angle table; None if the candidate does not fit.

    Digit 3 is the central type-0 copy at angle theta (no edge on the region
    boundary), 4 the theta+pi copy, 5 the theta+pi/2 mirrored copy, and 1, 2
    the two mirrored theta copies in lexicographic puncture order.
    """
    p0_theta = [p for p in cand if p.proto == 0 and p.pose.angle == Angle(1, 0)]
    p0_pi = [p for p in cand if p.proto == 0 and p.pose.angle == Angle(1, 2)]
    p1_theta = [p for p in cand if p.proto == 1 and p.pose.angle == Angle(1, 0)]
    p1_half = [p for p in cand if p.proto == 1 and p.pose.angle == Angle(1, 1)]
    if not (len(p0_theta) == 1 and len(p0_pi) == 1 and len(p1_theta) == 2 and len(p1_half) == 1):
        return None
    if _edge_overlaps_boundary(Tile(0, p0_theta[0].pose).vertices(), region):
        return None
    ones = sorted(p1_theta, key=lambda p: (p.pose.translation.x, p.pose.translation.y))
    return [ones[0], ones[1], p0_theta[0], p0_pi[0], p1_half[0]]


def _mirror_placement(pl: Placement) -> Placement:
    return Placement(
        1 - pl.proto,
        RigidMotion(-pl.pose.angle, _mirror(pl.pose.translation)),
    )


_RULE_CACHE: SubstitutionRule | None = None


def _packaged_rule_path() -> str:
    return os.path.join(os.path.dirname(__file__), "data", "pinwheel_rule.json")


def pinwheel_rule(path: str | None = None, refresh: bool = False) -> SubstitutionRule:
    """The pinwheel substitution rule, discovered by search and filtered.

    Candidates come from :func:`find_decompositions` on p0; the unique one
    matching the angle table with a central theta copy wins.  The p1 half is
    the mirror conjugate.  A frozen copy ships with the package and is used
    when present (after re-verification); refresh=True forces the search.
    Raises NoMatchingDecomposition if zero or several candidates survive.
    """
    global _RULE_CACHE
    if _RULE_CACHE is not None and not refresh:
        return _RULE_CACHE
    if not refresh:
        for candidate_path in (path, _packaged_rule_path()):
            if candidate_path and os.path.exists(candidate_path):
                with open(candidate_path) as fh:
                    rule = SubstitutionRule.from_json(json.load(fh))
                if verify_rule(rule).passed:
                    _RULE_CACHE = rule
                    return rule
    p0 = PROTOTILES[0]
    region = inflated_region(0)
    survivors = []
    for cand in find_decompositions(p0):
        assigned = _assign_digits(cand, region)
        if assigned is not None:
            survivors.append(assigned)
    if len(survivors) != 1:
        raise NoMatchingDecomposition(
            f"{len(survivors)} candidates satisfy the rule constraints (need exactly 1)"
        )
    half0 = tuple(survivors[0])
    half1 = tuple(_mirror_placement(pl) for pl in half0)
    rule = SubstitutionRule((half0, half1))
    report = verify_rule(rule)
    if not report.passed:
        raise NoMatchingDecomposition(f"discovered rule fails verification: {report}")
    _RULE_CACHE = rule
    if path:
        with open(path, "w") as fh:
            json.dump(rule.to_json(), fh, indent=1, sort_keys=True)
    return rule


@dataclass
class RuleReport:
    congruent: bool
    disjoint: bool
    area_and_coverage: bool
    matrix: bool
    angle_table: bool

    @property
    def passed(self) -> bool:
        return (self.congruent and self.disjoint and self.area_and_coverage
                and self.matrix and self.angle_table)

    def as_dict(self) -> dict:
        return {
            "congruent": self.congruent,
            "disjoint": self.disjoint,
            "area_and_coverage": self.area_and_coverage,
            "matrix": self.matrix,
            "angle_table": self.angle_table,
            "passed": self.passed,
        }


def verify_rule(rule: SubstitutionRule) -> RuleReport:
    """Exact structural checks of a substitution rule, clause by clause."""
    congruent = True
    disjoint = True
    area_cov = True
    for parent in (0, 1):
        tris = []
        region = inflated_region(parent)
        for pl in rule.children[parent]:
            proto = PROTOTILES[pl.proto]
            tile = Tile(pl.proto, pl.pose)
            tri = tile.vertices()
            tris.append(tri)
            if sorted(((tri[1] - tri[0]).norm2(), (tri[2] - tri[1]).norm2(),
                       (tri[0] - tri[2]).norm2())) != proto.side_lengths_squared():
                congruent = False
            if signed_area2(list(tri)) != proto.signed_area2():
                congruent = False
            if not triangle_inside_polygon(tri, region):
                area_cov = False
        for i in range(len(tris)):
            for j in range(i + 1, len(tris)):
                if triangles_overlap(tris[i], tris[j]):
                    disjoint = False
        total = sum((abs(signed_area2(list(t))) for t in tris), ZERO)
        if total != abs(signed_area2(region)):
            area_cov = False
    matrix = rule.type_matrix() == [[2, 3], [3, 2]]
    table_ok = True
    for parent in (0, 1):
        for digit in range(1, 6):
            want_proto, want_angle = ANGLE_TABLE[parent][digit]
            pl = rule.child(parent, digit)
            if pl.proto != want_proto or pl.pose.angle != want_angle:
                table_ok = False
    # mirror conjugacy of the halves
    for digit in range(1, 6):
        if _mirror_placement(rule.child(0, digit)) != rule.child(1, digit):
            table_ok = False
    return RuleReport(congruent, disjoint, area_cov, matrix, table_ok)


def is_primitive(rule: SubstitutionRule, k_max: int) -> int | None:
    """Smallest k <= k_max with every proto type reachable from every other."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    m = rule.type_matrix()
    power = [[1 if i == j else 0 for j in range(2)] for i in range(2)]
    for k in range(1, k_max + 1):
        power = [[sum(m[i][t] * power[t][j] for t in range(2)) for j in range(2)]
                 for i in range(2)]
        if all(power[i][j] > 0 for i in range(2) for j in range(2)):
            return k
    return None


# ---------------------------------------------------------------------------
# patch generation
# ---------------------------------------------------------------------------


def substitute(patch: Patch, rule: SubstitutionRule | None = None) -> Patch:
    """One inflate-and-subdivide step; child labels append the new finest digit."""
    rule = rule or pinwheel_rule()
    tiles: dict[str, Tile] = {}
    for label, tile in patch.tiles.items():
        g = tile.pose
        for digit in range(1, 6):
            pl = rule.child(tile.proto, digit)
            pose = RigidMotion(
                g.angle + pl.pose.angle,
                pl.pose.translation.rotated(g.angle) + g.translation.scaled(LAMBDA),
            )
            tiles[label + str(digit)] = Tile(pl.proto, pose)
    return Patch(patch.level + 1, patch.root, tiles)


def iterate(proto_id: int, level: int, rule: SubstitutionRule | None = None,
            allow_large: bool = False) -> Patch:
    """The labeled patch omega^level(p)."""
    if level < 0:
        raise ValueError("level must be >= 0")
    if level > _max_level() and not allow_large:
        raise ResourceGuardError(
            f"level {level} exceeds the guard ({_max_level()}); "
            "set PINWHEEL_MAX_LEVEL or allow_large=True"
        )
    patch = Patch(0, proto_id, {"": Tile(proto_id, RigidMotion.identity())})
    for _ in range(level):
        patch = substitute(patch, rule)
    return patch


def _check_label(label: str) -> None:
    if not all(ch in "12345" for ch in label):
        raise ValueError(f"invalid label {label!r}")


def label_type(proto_id: int, label: str, rule: SubstitutionRule | None = None) -> int:
    _check_label(label)
    rule = rule or pinwheel_rule()
    t = proto_id
    for ch in label:
        t = rule.child(t, int(ch)).proto
    return t


def label_angle(proto_id: int, label: str, rule: SubstitutionRule | None = None) -> Angle:
    """Orientation of the tile with this label, without materializing the patch."""
    _check_label(label)
    rule = rule or pinwheel_rule()
    t = proto_id
    ang = ANGLE_ZERO
    for ch in label:
        pl = rule.child(t, int(ch))
        ang = ang + pl.pose.angle
        t = pl.proto
    return ang


def label_pose(proto_id: int, label: str, rule: SubstitutionRule | None = None) -> RigidMotion:
    """Pose of the labeled tile inside omega^N(p), by composing placements."""
    _check_label(label)
    rule = rule or pinwheel_rule()
    n = len(label)
    t = proto_id
    pose = RigidMotion.identity()
    for i, ch in enumerate(label):
        pl = rule.child(t, int(ch))
        step = RigidMotion(pl.pose.angle, pl.pose.translation.scaled(LAMBDA ** (n - 1 - i)))
        pose = pose.compose(step)
        t = pl.proto
    return pose


def label_puncture(proto_id: int, label: str, rule: SubstitutionRule | None = None) -> Vec2:
    return label_pose(proto_id, label, rule).translation


# ---------------------------------------------------------------------------
# exact patch validation
# ---------------------------------------------------------------------------


def patch_area2(patch: Patch) -> QRoot5:
    """Twice the total tile area, summed exactly."""
    from .intgeom import clear_denominators, int_tri_area2, ip_add

    tris = [t.vertices() for _, t in sorted(patch.tiles.items())]
    itris, scale = clear_denominators(tris)
    total = (0, 0)
    for tri in itris:
        total = ip_add(total, int_tri_area2(tri))
    s2 = Fraction(scale) ** 2
    return QRoot5(Fraction(total[0]) / s2, Fraction(total[1]) / s2)


def _near_pairs(itris, eps: float = 1e-9):
    """Candidate tile pairs whose float bounding boxes touch, via grid buckets."""
    from .intgeom import float_vertices

    fverts = [float_vertices(t) for t in itris]
    boxes = []
    for fv in fverts:
        xs = [p[0] for p in fv]
        ys = [p[1] for p in fv]
        boxes.append((min(xs), min(ys), max(xs), max(ys)))
    diam = max(b[2] - b[0] for b in boxes)
    cell = max(diam, 1.0) * 1.5
    buckets: dict[tuple[int, int], list[int]] = {}
    for idx, b in enumerate(boxes):
        cx, cy = (b[0] + b[2]) / 2, (b[1] + b[3]) / 2
        buckets.setdefault((int(cx // cell), int(cy // cell)), []).append(idx)
    for (bx, by), members in buckets.items():
        neighbors: list[int] = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                neighbors.extend(buckets.get((bx + dx, by + dy), []))
        for i in members:
            b1 = boxes[i]
            for j in neighbors:
                if j <= i:
                    continue
                b2 = boxes[j]
                if (b1[2] < b2[0] - eps or b2[2] < b1[0] - eps
                        or b1[3] < b2[1] - eps or b2[3] < b1[1] - eps):
                    continue
                yield i, j, fverts[i], fverts[j]


def patch_pairwise_disjoint(patch: Patch) -> bool:
    """Exact pairwise interior-disjointness with spatial pre-bucketing."""
    from .intgeom import clear_denominators, int_tris_interior_disjoint

    tris = [t.vertices() for _, t in sorted(patch.tiles.items())]
    itris, _ = clear_denominators(tris)
    for i, j, f1, f2 in _near_pairs(itris):
        if not int_tris_interior_disjoint(itris[i], itris[j], f1, f2):
            return False
    return True


def patch_exact_report(patch: Patch) -> dict:
    """Tile count, exact doubled area, and exact disjointness in one pass."""
    from .intgeom import (clear_denominators, int_tri_area2,
                          int_tris_interior_disjoint, ip_add)

    tris = [t.vertices() for _, t in sorted(patch.tiles.items())]
    itris, scale = clear_denominators(tris)
    total = (0, 0)
    for tri in itris:
        total = ip_add(total, int_tri_area2(tri))
    s2 = Fraction(scale) ** 2
    area2 = QRoot5(Fraction(total[0]) / s2, Fraction(total[1]) / s2)
    disjoint = True
    for i, j, f1, f2 in _near_pairs(itris):
        if not int_tris_interior_disjoint(itris[i], itris[j], f1, f2):
            disjoint = False
            break
    return {"tiles": len(tris), "area2": area2, "disjoint": disjoint}


def patch_in_region(patch: Patch) -> bool:
    region = inflated_region(patch.root, patch.level)
    return all(triangle_inside_polygon(t.vertices(), region)
               for t in patch.tiles.values())


def type_counts(patch: Patch) -> tuple[int, int]:
    c = Counter(t.proto for t in patch.tiles.values())
    return (c.get(0, 0), c.get(1, 0))


# ---------------------------------------------------------------------------
# adjacency census
# ---------------------------------------------------------------------------


def _pair_key(ta: Tile, tb: Tile) -> str:
    rel = ta.pose.inverse().compose(tb.pose)
    return (f"{ta.proto},{tb.proto},{rel.angle.k},{rel.angle.q},"
            f"{rel.translation.x},{rel.translation.y}")


def adjacency_census(patch: Patch) -> Counter:
    """Edge-adjacency classes of the patch modulo the isometry group.

    Two-tile patches sharing a boundary segment of positive length are
    normalized by the motion taking the first tile to standard pose; the
    unordered class is the lexicographically smaller of the two orderings.
    """
    from .intgeom import clear_denominators, int_tris_share_edge_segment

    if patch.level < 1:
        raise ValueError("census needs level >= 1")
    items = sorted(patch.tiles.items())
    tiles = [t for _, t in items]
    tris = [t.vertices() for t in tiles]
    itris, _ = clear_denominators(tris)
    census: Counter = Counter()
    for i, j, _f1, _f2 in _near_pairs(itris):
        if int_tris_share_edge_segment(itris[i], itris[j]):
            key = min(_pair_key(tiles[i], tiles[j]), _pair_key(tiles[j], tiles[i]))
            census[key] += 1
    return census


# ---------------------------------------------------------------------------
# serialization and rendering
# ---------------------------------------------------------------------------


def patch_to_json(patch: Patch) -> dict:
    tiles = []
    for label in sorted(patch.tiles):
        t = patch.tiles[label]
        tiles.append({
            "label": label,
            "proto": t.proto,
            "angle": t.pose.angle.to_json(),
            "tx": t.pose.translation.x.to_json(),
            "ty": t.pose.translation.y.to_json(),
        })
    return {"level": patch.level, "root": patch.root, "tiles": tiles}


def patch_from_json(d: dict) -> Patch:
    tiles = {}
    for e in d["tiles"]:
        tiles[e["label"]] = Tile(
            int(e["proto"]),
            RigidMotion(Angle.from_json(e["angle"]),
                        Vec2(QRoot5.from_json(e["tx"]), QRoot5.from_json(e["ty"]))),
        )
    return Patch(int(d["level"]), int(d["root"]), tiles)


_FILLS = ("#4c72b0", "#dd8452")


def _fmt(x: float) -> str:
    return f"{x:.12f}".rstrip("0").rstrip(".")


def patch_to_svg(patch: Patch, labels: bool = False, punctures: bool = False,
                 scale: float = 60.0) -> str:
    """SVG rendering, one polygon per tile in lexicographic label order."""
    entries = sorted(patch.tiles.items())
    pts = [v.to_floats() for _, t in entries for v in t.vertices()]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    pad = 0.2
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - x0 + pad, max(ys) - y0 + pad
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w * scale)}" '
        f'height="{_fmt(h * scale)}" viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f'<g transform="translate(0,{_fmt(h)}) scale(1,-1)">',
    ]
    for label, tile in entries:
        coords = " ".join(
            f"{_fmt(px - x0)},{_fmt(py - y0)}"
            for px, py in (v.to_floats() for v in tile.vertices())
        )
        lines.append(
            f'<polygon points="{coords}" fill="{_FILLS[tile.proto]}" '
            f'stroke="#222222" stroke-width="0.02"/>'
        )
    if punctures:
        for label, tile in entries:
            px, py = tile.puncture().to_floats()
            lines.append(
                f'<circle cx="{_fmt(px - x0)}" cy="{_fmt(py - y0)}" r="0.05" fill="#111111"/>'
            )
    if labels:
        for label, tile in entries:
            px, py = tile.puncture().to_floats()
            lines.append(
                f'<text x="{_fmt(px - x0)}" y="{_fmt(py - y0)}" font-size="0.18" '
                f'text-anchor="middle" transform="scale(1,-1) '
                f'translate(0,{_fmt(-2 * (py - y0))})">{label or "e"}</text>'
            )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines)
