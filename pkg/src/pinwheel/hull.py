"""Finite-data stand-ins for the punctured hull: cylinder sets and groupoid sets.

Hull points are represented by finite central patches; queries that exceed
the represented radius return Undecidable rather than guessing.  Groupoid
elements pair a finite patch with two anchor tiles; range, source,
composition, and inversion operate on that data exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exact import Angle, QRoot5, RigidMotion, Vec2, gamma_distance
from .geometry import Patch, Tile, default_prototiles
from .polygon import triangles_overlap


@dataclass(frozen=True)
class PointedPatch:
    """A finite tile list with a distinguished tile whose puncture sits at 0."""

    tiles: tuple[Tile, ...]
    origin_index: int

    def __post_init__(self):
        if not self.tiles[self.origin_index].puncture().is_zero():
            raise ValueError("origin tile puncture must be at the origin")

    def origin_tile(self) -> Tile:
        return self.tiles[self.origin_index]

    def tile_set(self) -> frozenset[Tile]:
        return frozenset(self.tiles)

    def rotated(self, angle: Angle) -> "PointedPatch":
        rot = RigidMotion(angle, Vec2(QRoot5(0), QRoot5(0)))
        return PointedPatch(
            tuple(Tile(t.proto, rot.compose(t.pose)) for t in self.tiles),
            self.origin_index,
        )


def pointed_from_patch(patch: Patch, origin_label: str) -> PointedPatch:
    """Re-point a generated patch at the puncture of one of its tiles."""
    labels = sorted(patch.tiles)
    shift = -patch.tiles[origin_label].puncture()
    tiles = []
    for lab in labels:
        t = patch.tiles[lab]
        tiles.append(Tile(t.proto, RigidMotion(t.pose.angle, t.pose.translation + shift)))
    return PointedPatch(tuple(tiles), labels.index(origin_label))


def repoint(tiles: tuple[Tile, ...], index: int) -> PointedPatch:
    shift = -tiles[index].puncture()
    moved = tuple(Tile(t.proto, RigidMotion(t.pose.angle, t.pose.translation + shift))
                  for t in tiles)
    return PointedPatch(moved, index)


def pointed_to_json(patch: Patch, origin_label: str) -> dict:
    """The shared patch schema plus the distinguished origin label."""
    from .geometry import patch_to_json

    out = patch_to_json(patch)
    out["origin_label"] = origin_label
    return out


def pointed_from_json(d: dict) -> PointedPatch:
    from .geometry import patch_from_json

    return pointed_from_patch(patch_from_json(d), d["origin_label"])


@dataclass(frozen=True)
class UResult:
    status: str  # "yes" | "no" | "undecidable"
    witness: Angle | None = None

    def __bool__(self) -> bool:
        return self.status == "yes"


def u_membership(cylinder: PointedPatch, candidate: PointedPatch) -> UResult:
    """Does some lattice rotation carry the cylinder patch into the candidate?

    The rotation is pinned by matching the anchor tile to the candidate's
    origin tile, then every other tile must appear verbatim; a tile that
    overlaps existing candidate tiles refutes membership, while a tile
    landing on unrepresented territory makes the query undecidable.
    """
    anchor = cylinder.origin_tile()
    target = candidate.origin_tile()
    if anchor.proto != target.proto:
        return UResult("no")
    phi = target.pose.angle - anchor.pose.angle
    rotated = cylinder.rotated(phi)
    cand_set = candidate.tile_set()
    cand_tris = [t.vertices() for t in candidate.tiles]
    undecidable = False
    for t in rotated.tiles:
        if t in cand_set:
            continue
        tri = t.vertices()
        if any(triangles_overlap(tri, ct) for ct in cand_tris):
            return UResult("no")
        undecidable = True
    if undecidable:
        return UResult("undecidable")
    return UResult("yes", phi)


@dataclass(frozen=True)
class ClopenV:
    """Groupoid set data: a finite patch with range and source anchor tiles."""

    tiles: tuple[Tile, ...]
    from_index: int
    to_index: int

    def is_diagonal(self) -> bool:
        return self.from_index == self.to_index


@dataclass(frozen=True)
class Incompatible:
    reason: str  # "tile mismatch" | "patch conflict"

    def __bool__(self) -> bool:
        return False


def v_from_patch(patch: Patch, from_label: str, to_label: str) -> ClopenV:
    labels = sorted(patch.tiles)
    tiles = tuple(patch.tiles[lab] for lab in labels)
    return ClopenV(tiles, labels.index(from_label), labels.index(to_label))


def v_range(v: ClopenV) -> PointedPatch:
    return repoint(v.tiles, v.from_index)


def v_source(v: ClopenV) -> PointedPatch:
    return repoint(v.tiles, v.to_index)


def v_invert(v: ClopenV) -> ClopenV:
    return ClopenV(v.tiles, v.to_index, v.from_index)


def v_compose(v1: ClopenV, v2: ClopenV) -> ClopenV | Incompatible:
    """Compose groupoid sets: source anchor of v1 must be range anchor of v2.

    The anchors are identified by rotating v2's patch to match; the union
    must then be single-valued (no conflicting overlaps).
    """
    left = v_source(v1)
    right = v_range(v2)
    a1, a2 = left.origin_tile(), right.origin_tile()
    if a1.proto != a2.proto:
        return Incompatible("tile mismatch")
    rho = a1.pose.angle - a2.pose.angle
    right_rot = right.rotated(rho)

    union: list[Tile] = list(left.tiles)
    union_tris = [t.vertices() for t in union]
    index_of: dict[Tile, int] = {t: i for i, t in enumerate(union)}
    for t in right_rot.tiles:
        if t in index_of:
            continue
        tri = t.vertices()
        if any(triangles_overlap(tri, ut) for ut in union_tris):
            return Incompatible("patch conflict")
        index_of[t] = len(union)
        union.append(t)
        union_tris.append(tri)

    from_tile = left.tiles[v1.from_index]
    to_tile = right_rot.tiles[v2.to_index]
    out = ClopenV(tuple(union), index_of[from_tile], index_of[to_tile])
    return _range_framed(out)


def _range_framed(v: ClopenV) -> ClopenV:
    """Translate the stored patch so the range anchor's puncture is at 0."""
    shift = -v.tiles[v.from_index].puncture()
    tiles = tuple(Tile(t.proto, RigidMotion(t.pose.angle, t.pose.translation + shift))
                  for t in v.tiles)
    return ClopenV(tiles, v.from_index, v.to_index)


def v_equal(v1: ClopenV, v2: ClopenV) -> bool:
    """Equality as groupoid data, independent of the stored frame and order."""
    a, b = _range_framed(v1), _range_framed(v2)
    return (frozenset(a.tiles) == frozenset(b.tiles)
            and a.tiles[a.from_index] == b.tiles[b.from_index]
            and a.tiles[a.to_index] == b.tiles[b.to_index])


def rotation_factor(pointed: PointedPatch) -> tuple[Angle, PointedPatch]:
    """Split a pointed patch into (origin angle, patch in standard orientation)."""
    ang = pointed.origin_tile().pose.angle
    return ang, pointed.rotated(-ang)


def separation_epsilon() -> QRoot5:
    """Exact minimum puncture-to-edge distance over the proto-tiles.

    Any translation shorter than this cannot map the punctured hull into
    itself; for the barycentric punctures it equals 2*sqrt5/15.
    """
    candidates = []
    for proto in default_prototiles():
        candidates.extend(proto.puncture_edge_distances())
    return min(candidates)


def _dist_origin_to_triangle(tri) -> float:
    """Float distance from the origin to a closed triangle."""
    pts = [v.to_floats() for v in tri]
    sign_total = 0
    inside = True
    for i in range(3):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % 3]
        cross = (bx - ax) * (-ay) - (by - ay) * (-ax)
        if cross == 0:
            continue
        s = 1 if cross > 0 else -1
        if sign_total == 0:
            sign_total = s
        elif s != sign_total:
            inside = False
            break
    if inside:
        return 0.0
    best = math.inf
    for i in range(3):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % 3]
        dx, dy = bx - ax, by - ay
        t = -(ax * dx + ay * dy) / (dx * dx + dy * dy)
        t = min(1.0, max(0.0, t))
        px, py = ax + t * dx, ay + t * dy
        best = min(best, math.hypot(px, py))
    return best


def tiling_distance_estimate(
    t1: PointedPatch, t2: PointedPatch
) -> tuple[float, tuple[RigidMotion, RigidMotion]]:
    """Certified upper bound for the tiling metric between two pointed patches.

    Alignments come from matching a tile of t1 to a same-type tile of t2
    (plus the identity); each gives the witness pair (g, identity) with g
    moving t1 onto t2's frame, valid out to the exact-agreement radius.
    Returns 1 with identity witnesses when no alignment beats 1.
    """
    ident = RigidMotion.identity()
    if t1.tile_set() == t2.tile_set():
        return 0.0, (ident, ident)

    candidates: list[RigidMotion] = [ident]
    for a in t1.tiles:
        for b in t2.tiles:
            if a.proto == b.proto:
                g = b.pose.compose(a.pose.inverse())
                if g not in candidates:
                    candidates.append(g)

    best = 1.0
    best_witness = (ident, ident)
    set2 = t2.tile_set()
    for g in candidates:
        moved = frozenset(Tile(t.proto, g.compose(t.pose)) for t in t1.tiles)
        if moved == set2:
            radius = math.inf
        else:
            sym_diff = (moved - set2) | (set2 - moved)
            radius = min(_dist_origin_to_triangle(t.vertices()) for t in sym_diff)
        if radius <= 0.0:
            continue
        geo = 0.0 if math.isinf(radius) else (1.0 + 1e-12) / radius
        eps = max(gamma_distance(g), geo)
        if eps < best:
            best = eps
            best_witness = (g, ident)
    return best, best_witness
