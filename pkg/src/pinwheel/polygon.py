"""Exact polygon predicates and the carve-a-triangle surgery.

Supports the decomposition search: containment tests, interior-overlap
tests, and subtraction of a triangle from a simple polygon by boundary
surgery.  All predicates are exact over QRoot5; no epsilons anywhere.
"""

from __future__ import annotations

from .exact import QRoot5, Vec2, ZERO

Triangle = tuple[Vec2, Vec2, Vec2]
Polygon = list[Vec2]


def orient(a: Vec2, b: Vec2, c: Vec2) -> int:
    """Sign of the cross product (b-a) x (c-a)."""
    return (b - a).cross(c - a).sign()


def signed_area2(poly: Polygon) -> QRoot5:
    """Twice the signed area (positive for counterclockwise)."""
    total = ZERO
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        total = total + p.cross(q)
    return total



def ccw_triangle(t: Triangle) -> Triangle:
    if orient(*t) < 0:
        return (t[0], t[2], t[1])
    return t


def on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool:
    """p lies on the closed segment [a, b]."""
    if (b - a).cross(p - a).sign() != 0:
        return False
    d = (p - a).dot(b - a)
    return d.sign() >= 0 and d <= (b - a).norm2()


def strictly_inside_triangle(p: Vec2, t: Triangle) -> bool:
    t = ccw_triangle(t)
    return all(orient(t[i], t[(i + 1) % 3], p) > 0 for i in range(3))


def point_in_polygon(p: Vec2, poly: Polygon) -> bool:
    """Strict interior test by exact ray parity.  Pre: p is not on the boundary."""
    crossings = 0
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        ya, yb = a.y, b.y
        if ya == yb:
            continue
        if (ya <= p.y < yb) or (yb <= p.y < ya):
            # x-coordinate where the edge meets the horizontal through p
            tparam = (p.y - ya) / (yb - ya)
            xcross = a.x + tparam * (b.x - a.x)
            if xcross > p.x:
                crossings += 1
    return crossings % 2 == 1


def triangles_overlap(t1: Triangle, t2: Triangle) -> bool:
    """True iff the triangle interiors intersect (positive-area overlap).

    Separating-axis test over the six edge normals, exact; touching along
    edges or at vertices does not count as overlap.
    """
    t1, t2 = ccw_triangle(t1), ccw_triangle(t2)
    for tri, other in ((t1, t2), (t2, t1)):
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            n = b - a
            axis = Vec2(-n.y, n.x)  # inward normal of a CCW edge
            # tri lies in axis . (p - a) >= 0; separated if other wholly <= 0
            if all(axis.dot(p - a).sign() <= 0 for p in other):
                return False
    return True


def _seg_params_against_triangle(a: Vec2, b: Vec2, tri: Triangle) -> list[QRoot5]:
    """Parameters t in (0,1) where [a,b] meets the boundary of tri.

    Includes proper crossings, touches, and collinear-overlap endpoints.
    Assumes no degenerate inputs (a != b).
    """
    d = b - a
    params: list[QRoot5] = []

    def push(t: QRoot5):
        if ZERO < t < QRoot5(1) and all(t != s for s in params):
            params.append(t)

    for i in range(3):
        p, q = tri[i], tri[(i + 1) % 3]
        e = q - p
        denom = d.cross(e)
        if denom.sign() != 0:
            t = (p - a).cross(e) / denom
            u = (p - a).cross(d) / denom
            if ZERO <= t <= QRoot5(1) and ZERO <= u <= QRoot5(1):
                push(t)
        else:
            # parallel; if collinear, the endpoints of the tri edge cut [a,b]
            if (p - a).cross(d).sign() == 0:
                n2 = d.norm2()
                for v in (p, q):
                    push((v - a).dot(d) / n2)
    return params


def triangle_inside_polygon(tri: Triangle, poly: Polygon) -> bool:
    """Exact test: tri (closed) is contained in the simple polygon poly.

    Boundary contact is allowed.  Sufficient and necessary via: (1) the
    polygon boundary never enters the open triangle, and (2) the triangle
    centroid lies inside the polygon.
    """
    tri = ccw_triangle(tri)
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        cuts = sorted(_seg_params_against_triangle(a, b, tri))
        params = [ZERO] + cuts + [QRoot5(1)]
        d = b - a
        for j in range(len(params) - 1):
            mid = (params[j] + params[j + 1]) / QRoot5(2)
            point = a + d.scaled(mid)
            if strictly_inside_triangle(point, tri):
                return False
    third = QRoot5(1) / QRoot5(3)
    centroid = Vec2(
        (tri[0].x + tri[1].x + tri[2].x) * third,
        (tri[0].y + tri[1].y + tri[2].y) * third,
    )
    return point_in_polygon(centroid, poly)


def _split_chain(pts: list[Vec2], closed_cycle: list[Vec2]) -> list[tuple[Vec2, Vec2]]:
    """Directed micro-segments of a closed cycle, split at the given points."""
    segs: list[tuple[Vec2, Vec2]] = []
    n = len(closed_cycle)
    for i in range(n):
        a, b = closed_cycle[i], closed_cycle[(i + 1) % n]
        d = b - a
        n2 = d.norm2()
        cuts: list[QRoot5] = []
        for p in pts:
            if p != a and p != b and on_segment(p, a, b):
                t = (p - a).dot(d) / n2
                if all(t != s for s in cuts):
                    cuts.append(t)
        cuts.sort()
        chain = [a] + [a + d.scaled(t) for t in cuts] + [b]
        for j in range(len(chain) - 1):
            segs.append((chain[j], chain[j + 1]))
    return segs


def _angle_less(base1: Vec2, v1: Vec2, base2: Vec2, v2: Vec2) -> bool:
    """Compare counterclockwise turn angles in (0, 2*pi]: angle(base1->v1) < angle(base2->v2)."""

    def rank(base: Vec2, v: Vec2) -> tuple[int, Vec2]:
        c, s = base.dot(v), base.cross(v)
        r = Vec2(c, s)
        if s.sign() > 0:
            return (0, r)  # (0, pi)
        if s.sign() == 0:
            return ((1, r) if c.sign() < 0 else (3, r))  # pi, or full turn 2*pi
        return (2, r)  # (pi, 2*pi)

    k1, r1 = rank(base1, v1)
    k2, r2 = rank(base2, v2)
    if k1 != k2:
        return k1 < k2
    if k1 in (1, 3):
        return False  # equal angles
    return r1.cross(r2).sign() > 0


def subtract_triangle(poly: Polygon, tri: Triangle) -> list[Polygon]:
    """Remove a triangle from a simple CCW polygon it is contained in.

    Boundary surgery: flush micro-segments cancel, interior triangle edges
    join reversed, and the leftover directed segments are stitched back
    into simple CCW cycles (sharpest-left-turn rule at pinch vertices).
    """
    tri = ccw_triangle(tri)
    tri_cycle = list(tri)
    poly_segs = _split_chain(tri_cycle, poly)
    tri_segs = _split_chain(poly, tri_cycle)

    poly_set = set(poly_segs)
    tri_set = set(tri_segs)
    flush = poly_set & tri_set
    segs = [s for s in poly_segs if s not in flush]
    segs += [(b, a) for (a, b) in tri_segs if (a, b) not in flush]

    by_start: dict[Vec2, list[Vec2]] = {}
    for a, b in segs:
        by_start.setdefault(a, []).append(b)

    cycles: list[Polygon] = []
    seg_pool = set(segs)
    while seg_pool:
        start, cur = next(iter(sorted(seg_pool, key=lambda s: (str(s[0]), str(s[1])))))
        cycle = [start]
        a, b = start, cur
        seg_pool.discard((a, b))
        while b != start:
            cycle.append(b)
            outs = [c for c in by_start.get(b, []) if (b, c) in seg_pool]
            if not outs:
                raise RuntimeError("boundary surgery failed to close a cycle")
            base = a - b  # reversed incoming direction
            best = outs[0]
            for cand in outs[1:]:
                # keep the largest CCW turn from the reversed incoming edge
                if _angle_less(base, best - b, base, cand - b):
                    best = cand
            a, b = b, best
            seg_pool.discard((a, b))
        # merge collinear runs
        merged: Polygon = []
        m = len(cycle)
        for i in range(m):
            prev, cur_pt, nxt = cycle[i - 1], cycle[i], cycle[(i + 1) % m]
            if orient(prev, cur_pt, nxt) != 0:
                merged.append(cur_pt)
        if len(merged) >= 3:
            area2 = signed_area2(merged)
            if area2.sign() > 0:
                cycles.append(merged)
            elif area2.sign() < 0:
                raise RuntimeError("subtraction produced a hole")
    return cycles
