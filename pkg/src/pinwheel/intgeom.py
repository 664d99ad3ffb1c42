"""Integer-cleared fast path for bulk exact patch checks.

Patch coordinates all live in (1/L) * Z[sqrt5] for a common denominator L,
so clearing denominators once lets the hot predicates (separating-axis
disjointness, shared-edge detection, areas) run on plain machine integers.
Results are exact; floats appear only to order candidate axes and to bucket
tiles spatially.
"""

from __future__ import annotations

import math
from math import lcm

from .exact import SQRT5

# a scalar is the pair (a, b) meaning a + b*sqrt5, a and b integers
IPair = tuple[int, int]
IVec = tuple[IPair, IPair]


def ip_sign(p: IPair) -> int:
    a, b = p
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    if a > 0:
        return 1 if a * a > 5 * b * b else -1
    return 1 if a * a < 5 * b * b else -1


def ip_add(p: IPair, q: IPair) -> IPair:
    return (p[0] + q[0], p[1] + q[1])

def ip_sub(p: IPair, q: IPair) -> IPair:
    return (p[0] - q[0], p[1] - q[1])

def ip_mul(p: IPair, q: IPair) -> IPair:
    return (p[0] * q[0] + 5 * p[1] * q[1], p[0] * q[1] + p[1] * q[0])

def ip_float(p: IPair) -> float:
    return p[0] + p[1] * SQRT5


def vec_sub(u: IVec, v: IVec) -> IVec:
    return (ip_sub(u[0], v[0]), ip_sub(u[1], v[1]))

def vec_dot(u: IVec, v: IVec) -> IPair:
    return ip_add(ip_mul(u[0], v[0]), ip_mul(u[1], v[1]))

def vec_cross(u: IVec, v: IVec) -> IPair:
    return ip_sub(ip_mul(u[0], v[1]), ip_mul(u[1], v[0]))


def clear_denominators(tris_qr5) -> tuple[list[tuple[IVec, IVec, IVec]], int]:
    """Convert QRoot5 triangles to integer-pair triangles and the scale L."""
    dens = {1}
    for tri in tris_qr5:
        for v in tri:
            for q in (v.x, v.y):
                dens.add(q.a.denominator)
                dens.add(q.b.denominator)
    scale = lcm(*dens)

    def conv(q) -> IPair:
        return (q.a.numerator * (scale // q.a.denominator),
                q.b.numerator * (scale // q.b.denominator))

    out = []
    for tri in tris_qr5:
        out.append(tuple((conv(v.x), conv(v.y)) for v in tri))  # type: ignore[arg-type]
    return out, scale


def float_vertices(tri: tuple[IVec, IVec, IVec]) -> list[tuple[float, float]]:
    return [(ip_float(v[0]), ip_float(v[1])) for v in tri]


def _axes_by_float_margin(f1, f2) -> list[tuple[int, int]]:
    """Candidate separating axes (owner, edge index) ordered by float margin."""
    scored = []
    for owner, (mine, other) in enumerate(((f1, f2), (f2, f1))):
        for i in range(3):
            ax, ay = mine[i]
            bx, by = mine[(i + 1) % 3]
            nx, ny = -(by - ay), bx - ax
            pa = [nx * px + ny * py for px, py in mine]
            pb = [nx * px + ny * py for px, py in other]
            margin = max(min(pb) - max(pa), min(pa) - max(pb))
            norm = math.hypot(nx, ny) or 1.0
            scored.append((margin / norm, owner, i))
    scored.sort(reverse=True)
    return [(owner, i) for _, owner, i in scored]


def _exact_axis_separates(t1, t2, owner: int, i: int) -> bool:
    mine, other = (t1, t2) if owner == 0 else (t2, t1)
    a, b = mine[i], mine[(i + 1) % 3]
    e = vec_sub(b, a)
    n: IVec = ((-e[1][0], -e[1][1]), e[0])
    pa = [vec_dot(v, n) for v in mine]
    pb = [vec_dot(v, n) for v in other]

    def ip_max(vals):
        best = vals[0]
        for v in vals[1:]:
            if ip_sign(ip_sub(v, best)) > 0:
                best = v
        return best

    def ip_min(vals):
        best = vals[0]
        for v in vals[1:]:
            if ip_sign(ip_sub(v, best)) < 0:
                best = v
        return best

    if ip_sign(ip_sub(ip_min(pb), ip_max(pa))) >= 0:
        return True
    if ip_sign(ip_sub(ip_min(pa), ip_max(pb))) >= 0:
        return True
    return False


def int_tris_interior_disjoint(t1, t2, f1, f2) -> bool:
    """Exact interior-disjointness; float margins only pick the axis order."""
    for owner, i in _axes_by_float_margin(f1, f2):
        if _exact_axis_separates(t1, t2, owner, i):
            return True
    return False


def int_tris_share_edge_segment(t1, t2) -> bool:
    """Tiles share a boundary segment of positive length (exact)."""
    for i in range(3):
        a, b = t1[i], t1[(i + 1) % 3]
        d = vec_sub(b, a)
        n2 = vec_dot(d, d)
        for j in range(3):
            p, q = t2[j], t2[(j + 1) % 3]
            if ip_sign(vec_cross(d, vec_sub(q, p))) != 0:
                continue
            if ip_sign(vec_cross(d, vec_sub(p, a))) != 0:
                continue
            tp = vec_dot(vec_sub(p, a), d)
            tq = vec_dot(vec_sub(q, a), d)
            if ip_sign(ip_sub(tp, tq)) > 0:
                tp, tq = tq, tp
            hi = tq if ip_sign(ip_sub(tq, n2)) < 0 else n2
            lo = tp if ip_sign(tp) > 0 else (0, 0)
            if ip_sign(ip_sub(hi, lo)) > 0:
                return True
    return False


def int_tri_area2(tri) -> IPair:
    """Twice the unsigned area, as an integer pair."""
    c = vec_cross(vec_sub(tri[1], tri[0]), vec_sub(tri[2], tri[0]))
    return c if ip_sign(c) >= 0 else (-c[0], -c[1])
