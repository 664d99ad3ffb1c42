"""The matrix circle-algebra tower: psi, the inclusion phi, norms, simplicity.

Level-N elements map to pairs of 5^N x 5^N matrices of Laurent polynomials
in the circle variable; the inclusion into level N+1 prepends a digit per
the substitution's parent/child index set.  Norm estimates sample the
circle and certify an upper bound; the simplicity search certifies circle
covers by outward-rounded interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .exact import Angle, ExactComplex, unit_phase
from .algebra import (
    AlgebraElement,
    Generator,
    Laurent,
    LevelMismatchError,
    _angle,
    _laurent_mul,
    adjoint,
    multiply,
)
from .geometry import ANGLE_TABLE, SubstitutionRule, pinwheel_rule


class TowerError(Exception):
    pass


def row_index(label: str) -> int:
    """1-based matrix index of a digit label: 1 + sum 5^(N-j) (l_j - 1)."""
    idx = 0
    for ch in label:
        d = int(ch)
        if not 1 <= d <= 5:
            raise ValueError(f"bad digit {ch!r}")
        idx = idx * 5 + (d - 1)
    return idx + 1


@dataclass
class MatrixFunction:
    """Two blocks of sparse Laurent-polynomial matrices, indices 1..5^N."""

    level: int
    blocks: tuple[dict[tuple[int, int], Laurent], dict[tuple[int, int], Laurent]]

    @property
    def size(self) -> int:
        return 5 ** self.level

    @classmethod
    def zero(cls, level: int) -> "MatrixFunction":
        return cls(level, ({}, {}))

    def _cleaned(self):
        out = []
        for blk in self.blocks:
            c = {}
            for pos, poly in blk.items():
                p = {k: v for k, v in poly.items() if v}
                if p:
                    c[pos] = p
            out.append(c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixFunction):
            return NotImplemented
        return self.level == other.level and self._cleaned() == other._cleaned()

    def __add__(self, other: "MatrixFunction") -> "MatrixFunction":
        if self.level != other.level:
            raise LevelMismatchError("matrix levels differ")
        blocks = []
        for b1, b2 in zip(self.blocks, other.blocks):
            out = {pos: dict(poly) for pos, poly in b1.items()}
            for pos, poly in b2.items():
                cur = out.setdefault(pos, {})
                for k, c in poly.items():
                    s = cur.get(k)
                    cur[k] = c if s is None else s + c
            blocks.append(out)
        return MatrixFunction(self.level, (blocks[0], blocks[1]))

    def __mul__(self, other: "MatrixFunction") -> "MatrixFunction":
        if self.level != other.level:
            raise LevelMismatchError("matrix levels differ")
        blocks = []
        for b1, b2 in zip(self.blocks, other.blocks):
            by_row: dict[int, list[tuple[int, Laurent]]] = {}
            for (r, c), poly in b2.items():
                by_row.setdefault(r, []).append((c, poly))
            out: dict[tuple[int, int], Laurent] = {}
            for (r, c), poly in b1.items():
                for c2, poly2 in by_row.get(c, []):
                    prod = _laurent_mul(poly, poly2)
                    if not prod:
                        continue
                    cur = out.setdefault((r, c2), {})
                    for k, v in prod.items():
                        s = cur.get(k)
                        cur[k] = v if s is None else s + v
            blocks.append(out)
        return MatrixFunction(self.level, (blocks[0], blocks[1]))

    def star(self) -> "MatrixFunction":
        blocks = []
        for blk in self.blocks:
            out: dict[tuple[int, int], Laurent] = {}
            for (r, c), poly in blk.items():
                out[(c, r)] = {-k: v.conjugate() for k, v in poly.items()}
            blocks.append(out)
        return MatrixFunction(self.level, (blocks[0], blocks[1]))

    def evaluate(self, x: float) -> tuple[np.ndarray, np.ndarray]:
        """Complex block matrices at circle position x in [0, 1)."""
        size = self.size
        out = []
        for blk in self.blocks:
            m = np.zeros((size, size), dtype=complex)
            for (r, c), poly in blk.items():
                val = 0j
                for k, coeff in poly.items():
                    val += complex(coeff) * np.exp(2j * math.pi * k * x)
                m[r - 1, c - 1] = val
            out.append(m)
        return out[0], out[1]

    def to_json(self) -> dict:
        if self.level > 3:
            raise TowerError("dense JSON export limited to level <= 3")
        size = self.size
        blocks = []
        for blk in self.blocks:
            rows = []
            for r in range(1, size + 1):
                row = []
                for c in range(1, size + 1):
                    poly = blk.get((r, c), {})
                    row.append({
                        "coeffs": [
                            {"k": k, "re": poly[k].re.to_json(), "im": poly[k].im.to_json()}
                            for k in sorted(poly) if poly[k]
                        ]
                    })
                rows.append(row)
            blocks.append(rows)
        return {"level": self.level, "blocks": blocks}


def psi(a: AlgebraElement) -> MatrixFunction:
    """The level isomorphism onto matrix circle-functions.

    e_N(p,l,m) lands on the (row l, row m) matrix unit of block p; a z^k
    factor contributes unit_phase(k*angle(l)) times the k-th power of the
    circle variable (the multiplicative form, in which psi(z)^k = psi(z^k)).
    """
    blocks: tuple[dict, dict] = ({}, {})
    for g, c in a.terms.items():
        pos = (row_index(g.row), row_index(g.col))
        poly = blocks[g.proto].setdefault(pos, {})
        add = c * unit_phase(_angle(g.proto, g.row).scaled(g.k))
        s = poly.get(g.k)
        poly[g.k] = add if s is None else s + add
    return MatrixFunction(a.level, blocks)


def psi_hom_check(a: AlgebraElement, b: AlgebraElement) -> bool:
    """psi(ab) = psi(a) psi(b) and psi(a*) = psi(a)*, exactly."""
    if psi(multiply(a, b)) != psi(a) * psi(b):
        return False
    if psi(adjoint(a)) != psi(a).star():
        return False
    return True


# ---------------------------------------------------------------------------
# the inclusion phi
# ---------------------------------------------------------------------------


def inclusion_index(proto: int, rule: SubstitutionRule | None = None) -> list[tuple[int, int, Angle]]:
    """General-form index set: (parent proto, digit, placement angle) triples
    with child type equal to the given proto, read off the substitution rule."""
    rule = rule or pinwheel_rule()
    out = []
    for parent in (0, 1):
        for digit in range(1, 6):
            pl = rule.child(parent, digit)
            if pl.proto == proto:
                out.append((parent, digit, pl.pose.angle))
    return sorted(out)


def closed_form_index(proto: int) -> list[tuple[int, int, Angle]]:
    """The closed form: digits 3,4 keep the parent type, digits 1,2,5 flip."""
    out = []
    for digit in (3, 4):
        out.append((proto, digit, ANGLE_TABLE[proto][digit][1]))
    other = 1 - proto
    for digit in (1, 2, 5):
        out.append((other, digit, ANGLE_TABLE[other][digit][1]))
    return sorted(out)


def phi(a: AlgebraElement, rule: SubstitutionRule | None = None) -> AlgebraElement:
    """Inclusion of level N into level N+1: prepend each admissible digit.

    A type-p supertile occurs as child j of parents p' with child type p;
    the generator maps to the sum over those (p', j) of the relabeled
    generator, coefficients unchanged.
    """
    out: dict[Generator, ExactComplex] = {}
    for g, c in a.terms.items():
        for parent, digit, _ang in inclusion_index(g.proto, rule):
            gg = Generator(g.k, parent, f"{digit}{g.row}", f"{digit}{g.col}")
            s = out.get(gg)
            out[gg] = c if s is None else s + c
    return AlgebraElement(a.level + 1, out)


PHI_CHAIN_TERM_GUARD = 5 ** 8


def phi_chain(a: AlgebraElement, target_level: int,
              rule: SubstitutionRule | None = None) -> AlgebraElement:
    if target_level < a.level:
        raise ValueError("target level below element level")
    steps = target_level - a.level
    if len(a.terms) * 5 ** steps > PHI_CHAIN_TERM_GUARD:
        raise TowerError("phi_chain would exceed the term guard")
    out = a
    for _ in range(steps):
        out = phi(out, rule)
    return out


# ---------------------------------------------------------------------------
# norm estimation
# ---------------------------------------------------------------------------


def _power_method_sigma(m: np.ndarray, tol: float = 1e-10, max_iter: int = 500) -> float:
    """Largest singular value via power iteration on m^H m (deterministic)."""
    n = m.shape[0]
    if n == 0:
        return 0.0
    gram = m.conj().T @ m
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    lam = 0.0
    for _ in range(max_iter):
        w = gram @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        new_lam = float(np.real(np.vdot(v, gram @ v)))
        if abs(new_lam - lam) <= tol * max(1.0, abs(new_lam)):
            lam = new_lam
            break
        lam = new_lam
    return math.sqrt(max(lam, 0.0))


def _coeff_abs(c: ExactComplex) -> float:
    return math.sqrt(float(c.abs2()))


def norm_estimate(m: MatrixFunction, grid: int = 1024) -> tuple[float, float]:
    """Certified enclosure of the sup-over-circle operator norm.

    Lower bound: largest sampled singular value.  Upper bound: the smaller
    of (sample + Lipschitz correction from coefficient magnitudes and
    degrees) and the exact Schur bound sqrt(max row sum * max col sum).
    """
    lower = 0.0
    for s in range(grid):
        b0, b1 = m.evaluate(s / grid)
        lower = max(lower, _power_method_sigma(b0), _power_method_sigma(b1))

    schur = 0.0
    slope_sq = 0.0
    for blk in m.blocks:
        row_sums: dict[int, float] = {}
        col_sums: dict[int, float] = {}
        for (r, c), poly in blk.items():
            total = sum(_coeff_abs(v) for v in poly.values())
            row_sums[r] = row_sums.get(r, 0.0) + total
            col_sums[c] = col_sums.get(c, 0.0) + total
            slope_sq += sum(abs(k) * _coeff_abs(v) for k, v in poly.items()) ** 2
        if row_sums:
            schur = max(schur, math.sqrt(max(row_sums.values()) * max(col_sums.values())))
    lipschitz = 2.0 * math.pi * math.sqrt(slope_sq)
    # deflate/inflate by a float-roundoff margin so the enclosure is honest
    margin = 1e-12
    lower = lower * (1.0 - margin)
    upper = min(schur * (1.0 + margin), lower + lipschitz * 0.5 / grid + margin * schur)
    return lower, max(upper, lower)


# ---------------------------------------------------------------------------
# simplicity: arcs, orbits, covering certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArcPoint:
    """Exact circle position 2*pi*frac + theta_mult * theta, theta = arctan(1/2)."""

    frac: Fraction
    theta_mult: int = 0

    def interval(self):
        theta = mpmath.iv.atan2(mpmath.iv.mpf(1), mpmath.iv.mpf(2))
        tau = 2 * mpmath.iv.pi
        return (tau * self.frac.numerator / self.frac.denominator
                + theta * self.theta_mult)


@dataclass(frozen=True)
class Arc:
    """Half-open arc [lo, hi) with exact endpoints on the theta lattice."""

    lo: ArcPoint
    hi: ArcPoint

    def shifted(self, theta_steps: int) -> "Arc":
        return Arc(
            ArcPoint(self.lo.frac, self.lo.theta_mult + theta_steps),
            ArcPoint(self.hi.frac, self.hi.theta_mult + theta_steps),
        )


def full_circle_arc() -> Arc:
    return Arc(ArcPoint(Fraction(0)), ArcPoint(Fraction(1)))


def arc_of_length(fraction_of_circle: Fraction) -> Arc:
    if not 0 < fraction_of_circle <= 1:
        raise ValueError("arc length must be a fraction of the circle in (0, 1]")
    return Arc(ArcPoint(Fraction(0)), ArcPoint(Fraction(fraction_of_circle)))


def _arc_is_full_circle(arc: Arc) -> bool:
    return (arc.hi.theta_mult == arc.lo.theta_mult
            and arc.hi.frac - arc.lo.frac >= 1)


_FLOAT_SLACK = 1e-13  # swallows float-pi wobble when pieces are wrapped by 2*pi


def _certain_intervals(arcs: list[Arc], prec: int = 128) -> list[tuple[float, float]]:
    """Outward-rounded certain sub-arcs, left endpoints normalized into [0, 2*pi).

    Each piece is shrunk by a further float slack so that translating it by
    float multiples of 2*pi keeps it certifiably inside the true arc.
    """
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        tau_iv = 2 * mpmath.iv.pi
        tau_lo = float(mpmath.mpf(tau_iv.a))
        out = []
        for arc in arcs:
            lo_iv = arc.lo.interval()
            hi_iv = arc.hi.interval()
            lo = float(mpmath.mpf(lo_iv.b)) + _FLOAT_SLACK   # round up: shrink
            hi = float(mpmath.mpf(hi_iv.a)) - _FLOAT_SLACK   # round down: shrink
            if hi <= lo:
                continue
            shift = math.floor(lo / tau_lo)
            lo -= shift * tau_lo
            hi -= shift * tau_lo
            out.append((lo, hi))
        return out
    finally:
        mpmath.iv.prec = old


_TAU = 2 * math.pi
_COVER_EPS = 1e-12


def normalized_certain_arcs(arcs: list[Arc]) -> list[tuple[float, float]]:
    """Sorted, merged certain sub-arcs inside [0, 2*pi] (the arc-set shadow)."""
    pieces = []
    for lo, hi in _certain_intervals(arcs):
        hi = min(hi, lo + _TAU)
        if hi <= _TAU:
            pieces.append((lo, hi))
        else:
            pieces.append((lo, _TAU))
            pieces.append((0.0, hi - _TAU - _COVER_EPS))
    pieces.sort()
    merged: list[tuple[float, float]] = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def covers_circle(arcs: list[Arc], prec: int = 128) -> bool:
    """Certified circle cover: exact full-length shortcut, else interval sweep.

    The sweep runs on the universal cover: pieces are duplicated one period
    up and the chain must reach one full period past the first left
    endpoint, with a margin absorbing the float-pi error.
    """
    if any(_arc_is_full_circle(a) for a in arcs):
        return True
    pieces = _certain_intervals(arcs, prec)
    if not pieces:
        return False
    pieces.sort()
    doubled = pieces + [(lo + _TAU, hi + _TAU) for lo, hi in pieces]
    start = pieces[0][0]
    target = start + _TAU + _COVER_EPS
    reach = start
    for lo, hi in doubled:
        if lo > reach:
            return False
        reach = max(reach, hi)
        if reach >= target:
            return True
    return reach >= target


def verify_covering_by_grid(arcs: list[Arc], samples: int = 100_000) -> bool:
    """Independent covering check: every grid point lies strictly inside an arc."""
    if any(_arc_is_full_circle(a) for a in arcs):
        return True
    ivs = _certain_intervals(arcs)
    if not ivs:
        return False
    expanded = []
    for lo, hi in ivs:
        expanded.append((lo, hi))
        expanded.append((lo - _TAU, hi - _TAU))
        expanded.append((lo + _TAU, hi + _TAU))
    for s in range(samples):
        x = _TAU * s / samples
        if not any(lo < x < hi for lo, hi in expanded):
            return False
    return True


def rotation_orbit_gaps(count: int) -> list[float]:
    """Sorted circle gaps of the first `count` multiples of 2*theta."""
    if count < 1:
        raise ValueError("count must be >= 1")
    with mpmath.workprec(80):
        theta = mpmath.atan(mpmath.mpf(1) / 2)
        tau = 2 * mpmath.pi
        pts = sorted(float(mpmath.fmod(2 * k * theta, tau)) for k in range(1, count + 1))
    gaps = [pts[0] + 2 * math.pi - pts[-1]]
    for i in range(1, len(pts)):
        gaps.append(pts[i] - pts[i - 1])
    return sorted(gaps)


@dataclass
class FamilyCertificate:
    shift_steps: int          # support moved by -shift_steps * theta
    p0_pattern: str           # digit label prefix landing in block 0
    p1_pattern: str           # digit label prefix landing in block 1
    arc: Arc


@dataclass
class SimplicityCertificate:
    level_increase: int
    families: list[FamilyCertificate]

    def arcs(self) -> list[Arc]:
        return [f.arc for f in self.families]


def _family_pattern(block: int, m_steps: int, k: int) -> str:
    """Label prefix (coarsest digit first) of the proof family with shift 2k*theta.

    Inner-to-outer step sequence: block 0 uses 3^{2k} then 2^{M-2k}; block 1
    uses 3^{2k+1}, then 1, then 2^{M-2k-2}.
    """
    if block == 0:
        return "2" * (m_steps - 2 * k) + "3" * (2 * k)
    return "2" * (m_steps - 2 * k - 2) + "1" + "3" * (2 * k + 1)


def _walk_family(pattern: str, start_block: int,
                 rule: SubstitutionRule | None = None) -> tuple[int, Angle]:
    """Follow the inclusion steps named by a label prefix, innermost first.

    Returns the final block and the total support shift (the sum of the
    placement angles along the chain, negated).
    """
    rule = rule or pinwheel_rule()
    block = start_block
    total = Angle(0, 0)
    for ch in reversed(pattern):
        digit = int(ch)
        found = None
        for parent in (0, 1):
            if rule.child(parent, digit).proto == block:
                found = parent
                break
        if found is None:
            raise TowerError(f"digit {digit} cannot contain a type-{block} child")
        total = total + rule.child(found, digit).pose.angle
        block = found
    return block, -total


def simplicity_stage(arc: Arc, g: Generator, max_even: int = 200) -> tuple[int, SimplicityCertificate]:
    """Smallest even level increase whose proof families cover the circle.

    For every k up to (M-2)/2, one digit family lands in each block
    carrying the arc shifted by 2k*theta (sign set by the starting block);
    the type chains and angle shifts are re-derived from the substitution
    rule and the cover is certified with outward-rounded intervals.
    """
    with_prec = arc.hi.interval() - arc.lo.interval()
    if not with_prec > 0:
        raise ValueError("degenerate arc")
    for m_steps in range(2, max_even + 2, 2):
        families = []
        for k in range(0, (m_steps - 2) // 2 + 1):
            pat_a = _family_pattern(0, m_steps, k)
            pat_b = _family_pattern(1, m_steps, k)
            blk_a, shift_a = _walk_family(pat_a, g.proto)
            blk_b, shift_b = _walk_family(pat_b, g.proto)
            if {blk_a, blk_b} != {0, 1} or shift_a != shift_b:
                raise TowerError("family bookkeeping failed against the rule")
            if shift_a.q != 0 or abs(shift_a.k) != 2 * k:
                raise TowerError("family shift is not an even theta multiple")
            p0_pat, p1_pat = (pat_a, pat_b) if blk_a == 0 else (pat_b, pat_a)
            families.append(
                FamilyCertificate(shift_a.k, p0_pat, p1_pat, arc.shifted(shift_a.k))
            )
        if covers_circle([f.arc for f in families]):
            return m_steps, SimplicityCertificate(m_steps, families)
    raise TowerError(f"no even stage up to {max_even} covers the circle")
