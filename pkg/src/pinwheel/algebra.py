"""The symbolic *-algebra spanned by z^k e_N(p, row, col) with exact coefficients.

Products follow the supertile relations: generators with different proto
blocks or mismatched inner labels annihilate, matching labels compose with
an exact unit phase from the tile angles.  A pointwise convolution oracle
over a concrete patch provides an independent check of the product.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import Angle, C_ONE, ExactComplex, QRoot5, unit_phase
from .geometry import Patch, label_angle, label_type


class LevelMismatchError(Exception):
    pass


class OracleError(Exception):
    pass


_ANGLE_CACHE: dict[tuple[int, str], Angle] = {}
_TYPE_CACHE: dict[tuple[int, str], int] = {}


def _angle(proto: int, label: str) -> Angle:
    key = (proto, label)
    if key not in _ANGLE_CACHE:
        _ANGLE_CACHE[key] = label_angle(proto, label)
    return _ANGLE_CACHE[key]


def _type(proto: int, label: str) -> int:
    key = (proto, label)
    if key not in _TYPE_CACHE:
        _TYPE_CACHE[key] = label_type(proto, label)
    return _TYPE_CACHE[key]


@dataclass(frozen=True)
class Generator:
    """z^k e_N(p, row, col); the level N is the label length."""

    k: int
    proto: int
    row: str
    col: str

    @property
    def level(self) -> int:
        return len(self.row)

    def sort_key(self):
        return (self.proto, self.row, self.col, self.k)


class AlgebraElement:
    """Finite linear combination of generators at one level, coefficients exact."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms: dict[Generator, ExactComplex] | None = None):
        self.level = level
        self.terms: dict[Generator, ExactComplex] = {}
        if terms:
            for g, c in terms.items():
                if len(g.row) != level or len(g.col) != level:
                    raise LevelMismatchError("generator level differs from element level")
                if c:
                    self.terms[g] = c

    @classmethod
    def from_generator(cls, g: Generator, coeff: ExactComplex = C_ONE) -> "AlgebraElement":
        return cls(g.level, {g: coeff})

    def sorted_terms(self) -> list[tuple[Generator, ExactComplex]]:
        return sorted(self.terms.items(), key=lambda it: it[0].sort_key())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.level != other.level:
            raise LevelMismatchError("cannot add elements of different levels")
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g)
            out[g] = c if s is None else s + c
        return AlgebraElement(self.level, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scaled(ExactComplex.of(-1, 0))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def scaled(self, coeff: ExactComplex) -> "AlgebraElement":
        return AlgebraElement(self.level, {g: c * coeff for g, c in self.terms.items()})

    def adjoint(self) -> "AlgebraElement":
        return adjoint(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({to_text(self)})"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the generator relations.

    Nonzero only on matching proto blocks with col(a) == row(b); the
    surviving term is z^{k1+k2} e(p, row(a), col(b)) scaled by
    e^{i k2 (angle(col a) - angle(row a))}.
    """
    if a.level != b.level:
        raise LevelMismatchError("cannot multiply elements of different levels")
    by_row: dict[tuple[int, str], list[tuple[Generator, ExactComplex]]] = {}
    for g2, c2 in b.terms.items():
        by_row.setdefault((g2.proto, g2.row), []).append((g2, c2))
    out: dict[Generator, ExactComplex] = {}
    for g1, c1 in a.terms.items():
        partners = by_row.get((g1.proto, g1.col))
        if not partners:
            continue
        shift = _angle(g1.proto, g1.col) - _angle(g1.proto, g1.row)
        for g2, c2 in partners:
            phase = unit_phase(shift.scaled(g2.k))
            g = Generator(g1.k + g2.k, g1.proto, g1.row, g2.col)
            add = c1 * c2 * phase
            s = out.get(g)
            out[g] = add if s is None else s + add
    return AlgebraElement(a.level, out)


def adjoint(a: AlgebraElement) -> AlgebraElement:
    """Antilinear involution; the phase convention makes g g* = e(row, row)."""
    out: dict[Generator, ExactComplex] = {}
    for g, c in a.terms.items():
        shift = _angle(g.proto, g.col) - _angle(g.proto, g.row)
        phase = unit_phase(shift.scaled(g.k))
        gg = Generator(-g.k, g.proto, g.col, g.row)
        add = c.conjugate() * phase
        s = out.get(gg)
        out[gg] = add if s is None else s + add
    return AlgebraElement(a.level, out)


def all_labels(level: int):
    return ("".join(ds) for ds in itertools.product("12345", repeat=level))


def identity(level: int) -> AlgebraElement:
    terms = {}
    for proto in (0, 1):
        for lab in all_labels(level):
            terms[Generator(0, proto, lab, lab)] = C_ONE
    return AlgebraElement(level, terms)


def z_element(level: int) -> AlgebraElement:
    """The angle-character unitary as a level-N diagonal sum."""
    terms = {}
    for proto in (0, 1):
        for lab in all_labels(level):
            terms[Generator(1, proto, lab, lab)] = C_ONE
    return AlgebraElement(level, terms)


def z_commutation_check(g: Generator) -> ExactComplex:
    """The phase in z e = phase (e z); asserts the symbolic identity exactly."""
    phase = unit_phase(_angle(g.proto, g.row) - _angle(g.proto, g.col))
    e = AlgebraElement.from_generator(g)
    z = z_element(g.level)
    left = multiply(z, e)
    right = multiply(e, z).scaled(phase)
    if left != right:
        raise AssertionError("z-commutation relation violated")
    return phase


def is_projection(a: AlgebraElement) -> bool:
    return multiply(a, a) == a and adjoint(a) == a


def is_partial_isometry(a: AlgebraElement) -> bool:
    return multiply(multiply(a, adjoint(a)), a) == a


# ---------------------------------------------------------------------------
# independent convolution oracle
# ---------------------------------------------------------------------------


Laurent = dict[int, ExactComplex]


def _laurent_mul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = k1 + k2
            add = c1 * c2
            s = out.get(k)
            out[k] = add if s is None else s + add
    return {k: c for k, c in out.items() if c}


class _Context:
    """Supertile bookkeeping for a context patch omega^M(p) at level N."""

    def __init__(self, context: Patch, level: int):
        if context.level < level + 1:
            raise OracleError("context must be at least one level above the elements")
        self.level = level
        self.depth = context.level - level
        self.root = context.root
        self.prefixes: dict[int, list[str]] = {0: [], 1: []}
        for prefix in all_labels(self.depth):
            self.prefixes[_type(context.root, prefix)].append(prefix)
        self.labels = set(context.tiles)

    def tile_phase(self, full_label: str, k: int) -> ExactComplex:
        return unit_phase(_angle(self.root, full_label).scaled(k))


def _represent(a: AlgebraElement, ctx: _Context) -> dict[tuple[str, str], Laurent]:
    """Pointwise values on pairs of punctures, graded by the supertile rotation.

    The value of z^k e_N(p,l,m) on the pair anchored at tile `prefix+l` is
    e^{ik angle(tile)} times the k-th power of the formal rotation variable.
    """
    rep: dict[tuple[str, str], Laurent] = {}
    for g, c in a.terms.items():
        for prefix in ctx.prefixes[g.proto]:
            key = (prefix + g.row, prefix + g.col)
            poly = rep.setdefault(key, {})
            add = c * ctx.tile_phase(key[0], g.k)
            s = poly.get(g.k)
            poly[g.k] = add if s is None else s + add
    return rep


def _read_back(rep: dict[tuple[str, str], Laurent], ctx: _Context) -> AlgebraElement:
    depth = ctx.depth
    candidates: dict[Generator, ExactComplex] = {}
    seen: dict[Generator, set[str]] = {}
    for (lab_a, lab_c), poly in rep.items():
        if lab_a[:depth] != lab_c[:depth]:
            raise OracleError("convolution left the supertile-local span")
        prefix = lab_a[:depth]
        proto = _type(ctx.root, prefix)
        row, col = lab_a[depth:], lab_c[depth:]
        for k, beta in poly.items():
            if not beta:
                continue
            coeff = beta * ctx.tile_phase(lab_a, k).conjugate()
            g = Generator(k, proto, row, col)
            if g in candidates:
                if candidates[g] != coeff:
                    raise OracleError("inconsistent coefficients across supertiles")
            else:
                candidates[g] = coeff
            seen.setdefault(g, set()).add(prefix)
    for g, prefixes in seen.items():
        if prefixes != set(ctx.prefixes[g.proto]):
            raise OracleError("generator support misses some supertiles")
    return AlgebraElement(ctx.level, candidates)


def convolution_oracle(a: AlgebraElement, b: AlgebraElement, context: Patch) -> AlgebraElement:
    """Pointwise groupoid convolution on a concrete patch, read back to generators.

    Used only as an independent oracle for :func:`multiply`; the convolution
    sums f(T,T'') g(T'',T') over the punctures of the context.
    """
    if a.level != b.level:
        raise LevelMismatchError("cannot convolve elements of different levels")
    ctx = _Context(context, a.level)
    ra = _represent(a, ctx)
    rb = _represent(b, ctx)
    by_first: dict[str, list[tuple[str, Laurent]]] = {}
    for (x, y), poly in rb.items():
        by_first.setdefault(x, []).append((y, poly))
    out: dict[tuple[str, str], Laurent] = {}
    for (x, y), pa in ra.items():
        for (z, pb) in by_first.get(y, []):
            prod = _laurent_mul(pa, pb)
            if not prod:
                continue
            key = (x, z)
            if key in out:
                cur = out[key]
                for k, c in prod.items():
                    s = cur.get(k)
                    cur[k] = c if s is None else s + c
            else:
                out[key] = dict(prod)
    out = {key: {k: c for k, c in poly.items() if c} for key, poly in out.items()}
    out = {key: poly for key, poly in out.items() if poly}
    return _read_back(out, ctx)


def induced_action(
    a: AlgebraElement,
    vector: dict[str, ExactComplex],
    context: Patch,
) -> tuple[dict[str, ExactComplex], int]:
    """Apply the induced representation to a finitely supported vector.

    Vector entries are indexed by context tile labels (one per puncture).
    Returns the image vector and the count of dropped boundary terms, which
    is zero for supertile-local elements.
    """
    ctx = _Context(context, a.level)
    lost = 0
    out: dict[str, ExactComplex] = {}
    for g, c in a.terms.items():
        for prefix in ctx.prefixes[g.proto]:
            src = prefix + g.col
            dst = prefix + g.row
            if dst not in ctx.labels:
                lost += 1
                continue
            xi = vector.get(src)
            if xi is None or not xi:
                continue
            add = c * ctx.tile_phase(dst, g.k) * xi
            s = out.get(dst)
            out[dst] = add if s is None else s + add
    return {lab: v for lab, v in out.items() if v}, lost


# ---------------------------------------------------------------------------
# text expression format
# ---------------------------------------------------------------------------


_QR5_RE = re.compile(r"^([+-]?\d+(?:/\d+)?)([+-]\d+(?:/\d+)?)r5$")
_TERM_RE = re.compile(
    r"^\(([^,]+),([^)]+)\)\*z\^(-?\d+)\*e\[(\d+)\]\((\d);([1-5]*),([1-5]*)\)$"
)


def _qr5_to_text(x: QRoot5) -> str:
    sign = "+" if x.b >= 0 else "-"
    return f"{x.a}{sign}{abs(x.b)}r5"


def _qr5_parse(text: str) -> QRoot5:
    m = _QR5_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad Q(sqrt5) literal: {text!r}")
    return QRoot5(Fraction(m.group(1)), Fraction(m.group(2)))


def to_text(a: AlgebraElement) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for g, c in a.sorted_terms():
        parts.append(
            f"({_qr5_to_text(c.re)},{_qr5_to_text(c.im)})*z^{g.k}"
            f"*e[{g.level}]({g.proto};{g.row},{g.col})"
        )
    return " + ".join(parts)


def parse_element(text: str) -> AlgebraElement:
    text = text.strip()
    if text == "0":
        raise ValueError("zero literal needs an explicit level; use parse_element_at")
    terms: dict[Generator, ExactComplex] = {}
    level = None
    for pos, part in enumerate(text.split(" + ")):
        m = _TERM_RE.match(part.strip())
        if not m:
            raise ValueError(f"cannot parse term {pos}: {part.strip()!r}")
        re_part = _qr5_parse(m.group(1))
        im_part = _qr5_parse(m.group(2))
        k = int(m.group(3))
        lvl = int(m.group(4))
        proto = int(m.group(5))
        row, col = m.group(6), m.group(7)
        if len(row) != lvl or len(col) != lvl:
            raise ValueError(f"label length differs from level in term {pos}")
        if proto not in (0, 1):
            raise ValueError(f"bad proto in term {pos}")
        if level is None:
            level = lvl
        elif level != lvl:
            raise ValueError("mixed levels in expression")
        g = Generator(k, proto, row, col)
        c = ExactComplex(re_part, im_part)
        terms[g] = terms[g] + c if g in terms else c
    assert level is not None
    return AlgebraElement(level, terms)
