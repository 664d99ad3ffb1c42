"""Deterministic property suites behind `pinwheel verify`.

Every suite uses fixed seeds and fixed grids so consecutive runs emit
byte-identical reports.  Each check is a named pass/fail entry; a suite
passes iff all its checks do.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exact import Angle, ExactComplex, QRoot5, unit_phase
from . import algebra as alg
from . import geometry as geo
from . import ktheory as kt
from . import tower as tw


def _check(checks: list, name: str, ok: bool, detail: str = "") -> None:
    checks.append({"name": name, "pass": bool(ok), "detail": detail})


def _rand_element(rng: random.Random, level: int, nterms: int = 3) -> alg.AlgebraElement:
    pool = [ExactComplex.of(1, 0), ExactComplex.of(0, 1),
            ExactComplex.of(Fraction(1, 2), 0), ExactComplex.of(-1, 1)]
    terms = {}
    for _ in range(nterms):
        g = alg.Generator(rng.randint(-2, 2), rng.randint(0, 1),
                          "".join(rng.choice("12345") for _ in range(level)),
                          "".join(rng.choice("12345") for _ in range(level)))
        terms[g] = rng.choice(pool)
    return alg.AlgebraElement(level, terms)


def suite_geometry() -> dict:
    checks: list = []
    rule = geo.pinwheel_rule()
    report = geo.verify_rule(rule)
    for clause, ok in report.as_dict().items():
        if clause != "passed":
            _check(checks, f"rule_{clause}", ok)
    _check(checks, "rule_matrix_2332", rule.type_matrix() == [[2, 3], [3, 2]])
    central = rule.child(0, 3)
    _check(checks, "central_child_R_theta",
           central.proto == 0 and central.pose.angle == Angle(1, 0))
    for n in range(4):
        patch = geo.iterate(0, n)
        rep = geo.patch_exact_report(patch)
        _check(checks, f"patch_N{n}_count", rep["tiles"] == 5 ** n)
        _check(checks, f"patch_N{n}_area", rep["area2"] == QRoot5(2 * 5 ** n))
        _check(checks, f"patch_N{n}_disjoint", rep["disjoint"])
    _check(checks, "central_angles",
           all(geo.label_angle(0, "3" * n) == Angle(n, 0) for n in range(9)))
    patch3 = geo.iterate(0, 3)
    ok_labels = all(geo.label_pose(0, lab) == t.pose for lab, t in patch3.tiles.items())
    _check(checks, "label_pose_consistency_N3", ok_labels)
    from .hull import separation_epsilon
    eps = separation_epsilon()
    _check(checks, "separation_value", eps == QRoot5(0, Fraction(2, 15)))
    punct = [t.puncture() for t in patch3.tiles.values()]
    eps2 = eps * eps
    sep_ok = all((punct[i] - punct[j]).norm2() >= eps2
                 for i in range(len(punct)) for j in range(i + 1, len(punct)))
    _check(checks, "separation_respected_N3", sep_ok)
    _check(checks, "primitivity_k1", geo.is_primitive(rule, 2) == 1)
    return _suite("geometry", checks)


def suite_algebra() -> dict:
    checks: list = []
    ctx = geo.iterate(0, 2)
    ks = [-1, 0, 1, 2]
    oracle_ok = True
    idx = 0
    for proto in (0, 1):
        for l1, m1, l2, m2 in itertools.product("12345", repeat=4):
            a = alg.AlgebraElement.from_generator(alg.Generator(ks[idx % 4], proto, l1, m1))
            b = alg.AlgebraElement.from_generator(alg.Generator(ks[(idx // 4) % 4], proto, l2, m2))
            if alg.convolution_oracle(a, b, ctx) != alg.multiply(a, b):
                oracle_ok = False
                break
            idx += 1
        if not oracle_ok:
            break
    _check(checks, "oracle_equivalence_level1_grid", oracle_ok, f"{idx} products")

    rng = random.Random(2024)
    lemma_ok = True
    for _ in range(200):
        level = rng.choice([1, 2])
        a, b, c = (_rand_element(rng, level) for _ in range(3))
        if alg.multiply(alg.multiply(a, b), c) != alg.multiply(a, alg.multiply(b, c)):
            lemma_ok = False
        if alg.adjoint(alg.multiply(a, b)) != alg.multiply(alg.adjoint(b), alg.adjoint(a)):
            lemma_ok = False
    _check(checks, "star_algebra_axioms", lemma_ok)

    pi_ok = True
    for proto in (0, 1):
        for l1, m1 in itertools.product("12345", repeat=2):
            g = alg.AlgebraElement.from_generator(alg.Generator(1, proto, l1, m1))
            if not alg.is_partial_isometry(g):
                pi_ok = False
    _check(checks, "partial_isometries", pi_ok)

    z_ok = True
    for proto in (0, 1):
        for l1, m1 in itertools.product("12345", repeat=2):
            g = alg.Generator(0, proto, l1, m1)
            want = unit_phase(geo.label_angle(proto, l1) - geo.label_angle(proto, m1))
            if alg.z_commutation_check(g) != want:
                z_ok = False
    _check(checks, "z_commutation_level1", z_ok)

    ident_ok = True
    for level in (0, 1, 2):
        ident = alg.identity(level)
        for _ in range(5):
            a = _rand_element(rng, level)
            if alg.multiply(ident, a) != a or alg.multiply(a, ident) != a:
                ident_ok = False
    _check(checks, "identity_laws", ident_ok)
    return _suite("algebra", checks)


def suite_tower() -> dict:
    checks: list = []
    idx_ok = all(tw.inclusion_index(p) == tw.closed_form_index(p) for p in (0, 1))
    _check(checks, "inclusion_index_closed_form", idx_ok)

    hom_ok = True
    ks = [-1, 0, 1, 2]
    pairs = list(itertools.product("12345", repeat=2))
    for proto in (0, 1):
        for i, (l1, m1) in enumerate(pairs):
            for j, (l2, m2) in enumerate(pairs):
                a = alg.AlgebraElement.from_generator(
                    alg.Generator(ks[(i + j) % 4], proto, l1, m1))
                b = alg.AlgebraElement.from_generator(
                    alg.Generator(ks[(i * 5 + j) % 4], proto, l2, m2))
                if not tw.psi_hom_check(a, b):
                    hom_ok = False
    _check(checks, "psi_hom_level1_exhaustive", hom_ok, "1250 pairs")

    rng = random.Random(777)
    hom2_ok = all(tw.psi_hom_check(_rand_element(rng, 2), _rand_element(rng, 2))
                  for _ in range(100))
    _check(checks, "psi_hom_level2_random", hom2_ok)

    phi_ok = all(tw.phi(alg.identity(level)) == alg.identity(level + 1)
                 for level in (0, 1, 2))
    for _ in range(100):
        level = rng.choice([0, 1])
        a, b = _rand_element(rng, level), _rand_element(rng, level)
        if tw.phi(alg.multiply(a, b)) != alg.multiply(tw.phi(a), tw.phi(b)):
            phi_ok = False
        if tw.phi(alg.adjoint(a)) != alg.adjoint(tw.phi(a)):
            phi_ok = False
    _check(checks, "phi_unital_star_multiplicative", phi_ok)

    compat_ok = True
    for _ in range(50):
        a, b = _rand_element(rng, 1, 2), _rand_element(rng, 1, 2)
        if tw.psi(tw.phi(a)) * tw.psi(tw.phi(b)) != tw.psi(tw.phi(alg.multiply(a, b))):
            compat_ok = False
    _check(checks, "psi_phi_compatibility", compat_ok)

    g = alg.AlgebraElement.from_generator(alg.Generator(1, 0, "3", "5"))
    lo, hi = tw.norm_estimate(tw.psi(g))
    _check(checks, "generator_norm", 1 - 1e-9 <= lo <= hi <= 1 + 1e-6,
           f"[{lo!r}, {hi!r}]")
    z = alg.z_element(0)
    lo2, hi2 = tw.norm_estimate(tw.psi(z + alg.adjoint(z)))
    _check(checks, "z_plus_zstar_norm", abs(lo2 - 2) < 1e-6 and abs(hi2 - 2) < 1e-6,
           f"[{lo2!r}, {hi2!r}]")

    m_full, _ = tw.simplicity_stage(tw.full_circle_arc(), alg.Generator(1, 0, "3", "5"))
    _check(checks, "simplicity_full_circle_M2", m_full == 2)
    m_tenth, cert = tw.simplicity_stage(tw.arc_of_length(Fraction(1, 10)),
                                        alg.Generator(1, 0, "3", "5"))
    cover_ok = tw.covers_circle(cert.arcs()) and tw.verify_covering_by_grid(cert.arcs())
    _check(checks, "simplicity_tenth_arc", m_tenth % 2 == 0 and m_tenth <= 40 and cover_ok,
           f"M={m_tenth}")
    return _suite("tower", checks)


def suite_ktheory() -> dict:
    checks: list = []
    by_invariant: dict = {}
    respect = True
    inject = True
    for stage in range(5):
        for v1 in range(-20, 21):
            for v2 in range(-20, 21):
                e = kt.LimitElement(stage, (v1, v2))
                key = kt.invariants(e)
                canon = e.canonical()
                prev = by_invariant.get(key)
                if prev is None:
                    by_invariant[key] = canon
                elif prev != canon:
                    respect = False
    canon_seen: dict = {}
    for key, canon in by_invariant.items():
        if canon in canon_seen:
            inject = False
        canon_seen[canon] = key
    _check(checks, "invariants_respect_equivalence", respect, f"{len(by_invariant)} classes")
    _check(checks, "invariants_injective", inject)

    m = kt.CONNECTING
    _check(checks, "eigen_functionals",
           (m[0][0] + m[1][0], m[0][1] + m[1][1]) == (5, 5)
           and (m[0][0] - m[1][0], m[0][1] - m[1][1]) == (-1, 1))

    report = kt.nonsplit_certificate(5 ** 6)
    _check(checks, "nonsplit_certificate", not report.splits, f"depth={report.depth}")
    diag = kt.nonsplit_certificate(5 ** 3, diagonal_control=True)
    _check(checks, "diagonal_control_splits", diag.splits)
    quot_ok = all(
        kt.quotient_map(kt.LimitElement(n, (1, 0))).as_fraction() == Fraction(1, 5 ** n)
        for n in range(9)
    )
    _check(checks, "quotient_denominators", quot_ok)
    parity_ok = True
    rng = random.Random(99)
    for _ in range(300):
        e = kt.LimitElement(rng.randint(0, 4), (rng.randint(-40, 40), rng.randint(-40, 40)))
        p = kt.invariants(e)
        if (p.q.numerator - p.r) % 2:
            parity_ok = False
    _check(checks, "parity_invariant", parity_ok)
    return _suite("ktheory", checks)


def _suite(name: str, checks: list) -> dict:
    return {"suite": name, "checks": checks, "passed": all(c["pass"] for c in checks)}


SUITES = {
    "geometry": suite_geometry,
    "algebra": suite_algebra,
    "tower": suite_tower,
    "ktheory": suite_ktheory,
}


def run_suites(which: str) -> dict:
    if which == "all":
        reports = [SUITES[name]() for name in ("geometry", "algebra", "tower", "ktheory")]
        return {"suites": reports, "passed": all(r["passed"] for r in reports)}
    if which not in SUITES:
        raise ValueError(f"unknown suite {which!r}")
    report = SUITES[which]()
    return {"suites": [report], "passed": report["passed"]}
