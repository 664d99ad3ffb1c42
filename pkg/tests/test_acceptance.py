"""Acceptance criteria, one test per criterion with its stated tolerance.

Each test prints a single pass/fail line; timings are enforced where the
criterion states a budget.
"""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from pinwheel.exact import Angle, ExactComplex, QRoot5, unit_phase
from pinwheel import algebra as alg
from pinwheel import geometry as geo
from pinwheel import ktheory as kt
from pinwheel import tower as tw
from pinwheel.hull import separation_epsilon

CI = ExactComplex.of


@contextmanager
def criterion(num: int, name: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num:02d} {name}: FAIL")
        raise
    print(f"ACCEPTANCE {num:02d} {name}: PASS")


def gen(k, proto, row, col) -> alg.AlgebraElement:
    return alg.AlgebraElement.from_generator(alg.Generator(k, proto, row, col))


def test_criterion_01_decomposition_discovery():
    with criterion(1, "decomposition discovery"):
        t0 = time.monotonic()
        cands = geo.find_decompositions(geo.PROTOTILES[0])
        assert time.monotonic() - t0 < 60.0
        assert len(cands) >= 1
        rule = geo.pinwheel_rule(refresh=True)
        report = geo.verify_rule(rule)
        assert report.passed, report.as_dict()
        assert rule.type_matrix() == [[2, 3], [3, 2]]
        central = rule.child(0, 3)
        assert central.proto == 0 and central.pose.angle == Angle(1, 0)


def test_criterion_02_patch_counts_and_exactness():
    with criterion(2, "patch counts and exactness"):
        m = [[2, 3], [3, 2]]
        power = [[1, 0], [0, 1]]
        for n in range(0, 6):
            patch = geo.iterate(0, n)
            rep = geo.patch_exact_report(patch)
            assert rep["tiles"] == 5 ** n
            assert rep["area2"] == QRoot5(2 * 5 ** n)
            assert rep["disjoint"] is True
            assert geo.type_counts(patch) == (power[0][0], power[1][0])
            power = [[sum(m[i][t] * power[t][j] for t in range(2)) for j in range(2)]
                     for i in range(2)]
        t0 = time.monotonic()
        patch6 = geo.iterate(0, 6)
        rep6 = geo.patch_exact_report(patch6)
        elapsed = time.monotonic() - t0
        assert rep6["tiles"] == 5 ** 6
        assert rep6["area2"] == QRoot5(2 * 5 ** 6)
        assert rep6["disjoint"] is True
        assert geo.type_counts(patch6) == (power[0][0], power[1][0])
        assert len(geo.iterate(0, 2).tiles) == 25
        assert elapsed < 30.0, f"N=6 exactness took {elapsed:.1f}s"


def test_criterion_03_central_tile_rotation():
    with criterion(3, "central tile rotation"):
        for n in range(0, 9):
            assert geo.label_angle(0, "3" * n) == Angle(n, 0)


def test_criterion_04_algebra_oracle_equivalence():
    with criterion(4, "algebra oracle equivalence"):
        t0 = time.monotonic()
        ctx2 = geo.iterate(0, 2)
        ks = (-1, 0, 1, 2)
        products = 0
        # all chained label triples in both blocks, all 16 k-combinations
        for proto in (0, 1):
            for l, m, m2 in itertools.product("12345", repeat=3):
                for k1, k2 in itertools.product(ks, repeat=2):
                    a = gen(k1, proto, l, m)
                    b = gen(k2, proto, m, m2)
                    assert alg.convolution_oracle(a, b, ctx2) == alg.multiply(a, b)
                    products += 1
        assert products == 4000
        # annihilating pairs: mismatched labels and mismatched blocks
        rng = random.Random(404)
        for _ in range(200):
            a = gen(rng.choice(ks), rng.randint(0, 1),
                    rng.choice("12345"), rng.choice("12345"))
            b = gen(rng.choice(ks), rng.randint(0, 1),
                    rng.choice("12345"), rng.choice("12345"))
            assert alg.convolution_oracle(a, b, ctx2) == alg.multiply(a, b)
        ctx3 = geo.iterate(0, 3)
        for _ in range(500):
            a = gen(rng.randint(-2, 3), rng.randint(0, 1),
                    "".join(rng.choice("12345") for _ in range(2)),
                    "".join(rng.choice("12345") for _ in range(2)))
            b = gen(rng.randint(-2, 3), rng.randint(0, 1),
                    "".join(rng.choice("12345") for _ in range(2)),
                    "".join(rng.choice("12345") for _ in range(2)))
            assert alg.convolution_oracle(a, b, ctx3) == alg.multiply(a, b)
        assert time.monotonic() - t0 < 60.0


def _rand_elem(rng, level, nterms=3):
    pool = [CI(1, 0), CI(0, 1), CI(Fraction(1, 2), 0), CI(-1, 1),
            ExactComplex(QRoot5(0, 1), QRoot5(Fraction(1, 3)))]
    terms = {}
    for _ in range(nterms):
        g = alg.Generator(rng.randint(-2, 2), rng.randint(0, 1),
                          "".join(rng.choice("12345") for _ in range(level)),
                          "".join(rng.choice("12345") for _ in range(level)))
        terms[g] = rng.choice(pool)
    return alg.AlgebraElement(level, terms)


def test_criterion_05_relations_suite():
    with criterion(5, "generator relations suite"):
        rng = random.Random(505)
        cases = 0
        # relations (i) and (ii): annihilation
        for _ in range(150):
            level = rng.choice([1, 2])
            la = "".join(rng.choice("12345") for _ in range(level))
            lb = "".join(rng.choice("12345") for _ in range(level))
            lc = "".join(rng.choice("12345") for _ in range(level))
            ld = "".join(rng.choice("12345") for _ in range(level))
            k1, k2 = rng.randint(-2, 2), rng.randint(-2, 2)
            assert alg.multiply(gen(k1, 0, la, lb), gen(k2, 1, lc, ld)).is_zero()
            cases += 1
            if lb != lc:
                assert alg.multiply(gen(k1, 0, la, lb), gen(k2, 0, lc, ld)).is_zero()
                cases += 1
        # relations (iii)/(iv): chained product with the exact phase
        for _ in range(250):
            level = rng.choice([1, 2])
            la, lb, lc = ("".join(rng.choice("12345") for _ in range(level))
                          for _ in range(3))
            proto = rng.randint(0, 1)
            k1, k2 = rng.randint(-2, 2), rng.randint(-2, 2)
            prod = alg.multiply(gen(k1, proto, la, lb), gen(k2, proto, lb, lc))
            shift = geo.label_angle(proto, lb) - geo.label_angle(proto, la)
            want = gen(k1 + k2, proto, la, lc).scaled(unit_phase(shift.scaled(k2)))
            assert prod == want
            cases += 1
        # partial isometries and projections
        for _ in range(250):
            level = rng.choice([1, 2])
            g = alg.Generator(rng.randint(-3, 3), rng.randint(0, 1),
                              "".join(rng.choice("12345") for _ in range(level)),
                              "".join(rng.choice("12345") for _ in range(level)))
            e = alg.AlgebraElement.from_generator(g)
            assert alg.multiply(alg.multiply(e, alg.adjoint(e)), e) == e
            assert alg.is_projection(alg.multiply(e, alg.adjoint(e)))
            assert alg.is_projection(alg.multiply(alg.adjoint(e), e))
            cases += 3
        # z-commutation phases
        for _ in range(200):
            level = rng.choice([1, 2])
            g = alg.Generator(0, rng.randint(0, 1),
                              "".join(rng.choice("12345") for _ in range(level)),
                              "".join(rng.choice("12345") for _ in range(level)))
            want = unit_phase(geo.label_angle(g.proto, g.row)
                              - geo.label_angle(g.proto, g.col))
            assert alg.z_commutation_check(g) == want
            cases += 1
        # identity element laws
        for _ in range(100):
            level = rng.choice([0, 1, 2])
            ident = alg.identity(level)
            a = _rand_elem(rng, level)
            assert alg.multiply(ident, a) == a
            assert alg.multiply(a, ident) == a
            cases += 2
        assert cases >= 1000, cases


def test_criterion_06_tower():
    with criterion(6, "tower homomorphisms"):
        ks = (-1, 0, 1, 2)
        pairs = list(itertools.product("12345", repeat=2))
        for proto in (0, 1):
            for i, (l1, m1) in enumerate(pairs):
                for j, (l2, m2) in enumerate(pairs):
                    a = gen(ks[(i + j) % 4], proto, l1, m1)
                    b = gen(ks[(i * 5 + j) % 4], proto, l2, m2)
                    assert tw.psi_hom_check(a, b)
        rng = random.Random(606)
        for _ in range(500):
            assert tw.psi_hom_check(_rand_elem(rng, 2), _rand_elem(rng, 2))
        for level in (0, 1, 2):
            assert tw.phi(alg.identity(level)) == alg.identity(level + 1)
        for _ in range(500):
            level = rng.choice([0, 1])
            a, b = _rand_elem(rng, level), _rand_elem(rng, level)
            assert tw.phi(alg.multiply(a, b)) == alg.multiply(tw.phi(a), tw.phi(b))
        for proto in (0, 1):
            assert tw.inclusion_index(proto) == tw.closed_form_index(proto)
        for _ in range(200):
            level = rng.choice([0, 1])
            a, b = _rand_elem(rng, level, 2), _rand_elem(rng, level, 2)
            assert tw.psi(tw.phi(a)) * tw.psi(tw.phi(b)) == tw.psi(tw.phi(alg.multiply(a, b)))


def test_criterion_07_norms():
    with criterion(7, "norm estimates"):
        for g in (gen(0, 0, "3", "5"), gen(2, 1, "1", "4"), gen(-1, 0, "2", "2")):
            lo, hi = tw.norm_estimate(tw.psi(g))
            assert 1 - 1e-9 <= lo <= hi <= 1 + 1e-6, (lo, hi)
        z = alg.z_element(0)
        lo, hi = tw.norm_estimate(tw.psi(z + alg.adjoint(z)))
        assert abs(lo - 2.0) < 1e-6 and abs(hi - 2.0) < 1e-6, (lo, hi)


def test_criterion_08_simplicity():
    with criterion(8, "simplicity covering search"):
        g = alg.Generator(1, 0, "3", "5")
        t0 = time.monotonic()
        m, cert = tw.simplicity_stage(tw.arc_of_length(Fraction(1, 10)), g)
        elapsed = time.monotonic() - t0
        assert m % 2 == 0 and m <= 40, m
        assert tw.covers_circle(cert.arcs())
        assert tw.verify_covering_by_grid(cert.arcs())
        assert elapsed < 5.0, f"{elapsed:.2f}s"
        m_full, _ = tw.simplicity_stage(tw.full_circle_arc(), g)
        assert m_full == 2


def test_criterion_09_ktheory():
    with criterion(9, "k-theory invariants"):
        by_invariant: dict = {}
        for stage in range(5):
            for v1 in range(-20, 21):
                for v2 in range(-20, 21):
                    e = kt.LimitElement(stage, (v1, v2))
                    key = kt.invariants(e)
                    canon = e.canonical()
                    if key in by_invariant:
                        assert by_invariant[key] == canon
                    else:
                        by_invariant[key] = canon
        seen: dict = {}
        for key, canon in by_invariant.items():
            assert canon not in seen
            seen[canon] = key
        m = kt.CONNECTING
        assert (m[0][0] + m[1][0], m[0][1] + m[1][1]) == (5, 5)
        assert (m[0][0] - m[1][0], m[0][1] - m[1][1]) == (-1, 1)
        report = kt.nonsplit_certificate(5 ** 6)
        assert not report.splits and report.depth == 7
        diag = kt.nonsplit_certificate(5 ** 3, diagonal_control=True)
        assert diag.splits and diag.section is not None
        for n in range(9):
            q = kt.quotient_map(kt.LimitElement(n, (1, 0)))
            assert q.as_fraction() == Fraction(1, 5 ** n)


def test_criterion_10_flc_census():
    with criterion(10, "finite local complexity census"):
        t0 = time.monotonic()
        c5 = geo.adjacency_census(geo.iterate(0, 5))
        c6 = geo.adjacency_census(geo.iterate(0, 6))
        elapsed = time.monotonic() - t0
        assert len(c5) == len(c6), (len(c5), len(c6))
        assert set(c5) == set(c6)
        assert all(v > 0 for v in c5.values())
        assert elapsed < 120.0, f"{elapsed:.1f}s"


def test_criterion_11_separation_constant():
    with criterion(11, "separation constant"):
        eps = separation_epsilon()
        assert eps == QRoot5(0, Fraction(2, 15))  # 2*sqrt5/15
        eps2 = eps * eps
        punct = [t.puncture() for t in geo.iterate(0, 3).tiles.values()]
        for i in range(len(punct)):
            for j in range(i + 1, len(punct)):
                assert (punct[i] - punct[j]).norm2() >= eps2


def test_criterion_12_determinism(tmp_path):
    with criterion(12, "verify-suite determinism"):
        outputs = []
        for run in (1, 2):
            path = tmp_path / f"report{run}.json"
            proc = subprocess.run(
                [sys.executable, "-m", "pinwheel.cli", "verify", "--suite", "all",
                 "--out", str(path)],
                capture_output=True,
            )
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]
        report = json.loads(outputs[0])
        assert report["passed"] is True
