"""Acceptance checks. Each test records one pass/fail line, printed at the end of the run."""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from carlitz_euler import suites
from carlitz_euler.base_arith import MonicIdeal, parse_poly
from carlitz_euler.cyclo_field import SubfieldSpec, cyclo_field
from carlitz_euler.cyclo_relations import verify_congruence, verify_distribution, verify_stark_norm
from carlitz_euler.euler_system import EulerSystem, make_config, telescoping_holds
from carlitz_euler.lfunction import l_polynomial, stark_check

from conftest import CRITERIA


def I(text, q=2):
    return MonicIdeal(parse_poly(text, q))


@contextmanager
def criterion(n, title, limit):
    t0 = time.perf_counter()
    try:
        yield
        dt = time.perf_counter() - t0
        assert dt < limit, f"took {dt:.1f}s, limit {limit}s"
    except BaseException as exc:
        dt = time.perf_counter() - t0
        CRITERIA.append(f"criterion {n}: FAIL  {title} ({dt:.1f}s): {exc}")
        print(CRITERIA[-1])
        raise
    CRITERIA.append(f"criterion {n}: PASS  {title} ({dt:.1f}s < {limit}s)")
    print(CRITERIA[-1])


def all_pass(checks):
    bad = [c.name for c in checks if not c.passed]
    assert checks and not bad, f"failed: {bad[:5]}"


def test_criterion_01_twisted_ring_laws():
    with criterion(1, "twisted ring laws, q in {2,3,4}", 5):
        rng = random.Random(1)
        checks = []
        for q in (2, 3, 4):
            checks += suites.ring_laws(q, 1000, rng)
        all_pass(checks)
        assert {c.name.split("[")[0] for c in checks} == {
            "twisted-assoc", "twisted-distrib", "twisted-commute", "twisted-divmod"}


def test_criterion_02_carlitz_laws():
    with criterion(2, "Carlitz homomorphism and constant terms", 5):
        rng = random.Random(2)
        checks = []
        for q in (2, 3):
            checks += suites.carlitz_laws(q, rng, pairs=200, ideals=100)
        all_pass(checks)


def test_criterion_03_torsion_structure():
    with criterion(3, "torsion structure, deg m <= 3, q in {2,3}", 60):
        checks = suites.torsion_grid(2, 3) + suites.torsion_grid(3, 3)
        all_pass(checks)
        assert len(checks) == (2 + 4 + 8) + (3 + 9 + 27)


def test_criterion_04_distribution():
    with criterion(4, "distribution relation, deg mq <= 4", 300):
        r = verify_distribution(I("T"), I("T+1"))
        assert r.equal and r.lhs == r.rhs == "1"
        all_pass(suites.relation_grid("distribution", (2, 3), 4))


def test_criterion_05_congruence():
    with criterion(5, "Frobenius congruence, deg mq <= 4", 300):
        r = verify_congruence(I("T"), I("T+1"))
        assert r.equal and r.lhs == r.rhs == "T+1"
        all_pass(suites.relation_grid("congruence", (2, 3), 4))


def test_criterion_06_stark_norm():
    with criterion(6, "Stark unit norm identity", 60):
        all_pass(suites.stark_norm_grid((2, 3), 3))
        # q = 3: the norm is lambda * sigma_{-1}(lambda), written out by hand
        m = I("T^2+1", 3)
        K = cyclo_field(m)
        lam = K.lam
        prod = lam * K.galois(parse_poly("2", 3), lam)
        assert prod == -(lam ** 2) and prod != lam ** 2
        assert SubfieldSpec.H(K).contains(prod) and not SubfieldSpec.H(K).contains(lam)
        assert verify_stark_norm(m).equal


def test_criterion_07_stark_l_values():
    with criterion(7, "Stark L-value formula, deg m <= 3, all S", 600):
        (row,) = stark_check(I("T"))
        assert row.character.is_trivial() and row.l_value == row.unit_side
        assert str(row.l_value) == "-1"
        rows = [r for r in stark_check(I("T^2")) if not r.character.is_trivial()]
        assert rows and all(str(r.l_value) == str(r.unit_side) == "1" for r in rows)
        all_pass(suites.stark_grid((2, 3), 3))


def _cfg8():
    return make_config(I("T^2"), 3, I("T+1"))


def test_criterion_08_euler_axioms():
    with criterion(8, "Euler system axioms E1-E4", 600):
        one, ell = I("1"), I("T^4+T^3+1")
        E = EulerSystem(_cfg8(), [ell])
        assert E.K_of(ell).degree == 6
        checks = [E.verify_E1(one), E.verify_E1(ell), E.verify_E2(one), E.verify_E2(ell),
                  E.verify_E3(one, ell), E.verify_E4(one, ell)]
        all_pass(checks)
        # one residue field per prime of K above ell
        e4 = checks[-1]
        assert len(e4.lhs.split(",")) == len(e4.rhs.split(",")) == E.K.degree


def test_criterion_09_kolyvagin_layer():
    with criterion(9, "telescoping, kappa, norm residue, kappa residue", 1200):
        for M in (2, 3, 4, 5, 9):
            assert telescoping_holds(M), M
        one, ell = I("1"), I("T^4+T^3+1")
        E = EulerSystem(_cfg8(), [ell])
        for a in (one, ell):
            assert E.kappa(a).verify(E), a
        xs = E.sample_elements(ell, 20, seed=7)
        assert len(xs) >= 20
        all_pass([E.verify_norm_residue(x, ell) for x in xs])
        # ell not dividing a, then ell dividing a
        all_pass([E.verify_kappa_residue(one, ell), E.verify_kappa_residue(ell, ell),
                  E.verify_kappa_residue_elsewhere(one), E.verify_kappa_residue_elsewhere(ell)])


def test_criterion_10_class_numbers():
    with criterion(10, "divisor class numbers", 60):
        assert l_polynomial(I("T^2")).h == 1
        checks = suites.classnumber_grid((2, 3), 3)
        all_pass(checks)
        trivial = [c for c in checks if c.name.endswith("K=k]")]
        assert trivial and all(c.lhs == "h=1" for c in trivial)


def test_criterion_11_determinism(tmp_path):
    with criterion(11, "run all --deterministic --seed 7 is byte-identical", 1200):
        cmd = [sys.executable, "-m", "carlitz_euler", "run", "all", "--deterministic", "--seed", "7"]
        outs = [tmp_path / "a.json", tmp_path / "b.json"]
        procs = [subprocess.Popen(cmd + ["-o", str(p)], stdout=subprocess.DEVNULL, stderr=subprocess.PIPE)
                 for p in outs]
        for p in procs:
            p.wait(timeout=1200)
        assert all(p.returncode == 0 for p in procs), [p.stderr.read() for p in procs]
        a, b = (Path(p).read_bytes() for p in outs)
        assert a and a == b
