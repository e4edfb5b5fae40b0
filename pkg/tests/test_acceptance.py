"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every test collects named sub-checks, prints a single summary line (visible
even under output capture) and then asserts that all sub-checks held.
"""

import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from helpers import (
    catalog_algebras,
    extension_cases,
    fiber,
    perturb_representation,
    random_cocycle,
    random_k1_endomorphism,
    random_nijenhuis_candidate,
    random_one_cochain,
    random_representation,
    random_valid_representation,
    shifted_section,
)
from homanti import io
from homanti.algebra import check_axioms, check_multiplicative, is_homomorphism, morphism, new_algebra, twist
from homanti.catalog import conformal, k1, twisted_k1
from homanti.cli import main
from homanti.cohomology import (
    NOT_A_COBOUNDARY,
    CochainSpace,
    assemble_d,
    assemble_raw_d,
    cohomology_report,
    explicit_d2,
    is_admissible,
    is_coboundary,
    is_cocycle,
    omega_to_cochain,
    square_defect,
)
from homanti.deformations import (
    NijenhuisCandidate,
    check_infinitesimal,
    deformation_from_nijenhuis,
    is_nijenhuis,
    residual_degree_report,
    verify_trivial,
)
from homanti.extensions import (
    check_equivalence,
    coboundary_omega,
    extension_from_cocycle,
    extract_cocycle,
    normalize_omega,
    omega_add,
    omega_sub,
)
from homanti.linalg import MODULAR_PRIMES, Matrix
from homanti.representation import adjoint_representation, check_representation, hom_module, semidirect
from homanti.representation import trivial_representation

H = Fraction(1, 2)
MUS = [Fraction(2), Fraction(3), Fraction(1, 5), Fraction(-1)]
T4 = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(1, 3))
FIX = Path(__file__).parent / "fixtures"


class Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures = []
        self.count = 0

    def check(self, ok, what):
        self.count += 1
        if not ok:
            self.failures.append(what)
        return ok


@pytest.fixture
def criterion(request, capsys):
    made = []

    def factory(number, title):
        c = Criterion(number, title)
        made.append(c)
        return c

    yield factory
    for c in made:
        status = "PASS" if not c.failures else "FAIL"
        detail = f"{c.count} checks" if not c.failures else "failed: " + "; ".join(c.failures[:3])
        with capsys.disabled():
            print(f"\ncriterion {c.number} [{c.title}]: {status} ({detail})")


def finish(c):
    assert not c.failures, c.failures


def k1_with_action(value):
    a = k1()
    nu = [[list(v) for v in b] for b in a.nu]
    nu[0][0][0] = Fraction(value)
    return new_algebra(1, 2, a.mu, nu, a.br)


def test_criterion_01_axiom_suite(criterion):
    c = criterion(1, "axiom suite")
    for a in [k1()] + [twisted_k1(mu) for mu in MUS]:
        rep, mrep = check_axioms(a), check_multiplicative(a)
        c.check(rep.passed and all(not v.violations for v in rep.verdicts.values()), "axioms")
        c.check(mrep.passed, "multiplicativity")
    bad = check_axioms(k1_with_action(1))
    c.check(bad.verdicts["half_action"].violations == [((0, 0, 0), (H, 0))], "half_action tuple")
    c.check(bad.verdicts["bracket_derivation"].violations
            == [((0, 0, 1), (Fraction(-1, 4),)), ((0, 1, 0), (Fraction(1, 4),))], "bracket_derivation tuples")
    nonmult = check_multiplicative(k1().with_twists(Matrix.identity(1), Matrix.diag([2, 2])))
    c.check(nonmult.failed_identities() == ["alpha_bracket"], "alpha_bracket fails alone")
    c.check(nonmult.verdicts["alpha_bracket"].violations[0] == ((0, 1), (Fraction(-3, 2),)), "alpha_bracket tuple")
    finish(c)


def test_criterion_02_twists(criterion):
    c = criterion(2, "twist correctness")
    for mu in MUS:
        t = twist(k1(), morphism(Matrix.identity(1), Matrix.diag([mu, 1 / mu])))
        a = twisted_k1(mu)
        c.check((t.mu, t.nu, t.br, t.alpha, t.beta) == (a.mu, a.nu, a.br, a.alpha, a.beta), f"mu={mu}")
    rng = random.Random(20)
    for n in range(25):
        c.check(check_axioms(twist(k1(), random_k1_endomorphism(rng))).passed, f"random twist {n}")
    finish(c)


def test_criterion_03_semidirect_equivalence(criterion):
    c = criterion(3, "semidirect equivalence")
    rng = random.Random(30)
    algebras = [a for _, a in catalog_algebras()]
    seen = {True: 0, False: 0}
    for n in range(60):
        a = rng.choice(algebras)
        kind = n % 3
        if kind == 0:
            rho = random_valid_representation(rng, a)
        elif kind == 1:
            rho = perturb_representation(rng, a, random_valid_representation(rng, a))
        else:
            rho = random_representation(rng, a, rng.randrange(3), rng.randrange(3))
        lhs = check_representation(a, rho).passed
        c.check(lhs == check_axioms(semidirect(a, rho)).passed, f"pair {n}")
        seen[lhs] += 1
    c.check(seen[True] >= 20 and seen[False] >= 10, f"both directions exercised {seen}")
    finish(c)


def complex_cases():
    out = []
    for name, a in (("k1", k1()), ("tw3", twisted_k1(3))):
        out.append((name + "/adjoint", a, adjoint_representation(a)))
        out.append((name + "/trivial", a, trivial_representation(a, hom_module(1, 1))))
        out.append((name + "/trivial-twisted", a,
                    trivial_representation(a, hom_module(1, 2, Matrix([[2]]), Matrix.diag([3, Fraction(1, 3)])))))
    return out


def test_criterion_04_complex(criterion):
    c = criterion(4, "d squares to zero")
    for name, a, rho in complex_cases():
        for k in (1, 2):
            c.check(square_defect(a, rho, k).is_zero(), f"{name} k={k}")
        for k in (1, 2, 3):
            sl = assemble_d(a, rho, k)
            for b in sl.source_basis:
                c.check(is_admissible(a, rho, sl.raw.apply(b), k=k + 1), f"{name} image admissible k={k}")
    finish(c)


def test_criterion_05_degree_two(criterion):
    c = criterion(5, "degree-2 cross-check")
    for name, a, rho in complex_cases():
        raw = assemble_raw_d(a, rho, 2)
        dim = CochainSpace(a, rho, 2).dim
        for i in range(dim):
            e = tuple(Fraction(int(j == i)) for j in range(dim))
            c.check(raw.apply(e) == explicit_d2(a, rho, e), f"{name} column {i}")
    rng = random.Random(50)
    for name, a, rho in extension_cases():
        for _ in range(4):
            big = extension_from_cocycle(a, rho, random_cocycle(rng, a, rho))
            f0, f1 = random_one_cochain(rng, a, rho)
            ext = extract_cocycle(big, *fiber(a, rho), section=shifted_section(a, rho, f0, f1))
            c.check(is_cocycle(a, rho, omega_to_cochain(a, rho, ext.omega), k=2)[0], f"{name} extracted closed")
    finish(c)


def test_criterion_06_extensions(criterion):
    c = criterion(6, "extension round trips")
    rng = random.Random(60)
    for name, a, rho in extension_cases():
        for _ in range(3):
            w = normalize_omega(a, rho, random_cocycle(rng, a, rho))
            big = extension_from_cocycle(a, rho, w)
            c.check(extract_cocycle(big, *fiber(a, rho)).omega == w, f"{name} round trip")
            f0, f1 = random_one_cochain(rng, a, rho)
            shifted = extract_cocycle(big, *fiber(a, rho), section=shifted_section(a, rho, f0, f1)).omega
            c.check(omega_sub(shifted, w) == normalize_omega(a, rho, coboundary_omega(a, rho, f0, f1)),
                    f"{name} sections differ by d f")
            wit = check_equivalence(a, rho, w, shifted)
            c.check(bool(wit) and wit.report.passed, f"{name} witness for shifted section")
        for _ in range(6):
            w1, w2 = random_cocycle(rng, a, rho), random_cocycle(rng, a, rho)
            if rng.random() < 0.5:
                f0, f1 = random_one_cochain(rng, a, rho)
                w2 = omega_add(w1, coboundary_omega(a, rho, f0, f1))
            wit = check_equivalence(a, rho, w1, w2)
            g = is_coboundary(a, rho, omega_to_cochain(a, rho, omega_sub(w1, w2)), k=2)
            c.check(bool(wit) == (g is not NOT_A_COBOUNDARY), f"{name} witness iff coboundary")
            if wit:
                src = semidirect(a, rho, normalize_omega(a, rho, w1))
                dst = semidirect(a, rho, normalize_omega(a, rho, w2))
                hom = is_homomorphism(wit.morphism, src, dst)
                c.check(hom.passed and len(hom.verdicts) == 5, f"{name} five homomorphism identities")
    finish(c)


def test_criterion_07_deformations(criterion):
    c = criterion(7, "deformation suite")
    rng = random.Random(70)
    candidates = []
    for name, a in catalog_algebras()[:2]:
        candidates += [(name + "/zero", a, NijenhuisCandidate.zero(a)), (name + "/id", a, NijenhuisCandidate.identity(a))]
    found = tries = 0
    while found < 6 and tries < 200:
        tries += 1
        name, a = rng.choice(catalog_algebras())
        phi = random_nijenhuis_candidate(rng, a)
        if is_nijenhuis(a, phi).passed:
            found += 1
            candidates.append((f"{name}/random{found}", a, phi))
    c.check(found >= 5, f"only {found} random Nijenhuis candidates")
    for name, a, phi in candidates:
        d = deformation_from_nijenhuis(a, phi)
        inf = check_infinitesimal(a, d)
        c.check(inf.condition_i and inf.condition_ii, f"{name} infinitesimal")
        c.check(verify_trivial(a, d, phi, T4).passed, f"{name} trivial")
        deg = residual_degree_report(a, d, T4)
        c.check(deg.fits_quadratic and deg.max_degree <= 2, f"{name} residual degree")
    finish(c)


def test_criterion_08_cohomology(criterion):
    c = criterion(8, "H^2 dimensions")
    baselines = {"k1": 0, "tw3": 0}
    for name, a in (("k1", k1()), ("tw3", twisted_k1(3))):
        rep = cohomology_report(a, adjoint_representation(a), 2)
        c.check(rep.oracles_agree, f"{name} oracles")
        c.check(sorted(rep.modular_ranks["d"]) == sorted(MODULAR_PRIMES), f"{name} both primes")
        c.check(set(rep.dual_ranks) == {"d", "prev"}, f"{name} dual elimination ran")
        c.check(rep.h_dim == baselines[name], f"{name} baseline {rep.h_dim}")
    finish(c)


def test_criterion_09_conformal(criterion):
    c = criterion(9, "conformal report")
    alg = conformal(2)
    q = Fraction(4)

    def qp(i):  # q**i = r**(2i) for half-integer i
        return Fraction(2) ** int(2 * i)

    rng = random.Random(90)
    for _ in range(100):
        n, m = rng.randint(-8, 8), rng.randint(-8, 8)
        i, j = Fraction(2 * rng.randint(-8, 7) + 1, 2), Fraction(2 * rng.randint(-8, 7) + 1, 2)
        c.check(alg.prod_ee(n, m) == (1, n + m), "ee")
        c.check(alg.prod_eo(n, i) == (H * (1 + qp(i)), n + i), "eo")
        c.check(alg.bracket(i, j) == (H * ((qp(j) - 1) - (qp(i) - 1)) / (q - 1), i + j), "bracket")
    r1 = alg.spot_check_axioms(count=100, seed=0).to_json()
    r2 = conformal(2).spot_check_axioms(count=100, seed=0).to_json()
    c.check(r1 == r2, "report deterministic")
    c.check(json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True), "report serialization stable")
    finish(c)


def test_criterion_10_cli(criterion, tmp_path, capsys):
    c = criterion(10, "CLI contract")
    for a in (k1(), twisted_k1(3)):
        text = io.export_algebra(a)
        path = tmp_path / "a.json"
        path.write_text(text)
        c.check(io.export_algebra(io.load_algebra(path)) == text, "byte-stable round trip")
    expected = {"k1.json": 0, "broken-k1.json": 1, "malformed.json": 2, "bad-index.json": 2}
    for fname, code in expected.items():
        c.check(main(["check", str(FIX / fname)]) == code, f"check {fname} exit {code}")
    c.check(main(["cohomology", str(FIX / "nonmult-k1.json"), "--degree", "2"]) == 1, "non-multiplicative exit 1")
    for k in (1, 2, 3):
        capsys.readouterr()
        code = main(["cohomology", str(FIX / "k1.json"), "--degree", str(k), "--json"])
        rep = json.loads(capsys.readouterr().out)
        c.check(code == 0 and rep["kernel_dim"] - rep["rank_d_prev"] == rep["h_dim"], f"self-consistent k={k}")
    capsys.readouterr()
    finish(c)
