"""Random generators and small oracles shared by the test modules."""

from fractions import Fraction

from homanti.algebra import abelian_algebra, morphism, new_algebra, zero_tensor
from homanti.cohomology import assemble_d, cocycle_basis, omega_to_cochain, one_cochain_parts
from homanti.extensions import canonical_section, cochain_to_omega, zero_omega
from homanti.catalog import k1, twisted_k1
from homanti.linalg import Matrix
from homanti.representation import (
    adjoint_representation,
    conjugate_representation,
    direct_sum,
    hom_module,
    new_representation,
    trivial_representation,
)

SMALL = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2, 3)]
NONZERO = [x for x in SMALL if x]


def rnd(rng, nonzero=False):
    return rng.choice(NONZERO if nonzero else SMALL)


def random_matrix(rng, rows, cols, density=1.0):
    return Matrix([[rnd(rng) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)],
                  cols=cols)


def random_sl2(rng, steps=3):
    """A product of elementary matrices, so the determinant is exactly 1."""
    g = Matrix.identity(2)
    for _ in range(steps):
        t = rnd(rng, nonzero=True)
        kind = rng.randrange(3)
        if kind == 0:
            e = Matrix([[1, t], [0, 1]])
        elif kind == 1:
            e = Matrix([[1, 0], [t, 1]])
        else:
            e = Matrix.diag([t, 1 / t])
        g = e @ g
    return g


def random_invertible(rng, n):
    """Upper unitriangular times lower unitriangular times a nonzero diagonal."""
    if n == 0:
        return Matrix.zeros(0, 0)
    up = Matrix([[1 if i == j else (rnd(rng) if j > i else 0) for j in range(n)] for i in range(n)])
    lo = Matrix([[1 if i == j else (rnd(rng) if j < i else 0) for j in range(n)] for i in range(n)])
    return up @ lo @ Matrix.diag([rnd(rng, nonzero=True) for _ in range(n)])


def random_k1_endomorphism(rng):
    """(1, g) with g in SL2, or the zero map: all endomorphisms of K(1)."""
    if rng.random() < 0.15:
        return morphism(Matrix.zeros(1, 1), Matrix.zeros(2, 2))
    return morphism(Matrix.identity(1), random_sl2(rng))


def catalog_algebras():
    return [("k1", k1())] + [(f"k1-twisted?mu={mu}", twisted_k1(mu)) for mu in ("2", "3", "1/5", "-1")]


def random_valid_representation(rng, a):
    """A representation that passes by construction (adjoint, trivial, sums, conjugates)."""
    kind = rng.randrange(4)
    if kind == 0:
        return adjoint_representation(a)
    if kind == 1:
        r, s = rng.randrange(0, 3), rng.randrange(0, 3)
        return trivial_representation(a, hom_module(r, s, random_matrix(rng, r, r), random_matrix(rng, s, s)))
    if kind == 2:
        ad = adjoint_representation(a)
        return conjugate_representation(ad, random_invertible(rng, ad.r), random_invertible(rng, ad.s))
    r, s = rng.randrange(0, 2), rng.randrange(0, 2)
    return direct_sum(adjoint_representation(a), trivial_representation(a, hom_module(r, s)))


def perturb_representation(rng, a, rho):
    """Change one action entry by a nonzero amount (result may or may not be valid)."""
    fields = [n for n in ("rho0_even", "rho0_odd", "rho1_up", "rho1_down")
              if any(m.rows and m.cols for m in getattr(rho, n))]
    if not fields:
        return rho
    name = rng.choice(fields)
    mats = [m.tolist() for m in getattr(rho, name)]
    g = rng.choice([i for i, m in enumerate(mats) if m and m[0]])
    i, j = rng.randrange(len(mats[g])), rng.randrange(len(mats[g][0]))
    mats[g][i][j] += rnd(rng, nonzero=True)
    parts = {n: [m.tolist() for m in getattr(rho, n)] for n in ("rho0_even", "rho0_odd", "rho1_up", "rho1_down")}
    parts[name] = mats
    return new_representation(a, rho.module, parts["rho0_even"], parts["rho0_odd"],
                              parts["rho1_up"], parts["rho1_down"])


def random_representation(rng, a, r, s):
    """Entirely random small action matrices with identity module twists."""
    mod = hom_module(r, s)
    return new_representation(
        a, mod,
        [random_matrix(rng, r, r, 0.4) for _ in range(a.p)],
        [random_matrix(rng, s, s, 0.4) for _ in range(a.p)],
        [random_matrix(rng, s, r, 0.4) for _ in range(a.q)],
        [random_matrix(rng, r, s, 0.4) for _ in range(a.q)],
    )


def random_omega(rng, a, r, s, density=0.5):
    """A random (omega0 symmetric, omega1, omega2 antisymmetric) triple."""
    p, q = a.p, a.q
    w0 = zero_tensor(p, p, r)
    w1 = zero_tensor(p, q, s)
    w2 = zero_tensor(q, q, r)
    for i in range(p):
        for j in range(i, p):
            for v in range(r):
                if rng.random() < density:
                    w0[i][j][v] = w0[j][i][v] = rnd(rng)
        for j in range(q):
            for v in range(s):
                if rng.random() < density:
                    w1[i][j][v] = rnd(rng)
    for i in range(q):
        for j in range(i + 1, q):
            for v in range(r):
                if rng.random() < density:
                    c = rnd(rng)
                    w2[i][j][v], w2[j][i][v] = c, -c
    return w0, w1, w2


def random_nijenhuis_candidate(rng, a):
    """Candidates on K(1) and its twists that are Nijenhuis about half the time.

    phi0 = c is Nijenhuis exactly when c is an eigenvalue of phi1, so half of
    the draws put c in the spectrum on purpose.
    """
    c = rnd(rng)
    e = c if rng.random() < 0.5 else rnd(rng)
    if a.beta == Matrix.identity(2):
        g = random_invertible(rng, 2)
        ginv = Matrix([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]).scale(1 / (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]))
        phi1 = g @ Matrix.diag([c if rng.random() < 0.5 else e, e]) @ ginv
    else:
        phi1 = Matrix.diag([c, e] if rng.random() < 0.5 else [e, c])
    return Matrix([[c]]), phi1


def k1_with_bracket(value):
    """K(1) with [a,b] replaced by value * eps (value 1/2 is the real one)."""
    a = k1()
    br = zero_tensor(2, 2, 1)
    br[0][1][0] = Fraction(value)
    br[1][0][0] = -Fraction(value)
    return new_algebra(1, 2, a.mu, a.nu, br)


def abelian(p, q, alpha=None, beta=None):
    return abelian_algebra(p, q, alpha, beta)


def random_one_cochain(rng, a, rho):
    """(f0, f1) of a random admissible 1-cochain."""
    sl = assemble_d(a, rho, 1)
    v = [Fraction(0)] * sl.source_space.dim
    for b in sl.source_basis:
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        v = [x + c * y for x, y in zip(v, b)]
    return one_cochain_parts(a, rho, v)


def random_cocycle(rng, a, rho):
    """A random combination of the 2-cocycle basis, as an omega triple."""
    z = [Fraction(0)] * len(omega_to_cochain(a, rho, zero_omega(a, rho)))
    for b in cocycle_basis(a, rho, 2):
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        z = [x + c * y for x, y in zip(z, b)]
    return cochain_to_omega(a, rho, z)


def shifted_section(a, rho, f0, f1):
    s0, s1 = canonical_section(a, rho)
    s0, s1 = s0.tolist(), s1.tolist()
    for v in range(rho.r):
        for i in range(a.p):
            s0[a.p + v][i] += f0[v, i]
    for v in range(rho.s):
        for j in range(a.q):
            s1[a.q + v][j] += f1[v, j]
    return Matrix(s0, cols=a.p), Matrix(s1, cols=a.q)


def fiber(a, rho):
    return list(range(a.p, a.p + rho.r)), list(range(a.q, a.q + rho.s))


def extension_cases():
    """(base, rep) pairs with p = 1, where every omega0 is symmetric."""
    return [
        ("k1/adjoint", k1(), adjoint_representation(k1())),
        ("tw3/adjoint", twisted_k1(3), adjoint_representation(twisted_k1(3))),
        ("k1/trivial", k1(), trivial_representation(k1(), hom_module(1, 1))),
        ("abelian/trivial", abelian(1, 2), trivial_representation(abelian(1, 2), hom_module(1, 1))),
        ("abelian/adjoint", abelian(1, 1), adjoint_representation(abelian(1, 1))),
    ]
