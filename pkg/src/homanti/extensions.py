"""Abelian extensions and their classification by the second cohomology.

An extension is held concretely: a big algebra whose basis contains the
fiber V as a set of coordinate positions, with a projection onto the base
and a section.  Cocycles are triples of tensors

    omega0[i][j][v]   even x even -> V0   (symmetric in i, j)
    omega1[i][j][v]   even x odd  -> V1
    omega2[i][j][v]   odd x odd   -> V0   (antisymmetric in i, j)

and are converted to degree-2 cochains only through
:func:`homanti.cohomology.omega_to_cochain`, which applies the factor 1/2
on omega0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import (
    AlgebraMorphism,
    HomLieAntialgebra,
    IdentityReport,
    basis_vector,
    check_axioms,
    check_multiplicative,
    contract,
    is_homomorphism,
    new_algebra,
)
from .cohomology import (
    NOT_A_COBOUNDARY,
    apply_d,
    coboundary_vectors,
    cochain_to_omega,
    cocycle_basis,
    cohomology_report,
    is_admissible,
    is_coboundary,
    is_cocycle,
    omega_to_cochain,
    one_cochain,
    one_cochain_parts,
)
from .errors import InadmissibleCochainError, PreconditionError, ShapeError, SymmetryError
from .linalg import ZERO, Matrix, as_matrix, rank, rational_format
from .representation import HomModule, Representation, semidirect


# ------------------------------------------------------------------ omega triples

def zero_omega(a: HomLieAntialgebra, rho: Representation) -> tuple:
    p, q, r, s = a.p, a.q, rho.r, rho.s
    return (
        tuple(tuple(tuple([ZERO] * r) for _ in range(p)) for _ in range(p)),
        tuple(tuple(tuple([ZERO] * s) for _ in range(q)) for _ in range(p)),
        tuple(tuple(tuple([ZERO] * r) for _ in range(q)) for _ in range(q)),
    )


def _freeze(t) -> tuple:
    return tuple(tuple(tuple(x) for x in b) for b in t)


def normalize_omega(a: HomLieAntialgebra, rho: Representation, omega) -> tuple:
    """Validate shapes and symmetry of (omega0, omega1, omega2)."""
    from .algebra import _tensor

    w0, w1, w2 = omega
    w0 = _tensor(w0, a.p, a.p, rho.r, "omega0")
    w1 = _tensor(w1, a.p, a.q, rho.s, "omega1")
    w2 = _tensor(w2, a.q, a.q, rho.r, "omega2")
    for i in range(a.p):
        for j in range(i + 1, a.p):
            if w0[i][j] != w0[j][i]:
                raise SymmetryError(f"omega0 not symmetric at ({i},{j})")
    for i in range(a.q):
        for j in range(i, a.q):
            if any(x != -y for x, y in zip(w2[i][j], w2[j][i])):
                raise SymmetryError(f"omega2 not antisymmetric at ({i},{j})")
    return w0, w1, w2


def omega_sub(x, y) -> tuple:
    return tuple(
        tuple(tuple(tuple(u - v for u, v in zip(c1, c2)) for c1, c2 in zip(b1, b2)) for b1, b2 in zip(t1, t2))
        for t1, t2 in zip(x, y)
    )


def omega_add(x, y) -> tuple:
    return tuple(
        tuple(tuple(tuple(u + v for u, v in zip(c1, c2)) for c1, c2 in zip(b1, b2)) for b1, b2 in zip(t1, t2))
        for t1, t2 in zip(x, y)
    )


def omega_is_symmetric(omega) -> bool:
    w0 = omega[0]
    n = len(w0)
    return all(tuple(w0[i][j]) == tuple(w0[j][i]) for i in range(n) for j in range(n))


def coboundary_omega(a: HomLieAntialgebra, rho: Representation, f0, f1) -> tuple:
    """The triple d f of a 1-cochain f = (f0, f1):

    omega0 = rho0(x1) f0(x2) + rho0(x2) f0(x1) - f0(x1.x2)
    omega1 = rho0(x) f1(y) + rho1(y) f0(x) - f1(x.y)
    omega2 = rho1(y1) f1(y2) - rho1(y2) f1(y1) - f0([y1,y2])
    """
    vec = one_cochain(a, rho, f0, f1)
    return cochain_to_omega(a, rho, apply_d(a, rho, vec, k=1))


def _omega_json(omega) -> dict:
    out = {}
    for name, t in zip(("omega0", "omega1", "omega2"), omega):
        out[name] = [
            {"i": i, "j": j, "k": k, "c": rational_format(c)}
            for i, b in enumerate(t) for j, row in enumerate(b) for k, c in enumerate(row) if c
        ]
    return out


# ------------------------------------------------------------------ data types

@dataclass
class ExtensionDatum:
    base: HomLieAntialgebra
    fiber: HomModule
    rep: Representation
    omega: tuple

    def cochain(self) -> tuple:
        return omega_to_cochain(self.base, self.rep, self.omega)

    def algebra(self) -> HomLieAntialgebra:
        return semidirect(self.base, self.rep, self.omega)

    def to_json(self) -> dict:
        return _omega_json(self.omega)


@dataclass(frozen=True)
class EquivalenceWitness:
    f0: Matrix  # r x p
    f1: Matrix  # s x q
    morphism: AlgebraMorphism
    report: IdentityReport = field(compare=False)

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        return {
            "f0": [[rational_format(x) for x in r] for r in self.f0.tolist()],
            "f1": [[rational_format(x) for x in r] for r in self.f1.tolist()],
            "homomorphism": self.report.to_json(),
        }


class Inequivalent:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "Inequivalent"


INEQUIVALENT = Inequivalent()


# ------------------------------------------------------------------ construction

def extension_from_cocycle(base: HomLieAntialgebra, rep: Representation, omega) -> HomLieAntialgebra:
    """The algebra a + V with products perturbed by omega.

    (x1,u1).(x2,u2) = (x1.x2, rho0(x1)u2 + rho0(x2)u1 + omega0(x1,x2)) and
    likewise for the other two products; twists alpha + alphaV, beta + betaV.
    The result is returned whether or not omega is a cocycle, so callers can
    run check_axioms on it.
    """
    rep.check_shapes(base)
    omega = normalize_omega(base, rep, omega)
    if not is_admissible(base, rep, omega_to_cochain(base, rep, omega), k=2):
        raise InadmissibleCochainError("omega does not commute with the twist maps")
    return semidirect(base, rep, omega)


def canonical_section(base: HomLieAntialgebra, rep: Representation) -> tuple:
    """Section of a + V -> a given by the coordinate inclusion of a."""
    p, q, r, s = base.p, base.q, rep.r, rep.s
    s0 = Matrix([[1 if i == j else 0 for j in range(p)] for i in range(p + r)], cols=p)
    s1 = Matrix([[1 if i == j else 0 for j in range(q)] for i in range(q + s)], cols=q)
    return s0, s1


def _complement(n: int, idx) -> list:
    taken = set(idx)
    return [i for i in range(n) if i not in taken]


def extract_cocycle(big: HomLieAntialgebra, fiber_even, fiber_odd, section=None) -> ExtensionDatum:
    """Recover (base, representation, omega) from an extension.

    ``fiber_even`` and ``fiber_odd`` list the coordinates of V inside the
    big algebra; the projection onto the base is the coordinate projection
    onto the remaining positions (in increasing order).  ``section`` is a
    pair of matrices (sigma0: P x p, sigma1: Q x q); the default is the
    coordinate inclusion.
    """
    fe, fo = list(fiber_even), list(fiber_odd)
    if len(set(fe)) != len(fe) or len(set(fo)) != len(fo) \
            or any(not 0 <= i < big.p for i in fe) or any(not 0 <= j < big.q for j in fo):
        raise ShapeError("fiber positions must be distinct and within the algebra")
    be, bo = _complement(big.p, fe), _complement(big.q, fo)
    p, q, r, s = len(be), len(bo), len(fe), len(fo)
    P, Q = big.p, big.q
    proj0 = Matrix([[1 if c == be[i] else 0 for c in range(P)] for i in range(p)], cols=P)
    proj1 = Matrix([[1 if c == bo[i] else 0 for c in range(Q)] for i in range(q)], cols=Q)
    if section is None:
        sig0 = Matrix([[1 if be[j] == i else 0 for j in range(p)] for i in range(P)], cols=p)
        sig1 = Matrix([[1 if bo[j] == i else 0 for j in range(q)] for i in range(Q)], cols=q)
    else:
        sig0, sig1 = as_matrix(section[0]), as_matrix(section[1])
        sig0 = Matrix(sig0.tolist(), cols=p)
        sig1 = Matrix(sig1.tolist(), cols=q)
        if sig0.rows != P or sig1.rows != Q:
            raise ShapeError(f"section matrices must be {P}x{p} and {Q}x{q}")
    if proj0 @ sig0 != Matrix.identity(p) or proj1 @ sig1 != Matrix.identity(q):
        raise PreconditionError("section is not a right inverse of the projection")

    ebig = [basis_vector(P, i) for i in range(P)]
    obig = [basis_vector(Q, j) for j in range(Q)]
    # fiber must be an abelian ideal, invariant under the twists
    for u, u2 in product(fe, fe):
        if any(contract(big.mu, ebig[u], ebig[u2], P)):
            raise PreconditionError("fiber is not abelian (V0.V0 != 0)")
    for u, w in product(fe, fo):
        if any(contract(big.nu, ebig[u], obig[w], Q)):
            raise PreconditionError("fiber is not abelian (V0.V1 != 0)")
    for w, w2 in product(fo, fo):
        if any(contract(big.br, obig[w], obig[w2], P)):
            raise PreconditionError("fiber is not abelian ([V1,V1] != 0)")
    feset, foset = set(fe), set(fo)

    def in_even_fiber(v):
        return all(c == 0 for i, c in enumerate(v) if i not in feset)

    def in_odd_fiber(v):
        return all(c == 0 for i, c in enumerate(v) if i not in foset)

    for i in range(P):
        for u in fe:
            if not in_even_fiber(contract(big.mu, ebig[i], ebig[u], P)):
                raise PreconditionError("fiber is not an ideal")
        for w in fo:
            if not in_odd_fiber(contract(big.nu, ebig[i], obig[w], Q)):
                raise PreconditionError("fiber is not an ideal")
    for j in range(Q):
        for u in fe:
            if not in_odd_fiber(contract(big.nu, ebig[u], obig[j], Q)):
                raise PreconditionError("fiber is not an ideal")
        for w in fo:
            if not in_even_fiber(contract(big.br, obig[j], obig[w], P)):
                raise PreconditionError("fiber is not an ideal")
    for u in fe:
        if not in_even_fiber(big.alpha.column(u)):
            raise PreconditionError("fiber is not invariant under alpha")
    for w in fo:
        if not in_odd_fiber(big.beta.column(w)):
            raise PreconditionError("fiber is not invariant under beta")

    def vpart0(v):
        return tuple(v[i] for i in fe)

    def vpart1(v):
        return tuple(v[j] for j in fo)

    S0 = [sig0.column(i) for i in range(p)]
    S1 = [sig1.column(j) for j in range(q)]

    def pr0(v):
        return proj0.apply(v)

    def pr1(v):
        return proj1.apply(v)

    # base algebra, transported through the section
    mu = [[list(pr0(contract(big.mu, S0[i], S0[j], P))) for j in range(p)] for i in range(p)]
    nu = [[list(pr1(contract(big.nu, S0[i], S1[j], Q))) for j in range(q)] for i in range(p)]
    br = [[list(pr0(contract(big.br, S1[i], S1[j], P))) for j in range(q)] for i in range(q)]
    alpha = Matrix.from_columns([pr0(big.alpha.apply(S0[i])) for i in range(p)], p) if p else Matrix.zeros(0, 0)
    beta = Matrix.from_columns([pr1(big.beta.apply(S1[j])) for j in range(q)], q) if q else Matrix.zeros(0, 0)
    base = new_algebra(p, q, mu, nu, br, alpha, beta)

    # representation from the section
    aV = Matrix([[big.alpha[fe[a_], fe[b_]] for b_ in range(r)] for a_ in range(r)], cols=r)
    bV = Matrix([[big.beta[fo[a_], fo[b_]] for b_ in range(s)] for a_ in range(s)], cols=s)
    module = HomModule(r, s, aV, bV)
    Ue = [ebig[u] for u in fe]
    Wo = [obig[w] for w in fo]
    r0e = tuple(Matrix.from_columns([vpart0(contract(big.mu, S0[i], Ue[c], P)) for c in range(r)], r)
                if r else Matrix.zeros(0, 0) for i in range(p))
    r0o = tuple(Matrix.from_columns([vpart1(contract(big.nu, S0[i], Wo[c], Q)) for c in range(s)], s)
                if s else Matrix.zeros(0, 0) for i in range(p))
    up = tuple(Matrix.from_columns([vpart1(contract(big.nu, Ue[c], S1[j], Q)) for c in range(r)], s)
               if r else Matrix.zeros(s, 0) for j in range(q))
    down = tuple(Matrix.from_columns([vpart0(contract(big.br, S1[j], Wo[c], P)) for c in range(s)], r)
                 if s else Matrix.zeros(r, 0) for j in range(q))
    rep = Representation(module, r0e, r0o, up, down)

    def lift0(x):  # sigma0 applied to a base vector
        return sig0.apply(x)

    def lift1(y):
        return sig1.apply(y)

    Eb = [basis_vector(p, i) for i in range(p)]
    Ob = [basis_vector(q, j) for j in range(q)]
    w0 = [[vpart0(_diff(contract(big.mu, S0[i], S0[j], P), lift0(contract(base.mu, Eb[i], Eb[j], p))))
           for j in range(p)] for i in range(p)]
    w1 = [[vpart1(_diff(contract(big.nu, S0[i], S1[j], Q), lift1(contract(base.nu, Eb[i], Ob[j], q))))
           for j in range(q)] for i in range(p)]
    w2 = [[vpart0(_diff(contract(big.br, S1[i], S1[j], P), lift0(contract(base.br, Ob[i], Ob[j], p))))
           for j in range(q)] for i in range(q)]
    omega = (_freeze(w0), _freeze(w1), _freeze(w2))
    return ExtensionDatum(base, module, rep, omega)


def _diff(u, v):
    return tuple(a - b for a, b in zip(u, v))


# ------------------------------------------------------------------ equivalence

def _require_cocycle(base, rep, omega, name):
    ok, _ = is_cocycle(base, rep, omega_to_cochain(base, rep, omega), k=2)
    if not ok:
        raise PreconditionError(f"{name} is not a 2-cocycle")


def equivalence_map(base: HomLieAntialgebra, rep: Representation, f0, f1) -> AlgebraMorphism:
    """(x, u) -> (x, f0(x) + u) and (y, w) -> (y, f1(y) + w) on a + V."""
    f0, f1 = as_matrix(f0), as_matrix(f1)
    p, q, r, s = base.p, base.q, rep.r, rep.s
    phi0 = [[ZERO] * (p + r) for _ in range(p + r)]
    phi1 = [[ZERO] * (q + s) for _ in range(q + s)]
    for i in range(p + r):
        phi0[i][i] = 1
    for i in range(q + s):
        phi1[i][i] = 1
    for v in range(r):
        for i in range(p):
            phi0[p + v][i] = f0[v, i]
    for v in range(s):
        for j in range(q):
            phi1[q + v][j] = f1[v, j]
    return AlgebraMorphism(Matrix(phi0, cols=p + r), Matrix(phi1, cols=q + s))


def check_equivalence(base: HomLieAntialgebra, rep: Representation, omega, omega_prime):
    """A witness f with omega - omega' = d f, or INEQUIVALENT.

    The witness map is checked to be a homomorphism of the two extension
    algebras that fixes V and covers the identity of the base.
    """
    omega = normalize_omega(base, rep, omega)
    omega_prime = normalize_omega(base, rep, omega_prime)
    _require_cocycle(base, rep, omega, "omega")
    _require_cocycle(base, rep, omega_prime, "omega'")
    diff = omega_to_cochain(base, rep, omega_sub(omega, omega_prime))
    g = is_coboundary(base, rep, diff, k=2)
    if g is NOT_A_COBOUNDARY:
        return INEQUIVALENT
    f0, f1 = one_cochain_parts(base, rep, g)
    phi = equivalence_map(base, rep, f0, f1)
    src = semidirect(base, rep, omega)
    dst = semidirect(base, rep, omega_prime)
    report = is_homomorphism(phi, src, dst)
    p, q, r, s = base.p, base.q, rep.r, rep.s
    # phi o i = j and q o phi = p hold by the block shape; verify anyway
    for v in range(r):
        report.record("fixes_fiber", ("even", v), _diff(phi.phi0.column(p + v), basis_vector(p + r, p + v)))
    for v in range(s):
        report.record("fixes_fiber", ("odd", v), _diff(phi.phi1.column(q + v), basis_vector(q + s, q + v)))
    for i in range(p):
        report.record("covers_identity", ("even", i),
                      _diff(phi.phi0.column(i)[:p], basis_vector(p, i)))
    for j in range(q):
        report.record("covers_identity", ("odd", j),
                      _diff(phi.phi1.column(j)[:q], basis_vector(q, j)))
    if not report.passed:  # pragma: no cover - would mean the sign table is wrong
        raise ArithmeticError(f"equivalence map fails {report.failed_identities()}")
    return EquivalenceWitness(f0, f1, phi, report)


# ------------------------------------------------------------------ H^2 report

@dataclass
class H2Representative:
    cochain: tuple
    omega: tuple
    symmetric: bool
    axioms: IdentityReport | None

    def to_json(self) -> dict:
        out = {"omega": _omega_json(self.omega), "omega0_symmetric": self.symmetric}
        if self.axioms is not None:
            out["extension_axioms"] = self.axioms.to_json()
        return out


@dataclass
class H2Report:
    dim: int
    admissible_dim: int
    kernel_dim: int
    image_rank: int
    oracles_agree: bool
    representatives: list

    def to_json(self) -> dict:
        return {
            "h2_dim": self.dim,
            "admissible_dim": self.admissible_dim,
            "kernel_dim": self.kernel_dim,
            "rank_d1": self.image_rank,
            "oracles_agree": self.oracles_agree,
            "representatives": [r.to_json() for r in self.representatives],
        }


def h2_classification_report(base: HomLieAntialgebra, rep: Representation) -> H2Report:
    """dim H^2 with representative cocycles and their extension algebras.

    Representatives are kernel basis vectors chosen greedily so that each
    one increases the rank over the image of d^1.  Their (2,0) block need
    not be symmetric; such classes have no extension of the symmetric form
    and are flagged instead of built.
    """
    if not check_multiplicative(base).passed:
        from .errors import NotMultiplicativeError

        raise NotMultiplicativeError("base algebra is not multiplicative")
    cr = cohomology_report(base, rep, 2)
    image = coboundary_vectors(base, rep, 2)
    span = [v for v in image if any(v)]
    current = rank(Matrix(span)) if span else 0
    reps = []
    for z in cocycle_basis(base, rep, 2):
        trial = span + [z]
        rk = rank(Matrix(trial))
        if rk > current:
            span, current = trial, rk
            omega = cochain_to_omega(base, rep, z)
            sym = omega_is_symmetric(omega)
            axioms = check_axioms(semidirect(base, rep, omega)) if sym else None
            reps.append(H2Representative(z, omega, sym, axioms))
    assert len(reps) == cr.h_dim
    return H2Report(cr.h_dim, cr.admissible_dim, cr.kernel_dim, cr.rank_prev, cr.oracles_agree, reps)
