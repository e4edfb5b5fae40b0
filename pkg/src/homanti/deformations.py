"""One-parameter infinitesimal deformations and Nijenhuis operators.

A deformation datum omega = (omega0, omega1, omega2) is a triple of
structure tensors with the same shapes as (mu, nu, br).  The deformed
algebra has structure constants mu + t omega0, nu + t omega1, br + t omega2
and the original twists.  Every axiom residual of the deformed algebra is a
polynomial of degree at most 2 in t: the linear coefficient is the cocycle
condition with adjoint coefficients and the quadratic one is the set of
axioms for omega on its own.  Checking at a handful of rational t values is
therefore exact, and :func:`residual_degree_report` verifies the degree
bound itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import (
    AXIOM_NAMES,
    AlgebraMorphism,
    HomLieAntialgebra,
    IdentityReport,
    _tensor,
    basis_vector,
    check_axioms,
    check_multiplicative,
    contract,
    is_homomorphism,
    new_algebra,
)
from .cohomology import is_admissible, is_cocycle, omega_to_cochain
from .errors import NotMultiplicativeError, PreconditionError, ShapeError, SymmetryError
from .linalg import ZERO, Matrix, as_matrix, as_rational, rational_format
from .representation import adjoint_representation

DEFAULT_T_SAMPLES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3))


def _tensor_json(t) -> list:
    return [
        {"i": i, "j": j, "k": k, "c": rational_format(c)}
        for i, b in enumerate(t) for j, row in enumerate(b) for k, c in enumerate(row) if c
    ]


@dataclass(frozen=True)
class DeformationDatum:
    omega0: tuple
    omega1: tuple
    omega2: tuple

    @property
    def omega(self) -> tuple:
        return (self.omega0, self.omega1, self.omega2)

    def is_zero(self) -> bool:
        return all(x == 0 for t in self.omega for b in t for c in b for x in c)

    def to_json(self) -> dict:
        return {"omega0": _tensor_json(self.omega0), "omega1": _tensor_json(self.omega1),
                "omega2": _tensor_json(self.omega2)}


def deformation_datum(a: HomLieAntialgebra, omega) -> DeformationDatum:
    """Validate shapes and (anti)symmetry of a deformation triple."""
    if isinstance(omega, DeformationDatum):
        omega = omega.omega
    w0, w1, w2 = omega
    p, q = a.p, a.q
    w0 = _tensor(w0, p, p, p, "omega0")
    w1 = _tensor(w1, p, q, q, "omega1")
    w2 = _tensor(w2, q, q, p, "omega2")
    for i in range(p):
        for j in range(i + 1, p):
            if w0[i][j] != w0[j][i]:
                raise SymmetryError(f"omega0 not symmetric at ({i},{j})")
    for i in range(q):
        for j in range(i, q):
            if any(x != -y for x, y in zip(w2[i][j], w2[j][i])):
                raise SymmetryError(f"omega2 not antisymmetric at ({i},{j})")
    return DeformationDatum(w0, w1, w2)


@dataclass(frozen=True)
class NijenhuisCandidate:
    phi0: Matrix
    phi1: Matrix

    @classmethod
    def identity(cls, a: HomLieAntialgebra) -> "NijenhuisCandidate":
        return cls(Matrix.identity(a.p), Matrix.identity(a.q))

    @classmethod
    def zero(cls, a: HomLieAntialgebra) -> "NijenhuisCandidate":
        return cls(Matrix.zeros(a.p, a.p), Matrix.zeros(a.q, a.q))

    def to_json(self) -> dict:
        return {
            "phi0": [[rational_format(x) for x in r] for r in self.phi0.tolist()],
            "phi1": [[rational_format(x) for x in r] for r in self.phi1.tolist()],
        }


def nijenhuis_candidate(a: HomLieAntialgebra, phi0, phi1) -> NijenhuisCandidate:
    phi0 = Matrix(as_matrix(phi0).tolist(), cols=a.p)
    phi1 = Matrix(as_matrix(phi1).tolist(), cols=a.q)
    if phi0.rows != a.p or phi1.rows != a.q:
        raise ShapeError(f"phi needs shapes {a.p}x{a.p} and {a.q}x{a.q}")
    return NijenhuisCandidate(phi0, phi1)


def _check_phi(a, phi) -> NijenhuisCandidate:
    if isinstance(phi, NijenhuisCandidate):
        return nijenhuis_candidate(a, phi.phi0, phi.phi1)
    return nijenhuis_candidate(a, *phi)


# ------------------------------------------------------------------ deform

def deform(a: HomLieAntialgebra, omega, t) -> HomLieAntialgebra:
    d = deformation_datum(a, omega)
    t = as_rational(t)
    p, q = a.p, a.q

    def comb(x, y):
        return [[[u + t * v for u, v in zip(c1, c2)] for c1, c2 in zip(b1, b2)] for b1, b2 in zip(x, y)]

    return new_algebra(p, q, comb(a.mu, d.omega0), comb(a.nu, d.omega1), comb(a.br, d.omega2),
                       a.alpha, a.beta)


def omega_algebra(a: HomLieAntialgebra, omega) -> HomLieAntialgebra:
    """omega's own products with the twists of a."""
    d = deformation_datum(a, omega)
    return new_algebra(a.p, a.q, d.omega0, d.omega1, d.omega2, a.alpha, a.beta)


# ------------------------------------------------------------------ the two conditions

@dataclass
class InfinitesimalReport:
    own_structure: IdentityReport          # condition (i)
    cocycle: bool                          # condition (ii)
    admissible: bool
    cocycle_residual: tuple
    samples: dict = field(default_factory=dict)  # t -> IdentityReport of deform(a, omega, t)

    @property
    def condition_i(self) -> bool:
        return self.own_structure.passed

    @property
    def condition_ii(self) -> bool:
        return self.cocycle

    @property
    def combined(self) -> bool:
        return all(r.passed for r in self.samples.values())

    @property
    def passed(self) -> bool:
        return self.condition_i and self.condition_ii

    @property
    def consistent(self) -> bool:
        """The two conditions together agree with the direct check."""
        return self.passed == self.combined

    def to_json(self) -> dict:
        return {
            "condition_i": self.own_structure.to_json(),
            "condition_ii": {
                "verdict": "pass" if self.cocycle else "fail",
                "admissible": self.admissible,
                "residual": [rational_format(x) for x in self.cocycle_residual],
            },
            "deformed_samples": {rational_format(t): r.to_json() for t, r in self.samples.items()},
            "consistent": self.consistent,
        }


def check_infinitesimal(a: HomLieAntialgebra, omega, t_samples=DEFAULT_T_SAMPLES) -> InfinitesimalReport:
    """Evaluate both conditions and the deformed algebra at sample t values.

    Condition (i): omega on its own satisfies the four axioms and is
    multiplicative for (alpha, beta).  Condition (ii): (1/2 omega0, omega1,
    omega2) is an admissible 2-cocycle with adjoint coefficients.  The
    direct check asks deform(a, omega, t) to satisfy the axioms and to be
    multiplicative, which is what the two conditions characterise.
    """
    if not check_multiplicative(a).passed:
        raise NotMultiplicativeError("the algebra is not multiplicative")
    d = deformation_datum(a, omega)
    own = omega_algebra(a, d)
    cond_i = check_axioms(own).merge(check_multiplicative(own))
    rho = adjoint_representation(a)
    vec = omega_to_cochain(a, rho, d.omega)
    admissible = is_admissible(a, rho, vec, k=2)
    if admissible:
        ok, residual = is_cocycle(a, rho, vec, k=2)
    else:
        ok, residual = False, ()
    rep = InfinitesimalReport(cond_i, ok, admissible, tuple(residual))
    for t in t_samples:
        t = as_rational(t)
        dt = deform(a, d, t)
        rep.samples[t] = check_axioms(dt).merge(check_multiplicative(dt))
    return rep


# ------------------------------------------------------------------ residual polynomials

def _axiom_residuals(a: HomLieAntialgebra) -> dict:
    """{(identity, index tuple): residual vector} for every basis tuple."""
    out = {}
    rep = check_axioms(a)
    for name in AXIOM_NAMES:
        for idx, res in rep.verdicts[name].violations:
            out[(name, idx)] = res
    return out


def _lagrange_eval(ts, ys, t):
    acc = ZERO
    for i, (ti, yi) in enumerate(zip(ts, ys)):
        term = yi
        for j, tj in enumerate(ts):
            if j != i:
                term = term * (t - tj) / (ti - tj)
        acc += term
    return acc


@dataclass
class ResidualDegreeReport:
    t_samples: tuple
    max_degree: int
    fits_quadratic: bool
    coefficients: dict  # (identity, index, component) -> (c0, c1, c2)

    def to_json(self) -> dict:
        return {
            "t_samples": [rational_format(t) for t in self.t_samples],
            "max_degree": self.max_degree,
            "fits_quadratic": self.fits_quadratic,
            "residuals": [
                {"identity": k[0], "indices": list(k[1]), "component": k[2],
                 "coefficients": [rational_format(c) for c in v]}
                for k, v in sorted(self.coefficients.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
            ],
        }


def residual_degree_report(a: HomLieAntialgebra, omega, t_samples=DEFAULT_T_SAMPLES) -> ResidualDegreeReport:
    """Fit each axiom residual of deform(a, omega, t) by a polynomial in t.

    The residual at t = 0 plus the first two samples determine a quadratic;
    every remaining sample must lie on it.  ``max_degree`` is the largest
    degree actually present (-1 when all residuals vanish).
    """
    ts = [ZERO] + [as_rational(t) for t in t_samples]
    if len(set(ts)) != len(ts) or len(ts) < 4:
        raise PreconditionError("need at least three distinct nonzero t samples")
    per_t = [_axiom_residuals(deform(a, omega, t)) for t in ts]
    keys = set()
    for r in per_t:
        keys.update(r)
    fits = True
    max_deg = -1
    coeffs = {}
    for key in sorted(keys, key=lambda k: (k[0], k[1])):
        width = len(next(r[key] for r in per_t if key in r))
        for comp in range(width):
            ys = [r[key][comp] if key in r else ZERO for r in per_t]
            base_t, base_y = ts[:3], ys[:3]
            for t, y in zip(ts[3:], ys[3:]):
                if _lagrange_eval(base_t, base_y, t) != y:
                    fits = False
            c0 = ys[0]
            # solve for c1, c2 from samples t1, t2
            t1, t2 = ts[1], ts[2]
            y1, y2 = ys[1] - c0, ys[2] - c0
            c2 = (y1 / t1 - y2 / t2) / (t1 - t2)
            c1 = y1 / t1 - c2 * t1
            poly = (c0, c1, c2)
            if any(poly):
                coeffs[(key[0], key[1], comp)] = poly
                deg = 2 if c2 else (1 if c1 else 0)
                max_deg = max(max_deg, deg)
    return ResidualDegreeReport(tuple(ts), max_deg, fits, coeffs)


# ------------------------------------------------------------------ Nijenhuis

NIJENHUIS_NAMES = ("nijenhuis_even", "nijenhuis_action", "nijenhuis_bracket", "twist_commutation")


def is_nijenhuis(a: HomLieAntialgebra, phi) -> IdentityReport:
    """The three Nijenhuis identities on basis tuples, plus twist commutation.

    phi0(x1.phi0 x2) + phi0(phi0 x1 . x2) - phi0^2(x1.x2) = phi0 x1 . phi0 x2
    phi1(x.phi1 y) + phi1(phi0 x . y) - phi1^2(x.y) = phi0 x . phi1 y
    phi0[y1, phi1 y2] + phi0[phi1 y1, y2] - phi0^2[y1,y2] = [phi1 y1, phi1 y2]

    A map that does not commute with alpha and beta is reported under
    ``twist_commutation`` rather than silently accepted.
    """
    phi = _check_phi(a, phi)
    p, q = a.p, a.q
    P0, P1 = phi.phi0, phi.phi1
    P00, P11 = P0 @ P0, P1 @ P1
    rep = IdentityReport()
    for n in NIJENHUIS_NAMES:
        rep.add(n)
    E = [basis_vector(p, i) for i in range(p)]
    O = [basis_vector(q, j) for j in range(q)]
    pE = [P0.column(i) for i in range(p)]
    pO = [P1.column(j) for j in range(q)]

    def sub(u, v):
        return tuple(x - y for x, y in zip(u, v))

    def add(*vs):
        return tuple(sum(xs, ZERO) for xs in zip(*vs))

    for i, j in product(range(p), repeat=2):
        lhs = add(P0.apply(contract(a.mu, E[i], pE[j], p)), P0.apply(contract(a.mu, pE[i], E[j], p)),
                  tuple(-x for x in P00.apply(contract(a.mu, E[i], E[j], p))))
        rep.record("nijenhuis_even", (i, j), sub(lhs, contract(a.mu, pE[i], pE[j], p)))
    for i, j in product(range(p), range(q)):
        lhs = add(P1.apply(contract(a.nu, E[i], pO[j], q)), P1.apply(contract(a.nu, pE[i], O[j], q)),
                  tuple(-x for x in P11.apply(contract(a.nu, E[i], O[j], q))))
        rep.record("nijenhuis_action", (i, j), sub(lhs, contract(a.nu, pE[i], pO[j], q)))
    for i, j in product(range(q), repeat=2):
        lhs = add(P0.apply(contract(a.br, O[i], pO[j], p)), P0.apply(contract(a.br, pO[i], O[j], p)),
                  tuple(-x for x in P00.apply(contract(a.br, O[i], O[j], p))))
        rep.record("nijenhuis_bracket", (i, j), sub(lhs, contract(a.br, pO[i], pO[j], p)))
    c0 = P0 @ a.alpha - a.alpha @ P0
    c1 = P1 @ a.beta - a.beta @ P1
    for i in range(p):
        rep.record("twist_commutation", ("even", i), c0.column(i))
    for j in range(q):
        rep.record("twist_commutation", ("odd", j), c1.column(j))
    return rep


def nijenhuis_omega(a: HomLieAntialgebra, phi) -> DeformationDatum:
    """The three formulas generating a deformation from phi (no precondition):

    omega0(x1,x2) = x1.phi0 x2 + phi0 x1 . x2 - phi0(x1.x2)
    omega1(x,y) = x.phi1 y + phi0 x . y - phi1(x.y)
    omega2(y1,y2) = [y1, phi1 y2] + [phi1 y1, y2] - phi0[y1,y2]
    """
    phi = _check_phi(a, phi)
    p, q = a.p, a.q
    P0, P1 = phi.phi0, phi.phi1
    E = [basis_vector(p, i) for i in range(p)]
    O = [basis_vector(q, j) for j in range(q)]
    pE = [P0.column(i) for i in range(p)]
    pO = [P1.column(j) for j in range(q)]

    def comb3(u, v, w):
        return tuple(x + y - z for x, y, z in zip(u, v, w))

    w0 = tuple(tuple(comb3(contract(a.mu, E[i], pE[j], p), contract(a.mu, pE[i], E[j], p),
                           P0.apply(contract(a.mu, E[i], E[j], p))) for j in range(p)) for i in range(p))
    w1 = tuple(tuple(comb3(contract(a.nu, E[i], pO[j], q), contract(a.nu, pE[i], O[j], q),
                           P1.apply(contract(a.nu, E[i], O[j], q))) for j in range(q)) for i in range(p))
    w2 = tuple(tuple(comb3(contract(a.br, O[i], pO[j], p), contract(a.br, pO[i], O[j], p),
                           P0.apply(contract(a.br, O[i], O[j], p))) for j in range(q)) for i in range(q))
    return DeformationDatum(w0, w1, w2)


def deformation_from_nijenhuis(a: HomLieAntialgebra, phi) -> DeformationDatum:
    rep = is_nijenhuis(a, phi)
    if not rep.passed:
        raise PreconditionError(f"phi is not a Nijenhuis operator: fails {rep.failed_identities()}")
    return nijenhuis_omega(a, phi)


# ------------------------------------------------------------------ triviality

@dataclass
class TrivialityReport:
    per_t: dict  # t -> IdentityReport of phi_t as a homomorphism deform(a, omega, t) -> a

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.per_t.values())

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "per_t": {rational_format(t): r.to_json() for t, r in self.per_t.items()},
        }


def verify_trivial(a: HomLieAntialgebra, omega, phi, t_samples) -> TrivialityReport:
    """Check that id + t phi maps deform(a, omega, t) homomorphically onto a.

    The homomorphism report includes commutation with alpha and beta.
    """
    phi = _check_phi(a, phi)
    d = deformation_datum(a, omega)
    out = TrivialityReport({})
    for t in t_samples:
        t = as_rational(t)
        phit = AlgebraMorphism(Matrix.identity(a.p) + phi.phi0.scale(t), Matrix.identity(a.q) + phi.phi1.scale(t))
        out.per_t[t] = is_homomorphism(phit, deform(a, d, t), a)
    return out
