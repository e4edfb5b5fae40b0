"""Representations on graded Hom-modules, adjoint action, semidirect products.

A representation stores one matrix per algebra basis element:

* ``rho0_even[i]`` (r x r): action of ``e_i`` on V0
* ``rho0_odd[i]`` (s x s): action of ``e_i`` on V1
* ``rho1_up[j]`` (s x r): the odd map ``rho1(f_j)`` restricted to V0 -> V1
* ``rho1_down[j]`` (r x s): ``rho1(f_j)`` restricted to V1 -> V0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import (
    HomLieAntialgebra,
    IdentityReport,
    basis_vector,
    check_axioms,
    check_multiplicative,
    contract,
    new_algebra,
    zero_tensor,
)
from .errors import NotMultiplicativeError, PreconditionError, ShapeError
from .linalg import ZERO, Matrix, as_matrix, block_diag

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class HomModule:
    r: int
    s: int
    alphaV: Matrix
    betaV: Matrix

    def __post_init__(self):
        if self.alphaV.rows != self.r or (self.r and self.alphaV.cols != self.r):
            raise ShapeError("alphaV must be r x r")
        if self.betaV.rows != self.s or (self.s and self.betaV.cols != self.s):
            raise ShapeError("betaV must be s x s")

    @property
    def even_dim(self) -> int:
        return self.r

    @property
    def odd_dim(self) -> int:
        return self.s


def hom_module(r: int, s: int, alphaV=None, betaV=None) -> HomModule:
    a = Matrix.identity(r) if alphaV is None else Matrix(as_matrix(alphaV).tolist(), cols=r)
    b = Matrix.identity(s) if betaV is None else Matrix(as_matrix(betaV).tolist(), cols=s)
    return HomModule(r, s, a, b)


def _mats(ms, rows, cols, count, name):
    out = tuple(Matrix(as_matrix(m).tolist(), cols=cols) for m in ms)
    if len(out) != count or any(m.rows != rows for m in out):
        raise ShapeError(f"{name} needs {count} matrices of shape {rows}x{cols}")
    return out


@dataclass(frozen=True)
class Representation:
    module: HomModule
    rho0_even: tuple
    rho0_odd: tuple
    rho1_up: tuple
    rho1_down: tuple

    @property
    def r(self) -> int:
        return self.module.r

    @property
    def s(self) -> int:
        return self.module.s

    def rho0(self, x: Sequence, parity: int) -> Matrix:
        """Matrix of rho0(x) on V0 (parity 0) or V1 (parity 1)."""
        mats = self.rho0_even if parity == 0 else self.rho0_odd
        n = self.r if parity == 0 else self.s
        return _lin(mats, x, n, n)

    def rho1(self, y: Sequence, parity: int) -> Matrix:
        """Matrix of rho1(y) on V0 (parity 0, lands in V1) or V1 (lands in V0)."""
        if parity == 0:
            return _lin(self.rho1_up, y, self.s, self.r)
        return _lin(self.rho1_down, y, self.r, self.s)

    def check_shapes(self, a: HomLieAntialgebra) -> None:
        if len(self.rho0_even) != a.p or len(self.rho0_odd) != a.p:
            raise ShapeError("rho0 needs one matrix per even basis element")
        if len(self.rho1_up) != a.q or len(self.rho1_down) != a.q:
            raise ShapeError("rho1 needs one matrix per odd basis element")


def _lin(mats, v, rows, cols) -> Matrix:
    acc = [[ZERO] * cols for _ in range(rows)]
    for c, m in zip(v, mats):
        if c:
            for i in range(rows):
                mi = m.row(i)
                for j in range(cols):
                    if mi[j]:
                        acc[i][j] += c * mi[j]
    return Matrix(acc, cols=cols)


def new_representation(a: HomLieAntialgebra, module: HomModule, rho0_even, rho0_odd,
                       rho1_up, rho1_down) -> Representation:
    r, s = module.r, module.s
    return Representation(
        module,
        _mats(rho0_even, r, r, a.p, "rho0_even"),
        _mats(rho0_odd, s, s, a.p, "rho0_odd"),
        _mats(rho1_up, s, r, a.q, "rho1_up"),
        _mats(rho1_down, r, s, a.q, "rho1_down"),
    )


def trivial_representation(a: HomLieAntialgebra, module: HomModule) -> Representation:
    r, s = module.r, module.s
    return Representation(
        module,
        tuple(Matrix.zeros(r, r) for _ in range(a.p)),
        tuple(Matrix.zeros(s, s) for _ in range(a.p)),
        tuple(Matrix.zeros(s, r) for _ in range(a.q)),
        tuple(Matrix.zeros(r, s) for _ in range(a.q)),
    )


def adjoint_representation(a: HomLieAntialgebra, check: bool = True) -> Representation:
    """The algebra acting on itself by its own products.

    rho0(x) = x . (-) on both parts, rho1(y) sends u in V0 to u . y and
    w in V1 to [y, w].
    """
    if check:
        if not check_multiplicative(a).passed:
            raise NotMultiplicativeError("adjoint representation needs a multiplicative algebra")
        if not check_axioms(a).passed:
            raise PreconditionError("adjoint representation needs a valid algebra")
    p, q = a.p, a.q
    module = HomModule(p, q, a.alpha, a.beta)
    r0e = tuple(Matrix([[a.mu[i][j][k] for j in range(p)] for k in range(p)], cols=p) for i in range(p))
    r0o = tuple(Matrix([[a.nu[i][j][k] for j in range(q)] for k in range(q)], cols=q) for i in range(p))
    up = tuple(Matrix([[a.nu[i][j][k] for i in range(p)] for k in range(q)], cols=p) for j in range(q))
    down = tuple(Matrix([[a.br[j][l][k] for l in range(q)] for k in range(p)], cols=q) for j in range(q))
    return Representation(module, r0e, r0o, up, down)


REPRESENTATION_NAMES = (
    "even_square_on_v0",
    "even_square_on_v1",
    "odd_then_even_on_v0",
    "even_then_odd_on_v0",
    "odd_derivation_on_v1",
    "bracket_on_v0",
    "bracket_on_v1",
)


def check_representation(a: HomLieAntialgebra, rho: Representation) -> IdentityReport:
    """Check the seven representation identities on basis tuples.

    For x1, x2 even, y, y1, y2 odd, u in V0, w in V1:

    1. rho0(alpha x1) rho0(x2) u = rho0(x1.x2) alphaV u
    2. rho0(alpha x1) rho0(x2) w = 1/2 rho0(x1.x2) betaV w
    3. rho0(alpha x1) rho1(y) u = 1/2 rho1(beta y) rho0(x1) u
    4. rho1(x1.y) alphaV u = 1/2 rho1(beta y) rho0(x1) u
    5. rho0(alpha x1) rho1(y) w = rho1(x1.y) betaV w + rho1(beta y) rho0(x1) w
    6. rho0([y1,y2]) alphaV u = rho1(beta y1) rho1(y2) u - rho1(beta y2) rho1(y1) u
    7. rho0([y1,y2]) betaV w = -(rho1(beta y1) rho1(y2) w - rho1(beta y2) rho1(y1) w)

    3 and 4 share a right-hand side and are checked independently.  The sign
    in 7 is the one forced by the cyclic identity of the semidirect product
    on (y1, y2, w); with the opposite sign even the adjoint action of K(1)
    would fail.
    """
    rho.check_shapes(a)
    p, q = a.p, a.q
    aV, bV = rho.module.alphaV, rho.module.betaV
    rep = IdentityReport()
    for n in REPRESENTATION_NAMES:
        rep.add(n)
    E = [basis_vector(p, i) for i in range(p)]
    O = [basis_vector(q, j) for j in range(q)]
    aE = [a.alpha.column(i) for i in range(p)]
    bO = [a.beta.column(j) for j in range(q)]
    R0 = [[rho.rho0(x, par) for par in (0, 1)] for x in E]
    R0a = [[rho.rho0(x, par) for par in (0, 1)] for x in aE]
    R1 = [[rho.rho1(y, par) for par in (0, 1)] for y in O]
    R1b = [[rho.rho1(y, par) for par in (0, 1)] for y in bO]

    def rec(name, idx, m: Matrix):
        for col in range(m.cols):
            rep.record(name, idx + (col,), m.column(col))

    for i, j in product(range(p), repeat=2):
        prod = contract(a.mu, E[i], E[j], p)
        rec("even_square_on_v0", (i, j), R0a[i][0] @ R0[j][0] - rho.rho0(prod, 0) @ aV)
        rec("even_square_on_v1", (i, j), R0a[i][1] @ R0[j][1] - (rho.rho0(prod, 1) @ bV).scale(HALF))
    for i, j in product(range(p), range(q)):
        xy = contract(a.nu, E[i], O[j], q)
        rhs = (R1b[j][0] @ R0[i][0]).scale(HALF)
        rec("odd_then_even_on_v0", (i, j), R0a[i][1] @ R1[j][0] - rhs)
        rec("even_then_odd_on_v0", (i, j), rho.rho1(xy, 0) @ aV - rhs)
        rec("odd_derivation_on_v1", (i, j),
            R0a[i][0] @ R1[j][1] - rho.rho1(xy, 1) @ bV - R1b[j][1] @ R0[i][1])
    for i, j in product(range(q), repeat=2):
        yy = contract(a.br, O[i], O[j], p)
        rec("bracket_on_v0", (i, j),
            rho.rho0(yy, 0) @ aV - (R1b[i][1] @ R1[j][0] - R1b[j][1] @ R1[i][0]))
        rec("bracket_on_v1", (i, j),
            rho.rho0(yy, 1) @ bV + (R1b[i][0] @ R1[j][1] - R1b[j][0] @ R1[i][1]))
    return rep


def semidirect(a: HomLieAntialgebra, rho: Representation, omega=None) -> HomLieAntialgebra:
    """The algebra a + V with V an abelian ideal.

    Basis order: even part (a0 basis, then V0 basis), odd part (a1, then V1).
    ``omega`` = (w0, w1, w2) adds cocycle terms to the a-a products; it is
    used by the extensions module and defaults to zero.
    """
    rho.check_shapes(a)
    p, q, r, s = a.p, a.q, rho.r, rho.s
    P, Q = p + r, q + s
    M = zero_tensor(P, P, P)
    N = zero_tensor(P, Q, Q)
    B = zero_tensor(Q, Q, P)
    for i in range(p):
        for j in range(p):
            M[i][j][:p] = list(a.mu[i][j])
        r0e = rho.rho0_even[i]
        for u in range(r):
            for v in range(r):
                c = r0e[v, u]
                if c:
                    M[i][p + u][p + v] += c
                    M[p + u][i][p + v] += c
        for j in range(q):
            N[i][j][:q] = list(a.nu[i][j])
        r0o = rho.rho0_odd[i]
        for w in range(s):
            for v in range(s):
                N[i][q + w][q + v] += r0o[v, w]
    for j in range(q):
        up, down = rho.rho1_up[j], rho.rho1_down[j]
        for u in range(r):
            for v in range(s):
                N[p + u][j][q + v] += up[v, u]
        for i in range(q):
            B[i][j][:p] = list(a.br[i][j])
        for w in range(s):
            for v in range(r):
                c = down[v, w]
                if c:
                    B[j][q + w][p + v] += c
                    B[q + w][j][p + v] -= c
    if omega is not None:
        w0, w1, w2 = omega
        for i in range(p):
            for j in range(p):
                for v in range(r):
                    M[i][j][p + v] += w0[i][j][v]
            for j in range(q):
                for v in range(s):
                    N[i][j][q + v] += w1[i][j][v]
        for i in range(q):
            for j in range(q):
                for v in range(r):
                    B[i][j][p + v] += w2[i][j][v]
    return new_algebra(P, Q, M, N, B, block_diag(a.alpha, rho.module.alphaV),
                       block_diag(a.beta, rho.module.betaV))


def conjugate_representation(rho: Representation, g0, g1) -> Representation:
    """Transport rho along invertible module maps g0 on V0, g1 on V1."""
    g0, g1 = as_matrix(g0), as_matrix(g1)
    from .linalg import solve

    def inv(g):
        n = g.rows
        cols = []
        for k in range(n):
            x = solve(g, [1 if i == k else 0 for i in range(n)])
            if not x and n:
                raise PreconditionError("module map is not invertible")
            cols.append(x)
        return Matrix.from_columns(cols, n) if n else Matrix.zeros(0, 0)

    h0, h1 = inv(g0), inv(g1)
    module = HomModule(rho.r, rho.s, g0 @ rho.module.alphaV @ h0, g1 @ rho.module.betaV @ h1)
    return Representation(
        module,
        tuple(g0 @ m @ h0 for m in rho.rho0_even),
        tuple(g1 @ m @ h1 for m in rho.rho0_odd),
        tuple(g1 @ m @ h0 for m in rho.rho1_up),
        tuple(g0 @ m @ h1 for m in rho.rho1_down),
    )


def direct_sum(rho: Representation, sigma: Representation) -> Representation:
    module = HomModule(
        rho.r + sigma.r, rho.s + sigma.s,
        block_diag(rho.module.alphaV, sigma.module.alphaV),
        block_diag(rho.module.betaV, sigma.module.betaV),
    )
    return Representation(
        module,
        tuple(block_diag(x, y) for x, y in zip(rho.rho0_even, sigma.rho0_even)),
        tuple(block_diag(x, y) for x, y in zip(rho.rho0_odd, sigma.rho0_odd)),
        tuple(block_diag(x, y) for x, y in zip(rho.rho1_up, sigma.rho1_up)),
        tuple(block_diag(x, y) for x, y in zip(rho.rho1_down, sigma.rho1_down)),
    )
