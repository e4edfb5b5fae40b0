"""Cochains, the coboundary operator and cohomology dimensions.

A cochain in C^{m,n} takes m even arguments (full tensor power, no
symmetry) and n odd arguments (alternating) and has values in V0 when n is
even, V1 when n is odd.  Coefficients are stored for every even index tuple,
every strictly increasing odd index tuple and every value index, with the
value index varying fastest.  Degree-k cochains concatenate the blocks
(m, k-m) in increasing m.

Admissible cochains commute with the twists:
M_V f(x_1..x_m, y_1..y_n) = f(alpha x_1, .., beta y_n), M_V = alphaV or betaV.

Coboundary
----------
d = d_{1,0} + d_{0,1} + d_{-1,2} with weights 1/2, 1/n, 2/(n+1), 1/(n+1),
2/((n+1)(n+2)) and twist powers alpha^{k-1}, beta^{k-1} (k = m+n of the
source).  Signs, for a source cochain f in C^{m,n}:

d_{1,0}, n = 0::

    1/2 { rho0(a^{k-1} x1) f(x2..x_{m+1})
          + sum_i (-1)^i f(a x1.., x_i.x_{i+1}, ..a x_{m+1})
          + (-1)^{m+1} rho0(a^{k-1} x_{m+1}) f(x1..x_m) }

d_{1,0}, n > 0, V0-valued::

    (-1)^{m+1} 1/2 rho0(a^{k-1} x1) f(x2..x_{m+1}, y)
    + 1/2 sum_i (-1)^{i+1} f(.., x_i.x_{i+1}, .., b y)
    + 1/n sum_j (-1)^{m+j+1} f(a x1..a x_m, x_{m+1}.y_j, b y1..^j..b y_n)

d_{1,0}, V1-valued::

    rho0(a^{k-1} x1) f(x2..x_{m+1}, y)
    + 1/2 sum_i (-1)^i f(.., x_i.x_{i+1}, .., b y)
    + 1/n sum_j (-1)^{m+j} f(a x1..a x_m, x_{m+1}.y_j, b y1..^j..b y_n)

d_{0,1}::

    m = 0, n odd:  2/(n+1) sum_j (-1)^{j+1} rho1(b^{k-1} y_j) f(y1..^j..y_{n+1})
    otherwise:     1/(n+1) sum_j (-1)^{m+j} rho1(b^{k-1} y_j) f(x.., y1..^j..y_{n+1})

d_{-1,2}, m > 0 (zero on C^{0,n})::

    2/((n+1)(n+2)) sum_{i<j} (-1)^{i+j} f(a x1..a x_{m-1}, [y_i,y_j], b y..^i..^j..)

These are the textbook-style formulas with six sign exponents changed.  The
changes were fixed by two executable requirements: the cocycles extracted
from abelian extensions (with the (1/2 w0, w1, w2) substitution) must be
exactly ker d^2, and d^{k+1} d^k = 0 on K(1) and its twists for k <= 4.  In
closed form at degree 2 (see :func:`explicit_d2`) the convention reads

* (3,0): 1/2 { rho0(a x1) f(x2,x3) - f(x1.x2, a x3) + f(a x1, x2.x3) - rho0(a x3) f(x1,x2) }
* (2,1): rho0(a x1) f(x2,y) - 1/2 f(x1.x2, b y) + f(a x1, x2.y) - rho1(b y) f(x1,x2)
* (1,2): 1/2 { -rho0(a x1) f(y1,y2) + f(x1.y1, b y2) - f(x1.y2, b y1)
  + rho1(b y1) f(x1,y2) - rho1(b y2) f(x1,y1) } - f(a x1, [y1,y2])
* (0,3): 1/3 { -rho1(b y1) f(y2,y3) + rho1(b y2) f(y1,y3) - rho1(b y3) f(y1,y2)
  - f([y1,y2], b y3) + f([y1,y3], b y2) - f([y2,y3], b y1) }

Even-argument slots are tensorial, so for odd dimension q >= 4 the square
d^3 d^2 picks up terms f([y_i,y_j],[y_k,y_l]) that do not cancel; the
complex property is therefore only asserted where it holds (q <= 2 and
degrees 1-2 in general).  :func:`square_defect` measures it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Sequence

from .algebra import HomLieAntialgebra, basis_vector, check_multiplicative, contract
from .errors import InadmissibleCochainError, NotMultiplicativeError, PreconditionError
from .linalg import (
    MODULAR_PRIMES,
    NO_SOLUTION,
    ONE,
    ZERO,
    Matrix,
    free_columns,
    mat_pow,
    modular_rank,
    nullspace_basis,
    rank,
    rank_dual_oracle,
    rational_format,
    solve,
)
from .representation import Representation

HALF = Fraction(1, 2)


def max_degree() -> int:
    """Upper bound on degrees accepted by the CLI (HOMANTI_MAX_DEGREE)."""
    try:
        return int(os.environ.get("HOMANTI_MAX_DEGREE", "4"))
    except ValueError:
        return 4


@dataclass(frozen=True, order=True)
class CochainSignature:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise PreconditionError("signature needs m, n >= 0 and m + n >= 1")

    @property
    def k(self) -> int:
        return self.m + self.n

    @property
    def value_parity(self) -> int:
        return self.n % 2

    def parity_name(self) -> str:
        return "odd" if self.value_parity else "even"


def signatures(a: HomLieAntialgebra, k: int) -> list:
    return [CochainSignature(m, k - m) for m in range(k + 1) if k - m <= a.q and (m, k - m) != (0, 0)]


def value_dim(rho: Representation, sig: CochainSignature) -> int:
    return rho.s if sig.value_parity else rho.r


def raw_cochain_dim(a: HomLieAntialgebra, rho: Representation, sig: CochainSignature) -> int:
    return a.p ** sig.m * comb(a.q, sig.n) * value_dim(rho, sig)


@lru_cache(maxsize=None)
def _block_keys(p: int, q: int, m: int, n: int, vdim: int) -> tuple:
    keys = []
    for e in product(range(p), repeat=m):
        for o in combinations(range(q), n):
            for v in range(vdim):
                keys.append((e, o, v))
    return tuple(keys)


@lru_cache(maxsize=None)
def _block_index(p: int, q: int, m: int, n: int, vdim: int) -> dict:
    return {key: i for i, key in enumerate(_block_keys(p, q, m, n, vdim))}


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def expand_arguments(evens: Sequence, odds: Sequence) -> dict:
    """Multilinear expansion of f(evens; odds) in basis tuples.

    Returns {(even index tuple, increasing odd index tuple): coefficient},
    with the alternating sign applied and repeated odd indices dropped.
    """
    esup = [[(i, c) for i, c in enumerate(x) if c] for x in evens]
    osup = [[(i, c) for i, c in enumerate(y) if c] for y in odds]
    out = {}
    for ech in product(*esup):
        ce = ONE
        for _, c in ech:
            ce *= c
        et = tuple(i for i, _ in ech)
        for och in product(*osup):
            ids = [i for i, _ in och]
            if len(set(ids)) < len(ids):
                continue
            co = ce
            for _, c in och:
                co *= c
            key = (et, tuple(sorted(ids)))
            out[key] = out.get(key, ZERO) + _perm_sign(ids) * co
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class Cochain:
    """One homogeneous block of coefficients."""

    signature: CochainSignature
    coeffs: tuple
    p: int
    q: int
    vdim: int

    def value(self, evens: Sequence[int], odds: Sequence[int]) -> tuple:
        """Value on basis elements given by index; odd order may be arbitrary."""
        odds = list(odds)
        if len(set(odds)) < len(odds):
            return tuple([ZERO] * self.vdim)
        sign = _perm_sign(odds)
        idx = _block_index(self.p, self.q, self.signature.m, self.signature.n, self.vdim)
        base = idx[(tuple(evens), tuple(sorted(odds)), 0)]
        return tuple(sign * self.coeffs[base + v] for v in range(self.vdim))

    def evaluate(self, evens: Sequence, odds: Sequence) -> tuple:
        """Value on arbitrary argument vectors."""
        acc = [ZERO] * self.vdim
        idx = _block_index(self.p, self.q, self.signature.m, self.signature.n, self.vdim)
        for (e, o), c in expand_arguments(evens, odds).items():
            base = idx[(e, o, 0)]
            for v in range(self.vdim):
                acc[v] += c * self.coeffs[base + v]
        return tuple(acc)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def to_json(self) -> dict:
        keys = _block_keys(self.p, self.q, self.signature.m, self.signature.n, self.vdim)
        return {
            "m": self.signature.m,
            "n": self.signature.n,
            "parity": self.signature.parity_name(),
            "entries": [
                {"even": list(e), "odd": list(o), "value": v, "c": rational_format(c)}
                for (e, o, v), c in zip(keys, self.coeffs) if c
            ],
        }


class CochainSpace:
    """Raw coordinates of C^k = sum over (m, n) of C^{m,n}."""

    def __init__(self, a: HomLieAntialgebra, rho: Representation, k: int):
        if k < 1:
            raise PreconditionError("degree must be at least 1")
        self.a, self.rho, self.k = a, rho, k
        self.sigs = signatures(a, k)
        self.offsets = {}
        self.sizes = {}
        off = 0
        for sig in self.sigs:
            self.offsets[sig] = off
            self.sizes[sig] = raw_cochain_dim(a, rho, sig)
            off += self.sizes[sig]
        self.dim = off

    def index(self, sig: CochainSignature) -> dict:
        return _block_index(self.a.p, self.a.q, sig.m, sig.n, value_dim(self.rho, sig))

    def split(self, vec: Sequence) -> list:
        out = []
        for sig in self.sigs:
            o = self.offsets[sig]
            out.append(Cochain(sig, tuple(vec[o:o + self.sizes[sig]]), self.a.p, self.a.q,
                               value_dim(self.rho, sig)))
        return out

    def join(self, cochains) -> tuple:
        vec = [ZERO] * self.dim
        for c in cochains:
            if c.signature not in self.offsets:
                raise PreconditionError(f"signature {c.signature} is not part of degree {self.k}")
            o = self.offsets[c.signature]
            vec[o:o + len(c.coeffs)] = list(c.coeffs)
        return tuple(vec)

    def as_vector(self, f) -> tuple:
        """Accept a raw vector, a Cochain or an iterable of Cochains."""
        if isinstance(f, Cochain):
            return self.join([f])
        f = list(f)
        if f and isinstance(f[0], Cochain):
            return self.join(f)
        if len(f) != self.dim:
            raise PreconditionError(f"expected a vector of length {self.dim}")
        return tuple(Fraction(x) for x in f)


# ------------------------------------------------------------------ admissibility

@lru_cache(maxsize=None)
def _constraint_matrix(a: HomLieAntialgebra, rho: Representation, sig: CochainSignature) -> Matrix:
    p, q = a.p, a.q
    vd = value_dim(rho, sig)
    MV = rho.module.betaV if sig.value_parity else rho.module.alphaV
    idx = _block_index(p, q, sig.m, sig.n, vd)
    keys = _block_keys(p, q, sig.m, sig.n, vd)
    alpha_cols = [a.alpha.column(i) for i in range(p)]
    beta_cols = [a.beta.column(j) for j in range(q)]
    rows = []
    size = len(keys)
    for e, o, v in keys:
        row = [ZERO] * size
        for w in range(vd):
            c = MV[v, w]
            if c:
                row[idx[(e, o, w)]] += c
        for (e2, o2), c in expand_arguments([alpha_cols[i] for i in e], [beta_cols[j] for j in o]).items():
            row[idx[(e2, o2, v)]] -= c
        rows.append(row)
    return Matrix(rows, cols=size)


def is_admissible(a: HomLieAntialgebra, rho: Representation, f, k: int | None = None) -> bool:
    space = CochainSpace(a, rho, _degree_of(a, rho, f, k))
    vec = space.as_vector(f)
    for sig in space.sigs:
        o = space.offsets[sig]
        block = vec[o:o + space.sizes[sig]]
        if any(x for x in _constraint_matrix(a, rho, sig).apply(block)):
            return False
    return True


@lru_cache(maxsize=None)
def _admissible_block(a: HomLieAntialgebra, rho: Representation, sig: CochainSignature):
    C = _constraint_matrix(a, rho, sig)
    return tuple(nullspace_basis(C)), tuple(free_columns(C))


def admissible_basis(a: HomLieAntialgebra, rho: Representation, sig: CochainSignature) -> list:
    """Basis of the admissible part of C^{m,n}."""
    vecs, _ = _admissible_block(a, rho, sig)
    vd = value_dim(rho, sig)
    return [Cochain(sig, v, a.p, a.q, vd) for v in vecs]


@lru_cache(maxsize=None)
def _degree_basis(a: HomLieAntialgebra, rho: Representation, k: int):
    """Admissible basis of C^k as raw vectors plus the coordinate columns."""
    space = CochainSpace(a, rho, k)
    basis, coord_cols = [], []
    for sig in space.sigs:
        vecs, free = _admissible_block(a, rho, sig)
        o = space.offsets[sig]
        for v, fc in zip(vecs, free):
            full = [ZERO] * space.dim
            full[o:o + len(v)] = list(v)
            basis.append(tuple(full))
            coord_cols.append(o + fc)
    return tuple(basis), tuple(coord_cols)


def _degree_of(a, rho, f, k=None) -> int:
    if k is not None:
        return k
    if isinstance(f, Cochain):
        return f.signature.k
    f = list(f)
    if f and isinstance(f[0], Cochain):
        return f[0].signature.k
    hits = [d for d in range(1, a.q + 2 * max(a.p, 1) + 8) if CochainSpace(a, rho, d).dim == len(f)]
    if len(hits) != 1:
        raise PreconditionError("cannot infer the degree of a raw vector; pass k or Cochain objects")
    return hits[0]


# ------------------------------------------------------------------ assembly

def _require_multiplicative(a: HomLieAntialgebra) -> None:
    rep = check_multiplicative(a)
    if not rep.passed:
        raise NotMultiplicativeError(
            f"the twist maps are not multiplicative (fails {rep.failed_identities()}); "
            "the coboundary would not preserve admissible cochains"
        )


@lru_cache(maxsize=None)
def assemble_raw_d(a: HomLieAntialgebra, rho: Representation, k: int) -> Matrix:
    """Matrix of d^k on raw coordinates, C^k -> C^{k+1}."""
    src = CochainSpace(a, rho, k)
    tgt = CochainSpace(a, rho, k + 1)
    p, q = a.p, a.q
    D = [[ZERO] * src.dim for _ in range(tgt.dim)]
    alpha, beta = a.alpha, a.beta
    ak = mat_pow(alpha, k - 1)
    bk = mat_pow(beta, k - 1)
    src_sigs = {(s.m, s.n): s for s in src.sigs}

    def rho0(x, par):
        return rho.rho0(x, par)

    def rho1(y, par):
        return rho.rho1(y, par)

    def add(row0, sig, terms, post, coef):
        """Add coef * post . f_sig(terms) to the rows starting at row0."""
        sidx = src.index(sig)
        off = src.offsets[sig]
        svd = value_dim(rho, sig)
        tvd = post.rows if post is not None else svd
        for (e, o), c in terms.items():
            base = off + sidx[(e, o, 0)]
            cc = coef * c
            for w in range(svd):
                col = base + w
                if post is None:
                    D[row0 + w][col] += cc
                else:
                    for v in range(tvd):
                        mv = post[v, w]
                        if mv:
                            D[row0 + v][col] += cc * mv

    for tsig in tgt.sigs:
        M, Nn = tsig.m, tsig.n
        toff = tgt.offsets[tsig]
        tidx = tgt.index(tsig)
        par = Nn % 2
        for e in product(range(p), repeat=M):
            xs = [basis_vector(p, i) for i in e]
            ax = [alpha.column(i) for i in e]
            for o in combinations(range(q), Nn):
                ys = [basis_vector(q, j) for j in o]
                by = [beta.column(j) for j in o]
                row0 = toff + tidx[(e, o, 0)]

                # d_{1,0} from (M-1, Nn)
                m, n = M - 1, Nn
                sig = src_sigs.get((m, n))
                if sig is not None:
                    if n == 0:
                        add(row0, sig, expand_arguments(xs[1:], []), rho0(ak.apply(xs[0]), 0), HALF)
                        for i in range(1, m + 1):
                            args = ax[:i - 1] + [contract(a.mu, xs[i - 1], xs[i], p)] + ax[i + 1:]
                            add(row0, sig, expand_arguments(args, []), None, HALF * (-1) ** i)
                        add(row0, sig, expand_arguments(xs[:m], []), rho0(ak.apply(xs[m]), 0),
                            HALF * (-1) ** (m + 1))
                    else:
                        if par == 0:
                            rho_c, sum_sign, j_shift = HALF * (-1) ** (m + 1), 1, 1
                        else:
                            rho_c, sum_sign, j_shift = ONE, 0, 0
                        add(row0, sig, expand_arguments(xs[1:], ys), rho0(ak.apply(xs[0]), par), rho_c)
                        for i in range(1, m + 1):
                            args = ax[:i - 1] + [contract(a.mu, xs[i - 1], xs[i], p)] + ax[i + 1:]
                            add(row0, sig, expand_arguments(args, by), None, HALF * (-1) ** (i + sum_sign))
                        for j in range(1, n + 1):
                            odd = [contract(a.nu, xs[m], ys[j - 1], q)] + by[:j - 1] + by[j:]
                            add(row0, sig, expand_arguments(ax[:m], odd), None,
                                Fraction(1, n) * (-1) ** (m + j + j_shift))

                # d_{0,1} from (M, Nn-1)
                m, n = M, Nn - 1
                sig = src_sigs.get((m, n))
                if sig is not None:
                    for j in range(1, n + 2):
                        rest = ys[:j - 1] + ys[j:]
                        post = rho1(bk.apply(ys[j - 1]), n % 2)
                        if m == 0 and n % 2 == 1:
                            coef = Fraction(2, n + 1) * (-1) ** (j + 1)
                        else:
                            coef = Fraction(1, n + 1) * (-1) ** (m + j)
                        add(row0, sig, expand_arguments(xs, rest), post, coef)

                # d_{-1,2} from (M+1, Nn-2)
                m, n = M + 1, Nn - 2
                sig = src_sigs.get((m, n))
                if sig is not None:
                    w = Fraction(2, (n + 1) * (n + 2))
                    for i in range(1, n + 3):
                        for j in range(i + 1, n + 3):
                            rest = [by[t] for t in range(n + 2) if t not in (i - 1, j - 1)]
                            args = ax[:m - 1] + [contract(a.br, ys[i - 1], ys[j - 1], p)]
                            add(row0, sig, expand_arguments(args, rest), None, w * (-1) ** (i + j))
    return Matrix(D, cols=src.dim)


@dataclass
class CochainComplexSlice:
    """d^k restricted to admissible cochains.

    ``matrix`` has one column per admissible basis vector of C^k and one row
    per admissible basis vector of C^{k+1}.
    """

    k: int
    source_basis: tuple
    target_basis: tuple
    matrix: Matrix
    raw: Matrix
    source_space: CochainSpace
    target_space: CochainSpace

    @property
    def source_dim(self) -> int:
        return len(self.source_basis)

    @property
    def target_dim(self) -> int:
        return len(self.target_basis)


@lru_cache(maxsize=None)
def _slice(a: HomLieAntialgebra, rho: Representation, k: int) -> CochainComplexSlice:
    raw = assemble_raw_d(a, rho, k)
    sb, _ = _degree_basis(a, rho, k)
    tb, tcols = _degree_basis(a, rho, k + 1)
    tspace = CochainSpace(a, rho, k + 1)
    columns = []
    for b in sb:
        img = raw.apply(b)
        coords = [img[c] for c in tcols]
        recon = [ZERO] * tspace.dim
        for c, t in zip(coords, tb):
            if c:
                for i, x in enumerate(t):
                    if x:
                        recon[i] += c * x
        if tuple(recon) != img:
            raise InadmissibleCochainError(
                f"d^{k} maps an admissible cochain outside the admissible subspace; "
                "the representation does not commute with the twist maps"
            )
        columns.append(coords)
    mat = Matrix([[col[i] for col in columns] for i in range(len(tb))], cols=len(sb))
    return CochainComplexSlice(k, sb, tb, mat, raw, CochainSpace(a, rho, k), tspace)


def assemble_d(a: HomLieAntialgebra, rho: Representation, k: int) -> CochainComplexSlice:
    if k < 1:
        raise PreconditionError("degree must be at least 1")
    _require_multiplicative(a)
    rho.check_shapes(a)
    return _slice(a, rho, k)


def apply_d(a: HomLieAntialgebra, rho: Representation, f, k: int | None = None) -> tuple:
    """Raw image d(f) of a degree-k cochain (vector or Cochain list)."""
    k = _degree_of(a, rho, f, k)
    vec = CochainSpace(a, rho, k).as_vector(f)
    _require_multiplicative(a)
    return assemble_raw_d(a, rho, k).apply(vec)


# ------------------------------------------------------------------ predicates

def _admissible_vector(a, rho, f, k=None):
    k = _degree_of(a, rho, f, k)
    space = CochainSpace(a, rho, k)
    vec = space.as_vector(f)
    if not is_admissible(a, rho, vec, k):
        raise InadmissibleCochainError("cochain does not commute with the twist maps")
    return k, space, vec


def is_cocycle(a: HomLieAntialgebra, rho: Representation, f, k: int | None = None):
    """(True/False, residual d f as a raw vector)."""
    k, space, vec = _admissible_vector(a, rho, f, k)
    _require_multiplicative(a)
    res = assemble_raw_d(a, rho, k).apply(vec)
    return all(x == 0 for x in res), res


class NotACoboundary:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotACoboundary"


NOT_A_COBOUNDARY = NotACoboundary()


def is_coboundary(a: HomLieAntialgebra, rho: Representation, f, k: int | None = None):
    """A raw admissible (k-1)-cochain g with d g = f, or NOT_A_COBOUNDARY.

    Degree-0 cochains are not modelled, so in degree 1 only f = 0 is exact.
    """
    k, space, vec = _admissible_vector(a, rho, f, k)
    _require_multiplicative(a)
    if k == 1:
        return tuple([ZERO] * space.dim) if all(x == 0 for x in vec) else NOT_A_COBOUNDARY
    sl = _slice(a, rho, k - 1)
    _, tcols = _degree_basis(a, rho, k)
    target = [vec[c] for c in tcols]
    x = solve(sl.matrix, target)
    if x is NO_SOLUTION:
        return NOT_A_COBOUNDARY
    g = [ZERO] * sl.source_space.dim
    for c, b in zip(x, sl.source_basis):
        if c:
            for i, bi in enumerate(b):
                if bi:
                    g[i] += c * bi
    g = tuple(g)
    if sl.raw.apply(g) != vec:  # pragma: no cover - guards the solver
        raise ArithmeticError("coboundary witness failed verification")
    return g


# ------------------------------------------------------------------ dimensions

@dataclass
class CohomologyReport:
    k: int
    admissible_dim: int
    rank_prev: int
    rank_d: int
    kernel_dim: int
    h_dim: int
    modular_ranks: dict = field(default_factory=dict)
    dual_ranks: dict = field(default_factory=dict)

    @property
    def oracles_agree(self) -> bool:
        ok = all(v == self.rank_d for v in self.modular_ranks.get("d", {}).values())
        ok &= all(v == self.rank_prev for v in self.modular_ranks.get("prev", {}).values())
        ok &= self.dual_ranks.get("d", self.rank_d) == self.rank_d
        ok &= self.dual_ranks.get("prev", self.rank_prev) == self.rank_prev
        return ok

    def to_json(self) -> dict:
        return {
            "degree": self.k,
            "admissible_dim": self.admissible_dim,
            "rank_d_prev": self.rank_prev,
            "rank_d": self.rank_d,
            "kernel_dim": self.kernel_dim,
            "h_dim": self.h_dim,
            "modular_ranks": {
                which: {str(p): r for p, r in ranks.items()} for which, ranks in self.modular_ranks.items()
            },
            "dual_elimination_ranks": self.dual_ranks,
            "oracles_agree": self.oracles_agree,
        }


def cohomology_report(a: HomLieAntialgebra, rho: Representation, k: int, oracles: bool = True) -> CohomologyReport:
    sl = assemble_d(a, rho, k)
    dim = sl.source_dim
    rk = rank(sl.matrix)
    rk_prev = rank(assemble_d(a, rho, k - 1).matrix) if k >= 2 else 0
    rep = CohomologyReport(k, dim, rk_prev, rk, dim - rk, dim - rk - rk_prev)
    if oracles:
        mats = {"d": sl.matrix}
        if k >= 2:
            mats["prev"] = assemble_d(a, rho, k - 1).matrix
        for which, m in mats.items():
            rep.modular_ranks[which] = {p: modular_rank(m, p) for p in MODULAR_PRIMES}
            rep.dual_ranks[which] = rank_dual_oracle(m)
    return rep


def cohomology_dim(a: HomLieAntialgebra, rho: Representation, k: int) -> int:
    return cohomology_report(a, rho, k, oracles=False).h_dim


def cocycle_basis(a: HomLieAntialgebra, rho: Representation, k: int) -> list:
    """Raw vectors spanning the admissible k-cocycles."""
    sl = assemble_d(a, rho, k)
    out = []
    for coeffs in nullspace_basis(sl.matrix) if sl.source_dim else []:
        v = [ZERO] * sl.source_space.dim
        for c, b in zip(coeffs, sl.source_basis):
            if c:
                for i, bi in enumerate(b):
                    if bi:
                        v[i] += c * bi
        out.append(tuple(v))
    return out


def coboundary_vectors(a: HomLieAntialgebra, rho: Representation, k: int) -> list:
    """Raw images d^{k-1}(b) of the admissible basis (empty for k = 1)."""
    if k < 2:
        return []
    sl = assemble_d(a, rho, k - 1)
    return [sl.raw.apply(b) for b in sl.source_basis]


def square_defect(a: HomLieAntialgebra, rho: Representation, k: int) -> Matrix:
    """d^{k+1} d^k on admissible cochains (zero exactly when the square vanishes)."""
    s1 = assemble_d(a, rho, k)
    s2 = assemble_d(a, rho, k + 1)
    return s2.matrix @ s1.matrix


# ------------------------------------------------------------------ degree 2 by hand

def explicit_d2(a: HomLieAntialgebra, rho: Representation, f) -> tuple:
    """Closed-form degree-2 coboundary, evaluated directly on arguments.

    Independent of :func:`assemble_raw_d`: uses the four closed formulas in
    the module docstring and plain cochain evaluation.
    """
    space = CochainSpace(a, rho, 2)
    vec = space.as_vector(f)
    blocks = {c.signature: c for c in space.split(vec)}
    tgt = CochainSpace(a, rho, 3)
    p, q = a.p, a.q
    al, be = a.alpha, a.beta
    out = [ZERO] * tgt.dim

    def F(m, n, evens, odds):
        sig = CochainSignature(m, n)
        if sig not in blocks:
            return tuple([ZERO] * value_dim(rho, sig))
        return blocks[sig].evaluate(evens, odds)

    def r0(x, par, v):
        return rho.rho0(x, par).apply(v)

    def r1(y, par, v):
        return rho.rho1(y, par).apply(v)

    def put(sig, e, o, vals):
        base = tgt.offsets[sig] + tgt.index(sig)[(e, o, 0)]
        for i, x in enumerate(vals):
            out[base + i] += x

    def lin(*terms):
        n = len(terms[0][1])
        acc = [ZERO] * n
        for c, v in terms:
            for i, x in enumerate(v):
                acc[i] += c * x
        return acc

    E = [basis_vector(p, i) for i in range(p)]
    O = [basis_vector(q, j) for j in range(q)]
    aE = [al.column(i) for i in range(p)]
    bO = [be.column(j) for j in range(q)]
    ee = lambda x, y: contract(a.mu, x, y, p)  # noqa: E731
    eo = lambda x, y: contract(a.nu, x, y, q)  # noqa: E731
    oo = lambda x, y: contract(a.br, x, y, p)  # noqa: E731

    s30, s21, s12, s03 = (CochainSignature(*t) for t in ((3, 0), (2, 1), (1, 2), (0, 3)))
    for i, j, k in product(range(p), repeat=3):
        x1, x2, x3 = E[i], E[j], E[k]
        put(s30, (i, j, k), (), lin(
            (HALF, r0(aE[i], 0, F(2, 0, [x2, x3], []))),
            (-HALF, F(2, 0, [ee(x1, x2), aE[k]], [])),
            (HALF, F(2, 0, [aE[i], ee(x2, x3)], [])),
            (-HALF, r0(aE[k], 0, F(2, 0, [x1, x2], []))),
        ))
    if q >= 1:
        for i, j, l in product(range(p), range(p), range(q)):
            x1, x2, y = E[i], E[j], O[l]
            put(s21, (i, j), (l,), lin(
                (ONE, r0(aE[i], 1, F(1, 1, [x2], [y]))),
                (-HALF, F(1, 1, [ee(x1, x2)], [bO[l]])),
                (ONE, F(1, 1, [aE[i]], [eo(x2, y)])),
                (-ONE, r1(bO[l], 0, F(2, 0, [x1, x2], []))),
            ))
    if q >= 2:
        for i in range(p):
            for l1, l2 in combinations(range(q), 2):
                x1, y1, y2 = E[i], O[l1], O[l2]
                put(s12, (i,), (l1, l2), lin(
                    (-HALF, r0(aE[i], 0, F(0, 2, [], [y1, y2]))),
                    (HALF, F(0, 2, [], [eo(x1, y1), bO[l2]])),
                    (-HALF, F(0, 2, [], [eo(x1, y2), bO[l1]])),
                    (HALF, r1(bO[l1], 1, F(1, 1, [x1], [y2]))),
                    (-HALF, r1(bO[l2], 1, F(1, 1, [x1], [y1]))),
                    (-ONE, F(2, 0, [aE[i], oo(y1, y2)], [])),
                ))
    if q >= 3:
        third = Fraction(1, 3)
        for l1, l2, l3 in combinations(range(q), 3):
            y1, y2, y3 = O[l1], O[l2], O[l3]
            put(s03, (), (l1, l2, l3), lin(
                (-third, r1(bO[l1], 0, F(0, 2, [], [y2, y3]))),
                (third, r1(bO[l2], 0, F(0, 2, [], [y1, y3]))),
                (-third, r1(bO[l3], 0, F(0, 2, [], [y1, y2]))),
                (-third, F(1, 1, [oo(y1, y2)], [bO[l3]])),
                (third, F(1, 1, [oo(y1, y3)], [bO[l2]])),
                (-third, F(1, 1, [oo(y2, y3)], [bO[l1]])),
            ))
    return tuple(out)


# ------------------------------------------------------------------ degree-2 adapters

def omega_to_cochain(a: HomLieAntialgebra, rho: Representation, omega) -> tuple:
    """Raw degree-2 vector of (1/2 w0, w1, w2).

    This is the single place where the factor 1/2 on the even-even
    component enters: an extension or deformation with products perturbed by
    w0 corresponds to the cochain 1/2 w0 in C^{2,0}.
    """
    w0, w1, w2 = omega
    space = CochainSpace(a, rho, 2)
    vec = [ZERO] * space.dim
    for sig in space.sigs:
        off = space.offsets[sig]
        for (e, o, v), pos in space.index(sig).items():
            if (sig.m, sig.n) == (2, 0):
                val = HALF * Fraction(w0[e[0]][e[1]][v])
            elif (sig.m, sig.n) == (1, 1):
                val = Fraction(w1[e[0]][o[0]][v])
            else:
                val = Fraction(w2[o[0]][o[1]][v])
            vec[off + pos] = val
    return tuple(vec)


def cochain_to_omega(a: HomLieAntialgebra, rho: Representation, vec) -> tuple:
    """Inverse of :func:`omega_to_cochain`.

    The (2,0) block is doubled; it must be symmetric for the result to be a
    valid product perturbation (checked by the callers that need it).
    """
    p, q, r, s = a.p, a.q, rho.r, rho.s
    w0 = [[[ZERO] * r for _ in range(p)] for _ in range(p)]
    w1 = [[[ZERO] * s for _ in range(q)] for _ in range(p)]
    w2 = [[[ZERO] * r for _ in range(q)] for _ in range(q)]
    space = CochainSpace(a, rho, 2)
    vec = space.as_vector(vec)
    for sig in space.sigs:
        off = space.offsets[sig]
        for (e, o, v), pos in space.index(sig).items():
            c = vec[off + pos]
            if (sig.m, sig.n) == (2, 0):
                w0[e[0]][e[1]][v] = 2 * c
            elif (sig.m, sig.n) == (1, 1):
                w1[e[0]][o[0]][v] = c
            else:
                w2[o[0]][o[1]][v] = c
                w2[o[1]][o[0]][v] = -c
    return w0, w1, w2


def one_cochain(a: HomLieAntialgebra, rho: Representation, f0, f1) -> tuple:
    """Raw degree-1 vector from f0 (r x p matrix) and f1 (s x q matrix)."""
    space = CochainSpace(a, rho, 1)
    vec = [ZERO] * space.dim
    f0, f1 = Matrix(f0, cols=a.p) if not isinstance(f0, Matrix) else f0, \
        Matrix(f1, cols=a.q) if not isinstance(f1, Matrix) else f1
    for sig in space.sigs:
        off = space.offsets[sig]
        for (e, o, v), pos in space.index(sig).items():
            vec[off + pos] = f0[v, e[0]] if sig.m == 1 else f1[v, o[0]]
    return tuple(vec)


def one_cochain_parts(a: HomLieAntialgebra, rho: Representation, vec) -> tuple:
    """Inverse of :func:`one_cochain`: (f0, f1) as matrices."""
    space = CochainSpace(a, rho, 1)
    f0 = [[ZERO] * a.p for _ in range(rho.r)]
    f1 = [[ZERO] * a.q for _ in range(rho.s)]
    for sig in space.sigs:
        off = space.offsets[sig]
        for (e, o, v), pos in space.index(sig).items():
            if sig.m == 1:
                f0[v][e[0]] = vec[off + pos]
            else:
                f1[v][o[0]] = vec[off + pos]
    return Matrix(f0, cols=a.p), Matrix(f1, cols=a.q)
