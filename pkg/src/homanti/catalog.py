"""Built-in example algebras.

``k1`` is the 1|2-dimensional Lie antialgebra with basis eps (even), a, b
(odd) and relations eps.eps = eps, eps.a = a/2, eps.b = b/2, [a,b] = eps/2.
``twisted_k1(mu)`` twists it along beta = diag(mu, 1/mu).

The conformal algebra is infinite-dimensional, so it is provided lazily as
per-basis-element evaluators.  With q = r**2, powers q**i for half-integer i
become integer powers r**(2i) and stay exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import HomLieAntialgebra, IdentityReport, new_algebra, zero_tensor
from .errors import PreconditionError
from .linalg import ONE, ZERO, Matrix, as_rational, rational_format

HALF = Fraction(1, 2)


def k1() -> HomLieAntialgebra:
    return twisted_k1(ONE)


def twisted_k1(mu) -> HomLieAntialgebra:
    mu = as_rational(mu)
    if mu == 0:
        raise PreconditionError("mu must be nonzero")
    m = zero_tensor(1, 1, 1)
    n = zero_tensor(1, 2, 2)
    b = zero_tensor(2, 2, 1)
    m[0][0][0] = ONE
    n[0][0][0] = HALF * mu
    n[0][1][1] = HALF / mu
    b[0][1][0] = HALF
    b[1][0][0] = -HALF
    return new_algebra(1, 2, m, n, b, Matrix.identity(1), Matrix.diag([mu, 1 / mu]))


# ---------------------------------------------------------------- conformal

def _half_integer(i) -> Fraction:
    i = as_rational(i)
    if i.denominator != 2:
        raise PreconditionError(f"odd labels are half-integers, got {i}")
    return i


def _integer(n) -> int:
    n = as_rational(n)
    if n.denominator != 1:
        raise PreconditionError(f"even labels are integers, got {n}")
    return int(n)


@dataclass(frozen=True)
class ConformalAlgebra:
    """Lazy conformal Hom-Lie antialgebra with parameter r, q = r**2.

    Even basis eps_n (n integer), odd basis a_i (i in Z + 1/2).  Evaluators
    return ``(coefficient, label)`` pairs describing a single basis element.
    """

    r: Fraction

    def __post_init__(self):
        if self.r in (0, 1, -1):
            raise PreconditionError("r must avoid 0, 1 and -1")

    @property
    def q(self) -> Fraction:
        return self.r * self.r

    def qpow(self, i) -> Fraction:
        """q**i for integer or half-integer i, as r**(2i)."""
        e = as_rational(i) * 2
        assert e.denominator == 1
        return self.r ** int(e)

    def curly(self, i) -> Fraction:
        """{i} = (q**i - 1)/(q - 1)."""
        return (self.qpow(i) - 1) / (self.q - 1)

    def alpha(self, n):
        return ONE, _integer(n)

    def beta(self, i):
        i = _half_integer(i)
        return 1 + self.qpow(i), i

    def prod_ee(self, n, m):
        return ONE, _integer(n) + _integer(m)

    def prod_eo(self, n, i):
        i = _half_integer(i)
        return HALF * (1 + self.qpow(i)), _integer(n) + i

    def bracket(self, i, j):
        i, j = _half_integer(i), _half_integer(j)
        return HALF * (self.curly(j) - self.curly(i)), int(i + j)

    # Identities on single basis tuples.  Each residual is a coefficient of
    # one basis element, since all products are monomial.
    def residual_hom_associativity(self, n, m, l) -> Fraction:
        c1, a1 = self.alpha(n)
        c2, s = self.prod_ee(m, l)
        c3, t = self.prod_ee(a1, s)
        lhs = c1 * c2 * c3
        d1, u = self.prod_ee(n, m)
        d2, a3 = self.alpha(l)
        d3, _ = self.prod_ee(u, a3)
        return lhs - d1 * d2 * d3

    def residual_half_action(self, n, m, i) -> Fraction:
        c1, a1 = self.alpha(n)
        c2, s = self.prod_eo(m, i)
        c3, _ = self.prod_eo(a1, s)
        d1, u = self.prod_ee(n, m)
        d2, bi = self.beta(i)
        d3, _ = self.prod_eo(u, bi)
        return c1 * c2 * c3 - HALF * d1 * d2 * d3

    def residual_bracket_derivation(self, n, i, j) -> Fraction:
        c1, a1 = self.alpha(n)
        c2, s = self.bracket(i, j)
        c3, _ = self.prod_ee(a1, s)
        lhs = c1 * c2 * c3
        e1, u = self.prod_eo(n, i)
        e2, bj = self.beta(j)
        e3, _ = self.bracket(u, bj)
        f1, bi = self.beta(i)
        f2, v = self.prod_eo(n, j)
        f3, _ = self.bracket(bi, v)
        return lhs - e1 * e2 * e3 - f1 * f2 * f3

    def residual_cyclic_bracket(self, i, j, k) -> Fraction:
        tot = ZERO
        for u, v, w in ((i, j, k), (j, k, i), (k, i, j)):
            c1, bu = self.beta(u)
            c2, s = self.bracket(v, w)
            c3, _ = self.prod_eo(s, bu)
            tot += c1 * c2 * c3
        return tot

    def spot_check_axioms(self, samples: dict | None = None, window: int = 3,
                          count: int = 10, seed: int = 0) -> "ConformalReport":
        """Evaluate the four identities on index triples.

        ``samples`` maps identity name to a list of triples; missing names
        are filled with ``count`` triples drawn from a seeded generator in
        the window [-window, window].
        """
        samples = dict(samples or {})
        rng = random.Random(seed)
        ints = list(range(-window, window + 1))
        halves = [Fraction(2 * k + 1, 2) for k in range(-window, window)]
        kinds = {
            "hom_associativity": (ints, ints, ints),
            "half_action": (ints, ints, halves),
            "bracket_derivation": (ints, halves, halves),
            "cyclic_bracket": (halves, halves, halves),
        }
        for name, pools in kinds.items():
            if name not in samples:
                samples[name] = [tuple(rng.choice(pool) for pool in pools) for _ in range(count)]
        report = ConformalReport(r=self.r, rows=[])
        for name in kinds:
            fn = getattr(self, "residual_" + name)
            for triple in samples.get(name, []):
                report.rows.append((name, tuple(as_rational(x) for x in triple), fn(*triple)))
        return report

    def residual_profile(self, name: str, triple: Iterable, r_values: Iterable) -> list:
        """The same residual for several values of r, to expose q-dependence."""
        out = []
        for r in r_values:
            alg = ConformalAlgebra(as_rational(r))
            out.append((as_rational(r), getattr(alg, "residual_" + name)(*triple)))
        return out


@dataclass
class ConformalReport:
    r: Fraction
    rows: list  # (identity, triple, residual)

    def summary(self) -> dict:
        out = {}
        for name, _, res in self.rows:
            s = out.setdefault(name, {"checked": 0, "failed": 0})
            s["checked"] += 1
            s["failed"] += res != 0
        return out

    def to_identity_report(self) -> IdentityReport:
        rep = IdentityReport()
        for name, triple, res in self.rows:
            rep.record(name, triple, (res,))
        return rep

    def to_json(self) -> dict:
        return {
            "r": rational_format(self.r),
            "q": rational_format(self.r * self.r),
            "summary": self.summary(),
            "rows": [
                {"identity": n, "labels": [rational_format(x) for x in t], "residual": rational_format(res)}
                for n, t, res in self.rows
            ],
        }


def conformal(r) -> ConformalAlgebra:
    return ConformalAlgebra(as_rational(r))


# ---------------------------------------------------------------- by name

def from_name(name: str):
    """Resolve ``k1``, ``k1-twisted?mu=3/1`` or ``conformal?r=2``."""
    base, _, query = name.partition("?")
    params = {}
    if query:
        for part in query.split("&"):
            key, eq, val = part.partition("=")
            if not eq:
                raise PreconditionError(f"bad catalog parameter {part!r}")
            params[key] = as_rational(val)
    if base == "k1" and not params:
        return k1()
    if base == "k1-twisted" and set(params) == {"mu"}:
        return twisted_k1(params["mu"])
    if base == "conformal" and set(params) == {"r"}:
        return conformal(params["r"])
    raise PreconditionError(f"unknown catalog entry {name!r}")


CATALOG_NAMES = ("k1", "k1-twisted?mu=<rational>", "conformal?r=<rational>")
