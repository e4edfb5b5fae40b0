"""JSON file formats.

Algebra file::

    {"even_dim": p, "odd_dim": q,
     "mu": [{"i":0,"j":0,"k":0,"c":"1"}, ...], "nu": [...], "br": [...],
     "alpha": [["1"]], "beta": [["1","0"],["0","1"]]}

Sparse entries use 0-based indices and rational strings; omitted entries
are zero and duplicates are rejected.  Twist matrices are dense, row-major.

Representation file::

    {"even_dim": r, "odd_dim": s, "alpha": [[...]], "beta": [[...]],
     "rho0_even": [{"g":i,"row":a,"col":b,"c":"1/2"}, ...],
     "rho0_odd": [...], "rho1_up": [...], "rho1_down": [...]}

``g`` is the acting basis element.  rho0_even matrices are r x r,
rho0_odd s x s, rho1_up s x r (V0 -> V1) and rho1_down r x s.

Omega file (extension cocycles and deformation data)::

    {"omega0": [{"i","j","k","c"}...], "omega1": [...], "omega2": [...]}

with ``k`` indexing the value component.  Exports are canonical: sorted
sparse entries, reduced rational strings, sorted keys, two-space indent and
a trailing newline.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import HomLieAntialgebra, new_algebra, zero_tensor
from .errors import HomAntiError, ShapeError
from .linalg import Matrix, RationalFormatError, rational_format, rational_parse
from .representation import HomModule, Representation, new_representation


class FormatError(HomAntiError, ValueError):
    """A file does not follow the documented layout."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _load_json(source):
    if isinstance(source, (dict, list)):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def _rat(x, where):
    if not isinstance(x, str):
        raise FormatError(f"{where}: rationals must be strings, got {x!r}")
    try:
        return rational_parse(x)
    except RationalFormatError as exc:
        raise FormatError(f"{where}: {exc}") from None


def _int(x, where):
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise FormatError(f"{where}: expected a non-negative integer, got {x!r}")
    return x


def _sparse3(entries, d1, d2, d3, name, keys=("i", "j", "k")):
    t = zero_tensor(d1, d2, d3)
    if not isinstance(entries, list):
        raise FormatError(f"{name} must be a list of sparse entries")
    seen = set()
    for e in entries:
        if not isinstance(e, dict) or set(e) != set(keys) | {"c"}:
            raise FormatError(f"{name}: each entry needs exactly the keys {sorted(set(keys) | {'c'})}")
        idx = tuple(_int(e[k], name) for k in keys)
        if idx in seen:
            raise FormatError(f"{name}: duplicate entry {idx}")
        seen.add(idx)
        if not (idx[0] < d1 and idx[1] < d2 and idx[2] < d3):
            raise ShapeError(f"{name}: index {idx} out of range {d1}x{d2}x{d3}")
        t[idx[0]][idx[1]][idx[2]] = _rat(e["c"], name)
    return t


def _dense(rows, n, m, name) -> Matrix:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != m for r in rows):
        raise ShapeError(f"{name} must be a {n}x{m} array")
    return Matrix([[_rat(x, name) for x in r] for r in rows], cols=m)


def _sparse3_out(t, keys=("i", "j", "k")) -> list:
    out = []
    for i, b in enumerate(t):
        for j, row in enumerate(b):
            for k, c in enumerate(row):
                if c:
                    out.append({keys[0]: i, keys[1]: j, keys[2]: k, "c": rational_format(c)})
    return out


def _dense_out(m: Matrix) -> list:
    return [[rational_format(x) for x in r] for r in m.tolist()]


# ------------------------------------------------------------------ algebras

def algebra_to_json(a: HomLieAntialgebra) -> dict:
    return {
        "even_dim": a.p,
        "odd_dim": a.q,
        "mu": _sparse3_out(a.mu),
        "nu": _sparse3_out(a.nu),
        "br": _sparse3_out(a.br),
        "alpha": _dense_out(a.alpha),
        "beta": _dense_out(a.beta),
    }


def algebra_from_json(data) -> HomLieAntialgebra:
    data = _load_json(data)
    if not isinstance(data, dict):
        raise FormatError("algebra file must be a JSON object")
    required = {"even_dim", "odd_dim", "mu", "nu", "br"}
    missing = required - set(data)
    if missing:
        raise FormatError(f"algebra file is missing {sorted(missing)}")
    extra = set(data) - required - {"alpha", "beta"}
    if extra:
        raise FormatError(f"unknown algebra keys {sorted(extra)}")
    p, q = _int(data["even_dim"], "even_dim"), _int(data["odd_dim"], "odd_dim")
    mu = _sparse3(data["mu"], p, p, p, "mu")
    nu = _sparse3(data["nu"], p, q, q, "nu")
    br = _sparse3(data["br"], q, q, p, "br")
    alpha = _dense(data["alpha"], p, p, "alpha") if "alpha" in data else None
    beta = _dense(data["beta"], q, q, "beta") if "beta" in data else None
    return new_algebra(p, q, mu, nu, br, alpha, beta)


def export_algebra(a: HomLieAntialgebra) -> str:
    return dumps(algebra_to_json(a))


def load_algebra(path) -> HomLieAntialgebra:
    return algebra_from_json(_load_json(path))


# ------------------------------------------------------------------ representations

def _mats_out(mats) -> list:
    out = []
    for g, m in enumerate(mats):
        for r_, row in enumerate(m.tolist()):
            for c_, x in enumerate(row):
                if x:
                    out.append({"g": g, "row": r_, "col": c_, "c": rational_format(x)})
    return out


def _mats_in(entries, count, rows, cols, name) -> list:
    t = _sparse3(entries, count, rows, cols, name, keys=("g", "row", "col"))
    return [Matrix(t[g], cols=cols) for g in range(count)]


def representation_to_json(rho: Representation) -> dict:
    return {
        "even_dim": rho.r,
        "odd_dim": rho.s,
        "alpha": _dense_out(rho.module.alphaV),
        "beta": _dense_out(rho.module.betaV),
        "rho0_even": _mats_out(rho.rho0_even),
        "rho0_odd": _mats_out(rho.rho0_odd),
        "rho1_up": _mats_out(rho.rho1_up),
        "rho1_down": _mats_out(rho.rho1_down),
    }


def representation_from_json(a: HomLieAntialgebra, data) -> Representation:
    data = _load_json(data)
    keys = {"even_dim", "odd_dim", "alpha", "beta", "rho0_even", "rho0_odd", "rho1_up", "rho1_down"}
    if not isinstance(data, dict) or set(data) != keys:
        raise FormatError(f"representation file needs exactly the keys {sorted(keys)}")
    r, s = _int(data["even_dim"], "even_dim"), _int(data["odd_dim"], "odd_dim")
    module = HomModule(r, s, _dense(data["alpha"], r, r, "alpha"), _dense(data["beta"], s, s, "beta"))
    return new_representation(
        a, module,
        _mats_in(data["rho0_even"], a.p, r, r, "rho0_even"),
        _mats_in(data["rho0_odd"], a.p, s, s, "rho0_odd"),
        _mats_in(data["rho1_up"], a.q, s, r, "rho1_up"),
        _mats_in(data["rho1_down"], a.q, r, s, "rho1_down"),
    )


# ------------------------------------------------------------------ omega triples

def omega_to_json(omega) -> dict:
    return {name: _sparse3_out(t) for name, t in zip(("omega0", "omega1", "omega2"), omega)}


def omega_from_json(data, p: int, q: int, r: int, s: int) -> tuple:
    """Read (omega0, omega1, omega2) with value dimensions r (even) and s (odd)."""
    data = _load_json(data)
    keys = {"omega0", "omega1", "omega2"}
    if not isinstance(data, dict) or set(data) != keys:
        raise FormatError(f"omega file needs exactly the keys {sorted(keys)}")
    return (
        _sparse3(data["omega0"], p, p, r, "omega0"),
        _sparse3(data["omega1"], p, q, s, "omega1"),
        _sparse3(data["omega2"], q, q, r, "omega2"),
    )


def matrix_from_json(data, n: int, m: int, name: str) -> Matrix:
    return _dense(data, n, m, name)


def matrix_to_json(m: Matrix) -> list:
    return _dense_out(m)
