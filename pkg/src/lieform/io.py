"""JSON input: Lie algebras and pairs, with located schema errors."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .graded import fraction_str
from .lie import LieAlgebra, Subalgebra
from .linalg import Matrix

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class SchemaError(ValueError):
    """Malformed input; `location` is a JSON-path-like pointer."""

    def __init__(self, message: str, location: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError("expected a rational string", where)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise SchemaError("expected a rational string", where)
    s = value.strip().replace("−", "-")
    if not _RATIONAL.match(s):
        raise SchemaError(f"malformed rational {value!r}", where)
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise SchemaError(f"zero denominator in {value!r}", where)
    return Fraction(int(num), int(den) if den else 1)


def _expect(data, kind, where: str):
    if kind is int and isinstance(data, bool):
        raise SchemaError("expected an integer", where)
    if not isinstance(data, kind):
        names = {dict: "an object", list: "an array", str: "a string", int: "an integer"}
        raise SchemaError(f"expected {names.get(kind, kind.__name__)}", where)
    return data


def _matrix(data, n: int, where: str) -> Matrix:
    _expect(data, list, where)
    if len(data) != n:
        raise SchemaError(f"expected {n} rows", where)
    rows = []
    for i, row in enumerate(data):
        _expect(row, list, f"{where}[{i}]")
        if len(row) != n:
            raise SchemaError(f"expected {n} entries", f"{where}[{i}]")
        rows.append([parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix.from_rows(rows, ncols=n)


def algebra_from_json(data, where: str = "$", validate: bool = True) -> LieAlgebra:
    """Parse the algebra schema; raises SchemaError, then ValidationError from validate()."""
    _expect(data, dict, where)
    for key in ("name", "dimension", "basis", "brackets"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}", where)
    known = {"name", "dimension", "basis", "brackets", "theta", "rank", "invariant_form"}
    extra = sorted(set(data) - known)
    if extra:
        raise SchemaError(f"unknown field {extra[0]!r}", where)
    name = _expect(data["name"], str, f"{where}.name")
    n = _expect(data["dimension"], int, f"{where}.dimension")
    if n < 0:
        raise SchemaError("dimension must be non-negative", f"{where}.dimension")
    basis = _expect(data["basis"], list, f"{where}.basis")
    if len(basis) != n:
        raise SchemaError(f"expected {n} basis names", f"{where}.basis")
    for i, b in enumerate(basis):
        _expect(b, str, f"{where}.basis[{i}]")
    if len(set(basis)) != n:
        raise SchemaError("duplicate basis names", f"{where}.basis")
    brackets: dict = {}
    for t, entry in enumerate(_expect(data["brackets"], list, f"{where}.brackets")):
        loc = f"{where}.brackets[{t}]"
        _expect(entry, list, loc)
        if len(entry) != 3:
            raise SchemaError("expected [i, j, [[k, c], ...]]", loc)
        i, j, terms = entry
        for x, nm in ((i, "0"), (j, "1")):
            _expect(x, int, f"{loc}[{nm}]")
            if not 0 <= x < n:
                raise SchemaError(f"index {x} out of range", f"{loc}[{nm}]")
        vec: dict = {}
        for s, term in enumerate(_expect(terms, list, f"{loc}[2]")):
            tl = f"{loc}[2][{s}]"
            _expect(term, list, tl)
            if len(term) != 2:
                raise SchemaError("expected [k, rational]", tl)
            k = _expect(term[0], int, f"{tl}[0]")
            if not 0 <= k < n:
                raise SchemaError(f"index {k} out of range", f"{tl}[0]")
            vec[k] = vec.get(k, 0) + parse_rational(term[1], f"{tl}[1]")
        if (i, j) in brackets:
            raise SchemaError(f"bracket ({i}, {j}) given twice", loc)
        brackets[(i, j)] = vec
    theta = _matrix(data["theta"], n, f"{where}.theta") if data.get("theta") is not None else None
    form = _matrix(data["invariant_form"], n, f"{where}.invariant_form") \
        if data.get("invariant_form") is not None else None
    rank = data.get("rank")
    if rank is not None:
        _expect(rank, int, f"{where}.rank")
    alg = LieAlgebra(name, basis, brackets, theta=theta, rank=rank, invariant_form=form)
    if validate:
        alg.validate()
    return alg


def _matrix_json(m: Matrix) -> list:
    return [[fraction_str(x) for x in row] for row in m.to_lists()]


def algebra_to_json(g: LieAlgebra) -> dict:
    brackets = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            v = g.bracket_basis(i, j)
            if v:
                brackets.append([i, j, [[k, fraction_str(c)] for k, c in sorted(v.items())]])
    out = {"name": g.name, "dimension": g.dim, "basis": list(g.basis), "brackets": brackets}
    if g.theta is not None:
        out["theta"] = _matrix_json(g.theta)
    if g.rank is not None:
        out["rank"] = g.rank
    if g.invariant_form is not None:
        out["invariant_form"] = _matrix_json(g.invariant_form)
    return out


def pair_to_json(name: str, g: LieAlgebra, h: Subalgebra) -> dict:
    vecs = [[fraction_str(v.get(k, 0)) for k in range(g.dim)] for v in h.vectors]
    return {"name": name, "g": algebra_to_json(g), "h_basis": vecs}


def pair_from_json(data, base: Path | None = None, where: str = "$"):
    """(name, g, h) from the pair schema; "g" may be inline or a relative file path."""
    _expect(data, dict, where)
    for key in ("g", "h_basis"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}", where)
    gdata = data["g"]
    if isinstance(gdata, str):
        path = (base or Path(".")) / gdata
        g = algebra_from_json(load_json(path), where=str(path))
    else:
        g = algebra_from_json(gdata, where=f"{where}.g")
    vecs = []
    for a, row in enumerate(_expect(data["h_basis"], list, f"{where}.h_basis")):
        loc = f"{where}.h_basis[{a}]"
        _expect(row, list, loc)
        if len(row) != g.dim:
            raise SchemaError(f"expected {g.dim} coordinates", loc)
        vec = {k: parse_rational(x, f"{loc}[{k}]") for k, x in enumerate(row)}
        vecs.append({k: x for k, x in vec.items() if x})
    name = data.get("name", f"{g.name}/h")
    _expect(name, str, f"{where}.name")
    return name, g, Subalgebra(g, vecs, name="h")


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read file ({exc.strerror})", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def load_input(path):
    """("pair", name, g, h) or ("algebra", g) depending on the file contents."""
    path = Path(path)
    data = load_json(path)
    if isinstance(data, dict) and "h_basis" in data:
        name, g, h = pair_from_json(data, base=path.parent)
        return ("pair", name, g, h)
    return ("algebra", algebra_from_json(data))
