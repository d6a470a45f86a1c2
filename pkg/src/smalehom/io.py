"""JSON (de)serialisation with path-qualified validation errors.

Matrices are ``{"rows": r, "cols": c, "entries": [["1", "-2"], ...]}`` with
entries as decimal strings (plain JSON integers are accepted on input).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .abelian import FgAbelianGroup
from .errors import ValidationError
from .fiber import PutnamComplex
from .graphs import Edge, Graph, GraphHom
from .limits import LimitInvariants
from .linalg import IntMatrix

SCHEMA = "v1"


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _require(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: expected an object")
    if key not in obj:
        raise ValidationError(f"{path}: missing key '{key}'")
    return obj[key]


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool):
        raise ValidationError(f"{path}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError:
            pass
    raise ValidationError(f"{path}: expected a decimal integer, got {x!r}")


def _label(x: Any, path: str) -> str:
    if not isinstance(x, str):
        raise ValidationError(f"{path}: labels must be strings")
    return x


# -- matrices -----------------------------------------------------------------


def matrix_to_json(M: IntMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [[str(x) for x in row] for row in M.tolist()]}


def matrix_from_json(obj: Any, path: str = "$") -> IntMatrix:
    rows = _int(_require(obj, "rows", path), f"{path}.rows")
    cols = _int(_require(obj, "cols", path), f"{path}.cols")
    entries = _require(obj, "entries", path)
    if rows < 0 or cols < 0:
        raise ValidationError(f"{path}: negative dimensions")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ValidationError(f"{path}.entries: expected {rows} rows")
    data = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise ValidationError(f"{path}.entries[{i}]: expected {cols} entries")
        data.append([_int(x, f"{path}.entries[{i}][{j}]") for j, x in enumerate(row)])
    return IntMatrix(rows, cols, data)


# -- graphs -------------------------------------------------------------------


def graph_to_json(G: Graph) -> dict:
    return {"vertices": [str(v) for v in G.vertices],
            "edges": [{"id": str(e.id), "src": str(e.src), "dst": str(e.dst)} for e in G.edges]}


def graph_from_json(obj: Any, path: str = "$") -> Graph:
    verts = _require(obj, "vertices", path)
    edges = _require(obj, "edges", path)
    if not isinstance(verts, list):
        raise ValidationError(f"{path}.vertices: expected a list")
    if not isinstance(edges, list):
        raise ValidationError(f"{path}.edges: expected a list")
    vs = [_label(v, f"{path}.vertices[{k}]") for k, v in enumerate(verts)]
    known = set(vs)
    es = []
    for k, e in enumerate(edges):
        p = f"{path}.edges[{k}]"
        fields = [_label(_require(e, key, p), f"{p}.{key}") for key in ("id", "src", "dst")]
        for key, val in zip(("src", "dst"), fields[1:]):
            if val not in known:
                raise ValidationError(f"{p}.{key}: unknown vertex '{val}'")
        es.append(Edge(*fields))
    try:
        return Graph(tuple(vs), tuple(es))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def hom_to_json(pi: GraphHom) -> dict:
    return {"source": graph_to_json(pi.source), "target": graph_to_json(pi.target),
            "vertex_map": {str(k): str(v) for k, v in pi.vertex_map.items()},
            "edge_map": {str(k): str(v) for k, v in pi.edge_map.items()}}


def hom_from_json(obj: Any, path: str = "$") -> GraphHom:
    source = graph_from_json(_require(obj, "source", path), f"{path}.source")
    target = graph_from_json(_require(obj, "target", path), f"{path}.target")
    maps = {}
    for key in ("vertex_map", "edge_map"):
        m = _require(obj, key, path)
        if not isinstance(m, dict):
            raise ValidationError(f"{path}.{key}: expected an object")
        maps[key] = {k: _label(v, f"{path}.{key}.{k}") for k, v in m.items()}
    try:
        return GraphHom(source, target, maps["vertex_map"], maps["edge_map"])
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


# -- complexes ----------------------------------------------------------------


def complex_to_json(P: PutnamComplex) -> dict:
    degrees = []
    for r, g, d in zip(P.ranks, P.gammas, P.boundaries):
        degrees.append({"rank": r, "gamma": matrix_to_json(g),
                        "boundary": None if d is None else matrix_to_json(d)})
    return {"degrees": degrees, "provenance": P.provenance}


def complex_from_json(obj: Any, path: str = "$") -> PutnamComplex:
    degrees = _require(obj, "degrees", path)
    if not isinstance(degrees, list) or not degrees:
        raise ValidationError(f"{path}.degrees: expected a nonempty list")
    ranks, gammas, bounds = [], [], []
    for n, deg in enumerate(degrees):
        p = f"{path}.degrees[{n}]"
        ranks.append(_int(_require(deg, "rank", p), f"{p}.rank"))
        gammas.append(matrix_from_json(_require(deg, "gamma", p), f"{p}.gamma"))
        b = deg.get("boundary") if isinstance(deg, dict) else None
        bounds.append(None if b is None else matrix_from_json(b, f"{p}.boundary"))
    provenance = obj.get("provenance", "preset")
    if not isinstance(provenance, str):
        raise ValidationError(f"{path}.provenance: expected a string")
    return PutnamComplex(ranks, gammas, bounds, provenance)


# -- reports ------------------------------------------------------------------


def group_report(G: FgAbelianGroup) -> dict:
    return {"rank": G.free_rank, "torsion": list(G.torsion), "display": str(G)}


def limit_report(h: LimitInvariants) -> dict:
    return {"rank": h.rank, "eventual_torsion": list(h.eventual_torsion), "tag": h.tag,
            "primes": list(h.primes), "free_action": matrix_to_json(h.free_action), "display": h.display()}
