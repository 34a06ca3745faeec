"""File formats: edge lists, point-cloud CSV, canonical space JSON, map and
homotopy documents."""
from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

from .core import (
    PointCloud,
    Space,
    VertexMap,
    from_graph,
    from_point_cloud,
    new_space,
    vertex_key,
)
from .errors import InputError
from .homotopy import Cube, CubeMap, Homotopy


def read_text(path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def write_text(path, text: str):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def parse_vertex(token: str):
    """Integer-looking tokens become ints; everything else stays a string."""
    try:
        return int(token)
    except ValueError:
        return token


def _json_vertex(v):
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return v
    raise InputError(f"vertex {v!r} has no JSON form (use int or str identifiers)")


def _from_json_vertex(v, where="vertex"):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"{where}: vertex identifiers must be integers or strings, got {v!r}")
    return v


# -- edge lists -------------------------------------------------------------------

def parse_edge_list(text: str) -> Space:
    edges, isolated = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 1:
            isolated.append(parse_vertex(toks[0]))
        elif len(toks) == 2:
            edges.append((parse_vertex(toks[0]), parse_vertex(toks[1])))
        else:
            raise InputError(f"line {lineno}: expected 'u v' or 'v', got {line!r}")
    return from_graph(edges, isolated)


def format_edge_list(X: Space) -> str:
    lines = [f"{u} {v}" for u, v in X.edges()]
    touched = {v for e in X.edges() for v in e}
    lines += [str(v) for v in X.vertices if v not in touched]
    return "\n".join(lines) + "\n"


# -- point clouds -----------------------------------------------------------------

def parse_point_csv(text: str) -> PointCloud:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        cells = [c.strip() for c in row]
        if not cells or all(not c for c in cells) or cells[0].startswith("#"):
            continue
        try:
            rows.append(PointCloud.from_coordinates([cells]).points[0])
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    if len({len(r) for r in rows}) > 1:
        raise InputError("point rows have different numbers of coordinates")
    return PointCloud(tuple(rows))


# -- canonical JSON ---------------------------------------------------------------

def space_to_dict(X: Space) -> dict:
    return {
        "vertices": [_json_vertex(v) for v in X.vertices],
        "roof": [[_json_vertex(u), _json_vertex(v)] for u, v in X.sorted_roof()],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def save_space(X: Space) -> str:
    """Canonical JSON text: sorted vertices, lexicographically sorted roof,
    one roof pair per line."""
    d = space_to_dict(X)
    pairs = ",\n  ".join(json.dumps(p, ensure_ascii=False) for p in d["roof"])
    verts = json.dumps(d["vertices"], ensure_ascii=False)
    return f'{{"vertices": {verts},\n "roof": [\n  {pairs}\n ]}}\n'



def loads_json(text: str, what: str = "document"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def space_from_dict(doc) -> Space:
    if not isinstance(doc, dict):
        raise InputError("space document must be a JSON object")
    fmt = doc.get("format", "roof" if "roof" in doc else None)
    if fmt == "roof":
        verts = [_from_json_vertex(v) for v in doc.get("vertices", [])]
        pairs = []
        for p in doc.get("roof", []):
            if not isinstance(p, list) or len(p) != 2:
                raise InputError(f"roof entries must be [u, v] pairs, got {p!r}")
            pairs.append((_from_json_vertex(p[0]), _from_json_vertex(p[1])))
        return new_space(verts, pairs)
    if fmt == "edges":
        edges = [tuple(_from_json_vertex(x) for x in e) for e in doc.get("edges", [])]
        if any(len(e) != 2 for e in edges):
            raise InputError("edges must be [u, v] pairs")
        return from_graph(edges, [_from_json_vertex(v) for v in doc.get("vertices", [])])
    if fmt == "points":
        cloud = PointCloud.from_coordinates(
            [[str(x) if isinstance(x, float) else x for x in p] for p in doc.get("points", [])],
            doc.get("labels"),
        )
        if "scale" not in doc:
            raise InputError("point-cloud document needs a 'scale'")
        scale = doc["scale"]
        return from_point_cloud(cloud, str(scale) if isinstance(scale, float) else scale,
                                bool(doc.get("strict", False)))
    raise InputError(f"unknown space document format {fmt!r}")


def load_space(text: str) -> Space:
    return space_from_dict(loads_json(text, "space"))


def detect_format(path, text: str) -> str:
    suffix = Path(str(path)).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix == ".csv":
        return "points"
    if text.lstrip().startswith("{"):
        return "json"
    return "edges"


def read_space(path, fmt: str = "auto", scale=None, strict: bool = False) -> Space:
    text = read_text(path)
    if fmt == "auto":
        fmt = detect_format(path, text)
    if fmt == "json":
        return load_space(text)
    if fmt == "edges":
        return parse_edge_list(text)
    if fmt == "points":
        if scale is None:
            raise InputError("point-cloud input needs --scale")
        return from_point_cloud(parse_point_csv(text), scale, strict)
    raise InputError(f"unknown input format {fmt!r}")


# -- maps and homotopies ------------------------------------------------------------

def _embedded_space(doc, key):
    if key not in doc:
        raise InputError(f"document needs a '{key}' space")
    return space_from_dict(doc[key])


def map_from_dict(doc) -> VertexMap:
    """``{"source": space, "target": space, "map": [[u, f(u)], ...]}``."""
    src = _embedded_space(doc, "source")
    tgt = _embedded_space(doc, "target")
    table = {}
    for p in doc.get("map", []):
        if not isinstance(p, list) or len(p) != 2:
            raise InputError(f"map entries must be [u, f(u)] pairs, got {p!r}")
        table[_from_json_vertex(p[0])] = _from_json_vertex(p[1])
    return VertexMap.from_mapping(src, tgt, table)


def map_to_dict(f: VertexMap) -> dict:
    return {
        "source": space_to_dict(f.source),
        "target": space_to_dict(f.target),
        "map": [[_json_vertex(v), _json_vertex(f(v))] for v in f.source.vertices],
    }


def homotopy_from_dict(doc) -> Homotopy:
    """Cube form ``{"target", "cube": {"n", "m"}, "fixed", "slices": [[...]]}``
    with slices listed in lexicographic point order, or vertex-map form
    ``{"source", "target", "slices": [[[u, v], ...], ...]}``."""
    tgt = _embedded_space(doc, "target")
    slices_doc = doc.get("slices")
    if not isinstance(slices_doc, list) or not slices_doc:
        raise InputError("homotopy needs a non-empty 'slices' list")
    if "cube" in doc:
        c = doc["cube"]
        cube = Cube(int(c["n"]), int(c["m"]))
        slices = tuple(CubeMap(cube, tgt, tuple(_from_json_vertex(v) for v in s)) for s in slices_doc)
        fixed = doc.get("fixed", [])
        if fixed == "boundary":
            fixed = cube.boundary()
        elif fixed == "open-box":
            fixed = cube.open_box()
        else:
            fixed = frozenset(tuple(p) for p in fixed)
        return Homotopy(slices, frozenset(fixed))
    src = _embedded_space(doc, "source")
    slices = []
    for s in slices_doc:
        table = {_from_json_vertex(a): _from_json_vertex(b) for a, b in s}
        slices.append(VertexMap.from_mapping(src, tgt, table))
    fixed = frozenset(_from_json_vertex(v) for v in doc.get("fixed", []))
    return Homotopy(tuple(slices), fixed)


def homotopy_to_dict(h: Homotopy) -> dict:
    first = h.slices[0]
    if isinstance(first, CubeMap):
        return {
            "target": space_to_dict(first.target),
            "cube": {"n": first.cube.n, "m": first.cube.m},
            "fixed": sorted([list(p) for p in h.fixed]),
            "slices": [[_json_vertex(v) for v in s.values] for s in h.slices],
        }
    return {
        "source": space_to_dict(first.source),
        "target": space_to_dict(first.target),
        "fixed": sorted((_json_vertex(v) for v in h.fixed), key=vertex_key),
        "slices": [[[_json_vertex(v), _json_vertex(s(v))] for v in s.source.vertices] for s in h.slices],
    }


def read_path(path) -> list:
    """A path as a JSON list, ``{"path": [...]}`` or whitespace-separated tokens."""
    text = read_text(path)
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        doc = loads_json(text, "path")
        if isinstance(doc, dict):
            doc = doc.get("path")
        if not isinstance(doc, list) or not doc:
            raise InputError("path document must be a non-empty list")
        return [_from_json_vertex(v) for v in doc]
    toks = [t for line in stripped.splitlines() for t in line.split("#", 1)[0].split()]
    if not toks:
        raise InputError("empty path file")
    return [parse_vertex(t) for t in toks]
