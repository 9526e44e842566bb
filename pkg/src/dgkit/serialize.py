"""JSON codecs for all domain values.

Rationals travel as strings "p" or "p/q" in lowest terms with positive
denominator; matrices are arrays of arrays of such strings.  Parsing
validates against the informal schemas and reports the path of the first
offending element; emission is deterministic (sorted keys).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict

from .complexes import ChainMap, Complex
from .errors import SchemaError
from .filtered import FilteredComplex, FilteredMap
from .grassmann import FlagPoint, GrassPoint
from .linalg import Matrix
from .rees import GradedModuleComplex

Q = Fraction


def rational_to_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(path, "expected a rational string")
    if isinstance(value, int):
        return Q(value)
    if not isinstance(value, str):
        raise SchemaError(path, f"expected a rational string, got {type(value).__name__}")
    try:
        return Q(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"bad rational {value!r}: {exc}") from None


def matrix_to_json(m: Matrix) -> list:
    return [[rational_to_str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def parse_matrix(value: Any, rows: int, cols: int, path: str) -> Matrix:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array of rows")
    if len(value) != rows:
        raise SchemaError(path, f"expected {rows} rows, got {len(value)}")
    ent = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{path}[{i}]", f"expected {cols} entries")
        ent.append([parse_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix(rows, cols, ent)


def _parse_degree(key: Any, path: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise SchemaError(path, f"bad degree key {key!r}") from None


def complex_to_json(c: Complex) -> dict:
    return {
        "degrees": {str(n): c.dim(n) for n in sorted(c.dims)},
        "d": {str(n): matrix_to_json(c.d(n)) for n in sorted(c.dims)
              if c.dim(n) and c.dim(n + 1)},
    }


def parse_complex(value: Any, path: str = "$") -> Complex:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    degrees = value.get("degrees")
    if not isinstance(degrees, dict):
        raise SchemaError(f"{path}.degrees", "expected an object of degree -> dimension")
    dims = {}
    for key, dim in degrees.items():
        n = _parse_degree(key, f"{path}.degrees.{key}")
        if not isinstance(dim, int) or dim < 0:
            raise SchemaError(f"{path}.degrees.{key}", "dimension must be a non-negative integer")
        dims[n] = dim
    diffs = {}
    d_table = value.get("d", {})
    if not isinstance(d_table, dict):
        raise SchemaError(f"{path}.d", "expected an object of degree -> matrix")
    for key, mat in d_table.items():
        n = _parse_degree(key, f"{path}.d.{key}")
        diffs[n] = parse_matrix(mat, dims.get(n + 1, 0), dims.get(n, 0), f"{path}.d.{key}")
    return Complex(dims, diffs)


def _map_table_to_json(maps: Dict[int, Matrix]) -> dict:
    return {str(n): matrix_to_json(m) for n, m in sorted(maps.items())}


def chain_map_to_json(f: ChainMap) -> dict:
    return {
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "f": _map_table_to_json(f.maps),
    }


def _parse_map_table(value: Any, source: Complex, target: Complex, path: str) -> Dict[int, Matrix]:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object of degree -> matrix")
    maps = {}
    for key, mat in value.items():
        n = _parse_degree(key, f"{path}.{key}")
        maps[n] = parse_matrix(mat, target.dim(n), source.dim(n), f"{path}.{key}")
    return maps


def parse_chain_map(value: Any, path: str = "$") -> ChainMap:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    source = parse_complex(value.get("source"), f"{path}.source")
    target = parse_complex(value.get("target"), f"{path}.target")
    maps = _parse_map_table(value.get("f", {}), source, target, f"{path}.f")
    return ChainMap(source, target, maps)


def filtered_to_json(m: FilteredComplex) -> dict:
    return {
        "length": m.length,
        "levels": [complex_to_json(m.level(k)) for k in range(m.length + 1)],
        "inclusions": [_map_table_to_json(m.inclusion(k).maps) for k in range(m.length)],
    }


def parse_filtered(value: Any, path: str = "$") -> FilteredComplex:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    length = value.get("length")
    levels_json = value.get("levels")
    if not isinstance(length, int) or length < 1:
        raise SchemaError(f"{path}.length", "length must be a positive integer")
    if not isinstance(levels_json, list) or len(levels_json) != length + 1:
        raise SchemaError(f"{path}.levels", f"expected {length + 1} levels")
    levels = [parse_complex(c, f"{path}.levels[{k}]") for k, c in enumerate(levels_json)]
    incl_json = value.get("inclusions")
    if not isinstance(incl_json, list) or len(incl_json) != length:
        raise SchemaError(f"{path}.inclusions", f"expected {length} inclusion tables")
    inclusions = []
    for k, table in enumerate(incl_json):
        maps = _parse_map_table(table, levels[k + 1], levels[k], f"{path}.inclusions[{k}]")
        inclusions.append(ChainMap(levels[k + 1], levels[k], maps))
    return FilteredComplex(levels, inclusions)


def filtered_map_to_json(f: FilteredMap) -> dict:
    return {
        "source": filtered_to_json(f.source),
        "target": filtered_to_json(f.target),
        "levels": [_map_table_to_json(f.level(k).maps) for k in range(f.source.length + 1)],
    }


def parse_filtered_map(value: Any, path: str = "$") -> FilteredMap:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    source = parse_filtered(value.get("source"), f"{path}.source")
    target = parse_filtered(value.get("target"), f"{path}.target")
    tables = value.get("levels")
    if not isinstance(tables, list) or len(tables) != source.length + 1:
        raise SchemaError(f"{path}.levels", f"expected {source.length + 1} level tables")
    maps = []
    for k, table in enumerate(tables):
        mm = _parse_map_table(table, source.level(k), target.level(k), f"{path}.levels[{k}]")
        maps.append(ChainMap(source.level(k), target.level(k), mm))
    return FilteredMap(source, target, maps)


def graded_to_json(g: GradedModuleComplex) -> dict:
    return {
        "top_weight": g.top_weight,
        "components": {str(w): complex_to_json(g.component(w))
                       for w in range(g.top_weight + 1)},
        "t_maps": {str(w): _map_table_to_json(g.t_map(w).maps)
                   for w in range(1, g.top_weight + 1)},
    }


def parse_graded(value: Any, path: str = "$") -> GradedModuleComplex:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    top = value.get("top_weight")
    if not isinstance(top, int) or top < 0:
        raise SchemaError(f"{path}.top_weight", "top_weight must be a non-negative integer")
    comps_json = value.get("components")
    if not isinstance(comps_json, dict):
        raise SchemaError(f"{path}.components", "expected an object of weight -> complex")
    components = []
    for w in range(top + 1):
        key = str(w)
        if key not in comps_json:
            raise SchemaError(f"{path}.components.{key}", "missing weight component")
        components.append(parse_complex(comps_json[key], f"{path}.components.{key}"))
    t_json = value.get("t_maps", {})
    if not isinstance(t_json, dict):
        raise SchemaError(f"{path}.t_maps", "expected an object of weight -> map table")
    t_maps = []
    for w in range(1, top + 1):
        table = t_json.get(str(w), {})
        maps = _parse_map_table(table, components[w], components[w - 1], f"{path}.t_maps.{w}")
        t_maps.append(ChainMap(components[w], components[w - 1], maps))
    return GradedModuleComplex(components, t_maps)


def grass_point_to_json(p: GrassPoint) -> dict:
    return {
        "ambient": complex_to_json(p.ambient),
        "sub": complex_to_json(p.sub),
        "incl": _map_table_to_json(p.incl.maps),
        "total": complex_to_json(p.total),
        "phi": _map_table_to_json(p.phi.maps),
    }


def parse_grass_point(value: Any, path: str = "$") -> GrassPoint:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    ambient = parse_complex(value.get("ambient"), f"{path}.ambient")
    sub = parse_complex(value.get("sub"), f"{path}.sub")
    total = parse_complex(value.get("total"), f"{path}.total")
    incl = ChainMap(sub, total,
                    _parse_map_table(value.get("incl", {}), sub, total, f"{path}.incl"))
    phi = ChainMap(total, ambient,
                   _parse_map_table(value.get("phi", {}), total, ambient, f"{path}.phi"))
    return GrassPoint(ambient=ambient, sub=sub, incl=incl, total=total, phi=phi)


def flag_point_to_json(p: FlagPoint) -> dict:
    return {
        "ambient": complex_to_json(p.ambient),
        "total": filtered_to_json(p.total),
        "phi": _map_table_to_json(p.phi.maps),
    }


def parse_flag_point(value: Any, path: str = "$") -> FlagPoint:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    ambient = parse_complex(value.get("ambient"), f"{path}.ambient")
    total = parse_filtered(value.get("total"), f"{path}.total")
    phi = ChainMap(total.ambient, ambient,
                   _parse_map_table(value.get("phi", {}), total.ambient, ambient, f"{path}.phi"))
    return FlagPoint(ambient=ambient, total=total, phi=phi)


def dumps(value: Any) -> str:
    """Deterministic JSON text: sorted keys, compact separators."""
    return json.dumps(value, sort_keys=True, separators=(",", ": "), indent=1)
