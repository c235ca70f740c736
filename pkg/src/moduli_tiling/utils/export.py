"""
导出 - 面偏序与胞腔复形的 JSON / DOT 表示

输出只依赖对象内容（稳定排序、无时间戳），同一输入逐字节相同。
JSON 输出的结构由包内 schemas/*.schema.json 描述。
"""

import json
from collections import defaultdict
from functools import lru_cache
from importlib import resources
from typing import Any, Dict, List, Tuple

import jsonschema

from moduli_tiling.errors import ExportSchemaError
from moduli_tiling.models.complex import CellComplex
from moduli_tiling.models.poset import FacePoset

SCHEMA_NAMES = ("poset", "complex")


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """读取包内的 JSON schema（poset / complex）"""
    if name not in SCHEMA_NAMES:
        raise ValueError(f"未知的 schema: {name}")
    path = resources.files("moduli_tiling") / "schemas" / f"{name}.schema.json"
    return json.loads(path.read_text(encoding="utf-8"))


def validate_export(data: Dict[str, Any], name: str) -> None:
    """
    按 schema 校验导出数据

    异常:
        ExportSchemaError: 数据不符合 schema
    """
    try:
        jsonschema.validate(instance=data, schema=load_schema(name))
    except jsonschema.ValidationError as e:
        raise ExportSchemaError(name, e.message) from e


def poset_to_dict(p: FacePoset) -> Dict[str, Any]:
    """{dim, ranks: [[面编码...]...], covers: [[子面, 父面]...]}"""
    return {
        "kind": p.kind,
        "index": p.index,
        "dim": p.dim,
        "ranks": [[list(face) for face in rank] for rank in p.ranks],
        "covers": [list(c) for c in p.covers],
    }


def complex_to_dict(c: CellComplex) -> Dict[str, Any]:
    """{topDim, cells: [[类编码...]...], incidences: [{dim, cell, tile, slots, mult}...]}"""
    data: Dict[str, Any] = {
        "space": c.space,
        "n": c.n,
        "topDim": c.top_dim,
        "tiles": [list(t.encoding) for t in c.tiles],
        "cells": [[list(cell.encoding) for cell in layer] for layer in c.cells],
        "incidences": [
            {
                "dim": inc.dim,
                "cell": inc.cell,
                "tile": inc.tile,
                "slots": list(inc.slots),
                "mult": inc.multiplicity,
            }
            for inc in c.incidences
        ],
    }
    if c.boundaries is not None:
        data["boundaries"] = [
            [[slot.edge, slot.sign] for slot in boundary] for boundary in c.boundaries
        ]
    return data


def to_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def _face_label(face: Tuple[int, ...]) -> str:
    return " ".join(str(v) for v in face) if face else "∅"


def poset_to_dot(p: FacePoset) -> str:
    """Hasse 图（子面指向父面）"""
    lines = [f'digraph "{p.kind}_{p.index}" {{', "  rankdir=BT;"]
    index = 0
    for k, rank in enumerate(p.ranks):
        for face in rank:
            lines.append(f'  f{index} [label="{_face_label(face)}", rank={k}];')
            index += 1
    for child, parent in p.covers:
        lines.append(f"  f{child} -> f{parent};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dual_edges(c: CellComplex) -> List[Tuple[int, int, int]]:
    """
    对偶瓦片邻接多重图的边: (瓦片, 瓦片, 余维 1 胞腔)

    自粘合给出自环。
    """
    if c.top_dim == 0:
        return []
    occurrences: Dict[int, List[int]] = defaultdict(list)
    for inc in c.incidences:
        if inc.dim == c.top_dim - 1:
            occurrences[inc.cell].extend([inc.tile] * inc.multiplicity)
    edges = []
    for cell in sorted(occurrences):
        tiles = sorted(occurrences[cell])
        for i in range(0, len(tiles) - 1, 2):
            edges.append((tiles[i], tiles[i + 1], cell))
    return edges


def complex_to_dot(c: CellComplex) -> str:
    lines = [f'graph "{c.space}_{c.n}" {{']
    for t, tile in enumerate(c.tiles):
        labels = " ".join(str(x) for x in tile.labels)
        lines.append(f'  t{t} [label="{labels}"];')
    for a, b, cell in dual_edges(c):
        lines.append(f'  t{a} -- t{b} [label="{cell}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
