"""
面偏序 - 结合多面体 K_n 与环面体 W_n 的面格、f/h 向量与面分解
"""

from collections import Counter
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from moduli_tiling.core.dissect import (
    ClassKey,
    antipode_key,
    class_set_chords,
    dissection_pieces,
    enum_class_sets,
    is_diagonal,
    plain_atoms,
    symmetric_atoms,
)
from moduli_tiling.errors import InvalidInputError
from moduli_tiling.models.polygon import Dissection
from moduli_tiling.models.poset import Face, FaceFactor, FacePoset, FVector, HVector
from moduli_tiling.utils.logging import get_logger

logger = get_logger(__name__)

Atom = Hashable


def build_poset(
    kind: str,
    index: int,
    dim: int,
    faces_by_codim: Sequence[Sequence[Tuple[Atom, ...]]],
    encode: Callable[[Tuple[Atom, ...]], Face],
) -> FacePoset:
    """
    由原子集合构造分次面偏序

    面以原子（弦类、管）集合表示；覆盖关系为删除单个原子。
    """
    ranks: List[Tuple[Face, ...]] = []
    position: Dict[frozenset[Atom], int] = {}
    ordered: List[List[Tuple[Atom, ...]]] = []
    total = 0
    for faces in faces_by_codim:
        rank = sorted(faces, key=encode)
        ordered.append(rank)
        ranks.append(tuple(encode(f) for f in rank))
        for i, f in enumerate(rank):
            position[frozenset(f)] = total + i
        total += len(rank)

    covers: List[Tuple[int, int]] = []
    for rank in ordered[1:]:
        for f in rank:
            child = position[frozenset(f)]
            atoms = frozenset(f)
            for atom in f:
                covers.append((child, position[atoms - {atom}]))

    logger.debug("poset_built", kind=kind, index=index, faces=total, covers=len(covers))
    return FacePoset(kind=kind, index=index, dim=dim, ranks=tuple(ranks), covers=tuple(sorted(covers)))


def encode_classes(classes: Tuple[ClassKey, ...]) -> Face:
    return tuple(v for chord in class_set_chords(classes) for v in chord)


def decode_chords(face: Face) -> Tuple[Tuple[int, int], ...]:
    """剖分面编码还原为弦表"""
    return tuple((face[x], face[x + 1]) for x in range(0, len(face), 2))


@lru_cache(maxsize=64)
def associahedron(n: int) -> FacePoset:
    """
    结合多面体 K_n 的面偏序（(n+1) 边形的剖分），维数 n-2

    示例:
        >>> f_vector(associahedron(4)).counts
        (5, 5, 1)
    """
    if n < 2:
        raise InvalidInputError(f"K_n 要求 n ≥ 2: {n}")
    m, dim = n + 1, n - 2
    atoms = plain_atoms(m)
    faces = [enum_class_sets(atoms, k) for k in range(dim + 1)]
    return build_poset("associahedron", n, dim, faces, encode_classes)


@lru_cache(maxsize=64)
def cyclohedron(n: int) -> FacePoset:
    """
    环面体 W_n 的面偏序（中心对称 2n 边形的对称剖分），维数 n-1

    示例:
        >>> f_vector(cyclohedron(3)).counts
        (6, 6, 1)
    """
    if n < 1:
        raise InvalidInputError(f"W_n 要求 n ≥ 1: {n}")
    dim = n - 1
    atoms = symmetric_atoms(n)
    faces = [enum_class_sets(atoms, k) for k in range(dim + 1)]
    return build_poset("cyclohedron", n, dim, faces, encode_classes)


def f_vector(p: FacePoset) -> FVector:
    """按维数计数: f_i = 余维 dim-i 的面数"""
    return FVector(counts=tuple(len(p.ranks[p.dim - i]) for i in range(p.dim + 1)))


def h_vector(f: FVector) -> HVector:
    """
    h 向量: Σ_i f_i (t-1)^i 按 t 的幂展开

    示例:
        >>> h_vector(FVector(counts=(5, 5, 1))).coefficients
        (1, 3, 1)
    """
    dim = f.dim
    coefficients = []
    for k in range(dim + 1):
        coefficients.append(sum(
            f.counts[i] * comb(i, k) * (-1) ** (i - k) for i in range(k, dim + 1)
        ))
    return HVector(coefficients=tuple(coefficients))


def hasse_diagram(p: FacePoset) -> nx.DiGraph:
    """覆盖关系有向图，结点带 rank（余维）属性"""
    graph = nx.DiGraph()
    index = 0
    for k, rank in enumerate(p.ranks):
        for face in rank:
            graph.add_node(index, rank=k, face=face)
            index += 1
    graph.add_edges_from(p.covers)
    return graph


def subfaces(p: FacePoset, index: int, graph: Optional[nx.DiGraph] = None) -> List[int]:
    """该面自身的全部面（面格中位于其下方的区间，即剖分的超集），含自身"""
    if graph is None:
        graph = hasse_diagram(p)
    return sorted(nx.ancestors(graph, index) | {index})


def face_dimension(p: FacePoset, index: int) -> int:
    return p.dim - p.codim_of(index)


def face_factor(n: int, d: Dissection) -> FaceFactor:
    """
    环面体面的乘积分解

    中心对称块（2c 边形）给出 W_c，含直径时退化为 W_1；
    其余块成对出现，每对 s 边块给出 K_{s-1}。

    示例:
        n=5，单条直径 → W_1 × K_5
    """
    m = 2 * n
    chords = d.chord_keys
    if any(not is_diagonal(c, m) for c in chords):
        raise InvalidInputError(f"剖分含有不是 {m} 边形对角线的弦")
    if set(chords) != {antipode_key(c, n) for c in chords}:
        raise InvalidInputError("剖分不是中心对称的")

    pieces = dissection_pieces(m, chords)
    central = 1
    outer: List[int] = []
    remaining = Counter(pieces)
    for piece in pieces:
        if remaining[piece] == 0:
            continue
        remaining[piece] -= 1
        image = tuple(sorted((v + n) % m for v in piece))
        if image == piece:
            central = len(piece) // 2
            continue
        remaining[image] -= 1
        outer.append(len(piece) - 1)
    return FaceFactor(central=central, outer=tuple(sorted(outer)))
