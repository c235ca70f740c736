"""
嵌套集 - 路径/圈 Coxeter 图上的管族面偏序、面偏序同构、构造集与房室普查

管以位掩码表示（结点 i 对应第 i-1 位）。
"""

from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from moduli_tiling.core.poset import build_poset, f_vector, hasse_diagram
from moduli_tiling.errors import InvalidInputError, ResourceLimitError
from moduli_tiling.models.nested import (
    ArrangementDescriptor,
    ArrangementKind,
    BuildingSetMember,
    Diagram,
    DiagramKind,
    Tube,
    Tubing,
)
from moduli_tiling.models.poset import Face, FacePoset
from moduli_tiling.models.verify_config import ResourceCaps
from moduli_tiling.utils.logging import get_logger

logger = get_logger(__name__)


def diagram_graph(d: Diagram) -> nx.Graph:
    nodes = range(1, d.nodes + 1)
    if d.kind == DiagramKind.CYCLE:
        return nx.cycle_graph(nodes)
    return nx.path_graph(nodes)


def _mask_nodes(mask: int) -> List[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _neighbour_mask(graph: nx.Graph, mask: int) -> int:
    result = 0
    for v in _mask_nodes(mask):
        for u in graph[v]:
            result |= 1 << (u - 1)
    return result


@lru_cache(maxsize=64)
def tube_masks(d: Diagram) -> Tuple[int, ...]:
    """全部管的位掩码，按 (大小, 结点) 排序"""
    graph = diagram_graph(d)
    full = (1 << d.nodes) - 1
    found = [
        mask for mask in range(1, full)
        if nx.is_connected(graph.subgraph(_mask_nodes(mask)))
    ]
    return tuple(sorted(found, key=lambda m: (bin(m).count("1"), _mask_nodes(m))))


def tubes(d: Diagram) -> List[Tube]:
    """
    全部管（连通的非空真子集）

    示例:
        >>> len(tubes(Diagram(kind="path", nodes=3)))
        5
        >>> len(tubes(Diagram(kind="cycle", nodes=3)))
        6
    """
    return [Tube.from_mask(m) for m in tube_masks(d)]


def compatible(d: Diagram, a: int, b: int) -> bool:
    """两个管嵌套，或不交且互不相邻"""
    if a & b == a or a & b == b:
        return True
    if a & b:
        return False
    return not (_neighbour_mask(diagram_graph(d), a) & b)


def _extend(
    d: Diagram,
    masks: Sequence[int],
    start: int,
    chosen: List[int],
    k: int,
) -> Iterator[Tuple[int, ...]]:
    if len(chosen) == k:
        yield tuple(chosen)
        return
    for idx in range(start, len(masks)):
        mask = masks[idx]
        if all(compatible(d, mask, other) for other in chosen):
            chosen.append(mask)
            yield from _extend(d, masks, idx + 1, chosen, k)
            chosen.pop()


def tubing_masks(d: Diagram, k: int) -> List[Tuple[int, ...]]:
    return list(_extend(d, tube_masks(d), 0, [], k))


def tubings(d: Diagram, k: Optional[int] = None) -> List[Tubing]:
    """
    管族枚举

    参数:
        d: Coxeter 图
        k: 管数；None 时返回全部管族（含空管族）
    """
    sizes = range(d.nodes) if k is None else [k]
    return [
        Tubing(tubes=tuple(Tube.from_mask(m) for m in masks))
        for size in sizes
        for masks in tubing_masks(d, size)
    ]


def _encode_tubing(masks: Tuple[int, ...]) -> Face:
    return tuple(sorted(masks))


@lru_cache(maxsize=64)
def tubing_poset(d: Diagram) -> FacePoset:
    """
    管族面偏序: 按管数（余维）分层，顶元为空管族

    路径 n 结点对应 K_{n+1}，圈 n 结点对应 W_n。

    示例:
        >>> f_vector(tubing_poset(Diagram(kind="cycle", nodes=4))).counts
        (20, 30, 12, 1)
    """
    dim = d.nodes - 1
    faces = [tubing_masks(d, k) for k in range(dim + 1)]
    return build_poset(f"tubing-{d.kind.value}", d.nodes, dim, faces, _encode_tubing)


def _rank_degrees(graph: nx.DiGraph) -> List[Tuple[int, int, int]]:
    return sorted(
        (data["rank"], graph.in_degree(v), graph.out_degree(v))
        for v, data in graph.nodes(data=True)
    )


def poset_iso(a: FacePoset, b: FacePoset, caps: Optional[ResourceCaps] = None) -> bool:
    """
    判断两个分次面偏序是否同构（保秩、保覆盖的双射）

    先比较 f 向量与各层度数分布，再在 Hasse 图上做按秩着色的 VF2 搜索。

    异常:
        ResourceLimitError: 面数超过 max_iso_faces
    """
    caps = caps or ResourceCaps()
    if a.dim != b.dim or f_vector(a) != f_vector(b):
        return False
    size = max(a.face_count, b.face_count)
    if size > caps.max_iso_faces:
        raise ResourceLimitError("max_iso_faces", caps.max_iso_faces, size)

    ga, gb = hasse_diagram(a), hasse_diagram(b)
    if _rank_degrees(ga) != _rank_degrees(gb):
        return False
    matcher = isomorphism.DiGraphMatcher(
        ga, gb, node_match=isomorphism.categorical_node_match("rank", -1)
    )
    result = matcher.is_isomorphic()
    logger.debug("poset_iso", a=a.kind, b=b.kind, faces=size, result=result)
    return result


# ============================================================================
# 辫子排列
# ============================================================================

def _index_range(a: ArrangementDescriptor) -> int:
    """坐标个数: 仿射为 n，线性（P V^n）为 n+1"""
    return a.n if a.kind == ArrangementKind.AFFINE else a.n + 1


def building_set(a: ArrangementDescriptor, k: int) -> List[BuildingSetMember]:
    """
    极小构造集中余维 k 的成员

    每个 (k+1) 元下标集合 S 对应子空间 {x_i 相等, i ∈ S}；其超平面表为
    全部辫子超平面中包含该子空间者，应恰有 C(k+1, 2) 个。

    异常:
        InvalidInputError: 仿射要求 1 ≤ k < n，线性要求 1 ≤ k ≤ n-1
    """
    if not 1 <= k <= a.n - 1:
        raise InvalidInputError(f"{a.kind.value} 排列 n={a.n} 的 k 必须在 1..{a.n - 1} 内: {k}")
    indices = range(1, _index_range(a) + 1)
    braid = list(combinations(indices, 2))
    members = []
    for subset in combinations(indices, k + 1):
        inside = set(subset)
        members.append(BuildingSetMember(
            indices=subset,
            hyperplanes=tuple((i, j) for i, j in braid if i in inside and j in inside),
        ))
    return members


def flat_codim(a: ArrangementDescriptor, hyperplanes: Sequence[Tuple[int, int]]) -> int:
    """若干辫子超平面之交的余维: 坐标数减去 x_i = x_j 关系图的连通分支数"""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, _index_range(a) + 1))
    graph.add_edges_from(hyperplanes)
    return graph.number_of_nodes() - nx.number_connected_components(graph)


def member_is_valid(a: ArrangementDescriptor, member: BuildingSetMember, k: int) -> bool:
    """成员含 C(k+1, 2) 个超平面，它们的交余维为 k，且只涉及成员自己的下标"""
    touched = {i for pair in member.hyperplanes for i in pair}
    return (
        len(member.hyperplanes) == comb(k + 1, 2)
        and flat_codim(a, member.hyperplanes) == k
        and touched == set(member.indices)
    )


def building_set_count(a: ArrangementDescriptor, k: int) -> int:
    """
    逐个校验成员后计数；与闭式 C(n, k+1)（仿射）或 C(n+1, k+1)（线性）交叉检查

    不合格的成员不计入，计数因此与闭式不符。

    示例:
        线性 n=3, k=2 → 4；仿射 n=4, k=3 → 1
    """
    members = building_set(a, k)
    valid = [m for m in members if member_is_valid(a, m, k)]
    if len(valid) != len(members):
        logger.warning(
            "building_set_invalid_members",
            kind=a.kind.value, n=a.n, k=k, invalid=len(members) - len(valid),
        )
    expected = comb(_index_range(a), k + 1)
    if len(valid) != expected:
        logger.warning("building_set_mismatch", kind=a.kind.value, n=a.n, k=k, counted=len(valid))
    return len(valid)


def chambers(a: ArrangementDescriptor) -> List[Tuple[int, ...]]:
    """
    房室（坐标排序）的规范代表

    线性: 1..n+1 的排列模反序（取首项小于末项者）；
    仿射: 1..n 的排列模循环旋转（取以 1 开头者）。
    """
    if a.kind == ArrangementKind.LINEAR:
        return [p for p in permutations(range(1, a.n + 2)) if p[0] < p[-1]]
    return [p for p in permutations(range(1, a.n + 1)) if p[0] == 1]


def chamber_count(a: ArrangementDescriptor) -> int:
    """
    示例:
        线性 n=3 → 12；仿射 n=3 → 2；仿射 n=4 → 6
    """
    count = len(chambers(a))
    expected = factorial(a.n + 1) // 2 if a.kind == ArrangementKind.LINEAR else factorial(a.n - 1)
    if count != expected:
        logger.warning("chamber_count_mismatch", kind=a.kind.value, n=a.n, counted=count)
    return count
