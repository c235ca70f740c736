"""
复形分析 - 欧拉示性数、连通性、伪流形与关联检查、闭曲面分类

只读取 CellComplex，不依赖具体空间。
"""

from collections import defaultdict, deque
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from moduli_tiling.errors import InvalidInputError, SurfaceClassificationError
from moduli_tiling.models.complex import BoundarySlot, CellComplex, Incidence, SurfaceType
from moduli_tiling.utils.logging import get_logger

logger = get_logger(__name__)


def f_vector_of(c: CellComplex) -> List[int]:
    return c.cell_counts()


def euler(c: CellComplex) -> int:
    """
    欧拉示性数 Σ_d (-1)^d |cells[d]|

    示例:
        Z̄³ 的胞腔数 (3, 6, 2) → -1
    """
    return sum((-1) ** d * count for d, count in enumerate(c.cell_counts()))


def incidence_graph(c: CellComplex) -> nx.Graph:
    """瓦片与胞腔的关联图（二部图）"""
    graph = nx.Graph()
    graph.add_nodes_from(("tile", t) for t in range(len(c.tiles)))
    for dim, layer in enumerate(c.cells):
        graph.add_nodes_from(("cell", dim, i) for i in range(len(layer)))
    for inc in c.incidences:
        graph.add_edge(("tile", inc.tile), ("cell", inc.dim, inc.cell))
    return graph


def connected(c: CellComplex) -> bool:
    """全部瓦片与胞腔经关联关系连通"""
    graph = incidence_graph(c)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


def component_count(c: CellComplex) -> int:
    return nx.number_connected_components(incidence_graph(c))


def pseudomanifold(c: CellComplex) -> bool:
    """每个余维 1 胞腔恰好出现在两个顶维胞腔面槽上（计重数）"""
    if c.top_dim == 0:
        return True
    return all(count == 2 for count in c.incidence_counts(c.top_dim - 1))


def codim_incidence(c: CellComplex, k: int) -> bool:
    """每个余维 k 胞腔恰有 2^k 个 (瓦片, 面槽) 关联"""
    if not 0 <= k <= c.top_dim:
        return False
    return all(count == 2 ** k for count in c.incidence_counts(c.top_dim - k))


def _orientable(c: CellComplex) -> bool:
    assert c.boundaries is not None
    uses: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for tile, boundary in enumerate(c.boundaries):
        for slot in boundary:
            uses[slot.edge].append((tile, slot.sign))

    # 相邻两面在公共边上的遍历方向必须相反: o_1 s_1 = -o_2 s_2
    neighbours: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for edge, pair in uses.items():
        (t1, s1), (t2, s2) = pair
        if t1 == t2:
            if s1 == s2:
                return False
            continue
        relation = -s1 * s2
        neighbours[t1].append((t2, relation))
        neighbours[t2].append((t1, relation))

    orientation: Dict[int, int] = {}
    for start in range(len(c.tiles)):
        if start in orientation:
            continue
        orientation[start] = 1
        queue = deque([start])
        while queue:
            tile = queue.popleft()
            for other, relation in neighbours[tile]:
                wanted = orientation[tile] * relation
                known = orientation.get(other)
                if known is None:
                    orientation[other] = wanted
                    queue.append(other)
                elif known != wanted:
                    return False
    return True


def classify_surface(c: CellComplex) -> SurfaceType:
    """
    闭曲面分类

    沿对偶图传播面的定向；可定向当且仅当每条边被其两个面槽以相反方向遍历。
    类型参数由欧拉示性数给出。

    异常:
        SurfaceClassificationError: 前提不满足（非 2 维、不连通、非伪流形、缺少边界遍历）

    示例:
        Z̄³ → RP2 # RP2 # RP2；M̄₀⁵ → 五个射影平面的连通和
    """
    if c.top_dim != 2:
        raise SurfaceClassificationError("top_dim == 2", f"顶维为 {c.top_dim}")
    if c.boundaries is None:
        raise SurfaceClassificationError("boundaries", "缺少 2 维胞腔的边界遍历")
    if not connected(c):
        raise SurfaceClassificationError("connected", "复形不连通")
    if not pseudomanifold(c):
        raise SurfaceClassificationError("pseudomanifold", "存在不恰好落在两个面槽上的边")

    chi = euler(c)
    orientable = _orientable(c)
    if orientable:
        if chi % 2 or chi > 2:
            raise SurfaceClassificationError("euler", f"可定向曲面的欧拉示性数不可能为 {chi}")
        surface = SurfaceType(orientable=True, parameter=(2 - chi) // 2, euler=chi)
    else:
        if chi > 1:
            raise SurfaceClassificationError("euler", f"不可定向曲面的欧拉示性数不可能为 {chi}")
        surface = SurfaceType(orientable=False, parameter=2 - chi, euler=chi)
    logger.debug("surface_classified", space=c.space, n=c.n, surface=surface.name)
    return surface


def describe_topology(c: CellComplex) -> str:
    """
    拓扑描述

    0 维为点集，1 维连通伪流形为圆周，2 维给出曲面类型，更高维只报告欧拉示性数。
    """
    chi = euler(c)
    if c.top_dim == 0:
        count = len(c.cells[0])
        return "point" if count == 1 else f"{count} points"
    if not connected(c):
        return f"{component_count(c)} components, euler {chi}"
    if c.top_dim == 1:
        return "circle" if pseudomanifold(c) and chi == 0 else f"graph, euler {chi}"
    if c.top_dim == 2:
        try:
            return classify_surface(c).name
        except SurfaceClassificationError as e:
            return f"surface not classified ({e.precondition})"
    return f"dim {c.top_dim}, euler {chi}, orientability not determined"


def relabel_complex(
    c: CellComplex,
    tile_order: Sequence[int],
    cell_orders: Sequence[Sequence[int]],
) -> CellComplex:
    """
    重排瓦片与各维胞腔的下标

    参数:
        c: 原复形
        tile_order: tile_order[i] 为新下标 i 处的旧瓦片下标
        cell_orders: cell_orders[d][i] 为新下标 i 处的旧 d 维胞腔下标

    返回:
        同一复形的另一种编号；关联记录与边界遍历随之改写
    """
    if sorted(tile_order) != list(range(len(c.tiles))):
        raise InvalidInputError("tile_order 不是瓦片下标的排列")
    if len(cell_orders) != len(c.cells) or any(
        sorted(order) != list(range(len(layer))) for order, layer in zip(cell_orders, c.cells)
    ):
        raise InvalidInputError("cell_orders 不是各维胞腔下标的排列")

    tile_pos = {old: new for new, old in enumerate(tile_order)}
    cell_pos = [{old: new for new, old in enumerate(order)} for order in cell_orders]
    incidences = sorted(
        (
            Incidence(
                dim=inc.dim,
                cell=cell_pos[inc.dim][inc.cell],
                tile=tile_pos[inc.tile],
                slots=inc.slots,
            )
            for inc in c.incidences
        ),
        key=lambda inc: (inc.dim, inc.cell, inc.tile),
    )
    boundaries = None
    if c.boundaries is not None:
        boundaries = tuple(
            tuple(BoundarySlot(edge=cell_pos[1][s.edge], sign=s.sign) for s in c.boundaries[old])
            for old in tile_order
        )
    return CellComplex(
        space=c.space,
        n=c.n,
        top_dim=c.top_dim,
        tiles=tuple(c.tiles[old] for old in tile_order),
        cells=tuple(
            tuple(layer[old] for old in order) for order, layer in zip(cell_orders, c.cells)
        ),
        incidences=tuple(incidences),
        boundaries=boundaries,
    )


def incidence_signature(c: CellComplex) -> List[Tuple[int, Tuple[int, ...], Tuple[int, ...], int]]:
    """与下标无关的关联结构: (维数, 胞腔编码, 瓦片编码, 重数) 的排序列表"""
    return sorted(
        (inc.dim, c.cells[inc.dim][inc.cell].encoding, c.tiles[inc.tile].encoding, inc.multiplicity)
        for inc in c.incidences
    )


def same_complex(a: CellComplex, b: CellComplex) -> bool:
    """两种编号下的同一复形"""
    if a.cell_counts() != b.cell_counts() or euler(a) != euler(b):
        return False
    if pseudomanifold(a) != pseudomanifold(b):
        return False
    if a.top_dim == 2 and classify_surface(a) != classify_surface(b):
        return False
    return incidence_signature(a) == incidence_signature(b)
