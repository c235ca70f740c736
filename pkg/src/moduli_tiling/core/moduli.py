"""
模空间 - 扭转运算、瓦片枚举、扭转轨道闭包与胞腔复形组装

M̄₀ⁿ(ℝ) 由 n 边形（二面体群规范）铺砌，
Z̄ⁿ 由中心对称 2n 边形（旋转群规范）铺砌；
两个带标号剖分多边形表示同一胞腔，当且仅当可经过若干次沿剖分中弦类的扭转
及对称群作用互相转化。
"""

from collections import defaultdict, deque
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from moduli_tiling.core.complex import describe_topology, f_vector_of
from moduli_tiling.core.dissect import (
    Chords,
    ClassKey,
    GroupElement,
    Labels,
    State,
    act_chords,
    act_labels,
    arc_labels,
    canonical_state,
    chord_classes_key,
    group_elements,
    is_diameter,
    norm_chord,
    short_arc,
    to_dissection,
    to_polygon,
    validate_dissection,
    vertex_map_for_arc,
)
from moduli_tiling.core.poset import associahedron, cyclohedron, decode_chords, hasse_diagram
from moduli_tiling.errors import GluingError, InvalidInputError, ResourceLimitError
from moduli_tiling.models.complex import (
    BoundarySlot,
    CellClass,
    CellComplex,
    Incidence,
    Space,
    Stratum,
    Tile,
)
from moduli_tiling.models.polygon import (
    Chord,
    ChordClass,
    Dissection,
    GroupKind,
    LabeledPolygon,
    PolygonMode,
)
from moduli_tiling.models.verify_config import ResourceCaps
from moduli_tiling.utils.logging import get_logger

logger = get_logger(__name__)


# ============================================================================
# 扭转
# ============================================================================

def twist_plain_chords(chords: Sequence[Tuple[int, int]], chord: Tuple[int, int]) -> Chords:
    """沿弦 (i, j) 反射顶点 i..j 一侧的弦，其余弦不动"""
    i, j = chord
    return tuple(sorted(
        (i + j - b, i + j - a) if i <= a and b <= j else (a, b) for a, b in chords
    ))


def twist_plain_state(labels: Labels, chords: Chords, chord: Tuple[int, int]) -> State:
    """普通多边形的扭转（未规范化）: 边 i..j-1 上的标号反序"""
    i, j = chord
    out = list(labels)
    for k in range(i, j):
        out[i + j - 1 - k] = labels[k]
    return tuple(out), twist_plain_chords(chords, chord)


def twist_sym_chords(chords: Sequence[Tuple[int, int]], cls: ClassKey, n: int) -> Chords:
    """
    对称扭转作用在弦上

    直径: 整个 2n 边形关于该直径反射；弦对: 两个外侧块分别关于各自的弦反射。
    """
    m = 2 * n
    if is_diameter(cls, n):
        return act_chords(chords, GroupElement(2 * cls[0][0], True), m)
    s, length = short_arc(cls[0], n)
    maps = (vertex_map_for_arc(s, length, m), vertex_map_for_arc(s + n, length, m))
    out = []
    for a, b in chords:
        for vm in maps:
            if a in vm and b in vm:
                a, b = vm[a], vm[b]
                break
        out.append(norm_chord(a, b))
    return tuple(sorted(out))


def twist_sym_state(labels: Labels, chords: Chords, cls: ClassKey) -> State:
    """对称多边形的扭转（未规范化）"""
    m = len(labels)
    n = m // 2
    if is_diameter(cls, n):
        new_labels = act_labels(labels, GroupElement(2 * cls[0][0], True))
    else:
        s, length = short_arc(cls[0], n)
        out = list(labels)
        for start in (s, s + n):
            for t in range(length):
                out[(start + length - 1 - t) % m] = labels[(start + t) % m]
        new_labels = tuple(out)
    return new_labels, twist_sym_chords(chords, cls, n)


def twist_plain(
    p: LabeledPolygon,
    d: Dissection,
    c: Chord,
    canonical: bool = True,
) -> Tuple[LabeledPolygon, Dissection]:
    """
    沿对角线 c 扭转普通多边形

    把 c 一侧（顶点 i..j）的标号与弦关于 c 反射，c 自身不动；
    canonical=True 时结果在二面体群下规范化。

    异常:
        InvalidInputError: 非普通模式或 c 不在 d 中

    示例:
        正方形 (1,2,3,4) 沿 (0,2) 扭转 → 标号 (2,1,3,4)，弦 (0,2)
    """
    if p.mode != PolygonMode.PLAIN:
        raise InvalidInputError("twist_plain 只适用于普通多边形")
    validate_dissection(p, d)
    if c.key not in d.chord_keys:
        raise InvalidInputError(f"弦 {c.key} 不在剖分中")
    labels, chords = twist_plain_state(p.labels, d.chord_keys, c.key)
    if canonical:
        (labels, chords), _ = canonical_state(labels, chords, group_elements(p.m, GroupKind.DIHEDRAL))
    return to_polygon(labels, p.mode), to_dissection(chords, p.mode, p.m)


def twist_sym(
    p: LabeledPolygon,
    d: Dissection,
    cc: ChordClass,
    canonical: bool = True,
) -> Tuple[LabeledPolygon, Dissection]:
    """
    沿对称弦类 cc 扭转中心对称多边形

    弦对: 对称地反射两个外侧块，中心块不动；直径: 整体关于该直径反射。
    canonical=True 时结果在旋转群下规范化。

    异常:
        InvalidInputError: 非对称模式或 cc 不在 d 中
    """
    if not p.symmetric:
        raise InvalidInputError("twist_sym 只适用于中心对称多边形")
    validate_dissection(p, d)
    if not d.contains(cc):
        raise InvalidInputError(f"弦类 {cc.key} 不在剖分中")
    labels, chords = twist_sym_state(p.labels, d.chord_keys, cc.key)
    if canonical:
        (labels, chords), _ = canonical_state(labels, chords, group_elements(p.m, GroupKind.ROTATIONS))
    return to_polygon(labels, p.mode), to_dissection(chords, p.mode, p.m)


# ============================================================================
# 空间描述
# ============================================================================

class SpaceModel:
    """
    固定 n 的空间描述: 多边形边数、模式、对称群、底多面体面格

    M: n 边形，K_{n-1}，二面体群；Z / COVER: 2n 边形，W_n，旋转群。
    """

    def __init__(self, space: Space, n: int):
        self.space = space
        self.n = n
        if space == Space.M:
            if n < 3:
                raise InvalidInputError(f"M̄₀ⁿ 要求 n ≥ 3: {n}")
            self.m = n
            self.mode = PolygonMode.PLAIN
            self.half: Optional[int] = None
            self.poset = associahedron(n - 1)
            kind = GroupKind.DIHEDRAL
        else:
            if n < 1:
                raise InvalidInputError(f"Z̄ⁿ 要求 n ≥ 1: {n}")
            self.m = 2 * n
            self.mode = PolygonMode.SYMMETRIC if space == Space.Z else PolygonMode.SIGNED
            self.half = n
            self.poset = cyclohedron(n)
            kind = GroupKind.ROTATIONS
        self.kind = kind
        self.top_dim = self.poset.dim
        self.elements = group_elements(self.m, kind)

    def classes(self, chords: Chords) -> Tuple[ClassKey, ...]:
        return chord_classes_key(chords, self.half)

    def twist(self, labels: Labels, chords: Chords, cls: ClassKey) -> State:
        if self.half is None:
            return twist_plain_state(labels, chords, cls[0])
        return twist_sym_state(labels, chords, cls)

    def twist_chords(self, chords: Chords, cls: ClassKey) -> Chords:
        if self.half is None:
            return twist_plain_chords(chords, cls[0])
        return twist_sym_chords(chords, cls, self.half)

    def canonical(self, labels: Labels, chords: Chords) -> Tuple[State, GroupElement]:
        return canonical_state(labels, chords, self.elements)

    def labelings(self) -> Iterator[Labels]:
        """全部（未规范化的）瓦片标号"""
        base = range(1, self.n + 1)
        for perm in permutations(base):
            if self.space == Space.M:
                yield perm
            elif self.space == Space.Z:
                yield perm + perm
            else:
                for signs in product((1, -1), repeat=self.n):
                    half = tuple(s * x for s, x in zip(signs, perm))
                    yield half + tuple(-x for x in half)

    def separated_labels(self, labels: Labels, cls: ClassKey) -> frozenset[int]:
        """对称弦类的外侧块所带的标号集合（直径为全部标号）"""
        assert self.half is not None
        if is_diameter(cls, self.half):
            return frozenset(abs(x) for x in labels)
        s, length = short_arc(cls[0], self.half)
        return frozenset(abs(x) for x in arc_labels(labels, s, length))


# ============================================================================
# 扭转轨道闭包
# ============================================================================

class TwistClosure:
    """
    扭转轨道闭包

    对规范状态做广度优先搜索: 每一步沿当前剖分中的一个弦类扭转后重新规范化。
    已计算的轨道全部记忆，轨道最小状态为代表元。
    """

    def __init__(self, model: SpaceModel, max_orbit_size: int):
        self.model = model
        self.max_orbit_size = max_orbit_size
        self._class_of: Dict[State, int] = {}
        self._representatives: List[State] = []
        self._orbit_sizes: List[int] = []
        self._frames: Dict[int, Dict[State, Chords]] = {}
        self._extensions: Dict[Chords, List[Chords]] = defaultdict(list)
        faces = [decode_chords(f) for f in model.poset.faces()]
        for child, parent in model.poset.covers:
            self._extensions[faces[parent]].append(faces[child])

    def canonical(self, labels: Labels, chords: Chords) -> Tuple[State, GroupElement]:
        return self.model.canonical(labels, chords)

    def extensions(self, chords: Chords) -> List[Chords]:
        """在剖分上再加一个弦类得到的全部剖分"""
        return sorted(self._extensions.get(chords, []))

    def class_id(self, state: State) -> int:
        """规范状态所在轨道的编号（首次访问时做闭包）"""
        cid = self._class_of.get(state)
        if cid is not None:
            return cid

        orbit = {state}
        queue = deque([state])
        while queue:
            labels, chords = queue.popleft()
            for cls in self.model.classes(chords):
                raw = self.model.twist(labels, chords, cls)
                image, _ = self.canonical(*raw)
                if image in orbit:
                    continue
                orbit.add(image)
                queue.append(image)
                if len(orbit) > self.max_orbit_size:
                    raise ResourceLimitError("max_orbit_size", self.max_orbit_size, len(orbit))

        cid = len(self._representatives)
        members = sorted(orbit)
        self._representatives.append(members[0])
        self._orbit_sizes.append(len(members))
        for member in members:
            self._class_of[member] = cid
        logger.debug("orbit_closed", space=self.model.space.value, cid=cid, size=len(members))
        return cid

    def representative(self, cid: int) -> State:
        return self._representatives[cid]

    def cell_class(self, cid: int) -> CellClass:
        labels, chords = self._representatives[cid]
        return CellClass(
            labels=labels,
            chords=chords,
            codim=len(self.model.classes(chords)),
            orbit_size=self._orbit_sizes[cid],
        )

    def end_frame(self, cid: int) -> Dict[State, Chords]:
        """
        边胞腔的端点参照系

        对轨道内每个状态给出与代表元第一个端点对应的端点剖分；
        端点随同一串扭转与群元素一起搬运。
        """
        frame = self._frames.get(cid)
        if frame is not None:
            return frame

        root = self._representatives[cid]
        ends = self.extensions(root[1])
        if len(ends) != 2:
            raise InvalidInputError(f"胞腔 {cid} 不是一维胞腔（端点数 {len(ends)}）")
        frame = {root: ends[0]}
        queue = deque([root])
        m = self.model.m
        while queue:
            state = queue.popleft()
            labels, chords = state
            end = frame[state]
            for cls in self.model.classes(chords):
                raw = self.model.twist(labels, chords, cls)
                image, g = self.canonical(*raw)
                moved = act_chords(self.model.twist_chords(end, cls), g, m)
                known = frame.get(image)
                if known is None:
                    frame[image] = moved
                    queue.append(image)
                elif known != moved:
                    raise GluingError(cid, f"状态 {image} 处端点参照系自相矛盾")
        self._frames[cid] = frame
        return frame

    def traversal_sign(self, labels: Labels, edge: Chords, start: Chords) -> int:
        """边槽从 start 端出发的遍历方向相对边胞腔参考方向的符号"""
        state, g = self.canonical(labels, edge)
        frame = self.end_frame(self.class_id(state))
        return 1 if act_chords(start, g, self.model.m) == frame[state] else -1


# ============================================================================
# 复形组装
# ============================================================================

class ComplexBuilder:
    """
    胞腔复形组装器

    把每个顶维胞腔（瓦片或层的顶维胞腔）的全部面槽映到扭转轨道，
    按代表元排序得到确定性的胞腔编号。
    """

    def __init__(self, space: Space, n: int, max_orbit_size: int = 100_000):
        self.space = space
        self.n = n
        self.model = SpaceModel(space, n)
        self.closure = TwistClosure(self.model, max_orbit_size)
        poset = self.model.poset
        self._faces = [decode_chords(f) for f in poset.faces()]
        self._index = {chords: i for i, chords in enumerate(self._faces)}
        self._codims = [poset.codim_of(i) for i in range(len(self._faces))]
        self._graph = hasse_diagram(poset)
        self._subface_cache: Dict[int, List[int]] = {}

    def tile_labels(self) -> List[Labels]:
        """全部规范瓦片标号（排序）"""
        found = set()
        for labels in self.model.labelings():
            (canonical, _), _ = self.model.canonical(labels, ())
            found.add(canonical)
        return sorted(found)

    def tiles(self) -> List[Tile]:
        return [Tile(polygon=to_polygon(labels, self.model.mode)) for labels in self.tile_labels()]

    def _subfaces(self, chords: Chords) -> List[int]:
        index = self._index[chords]
        cached = self._subface_cache.get(index)
        if cached is None:
            cached = sorted(nx.ancestors(self._graph, index) | {index})
            self._subface_cache[index] = cached
        return cached

    def build(self) -> CellComplex:
        """整个空间的复形"""
        logger.info("complex_build_start", space=self.space.value, n=self.n)
        tops = [(labels, ()) for labels in self.tile_labels()]
        result = self.assemble(tops, self.model.top_dim, self.space.value)
        logger.info(
            "complex_build_done",
            space=self.space.value,
            n=self.n,
            cells=result.cell_counts(),
        )
        return result

    def assemble(
        self,
        top_states: Sequence[Tuple[Labels, Chords]],
        top_dim: int,
        space_name: str,
    ) -> CellComplex:
        """
        由顶维胞腔的代表状态组装复形

        参数:
            top_states: (标号, 剖分) 列表，剖分为该顶维胞腔在底多面体中的面
            top_dim: 顶维
            space_name: 复形的空间标识
        """
        # 保持调用方给出的瓦片顺序
        tops = list(dict.fromkeys(top_states))
        slots: Dict[Tuple[int, int, int], List[int]] = defaultdict(list)
        for t, (labels, base) in enumerate(tops):
            base_codim = self._codims[self._index[base]]
            for slot in self._subfaces(base):
                state, _ = self.closure.canonical(labels, self._faces[slot])
                cid = self.closure.class_id(state)
                dim = top_dim - (self._codims[slot] - base_codim)
                slots[(dim, cid, t)].append(slot)

        per_dim: Dict[int, set[int]] = defaultdict(set)
        for dim, cid, _ in slots:
            per_dim[dim].add(cid)
        cell_index: Dict[Tuple[int, int], int] = {}
        layers = []
        for dim in range(top_dim + 1):
            ordered = sorted(per_dim[dim], key=self.closure.representative)
            for i, cid in enumerate(ordered):
                cell_index[(dim, cid)] = i
            layers.append(tuple(self.closure.cell_class(cid) for cid in ordered))

        incidences = sorted(
            (
                Incidence(dim=dim, cell=cell_index[(dim, cid)], tile=t, slots=tuple(sorted(s)))
                for (dim, cid, t), s in slots.items()
            ),
            key=lambda inc: (inc.dim, inc.cell, inc.tile),
        )

        tile_classes = []
        for labels, base in tops:
            state, _ = self.closure.canonical(labels, base)
            tile_classes.append(self.closure.cell_class(self.closure.class_id(state)))

        boundaries = None
        if top_dim == 2:
            boundaries = tuple(
                self._boundary(labels, base, cell_index) for labels, base in tops
            )

        return CellComplex(
            space=space_name,
            n=self.n,
            top_dim=top_dim,
            tiles=tuple(tile_classes),
            cells=tuple(layers),
            incidences=tuple(incidences),
            boundaries=boundaries,
        )

    def boundary_cycle(self, base: Chords) -> List[Tuple[Chords, Chords, Chords]]:
        """
        二维面的循环边界: [(边, 起点, 终点), ...]

        从最小的边出发，沿其较小端点到较大端点的方向绕行一周。
        """
        edges = self.closure.extensions(base)
        ends = {e: self.closure.extensions(e) for e in edges}
        first = edges[0]
        cycle = [(first, ends[first][0], ends[first][1])]
        current, vertex = first, ends[first][1]
        while True:
            following = next(e for e in edges if e != current and vertex in ends[e])
            if following == first:
                break
            a, b = ends[following]
            nxt = b if a == vertex else a
            cycle.append((following, vertex, nxt))
            current, vertex = following, nxt
        return cycle

    def _boundary(
        self,
        labels: Labels,
        base: Chords,
        cell_index: Dict[Tuple[int, int], int],
    ) -> Tuple[BoundarySlot, ...]:
        result = []
        for edge, start, _ in self.boundary_cycle(base):
            state, _ = self.closure.canonical(labels, edge)
            cid = self.closure.class_id(state)
            sign = self.closure.traversal_sign(labels, edge, start)
            result.append(BoundarySlot(edge=cell_index[(1, cid)], sign=sign))
        return tuple(result)


def _check_caps(space: Space, n: int, caps: ResourceCaps) -> None:
    limits = {
        Space.M: ("max_m_n", caps.max_m_n),
        Space.Z: ("max_z_n", caps.max_z_n),
        Space.COVER: ("max_cover_n", caps.max_cover_n),
    }
    name, limit = limits[space]
    if n > limit:
        raise ResourceLimitError(name, limit, n)


@lru_cache(maxsize=32)
def _cached_builder(space: Space, n: int, max_orbit_size: int) -> ComplexBuilder:
    return ComplexBuilder(space, n, max_orbit_size)


def get_builder(space: Space, n: int, caps: Optional[ResourceCaps] = None) -> ComplexBuilder:
    """检查资源上限并返回（缓存的）组装器"""
    caps = caps or ResourceCaps()
    _check_caps(space, n, caps)
    return _cached_builder(space, n, caps.max_orbit_size)


# ============================================================================
# 公共接口
# ============================================================================

def tiles(space: Space, n: int, caps: Optional[ResourceCaps] = None) -> List[Tile]:
    """
    全部瓦片

    M: (n-1)!/2 个二面体规范的 n 边形；Z: (n-1)! 个旋转规范的对称 2n 边形。

    示例:
        >>> len(tiles(Space.M, 5))
        12
    """
    return get_builder(space, n, caps).tiles()


def _space_n(p: LabeledPolygon, space: Space) -> int:
    expected = {Space.M: PolygonMode.PLAIN, Space.Z: PolygonMode.SYMMETRIC, Space.COVER: PolygonMode.SIGNED}
    if p.mode != expected[space]:
        raise InvalidInputError(f"空间 {space.value} 需要 {expected[space].value} 模式的多边形")
    return p.m if space == Space.M else p.half


def cell_class_of(
    p: LabeledPolygon,
    d: Dissection,
    space: Space,
    caps: Optional[ResourceCaps] = None,
) -> CellClass:
    """
    带标号剖分多边形所在的胞腔类

    返回轨道最小代表元；空剖分只受对称群作用，得到瓦片本身。
    """
    n = _space_n(p, space)
    validate_dissection(p, d)
    closure = get_builder(space, n, caps).closure
    state, _ = closure.canonical(p.labels, d.chord_keys)
    return closure.cell_class(closure.class_id(state))


def build_complex(space: Space, n: int, caps: Optional[ResourceCaps] = None) -> CellComplex:
    """
    组装 M̄₀ⁿ(ℝ)、Z̄ⁿ 或覆叠空间的胞腔复形

    异常:
        InvalidInputError: n 超出定义范围
        ResourceLimitError: 超出资源上限
    """
    return _cached_complex(space, n, get_builder(space, n, caps))


@lru_cache(maxsize=32)
def _cached_complex(space: Space, n: int, builder: ComplexBuilder) -> CellComplex:
    return builder.build()


def cover_complex(n: int, caps: Optional[ResourceCaps] = None) -> CellComplex:
    """对边标号 i 与 ī 的覆叠复形"""
    return build_complex(Space.COVER, n, caps)


def cover_fold(n: int, caps: Optional[ResourceCaps] = None) -> int:
    """覆叠的经验重数: 覆叠瓦片数 / (n-1)!"""
    count = len(get_builder(Space.COVER, n, caps).tile_labels())
    return count // factorial(n - 1)


def cover_preimage_counts(n: int, caps: Optional[ResourceCaps] = None) -> List[List[int]]:
    """
    覆叠映射（去掉横线）下 Z̄ⁿ 每个胞腔的原像胞腔数

    返回:
        counts[d][i] 为 Z̄ⁿ 第 i 个 d 维胞腔的原像数；覆叠时各项都等于 cover_fold(n)

    示例:
        >>> cover_preimage_counts(3)
        [[4, 4, 4], [4, 4, 4, 4, 4, 4], [4, 4]]
    """
    caps = caps or ResourceCaps()
    cover = cover_complex(n, caps)
    base = build_complex(Space.Z, n, caps)
    closure = get_builder(Space.Z, n, caps).closure
    counts = []
    for dim, layer in enumerate(cover.cells):
        index = {(cell.labels, cell.chords): i for i, cell in enumerate(base.cells[dim])}
        row = [0] * len(base.cells[dim])
        for cell in layer:
            state, _ = closure.canonical(tuple(abs(x) for x in cell.labels), cell.chords)
            row[index[closure.representative(closure.class_id(state))]] += 1
        counts.append(row)
    logger.debug("cover_preimages", n=n, counts=counts)
    return counts


def is_uniform_cover(n: int, caps: Optional[ResourceCaps] = None) -> bool:
    """每个胞腔的原像数都等于覆叠重数"""
    fold = cover_fold(n, caps)
    return all(count == fold for row in cover_preimage_counts(n, caps) for count in row)


def product_f_vector(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    """乘积复形的 f 向量（卷积）"""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def strata_census(n: int, k: int, caps: Optional[ResourceCaps] = None) -> List[Stratum]:
    """
    Z̄ⁿ 中的乘积层普查

    每个 (k+1) 元标号子集 S 对应一层: 剖分中含有恰好切出 S 所在各边的
    对称弦类（|S| = n 时为直径）的全部胞腔；该层应同构于 M̄^{k+2} × Z̄^{n-k}。

    异常:
        InvalidInputError: k 不在 1..n-1 内
    """
    if not 1 <= k <= n - 1:
        raise InvalidInputError(f"k 必须在 1..{n - 1} 内: {k}")
    caps = caps or ResourceCaps()
    builder = get_builder(Space.Z, n, caps)
    z_complex = build_complex(Space.Z, n, caps)
    m_factor = f_vector_of(build_complex(Space.M, k + 2, caps))
    z_factor = f_vector_of(build_complex(Space.Z, n - k, caps))
    expected = product_f_vector(m_factor, z_factor)

    facets = z_complex.cells[z_complex.top_dim - 1]
    census = []
    for subset in combinations(range(1, n + 1), k + 1):
        target = frozenset(subset)
        tops = [
            (cell.labels, cell.chords)
            for cell in facets
            if any(
                builder.model.separated_labels(cell.labels, cls) == target
                for cls in builder.model.classes(cell.chords)
            )
        ]
        sub = builder.assemble(tops, n - 2, "stratum")
        census.append(Stratum(
            labels=subset,
            m_points=k + 2,
            z_points=n - k,
            complex=sub,
            f_vector=tuple(f_vector_of(sub)),
            product_f_vector=expected,
            topology=describe_topology(sub),
        ))
    logger.info("strata_census_done", n=n, k=k, strata=len(census))
    return census
