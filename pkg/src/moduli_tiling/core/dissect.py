"""
多边形剖分 - 交叉判定、对称弦类、剖分枚举、对称群规范化

内部热路径使用元组表示（见 `State`），模型对象只在公共接口处构造。
"""

from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from moduli_tiling.errors import InvalidInputError
from moduli_tiling.models.polygon import (
    Chord,
    ChordClass,
    ChordKey,
    Dissection,
    GroupKind,
    LabeledPolygon,
    PolygonMode,
    SymmetryGroup,
)

Labels = Tuple[int, ...]
Chords = Tuple[ChordKey, ...]
ClassKey = Tuple[ChordKey, ...]
State = Tuple[Labels, Chords]


class GroupElement(NamedTuple):
    """群元素: 旋转 v ↦ v + shift，或反射 v ↦ shift - v"""
    shift: int
    reflect: bool = False


# ============================================================================
# 弦
# ============================================================================

def norm_chord(a: int, b: int) -> ChordKey:
    """端点排序"""
    return (a, b) if a < b else (b, a)


def is_diagonal(chord: ChordKey, m: int) -> bool:
    """是否为 m 边形的真对角线"""
    i, j = chord
    return 0 <= i < j < m and j - i >= 2 and not (i == 0 and j == m - 1)


def _check_chord(chord: Chord, m: int) -> None:
    if not chord.is_diagonal_of(m):
        raise InvalidInputError(f"弦 ({chord.i}, {chord.j}) 不是 {m} 边形的对角线")


def crosses_key(a: ChordKey, b: ChordKey) -> bool:
    """开区间交错判定；共享端点不算交叉"""
    i, j = a
    k, l = b
    return i < k < j < l or k < i < l < j


def crosses(c1: Chord, c2: Chord, m: int) -> bool:
    """
    判断两条对角线是否交叉

    参数:
        c1, c2: m 边形的对角线
        m: 边数

    返回:
        恰有一个 c2 端点严格位于 c1 两端点之间时为 True

    异常:
        InvalidInputError: 弦不是 m 边形的对角线

    示例:
        >>> crosses(Chord.of(0, 2), Chord.of(1, 3), 4)
        True
    """
    _check_chord(c1, m)
    _check_chord(c2, m)
    return crosses_key(c1.key, c2.key)


def all_diagonals(m: int) -> List[ChordKey]:
    """m 边形的全部对角线，按字典序"""
    return [(i, j) for i in range(m) for j in range(i + 2, m) if is_diagonal((i, j), m)]


def antipode_key(chord: ChordKey, n: int) -> ChordKey:
    """对径映射 v ↦ v + n (mod 2n)"""
    m = 2 * n
    return norm_chord((chord[0] + n) % m, (chord[1] + n) % m)


def antipodal_class_key(chord: ChordKey, n: int) -> ClassKey:
    """弦所在的对称弦类（直径为单元素）"""
    if chord[1] - chord[0] == n:
        return (chord,)
    return tuple(sorted({chord, antipode_key(chord, n)}))


def antipodal_class(c: Chord, n: int) -> ChordClass:
    """
    对称弦类

    示例:
        n=3, (0,2) → {(0,2),(3,5)}；n=3, (0,3) → {(0,3)}
    """
    _check_chord(c, 2 * n)
    return ChordClass.from_key(antipodal_class_key(c.key, n))


def is_diameter(class_key: ClassKey, n: int) -> bool:
    return len(class_key) == 1 and class_key[0][1] - class_key[0][0] == n


def chord_classes_key(chords: Iterable[ChordKey], n: Optional[int]) -> Tuple[ClassKey, ...]:
    """
    把弦集合按弦类分组

    参数:
        chords: 弦集合
        n: 对称模式下的半边数；None 表示普通模式（每条弦单独成类）
    """
    if n is None:
        return tuple(sorted((c,) for c in chords))
    seen: set[ChordKey] = set()
    classes: List[ClassKey] = []
    for c in sorted(chords):
        if c in seen:
            continue
        cls = antipodal_class_key(c, n)
        seen.update(cls)
        classes.append(cls)
    return tuple(sorted(classes))


def chord_classes(chords: Iterable[Chord], mode: PolygonMode, m: int) -> Tuple[ChordClass, ...]:
    """把弦集合按模式分组为弦类"""
    n = m // 2 if mode != PolygonMode.PLAIN else None
    keys = chord_classes_key((c.key for c in chords), n)
    return tuple(ChordClass.from_key(k) for k in keys)


# ============================================================================
# 剖分枚举
# ============================================================================

def _extend(
    atoms: Sequence[ClassKey],
    start: int,
    chosen: List[ClassKey],
    used: List[ChordKey],
    k: int,
) -> Iterator[Tuple[ClassKey, ...]]:
    if len(chosen) == k:
        yield tuple(chosen)
        return
    for idx in range(start, len(atoms)):
        atom = atoms[idx]
        if any(crosses_key(a, b) for a in atom for b in used):
            continue
        chosen.append(atom)
        used.extend(atom)
        yield from _extend(atoms, idx + 1, chosen, used, k)
        del used[len(used) - len(atom):]
        chosen.pop()


def plain_atoms(m: int) -> List[ClassKey]:
    return [(c,) for c in all_diagonals(m)]


def symmetric_atoms(n: int) -> List[ClassKey]:
    """2n 边形的全部对称弦类"""
    seen: set[ClassKey] = set()
    atoms: List[ClassKey] = []
    for c in all_diagonals(2 * n):
        cls = antipodal_class_key(c, n)
        if cls in seen:
            continue
        seen.add(cls)
        if len(cls) == 2 and crosses_key(cls[0], cls[1]):
            continue
        atoms.append(cls)
    return sorted(atoms)


def enum_class_sets(atoms: Sequence[ClassKey], k: int) -> List[Tuple[ClassKey, ...]]:
    """从弦类原子中枚举 k 个两两不交叉的组合，按规范序输出"""
    if k < 0:
        return []
    found = list(_extend(atoms, 0, [], [], k))
    return sorted(found, key=lambda classes: sorted(c for cls in classes for c in cls))


def class_set_chords(classes: Iterable[ClassKey]) -> Chords:
    return tuple(sorted(c for cls in classes for c in cls))


def enum_dissections(m: int, k: int) -> List[Dissection]:
    """
    枚举普通 m 边形上恰有 k 条对角线的剖分

    参数:
        m: 边数 (≥ 3)
        k: 弦数，超出 0..m-3 时返回空列表

    示例:
        >>> len(enum_dissections(6, 3))
        14
    """
    if m < 3:
        raise InvalidInputError(f"边数必须 ≥ 3: {m}")
    if not 0 <= k <= m - 3:
        return []
    return [Dissection.from_class_keys(c) for c in enum_class_sets(plain_atoms(m), k)]


def enum_sym_dissections(n: int, k: int) -> List[Dissection]:
    """
    枚举中心对称 2n 边形上恰有 k 个弦类的对称剖分

    示例:
        >>> len(enum_sym_dissections(3, 1))
        6
    """
    if n < 1:
        raise InvalidInputError(f"半边数必须 ≥ 1: {n}")
    if not 0 <= k <= n - 1:
        return []
    return [Dissection.from_class_keys(c) for c in enum_class_sets(symmetric_atoms(n), k)]


# ============================================================================
# 群作用与规范化
# ============================================================================

def group_elements(m: int, kind: GroupKind) -> List[GroupElement]:
    elements = [GroupElement(r) for r in range(m)]
    if kind == GroupKind.DIHEDRAL:
        elements.extend(GroupElement(r, True) for r in range(m))
    return elements


def vertex_image(v: int, g: GroupElement, m: int) -> int:
    return (g.shift - v) % m if g.reflect else (v + g.shift) % m


def edge_image(k: int, g: GroupElement, m: int) -> int:
    # 边 k 连接顶点 k 与 k+1
    return (g.shift - k - 1) % m if g.reflect else (k + g.shift) % m


def act_labels(labels: Labels, g: GroupElement) -> Labels:
    m = len(labels)
    out = [0] * m
    for k, label in enumerate(labels):
        out[edge_image(k, g, m)] = label
    return tuple(out)


def act_chords(chords: Iterable[ChordKey], g: GroupElement, m: int) -> Chords:
    return tuple(sorted(
        norm_chord(vertex_image(a, g, m), vertex_image(b, g, m)) for a, b in chords
    ))


def canonical_state(
    labels: Labels,
    chords: Chords,
    elements: Sequence[GroupElement],
) -> Tuple[State, GroupElement]:
    """
    轨道最小编码

    返回:
        (规范状态, 把输入映到规范状态的群元素)
    """
    m = len(labels)
    best: Optional[State] = None
    best_g = elements[0]
    for g in elements:
        image = act_labels(labels, g)
        if best is not None and image > best[0]:
            continue
        candidate = (image, act_chords(chords, g, m))
        if best is None or candidate < best:
            best, best_g = candidate, g
    assert best is not None
    return best, best_g


def _check_group(p: LabeledPolygon, g: SymmetryGroup) -> None:
    if g.order != p.m:
        raise InvalidInputError(f"群阶参数 {g.order} 与边数 {p.m} 不一致")


def validate_dissection(p: LabeledPolygon, d: Dissection) -> None:
    """校验剖分属于该多边形（对角线合法、对称模式下对径封闭）"""
    for chord in d.chord_keys:
        if not is_diagonal(chord, p.m):
            raise InvalidInputError(f"弦 {chord} 不是 {p.m} 边形的对角线")
    if p.symmetric:
        n = p.half
        for cls in d.classes:
            if cls.key != antipodal_class_key(cls.key[0], n):
                raise InvalidInputError(f"弦类 {cls.key} 不是对称弦类")
    elif any(len(cls.members) != 1 for cls in d.classes):
        raise InvalidInputError("普通模式下弦类必须是单条弦")


def to_polygon(labels: Labels, mode: PolygonMode) -> LabeledPolygon:
    return LabeledPolygon(labels=labels, mode=mode)


def to_dissection(chords: Chords, mode: PolygonMode, m: int) -> Dissection:
    n = m // 2 if mode != PolygonMode.PLAIN else None
    return Dissection.from_class_keys(chord_classes_key(chords, n))


def canonicalize(
    p: LabeledPolygon,
    d: Dissection,
    g: SymmetryGroup,
) -> Tuple[LabeledPolygon, Dissection]:
    """
    规范化: 在群轨道上取 (标号序列, 排序弦表) 的字典序最小编码

    幂等；同一轨道内的输入得到完全相同的输出。

    异常:
        InvalidInputError: 群阶与边数不符或剖分不属于该多边形
    """
    _check_group(p, g)
    validate_dissection(p, d)
    (labels, chords), _ = canonical_state(p.labels, d.chord_keys, group_elements(p.m, g.kind))
    return to_polygon(labels, p.mode), to_dissection(chords, p.mode, p.m)


def apply_group_element(
    p: LabeledPolygon,
    d: Dissection,
    element: GroupElement,
) -> Tuple[LabeledPolygon, Dissection]:
    """用单个群元素作用于带标号剖分多边形"""
    validate_dissection(p, d)
    labels = act_labels(p.labels, element)
    chords = act_chords(d.chord_keys, element, p.m)
    return to_polygon(labels, p.mode), to_dissection(chords, p.mode, p.m)


def state_encoding(state: State) -> Tuple[int, ...]:
    """状态的整数序列编码: 标号后接展开的弦端点"""
    labels, chords = state
    return labels + tuple(v for chord in chords for v in chord)


# ============================================================================
# 剖分切块
# ============================================================================

def dissection_pieces(m: int, chords: Iterable[ChordKey]) -> List[Tuple[int, ...]]:
    """
    沿全部弦把 m 边形切成若干块

    返回:
        每块的循环顶点序列（按逆时针），按最小顶点排序

    示例:
        >>> dissection_pieces(4, [(0, 2)])
        [(0, 1, 2), (0, 2, 3)]
    """
    pieces: List[List[int]] = [list(range(m))]
    for a, b in sorted(chords):
        for idx, piece in enumerate(pieces):
            if a in piece and b in piece:
                pa, pb = piece.index(a), piece.index(b)
                if abs(pa - pb) in (1, len(piece) - 1):
                    continue
                lo, hi = sorted((pa, pb))
                pieces[idx] = piece[lo:hi + 1]
                pieces.append(piece[hi:] + piece[:lo + 1])
                break
        else:
            raise InvalidInputError(f"弦 ({a}, {b}) 无法切分（与其他弦交叉？）")
    return sorted((tuple(sorted(p)) for p in pieces), key=lambda p: (p[0], p))


def short_arc(chord: ChordKey, n: int) -> Tuple[int, int]:
    """
    非直径弦切下的外侧（不含中心）弧

    返回:
        (起点 s, 边数 L)，外侧块的边为 s, s+1, ..., s+L-1 (mod 2n)，L < n
    """
    i, j = chord
    if j - i < n:
        return i, j - i
    return j, 2 * n - (j - i)


def arc_labels(labels: Labels, start: int, length: int) -> Tuple[int, ...]:
    m = len(labels)
    return tuple(labels[(start + t) % m] for t in range(length))


def vertex_map_for_arc(start: int, length: int, m: int) -> Dict[int, int]:
    """弧内顶点的反射映射 s+t ↦ s+L-t"""
    return {(start + t) % m: (start + length - t) % m for t in range(length + 1)}
