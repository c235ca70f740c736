"""
测试配置和共享工具 (unittest 兼容)
"""

from typing import Any, Sequence, Tuple

from hypothesis import strategies as st

from moduli_tiling.core.dissect import all_diagonals, crosses_key, symmetric_atoms, to_dissection
from moduli_tiling.models.complex import CellClass, CellComplex, Incidence
from moduli_tiling.models.polygon import Dissection, LabeledPolygon, PolygonMode


# ============================================================================
# 多边形工厂函数
# ============================================================================

def make_plain(labels: Sequence[int], chords: Sequence[Tuple[int, int]] = ()) -> Tuple[LabeledPolygon, Dissection]:
    """带标号剖分普通多边形"""
    p = LabeledPolygon(labels=tuple(labels), mode=PolygonMode.PLAIN)
    return p, to_dissection(tuple(sorted(chords)), PolygonMode.PLAIN, p.m)


def make_symmetric(
    half: Sequence[int],
    chords: Sequence[Tuple[int, int]] = (),
    mode: PolygonMode = PolygonMode.SYMMETRIC,
) -> Tuple[LabeledPolygon, Dissection]:
    """带标号对称剖分 2n 边形；chords 需已对径封闭"""
    if mode == PolygonMode.SIGNED:
        labels = tuple(half) + tuple(-x for x in half)
    else:
        labels = tuple(half) + tuple(half)
    p = LabeledPolygon(labels=labels, mode=mode)
    return p, to_dissection(tuple(sorted(chords)), mode, p.m)


# ============================================================================
# 复形工厂函数
# ============================================================================

def make_dangling_complex() -> CellComplex:
    """一条线段，两个端点各只有一个关联（非伪流形）"""
    tile = CellClass(labels=(1, 2, 3, 4), codim=0)
    v0 = CellClass(labels=(1, 2, 3, 4), chords=((0, 2),), codim=1)
    v1 = CellClass(labels=(1, 2, 3, 4), chords=((1, 3),), codim=1)
    return CellComplex(
        space="test",
        n=4,
        top_dim=1,
        tiles=(tile,),
        cells=((v0, v1), (tile,)),
        incidences=(
            Incidence(dim=0, cell=0, tile=0, slots=(1,)),
            Incidence(dim=0, cell=1, tile=0, slots=(2,)),
            Incidence(dim=1, cell=0, tile=0, slots=(0,)),
        ),
    )


def make_two_points() -> CellComplex:
    """两个孤立点"""
    a = CellClass(labels=(1, 2, 3), codim=0)
    b = CellClass(labels=(1, 3, 2), codim=0)
    return CellComplex(
        space="test",
        n=3,
        top_dim=0,
        tiles=(a, b),
        cells=((a, b),),
        incidences=(
            Incidence(dim=0, cell=0, tile=0, slots=(0,)),
            Incidence(dim=0, cell=1, tile=1, slots=(0,)),
        ),
    )


# ============================================================================
# 配置工厂函数
# ============================================================================

def create_test_config_yaml(max_n: int = 3) -> str:
    """返回测试配置 YAML 字符串"""
    return f"""
suites:
  nc:
    max_n: {max_n}
  property:
    max_n: 5
    enabled: false

samples: 20
seed: 7
log_level: "DEBUG"
"""


# ============================================================================
# hypothesis 策略
# ============================================================================

@st.composite
def plain_dissected(draw: Any, max_m: int = 9) -> Tuple[LabeledPolygon, Dissection]:
    """随机的带标号剖分普通多边形（至少一条弦）"""
    m = draw(st.integers(min_value=4, max_value=max_m))
    labels = draw(st.permutations(list(range(1, m + 1))))
    order = draw(st.permutations(all_diagonals(m)))
    target = draw(st.integers(min_value=1, max_value=m - 3))
    chosen: list[Tuple[int, int]] = []
    for c in order:
        if len(chosen) == target:
            break
        if not any(crosses_key(c, o) for o in chosen):
            chosen.append(c)
    return make_plain(labels, chosen)


@st.composite
def symmetric_dissected(draw: Any, max_n: int = 5) -> Tuple[LabeledPolygon, Dissection]:
    """随机的带标号对称剖分 2n 边形（至少一个弦类）"""
    n = draw(st.integers(min_value=2, max_value=max_n))
    half = draw(st.permutations(list(range(1, n + 1))))
    order = draw(st.permutations(symmetric_atoms(n)))
    target = draw(st.integers(min_value=1, max_value=n - 1))
    chosen: list[Tuple[int, int]] = []
    count = 0
    for cls in order:
        if count == target:
            break
        if not any(crosses_key(a, b) for a in cls for b in chosen):
            chosen.extend(cls)
            count += 1
    return make_symmetric(half, chosen)
