"""
胞腔复形模型 - 瓦片、胞腔类、关联记录、边界遍历与曲面类型
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from moduli_tiling.models.polygon import LabeledPolygon


class Space(str, Enum):
    """模空间类型"""
    M = "m0"          # M̄₀ⁿ(ℝ)，由结合多面体铺砌
    Z = "z"           # Z̄ⁿ，由环面体铺砌
    COVER = "cover"   # Z̄ⁿ 的带横线标号覆叠


class Tile(BaseModel):
    """顶维胞腔: 在空间对称群下规范的带标号多边形"""
    model_config = ConfigDict(frozen=True)

    polygon: LabeledPolygon


class CellClass(BaseModel):
    """
    胞腔类

    属性:
        labels: 代表元的标号序列
        chords: 代表元的弦表（排序）
        codim: 在所在空间中的余维（代表元剖分的弦类数）
        orbit_size: 扭转 + 对称群轨道大小（即 (瓦片, 面槽) 关联数）
    """
    model_config = ConfigDict(frozen=True)

    labels: Tuple[int, ...]
    chords: Tuple[Tuple[int, int], ...] = ()
    codim: int = Field(..., ge=0)
    orbit_size: int = Field(default=1, ge=1)

    @property
    def encoding(self) -> Tuple[int, ...]:
        """标号后接展开弦端点的整数序列"""
        return self.labels + tuple(v for chord in self.chords for v in chord)


class Incidence(BaseModel):
    """
    关联记录: 顶维胞腔 tile 的若干面槽映到胞腔 (dim, cell)

    multiplicity 为面槽数，自粘合时大于 1。
    """
    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=0)
    cell: int = Field(..., ge=0)
    tile: int = Field(..., ge=0)
    slots: Tuple[int, ...] = Field(..., min_length=1)

    @property
    def multiplicity(self) -> int:
        return len(self.slots)


class BoundarySlot(BaseModel):
    """2 维胞腔边界上的一段: 边胞腔下标及遍历方向（相对边胞腔的参考方向）"""
    model_config = ConfigDict(frozen=True)

    edge: int = Field(..., ge=0)
    sign: int

    @model_validator(mode="after")
    def validate_sign(self) -> "BoundarySlot":
        if self.sign not in (1, -1):
            raise ValueError(f"方向必须为 ±1: {self.sign}")
        return self


class CellComplex(BaseModel):
    """
    胞腔复形（按粘合等价类构造的商）

    属性:
        space: 空间标识（m0 / z / cover / stratum）
        n: 点数
        top_dim: 顶维
        tiles: 顶维胞腔（关联记录中的 tile 下标指向此列表）
        cells: cells[d] 为 d 维胞腔类
        incidences: 关联记录
        boundaries: top_dim == 2 时每个顶维胞腔的循环边界遍历
    """
    model_config = ConfigDict(frozen=True)

    space: str
    n: int = Field(..., ge=0)
    top_dim: int = Field(..., ge=0)
    tiles: Tuple[CellClass, ...]
    cells: Tuple[Tuple[CellClass, ...], ...]
    incidences: Tuple[Incidence, ...] = ()
    boundaries: Optional[Tuple[Tuple[BoundarySlot, ...], ...]] = None

    @model_validator(mode="after")
    def validate_shape(self) -> "CellComplex":
        if len(self.cells) != self.top_dim + 1:
            raise ValueError(f"cells 层数 {len(self.cells)} 与顶维 {self.top_dim} 不符")
        return self

    def cell_counts(self) -> List[int]:
        """按维数 0..top_dim 的胞腔数"""
        return [len(layer) for layer in self.cells]

    def incidence_counts(self, dim: int) -> List[int]:
        """dim 维各胞腔的 (瓦片, 面槽) 关联总数"""
        counts = [0] * len(self.cells[dim])
        for inc in self.incidences:
            if inc.dim == dim:
                counts[inc.cell] += inc.multiplicity
        return counts


class SurfaceType(BaseModel):
    """
    闭曲面类型

    可定向时 parameter 为亏格（χ = 2 - 2g），否则为交叉帽数（χ = 2 - k）。
    """
    model_config = ConfigDict(frozen=True)

    orientable: bool
    parameter: int = Field(..., ge=0)
    euler: int

    @model_validator(mode="after")
    def validate_euler(self) -> "SurfaceType":
        expected = 2 - 2 * self.parameter if self.orientable else 2 - self.parameter
        if expected != self.euler:
            raise ValueError(f"欧拉示性数 {self.euler} 与类型参数 {self.parameter} 不符")
        return self

    @property
    def name(self) -> str:
        if self.orientable:
            if self.parameter == 0:
                return "sphere"
            if self.parameter == 1:
                return "torus"
            return f"genus {self.parameter} surface"
        return " # ".join(["RP2"] * self.parameter)


class Stratum(BaseModel):
    """
    乘积层 M̄^{k+2} × Z̄^{n-k}

    属性:
        labels: 被对称弦类切出的标号集合 S（|S| = k+1）
        m_points: M 因子的点数 k+2
        z_points: Z 因子的点数 n-k
        complex: 该层作为 Z̄ⁿ 子复形的胞腔结构
        f_vector: 子复形 f 向量
        product_f_vector: 两个因子复形 f 向量的卷积
        topology: 拓扑描述（2 维时为曲面类型）
    """
    model_config = ConfigDict(frozen=True)

    labels: Tuple[int, ...]
    m_points: int
    z_points: int
    complex: CellComplex
    f_vector: Tuple[int, ...]
    product_f_vector: Tuple[int, ...]
    topology: str = ""

    @property
    def matches_product(self) -> bool:
        return self.f_vector == self.product_f_vector
