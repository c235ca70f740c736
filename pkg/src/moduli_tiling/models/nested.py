"""
嵌套集模型 - Coxeter 图、管、管族与辫子排列描述
"""

from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class DiagramKind(str, Enum):
    """Coxeter 图形状"""
    PATH = "path"      # A_n: • - • ⋯ • - •
    CYCLE = "cycle"    # Ã_{n-1}: 结点排成一圈


class Diagram(BaseModel):
    """
    Coxeter 图

    结点编号 1..nodes；路径有 nodes-1 条相邻关系，圈有 nodes 条（要求 nodes ≥ 3）。
    """
    model_config = ConfigDict(frozen=True)

    kind: DiagramKind
    nodes: int = Field(..., ge=1, description="结点数")

    @model_validator(mode="after")
    def validate_cycle(self) -> "Diagram":
        if self.kind == DiagramKind.CYCLE and self.nodes < 3:
            raise ValueError(f"圈图至少需要 3 个结点: {self.nodes}")
        return self

    @property
    def adjacency_count(self) -> int:
        return self.nodes if self.kind == DiagramKind.CYCLE else self.nodes - 1


class Tube(BaseModel):
    """管: 诱导子图连通的非空真子集（连通性由 core.nested 校验）"""
    model_config = ConfigDict(frozen=True)

    nodes: Tuple[int, ...] = Field(..., min_length=1)

    @field_validator("nodes")
    @classmethod
    def validate_nodes(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(set(v)) != len(v):
            raise ValueError(f"管中结点重复: {v}")
        if any(x < 1 for x in v):
            raise ValueError(f"结点编号从 1 开始: {v}")
        return tuple(sorted(v))

    @property
    def mask(self) -> int:
        return sum(1 << (x - 1) for x in self.nodes)

    @classmethod
    def from_mask(cls, mask: int) -> "Tube":
        return cls(nodes=tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1))


class Tubing(BaseModel):
    """管族: 两两嵌套或分离（不交且不相邻）的管集合"""
    model_config = ConfigDict(frozen=True)

    tubes: Tuple[Tube, ...] = ()

    @field_validator("tubes")
    @classmethod
    def sort_tubes(cls, v: Tuple[Tube, ...]) -> Tuple[Tube, ...]:
        return tuple(sorted(v, key=lambda t: (len(t.nodes), t.nodes)))

    @property
    def size(self) -> int:
        return len(self.tubes)


class ArrangementKind(str, Enum):
    """辫子排列类型"""
    LINEAR = "linear"    # P V^n 中的辫子排列
    AFFINE = "affine"    # Λ V^n = V^n / ℤ^{n-1} 中的仿射辫子排列


class ArrangementDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ArrangementKind
    n: int = Field(..., ge=2)


class BuildingSetMember(BaseModel):
    """
    极小构造集中的一个成员

    属性:
        indices: 坐标下标集合（k+1 个）
        hyperplanes: 在该子空间相交的辫子超平面 (i, j)，共 C(k+1, 2) 个
    """
    model_config = ConfigDict(frozen=True)

    indices: Tuple[int, ...]
    hyperplanes: Tuple[Tuple[int, int], ...]

    @property
    def codim(self) -> int:
        return len(self.indices) - 1
