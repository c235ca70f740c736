"""
面偏序模型 - 分次面格、f 向量、h 向量、面分解
"""

from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

Face = Tuple[int, ...]


class FacePoset(BaseModel):
    """
    分次面偏序

    属性:
        kind: 来源（associahedron / cyclohedron / tubing-path / tubing-cycle）
        index: 多面体下标 n（或管图结点数）
        dim: 多面体维数
        ranks: ranks[k] 为余维 k 的面（规范整数编码，已排序）
        covers: (余维 k+1 面的全局下标, 余维 k 面的全局下标)

    全局下标按 ranks 顺序展开；余维 0 的唯一面是多面体本身（空剖分）。
    """
    model_config = ConfigDict(frozen=True)

    kind: str = Field(..., description="面偏序来源")
    index: int = Field(..., ge=0, description="多面体下标")
    dim: int = Field(..., ge=0, description="维数")
    ranks: Tuple[Tuple[Face, ...], ...] = Field(..., description="按余维分层的面")
    covers: Tuple[Tuple[int, int], ...] = Field(default=(), description="覆盖关系")

    @model_validator(mode="after")
    def validate_grading(self) -> "FacePoset":
        """校验层数与唯一顶元"""
        if len(self.ranks) != self.dim + 1:
            raise ValueError(f"层数 {len(self.ranks)} 与维数 {self.dim} 不符")
        if len(self.ranks[0]) != 1:
            raise ValueError("余维 0 必须恰有一个面")
        return self

    @property
    def face_count(self) -> int:
        return sum(len(r) for r in self.ranks)

    def offsets(self) -> List[int]:
        """每层在全局下标中的起点"""
        result, total = [], 0
        for rank in self.ranks:
            result.append(total)
            total += len(rank)
        return result

    def codim_of(self, index: int) -> int:
        """全局下标所在的余维"""
        total = 0
        for k, rank in enumerate(self.ranks):
            total += len(rank)
            if index < total:
                return k
        raise IndexError(index)

    def faces(self) -> List[Face]:
        return [face for rank in self.ranks for face in rank]


class FVector(BaseModel):
    """f 向量: counts[i] 为 i 维面的个数（含多面体本身，不含空面）"""
    model_config = ConfigDict(frozen=True)

    counts: Tuple[int, ...] = Field(..., min_length=1)

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def euler_boundary(self) -> int:
        """Σ_{i<dim} (-1)^i f_i，凸多面体应为 1 - (-1)^dim"""
        return sum((-1) ** i * f for i, f in enumerate(self.counts[:-1]))

    def euler_full(self) -> int:
        """Σ_{i≤dim} (-1)^i f_i，应为 1"""
        return sum((-1) ** i * f for i, f in enumerate(self.counts))


class HVector(BaseModel):
    """h 向量: Σ_i f_i (t-1)^i 的系数"""
    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...] = Field(..., min_length=1)

    def is_palindromic(self) -> bool:
        return self.coefficients == tuple(reversed(self.coefficients))


class FaceFactor(BaseModel):
    """
    环面体的面分解 W_c × K_{n_1} × ... × K_{n_r}

    属性:
        central: 中心块给出的 W_c 下标（含直径时为 1）
        outer: 各对外侧块给出的 K 下标（升序多重集）
    """
    model_config = ConfigDict(frozen=True)

    central: int = Field(..., ge=1)
    outer: Tuple[int, ...] = Field(default=())

    def dimension(self) -> int:
        """乘积维数 (c-1) + Σ (n_j - 2)"""
        return (self.central - 1) + sum(k - 2 for k in self.outer)
