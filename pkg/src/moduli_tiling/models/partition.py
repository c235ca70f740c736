"""
划分模型 - A 型集合划分与 B 型（带横线对合）划分

横线元素 ī 编码为 -i。
"""

from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Block = Tuple[int, ...]


class PartitionA(BaseModel):
    """
    {1..n} 的集合划分

    属性:
        n: 基集大小
        blocks: 互不相交、非空、覆盖 {1..n} 的块
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    blocks: Tuple[Block, ...]

    @field_validator("blocks")
    @classmethod
    def sort_blocks(cls, v: Tuple[Block, ...]) -> Tuple[Block, ...]:
        if any(len(b) == 0 for b in v):
            raise ValueError("块不能为空")
        return tuple(sorted(tuple(sorted(b)) for b in v))

    @model_validator(mode="after")
    def validate_cover(self) -> "PartitionA":
        elements = sorted(x for b in self.blocks for x in b)
        if elements != list(range(1, self.n + 1)):
            raise ValueError(f"块必须恰好覆盖 1..{self.n}: {self.blocks}")
        return self

    @property
    def k(self) -> int:
        return len(self.blocks)


class SignedPartition(BaseModel):
    """
    {1..n, 1̄..n̄} 的 B 型划分

    属性:
        n: 基集大小
        zero_block: 零块（可为空），在横线对合下封闭
        paired_blocks: 成对块的代表 B_1..B_k，其横线像 B̄_i 也是块

    只有零块可以等于自身的横线像。
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    zero_block: Block = ()
    paired_blocks: Tuple[Block, ...] = ()

    @field_validator("zero_block")
    @classmethod
    def sort_zero(cls, v: Block) -> Block:
        if set(v) != {-x for x in v}:
            raise ValueError(f"零块必须在横线对合下封闭: {v}")
        return tuple(sorted(v))

    @field_validator("paired_blocks")
    @classmethod
    def normalize_pairs(cls, v: Tuple[Block, ...]) -> Tuple[Block, ...]:
        reps = []
        for block in v:
            if not block:
                raise ValueError("块不能为空")
            if set(block) & {-x for x in block}:
                raise ValueError(f"非零块不能与自身的横线像相交: {block}")
            # 代表取含 +m 的一侧，m 为块中最小的绝对值
            m = min(abs(x) for x in block)
            reps.append(tuple(sorted(block if m in block else (-x for x in block))))
        return tuple(sorted(reps, key=lambda b: (min(abs(x) for x in b), b)))

    @model_validator(mode="after")
    def validate_cover(self) -> "SignedPartition":
        elements = sorted(x for b in self.all_blocks() for x in b)
        expected = list(range(-self.n, 0)) + list(range(1, self.n + 1))
        if elements != expected:
            raise ValueError(f"块必须恰好覆盖 ±1..±{self.n}")
        return self

    @property
    def k(self) -> int:
        return len(self.paired_blocks)

    def all_blocks(self) -> List[Block]:
        """全部块（零块非空时在首位），每对块两侧都列出"""
        blocks: List[Block] = [self.zero_block] if self.zero_block else []
        for block in self.paired_blocks:
            blocks.append(block)
            blocks.append(tuple(sorted(-x for x in block)))
        return blocks


class NcTable(BaseModel):
    """
    非交叉划分计数表

    属性:
        n: 基集大小
        type_a: NC(n, k)，k = 1..n
        type_b: NC_B(n, k)，k = 0..n（n 超出 B 型上限时为空）
        h_associahedron: h(K_{n+1})
        h_cyclohedron: h(W_{n+1})（同上）
    """
    model_config = ConfigDict(frozen=True)

    n: int
    type_a: Tuple[int, ...]
    type_b: Tuple[int, ...] = ()
    h_associahedron: Tuple[int, ...]
    h_cyclohedron: Tuple[int, ...] = ()
