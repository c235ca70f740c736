"""
多边形模型 - 弦、带标号多边形、对称弦类、剖分与对称群
"""

from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ChordKey = Tuple[int, int]


class PolygonMode(str, Enum):
    """多边形模式"""
    PLAIN = "plain"            # 普通 m 边形，标号互不相同
    SYMMETRIC = "symmetric"    # 中心对称 2n 边形，对边同标号
    SIGNED = "signed"          # 中心对称 2n 边形，对边标号为 i 与 ī（编码为 -i）


class GroupKind(str, Enum):
    """对称群类型"""
    ROTATIONS = "rotations"    # 仅旋转（Z 空间）
    DIHEDRAL = "dihedral"      # 旋转 + 反射（M 空间）


class Chord(BaseModel):
    """
    对角线（弦）

    顶点按逆时针编号 0..m-1，要求 i < j。
    是否为 m 边形的真对角线（j - i ≥ 2 且不是边 (0, m-1)）需要结合 m 校验，
    见 `Chord.is_diagonal_of`。
    """
    model_config = ConfigDict(frozen=True)

    i: int = Field(..., ge=0, description="较小端点")
    j: int = Field(..., ge=0, description="较大端点")

    @model_validator(mode="after")
    def validate_order(self) -> "Chord":
        """端点必须严格递增"""
        if self.i >= self.j:
            raise ValueError(f"弦端点必须满足 i < j: ({self.i}, {self.j})")
        return self

    @classmethod
    def of(cls, a: int, b: int) -> "Chord":
        """按任意顺序的端点构造"""
        return cls(i=min(a, b), j=max(a, b))

    @property
    def key(self) -> ChordKey:
        return (self.i, self.j)

    def is_diagonal_of(self, m: int) -> bool:
        """是否为 m 边形的真对角线"""
        return (
            self.j < m
            and self.j - self.i >= 2
            and not (self.i == 0 and self.j == m - 1)
        )


class ChordClass(BaseModel):
    """
    弦类

    对称模式下为一条直径（单元素）或一对中心对称的弦；普通模式下总是单元素。
    """
    model_config = ConfigDict(frozen=True)

    members: Tuple[Chord, ...] = Field(..., min_length=1, max_length=2)

    @field_validator("members")
    @classmethod
    def sort_members(cls, v: Tuple[Chord, ...]) -> Tuple[Chord, ...]:
        if len(set(v)) != len(v):
            raise ValueError("弦类成员不能重复")
        return tuple(sorted(v, key=lambda c: c.key))

    @property
    def key(self) -> Tuple[ChordKey, ...]:
        return tuple(c.key for c in self.members)

    @classmethod
    def from_key(cls, key: Tuple[ChordKey, ...]) -> "ChordClass":
        return cls(members=tuple(Chord.of(a, b) for a, b in key))


class Dissection(BaseModel):
    """
    剖分 - 两两不相交的弦类集合

    端点相同的弦视为兼容。codim 等于弦类数目。
    """
    model_config = ConfigDict(frozen=True)

    classes: Tuple[ChordClass, ...] = Field(default=(), description="弦类集合")

    @field_validator("classes")
    @classmethod
    def sort_classes(cls, v: Tuple[ChordClass, ...]) -> Tuple[ChordClass, ...]:
        if len(set(v)) != len(v):
            raise ValueError("弦类不能重复")
        return tuple(sorted(v, key=lambda c: c.key))

    @model_validator(mode="after")
    def validate_non_crossing(self) -> "Dissection":
        """所有弦两两不交叉且不重复"""
        chords = self.chord_keys
        if len(set(chords)) != len(chords):
            raise ValueError("同一条弦出现在多个弦类中")
        for x in range(len(chords)):
            for y in range(x + 1, len(chords)):
                (i, j), (k, l) = chords[x], chords[y]
                if i < k < j < l or k < i < l < j:
                    raise ValueError(f"弦 {chords[x]} 与 {chords[y]} 交叉")
        return self

    @property
    def codim(self) -> int:
        return len(self.classes)

    @property
    def chord_keys(self) -> Tuple[ChordKey, ...]:
        return tuple(sorted(c.key for cc in self.classes for c in cc.members))

    @property
    def encoding(self) -> Tuple[int, ...]:
        """规范整数序列：排序后的弦端点展开"""
        return tuple(v for chord in self.chord_keys for v in chord)

    @classmethod
    def from_class_keys(cls, keys: Tuple[Tuple[ChordKey, ...], ...]) -> "Dissection":
        return cls(classes=tuple(ChordClass.from_key(k) for k in keys))

    def contains(self, chord_class: ChordClass) -> bool:
        return chord_class in self.classes


class LabeledPolygon(BaseModel):
    """
    带边标号的多边形

    边 e_i 连接顶点 i 与 i+1 (mod m)。

    属性:
        labels: m 个边标号
        mode: plain / symmetric / signed
    """
    model_config = ConfigDict(frozen=True)

    labels: Tuple[int, ...] = Field(..., min_length=2, description="边标号序列")
    mode: PolygonMode = Field(default=PolygonMode.PLAIN, description="多边形模式")

    @model_validator(mode="after")
    def validate_labels(self) -> "LabeledPolygon":
        """按模式校验标号"""
        m = len(self.labels)
        if self.mode == PolygonMode.PLAIN:
            if m < 3:
                raise ValueError("普通多边形至少需要 3 条边")
            if len(set(self.labels)) != m:
                raise ValueError("普通模式下标号必须互不相同")
            return self

        if m % 2 != 0:
            raise ValueError("对称模式要求边数为偶数")
        n = m // 2
        if self.mode == PolygonMode.SYMMETRIC:
            for i in range(n):
                if self.labels[i] != self.labels[i + n]:
                    raise ValueError(f"对边 {i} 与 {i + n} 标号不同")
            if len(set(self.labels)) != n:
                raise ValueError("对称模式要求恰好 n 个不同标号，各用两次")
        else:
            if 0 in self.labels:
                raise ValueError("带符号模式的标号不能为 0")
            for i in range(n):
                if self.labels[i + n] != -self.labels[i]:
                    raise ValueError(f"对边 {i} 与 {i + n} 标号不是 i 与 ī")
            if len({abs(x) for x in self.labels}) != n:
                raise ValueError("带符号模式要求 n 个标号各出现一次（及其带横线形式）")
        return self

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def half(self) -> int:
        return len(self.labels) // 2

    @property
    def symmetric(self) -> bool:
        return self.mode != PolygonMode.PLAIN


class SymmetryGroup(BaseModel):
    """
    作用在顶点编号上的对称群

    旋转: i ↦ i + r (mod m)；二面体群另含反射 i ↦ -i + r (mod m)。
    """
    model_config = ConfigDict(frozen=True)

    kind: GroupKind = Field(..., description="群类型")
    order: int = Field(..., ge=2, description="阶参数 m")
