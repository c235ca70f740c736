"""
非交叉划分 - A/B 型枚举与 h 向量恒等式

A 型按限制增长串枚举 {1..n} 的全部集合划分；B 型枚举 {1..n, 1̄..n̄} 的全部集合划分，
保留在横线对合下不变且至多一个自对合块的那些（每个 B 型划分恰好出现一次）。
"""

from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from moduli_tiling.core.poset import associahedron, cyclohedron, f_vector, h_vector
from moduli_tiling.errors import InvalidInputError, ResourceLimitError
from moduli_tiling.models.partition import Block, NcTable, PartitionA, SignedPartition
from moduli_tiling.models.verify_config import ResourceCaps
from moduli_tiling.utils.logging import get_logger

logger = get_logger(__name__)


def _restricted_growth(size: int) -> Iterator[List[int]]:
    """限制增长串: a[0] = 0，a[i] ≤ max(a[:i]) + 1"""
    word = [0] * size

    def extend(i: int, top: int) -> Iterator[List[int]]:
        if i == size:
            yield word
            return
        for value in range(top + 2):
            word[i] = value
            yield from extend(i + 1, max(top, value))

    if size == 0:
        yield []
        return
    yield from extend(1, 0)


def _blocks_of(word: Sequence[int], elements: Sequence[int]) -> Tuple[Block, ...]:
    blocks: List[List[int]] = [[] for _ in range(max(word) + 1)]
    for value, element in zip(word, elements):
        blocks[value].append(element)
    return tuple(tuple(b) for b in blocks)


def _interleave(xs: Sequence[int], ys: Sequence[int]) -> bool:
    """两组位置在线性序上是否交错 (x < y < x' < y' 或反之)"""
    merged = sorted([(p, 0) for p in xs] + [(p, 1) for p in ys])
    runs = 1
    for (_, a), (_, b) in zip(merged, merged[1:]):
        if a != b:
            runs += 1
    return runs >= 4


def _blocks_cross(position_blocks: Sequence[Sequence[int]]) -> bool:
    for i, xs in enumerate(position_blocks):
        for ys in position_blocks[i + 1:]:
            if _interleave(xs, ys):
                return True
    return False


# ============================================================================
# A 型
# ============================================================================

def is_non_crossing_a(p: PartitionA) -> bool:
    """
    不存在 x_1 < y_1 < x_2 < y_2 使 x 在一块、y 在另一块

    示例:
        {1,3}{2,4} → False；{1,2}{3,4} → True
    """
    return not _blocks_cross(p.blocks)


def _check_a(n: int, caps: Optional[ResourceCaps]) -> None:
    caps = caps or ResourceCaps()
    if n < 1:
        raise InvalidInputError(f"n 必须 ≥ 1: {n}")
    if n > caps.max_nc_a_n:
        raise ResourceLimitError("max_nc_a_n", caps.max_nc_a_n, n)


@lru_cache(maxsize=16)
def _partitions_a(n: int) -> Tuple[Tuple[Block, ...], ...]:
    elements = list(range(1, n + 1))
    return tuple(_blocks_of(word, elements) for word in _restricted_growth(n))


def enum_partitions_a(n: int, caps: Optional[ResourceCaps] = None) -> List[PartitionA]:
    """{1..n} 的全部集合划分（限制增长串顺序）"""
    _check_a(n, caps)
    return [PartitionA(n=n, blocks=blocks) for blocks in _partitions_a(n)]


@lru_cache(maxsize=16)
def _nc_a_counts(n: int) -> Tuple[int, ...]:
    counts = [0] * (n + 1)
    for blocks in _partitions_a(n):
        if not _blocks_cross(blocks):
            counts[len(blocks)] += 1
    return tuple(counts)


def count_nc_a(n: int, k: int, caps: Optional[ResourceCaps] = None) -> int:
    """
    NC(n, k): {1..n} 的 k 块非交叉划分个数（穷举后过滤）

    示例:
        >>> count_nc_a(3, 2)
        3
    """
    _check_a(n, caps)
    if not 1 <= k <= n:
        raise InvalidInputError(f"k 必须在 1..{n} 内: {k}")
    return _nc_a_counts(n)[k]


# ============================================================================
# B 型
# ============================================================================

def signed_position(x: int, n: int) -> int:
    """循环序 1, 2, …, n, 1̄, 2̄, …, n̄ 中的位置"""
    return x - 1 if x > 0 else n - x - 1


def signed_blocks_cross(n: int, blocks: Sequence[Sequence[int]]) -> bool:
    """任意一组 ±1..±n 上的块在 B 型循环序下是否有交叉"""
    return _blocks_cross([[signed_position(x, n) for x in b] for b in blocks])


def is_non_crossing_b(p: SignedPartition) -> bool:
    """
    在圆周 1, 2, …, n, 1̄, …, n̄ 上各块的凸包两两不交

    示例:
        n=2, {1,2̄}{1̄,2} → True
    """
    return not signed_blocks_cross(p.n, p.all_blocks())


def _check_b(n: int, caps: Optional[ResourceCaps]) -> None:
    caps = caps or ResourceCaps()
    if n < 1:
        raise InvalidInputError(f"n 必须 ≥ 1: {n}")
    if n > caps.max_nc_b_n:
        raise ResourceLimitError("max_nc_b_n", caps.max_nc_b_n, n)


def _as_signed(blocks: Tuple[Block, ...], n: int) -> Optional[Tuple[Block, Tuple[Block, ...]]]:
    """对合不变且至多一个自对合块时返回 (零块, 成对块代表)，否则 None"""
    block_set = {frozenset(b) for b in blocks}
    zero: Block = ()
    pairs: List[Block] = []
    for block in blocks:
        bar = frozenset(-x for x in block)
        if bar not in block_set:
            return None
        if bar == frozenset(block):
            if zero:
                return None
            zero = tuple(sorted(block))
        elif min(abs(x) for x in block) in block:
            pairs.append(tuple(sorted(block)))
    return zero, tuple(pairs)


@lru_cache(maxsize=8)
def _signed_partitions(n: int) -> Tuple[Tuple[Block, Tuple[Block, ...]], ...]:
    elements = list(range(1, n + 1)) + [-x for x in range(1, n + 1)]
    found = []
    for word in _restricted_growth(2 * n):
        signed = _as_signed(_blocks_of(word, elements), n)
        if signed is not None:
            found.append(signed)
    logger.debug("signed_partitions_enumerated", n=n, count=len(found))
    return tuple(found)


def enum_signed_partitions(n: int, caps: Optional[ResourceCaps] = None) -> List[SignedPartition]:
    """{±1..±n} 的全部 B 型划分"""
    _check_b(n, caps)
    return [
        SignedPartition(n=n, zero_block=zero, paired_blocks=pairs)
        for zero, pairs in _signed_partitions(n)
    ]


@lru_cache(maxsize=8)
def _nc_b_counts(n: int) -> Tuple[int, ...]:
    counts = [0] * (n + 1)
    for zero, pairs in _signed_partitions(n):
        blocks = ([zero] if zero else []) + list(pairs) + [tuple(-x for x in b) for b in pairs]
        if not signed_blocks_cross(n, blocks):
            counts[len(pairs)] += 1
    return tuple(counts)


def count_nc_b(n: int, k: int, caps: Optional[ResourceCaps] = None) -> int:
    """
    NC_B(n, k): 恰有 k 对非零块的非交叉 B 型划分个数

    示例:
        >>> [count_nc_b(2, k) for k in range(3)]
        [1, 4, 1]
    """
    _check_b(n, caps)
    if not 0 <= k <= n:
        raise InvalidInputError(f"k 必须在 0..{n} 内: {k}")
    return _nc_b_counts(n)[k]


# ============================================================================
# h 向量恒等式
# ============================================================================

def verify_identity_a(n: int, caps: Optional[ResourceCaps] = None) -> bool:
    """NC(n, n-k) = h_k(K_{n+1})，0 ≤ k ≤ n-1"""
    h = h_vector(f_vector(associahedron(n + 1))).coefficients
    counts = tuple(count_nc_a(n, n - k, caps) for k in range(n))
    logger.debug("identity_a", n=n, nc=counts, h=h)
    return counts == h


def verify_identity_b(n: int, caps: Optional[ResourceCaps] = None) -> bool:
    """NC_B(n, n-k) = h_k(W_{n+1})，0 ≤ k ≤ n"""
    h = h_vector(f_vector(cyclohedron(n + 1))).coefficients
    counts = tuple(count_nc_b(n, n - k, caps) for k in range(n + 1))
    logger.debug("identity_b", n=n, nc=counts, h=h)
    return counts == h


def nc_table(n: int, caps: Optional[ResourceCaps] = None) -> NcTable:
    """两种类型的计数与对应 h 向量；B 型超出上限时省略"""
    caps = caps or ResourceCaps()
    type_a = tuple(count_nc_a(n, k, caps) for k in range(1, n + 1))
    h_a = h_vector(f_vector(associahedron(n + 1))).coefficients
    if n > caps.max_nc_b_n:
        return NcTable(n=n, type_a=type_a, h_associahedron=h_a)
    return NcTable(
        n=n,
        type_a=type_a,
        type_b=tuple(count_nc_b(n, k, caps) for k in range(n + 1)),
        h_associahedron=h_a,
        h_cyclohedron=h_vector(f_vector(cyclohedron(n + 1))).coefficients,
    )
