"""
组合数学参照值 - 与枚举结果独立的递推/闭式，用于交叉检查
"""

from functools import lru_cache
from math import comb, factorial


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """卡特兰数，按递推 C_{n+1} = Σ C_i C_{n-i} 计算"""
    if n <= 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def central_binomial(n: int) -> int:
    """C(2n, n)"""
    return comb(2 * n, n)


def narayana(n: int, k: int) -> int:
    """N(n, k) = C(n, k) C(n, k-1) / n"""
    if not 1 <= k <= n:
        return 0
    return comb(n, k) * comb(n, k - 1) // n


def type_b_narayana(n: int, k: int) -> int:
    """C(n, k)²"""
    return comb(n, k) ** 2


def associahedron_vertices(n: int) -> int:
    """K_n 的顶点数 = (n+1) 边形的三角剖分数 = C_{n-1}"""
    return catalan(n - 1)


def cyclohedron_vertices(n: int) -> int:
    """W_n 的顶点数 = C(2n-2, n-1)"""
    return central_binomial(n - 1)


def m_tile_count(n: int) -> int:
    """M̄₀ⁿ(ℝ) 的瓦片数 (n-1)!/2"""
    return factorial(n - 1) // 2


def z_tile_count(n: int) -> int:
    """Z̄ⁿ 的瓦片数 (n-1)!"""
    return factorial(n - 1)
