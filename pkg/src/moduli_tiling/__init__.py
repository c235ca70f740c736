"""
moduli-tiling

构造 M̄₀ⁿ(ℝ) 与 Z̄ⁿ 的多边形铺砌胞腔复形，枚举结合多面体/环面体面偏序、
嵌套管族与非交叉划分，并对已知的组合与拓扑结论做可重复的验证。
"""

from typing import Any

__version__ = "0.1.0"

# 延迟导入，避免 CLI 启动时加载全部枚举代码
__all__ = [
    "associahedron",
    "cyclohedron",
    "build_complex",
    "strata_census",
    "classify_surface",
    "tubing_poset",
    "nc_table",
    "VerificationRunner",
    "load_config",
]


def __getattr__(name: str) -> Any:
    """延迟加载公共接口"""
    if name in ("associahedron", "cyclohedron"):
        from moduli_tiling.core import poset
        return getattr(poset, name)
    elif name in ("build_complex", "strata_census"):
        from moduli_tiling.core import moduli
        return getattr(moduli, name)
    elif name == "classify_surface":
        from moduli_tiling.core.complex import classify_surface
        return classify_surface
    elif name == "tubing_poset":
        from moduli_tiling.core.nested import tubing_poset
        return tubing_poset
    elif name == "nc_table":
        from moduli_tiling.core.nc import nc_table
        return nc_table
    elif name == "VerificationRunner":
        from moduli_tiling.core.verify import VerificationRunner
        return VerificationRunner
    elif name == "load_config":
        from moduli_tiling.config import load_config
        return load_config
    raise AttributeError(f"module 'moduli_tiling' has no attribute '{name}'")
