"""
配置模型 - 资源上限（环境变量）与验证套件预算（YAML）
"""

import os
import re
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

SUITE_NAMES = (
    "polytope",
    "tiling",
    "complex",
    "incidence",
    "stratum",
    "truncation",
    "arrangement",
    "nc",
    "nc-sums",
    "cover",
    "property",
)

DEFAULT_MAX_N: Dict[str, int] = {
    "polytope": 8,
    "tiling": 6,
    "complex": 6,
    "incidence": 5,
    "stratum": 4,
    "truncation": 6,
    "arrangement": 6,
    "nc": 7,
    "nc-sums": 8,
    "cover": 3,
    "property": 8,
}


class ResourceCaps(BaseSettings):
    """
    资源上限

    可通过环境变量覆盖，例如 MODULI_TILING_MAX_Z_N=6。

    属性:
        max_z_n: Z̄ⁿ 构造的最大 n
        max_m_n: M̄₀ⁿ 构造的最大 n
        max_cover_n: 覆叠复形的最大 n
        max_nc_a_n: A 型非交叉划分枚举的最大 n
        max_nc_b_n: B 型非交叉划分枚举的最大 n
        max_orbit_size: 单个扭转轨道的状态数上限
        max_iso_faces: 同构搜索的面数上限
    """
    model_config = SettingsConfigDict(env_prefix="MODULI_TILING_", extra="ignore")

    max_z_n: int = Field(default=5, ge=1)
    max_m_n: int = Field(default=6, ge=3)
    max_cover_n: int = Field(default=4, ge=1)
    max_nc_a_n: int = Field(default=8, ge=1)
    max_nc_b_n: int = Field(default=5, ge=1)
    max_orbit_size: int = Field(default=100_000, ge=1)
    max_iso_faces: int = Field(default=20_000, ge=1)


class SuiteBudget(BaseModel):
    """单个验证套件的预算"""
    max_n: int = Field(..., ge=1, description="套件内最大规模 n")
    enabled: bool = Field(default=True, description="是否运行")


def _default_suites() -> Dict[str, SuiteBudget]:
    return {name: SuiteBudget(max_n=DEFAULT_MAX_N[name]) for name in SUITE_NAMES}


class VerifyConfig(BaseModel):
    """
    验证配置根对象

    属性:
        suites: 各套件预算（缺省项使用默认预算）
        samples: 随机性质检查的样本数
        seed: 随机种子
        log_level: 日志级别
    """
    suites: Dict[str, SuiteBudget] = Field(default_factory=_default_suites)
    samples: int = Field(default=1000, ge=1, description="随机样本数")
    seed: int = Field(default=20260207, description="随机种子")
    log_level: str = Field(default="WARNING", description="日志级别")

    @field_validator("suites")
    @classmethod
    def validate_suites(cls, v: Dict[str, SuiteBudget]) -> Dict[str, SuiteBudget]:
        """校验套件名并补全缺省预算"""
        unknown = set(v) - set(SUITE_NAMES)
        if unknown:
            raise ValueError(f"未知的验证套件: {sorted(unknown)}")
        merged = _default_suites()
        merged.update(v)
        return merged

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """验证日志级别"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR"]
        if v.upper() not in valid_levels:
            raise ValueError(f"日志级别必须是以下之一: {valid_levels}")
        return v.upper()

    def budget(self, suite: str, override: Optional[int] = None) -> int:
        """套件预算，override 优先"""
        if override is not None:
            return override
        return self.suites[suite].max_n


def expand_env_vars(value: Any) -> Any:
    """
    递归展开值中的环境变量

    支持格式:
        - ${VAR_NAME}
        - ${VAR_NAME:-default_value}
    """
    if isinstance(value, str):
        pattern = r'\$\{([^}:-]+)(?::-([^}]*))?\}'

        def replacer(match: "re.Match[str]") -> str:
            var_name = match.group(1)
            default_val = match.group(2)
            env_value = os.getenv(var_name)
            if env_value is None:
                if default_val is not None:
                    return default_val
                raise ValueError(f"环境变量 {var_name} 未设置且无默认值")
            return env_value

        return re.sub(pattern, replacer, value)
    elif isinstance(value, dict):
        return {k: expand_env_vars(v) for k, v in value.items()}
    elif isinstance(value, list):
        return [expand_env_vars(item) for item in value]
    return value
