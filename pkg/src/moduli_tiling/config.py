"""
配置加载模块 - 验证套件预算的 YAML 配置，支持环境变量替换
"""

from pathlib import Path

import yaml
from pydantic import ValidationError

from moduli_tiling.errors import ModuliTilingError
from moduli_tiling.models.verify_config import VerifyConfig, expand_env_vars


class ConfigError(ModuliTilingError):
    """配置错误"""
    pass


def _parse(content: str) -> VerifyConfig:
    try:
        raw_config = yaml.safe_load(content)
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML 解析失败: {e}")

    if raw_config is None:
        raw_config = {}
    if not isinstance(raw_config, dict):
        raise ConfigError("配置文件必须是一个对象")

    try:
        expanded_config = expand_env_vars(raw_config)
        return VerifyConfig(**expanded_config)
    except (ValidationError, ValueError) as e:
        raise ConfigError(f"配置验证失败: {e}")


def load_config(path: str | Path) -> VerifyConfig:
    """
    加载验证配置文件

    支持环境变量替换，格式:
        - ${VAR_NAME}
        - ${VAR_NAME:-default_value}

    异常:
        ConfigError: 文件不存在、YAML 格式错误或验证失败

    示例:
        ```python
        config = load_config("verify.yaml")
        print(config.budget("complex"))
        ```
    """
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigError(f"配置文件不存在: {config_path}")
    try:
        content = config_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"读取配置文件失败: {e}")
    return _parse(content)


def load_config_from_string(content: str) -> VerifyConfig:
    """从 YAML 字符串加载配置（用于测试）"""
    return _parse(content)


def generate_config_template() -> str:
    return '''# moduli-tiling 验证配置

# 各套件的最大规模 n（命令行 --max-n 优先）
suites:
  polytope:
    max_n: 8
  tiling:
    max_n: 6
  complex:
    max_n: 6
  incidence:
    max_n: 5
  stratum:
    max_n: 4
  truncation:
    max_n: 6
  arrangement:
    max_n: 6
  nc:
    max_n: 7
  nc-sums:
    max_n: 8
  cover:
    max_n: 3
  property:
    max_n: 8
    enabled: true

samples: 1000                  # 随机性质检查的样本数
seed: ${MODULI_TILING_SEED:-20260207}
log_level: "WARNING"           # 日志级别 (DEBUG, INFO, WARNING, ERROR)
'''


def save_config_template(path: str | Path) -> None:
    Path(path).write_text(generate_config_template(), encoding="utf-8")
