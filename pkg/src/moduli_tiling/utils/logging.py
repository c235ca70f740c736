"""
日志配置模块 - 使用 structlog 输出结构化诊断日志

标准输出只用于数据（JSON / DOT / 计数），全部日志写到标准错误。
"""

import logging
import sys
from typing import Any

import structlog
from structlog.types import EventDict, WrappedLogger


def _format_exception(
    logger: WrappedLogger,
    method_name: str,
    event_dict: EventDict,
) -> EventDict:
    """把异常压缩为一行 "类型: 信息"，避免大段堆栈混入诊断输出"""
    exc_info = event_dict.pop("exc_info", None)
    if isinstance(exc_info, BaseException):
        event_dict["exception"] = f"{type(exc_info).__name__}: {exc_info}"
    elif exc_info:
        event_dict["exception"] = repr(sys.exc_info()[1])
    return event_dict


def configure_logging(
    log_level: str = "WARNING",
    json_format: bool = False,
) -> None:
    """
    配置结构化日志

    参数:
        log_level: 日志级别 (DEBUG, INFO, WARNING, ERROR)
        json_format: 是否输出 JSON 行（便于机器收集验证过程）
    """
    level = getattr(logging, log_level.upper())
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)

    processors: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        _format_exception,
    ]
    if json_format:
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False, sort_keys=False))

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def get_logger(name: str | None = None) -> Any:
    """
    获取结构化日志记录器

    示例:
        >>> from moduli_tiling.utils.logging import get_logger
        >>> logger = get_logger(__name__)
        >>> logger.info("complex_build_start", space="z", n=3)
    """
    return structlog.get_logger(name)


def bind_context(**kwargs: Any) -> None:
    """
    绑定全局上下文字段

    示例:
        >>> bind_context(suite="complex")
        >>> logger.info("entry_done")  # 自动带 suite=complex
    """
    structlog.contextvars.bind_contextvars(**kwargs)


def clear_context() -> None:
    structlog.contextvars.clear_contextvars()
