"""
异常定义 - 输入校验错误与资源上限错误
"""


class ModuliTilingError(Exception):
    """moduli-tiling 所有异常的基类"""
    pass


class InvalidInputError(ModuliTilingError, ValueError):
    """输入不合法（无效弦、尺寸不匹配、弦不在剖分中等）"""
    pass


class ResourceLimitError(ModuliTilingError, RuntimeError):
    """
    超出资源上限

    属性:
        cap: 触发的上限名称（对应 ResourceCaps 字段 / 环境变量）
        limit: 上限值
        requested: 请求的规模
    """

    def __init__(self, cap: str, limit: int, requested: int):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(
            f"超出资源上限 {cap}={limit}（请求 {requested}），"
            f"可通过环境变量 MODULI_TILING_{cap.upper()} 调整"
        )


class SurfaceClassificationError(InvalidInputError):
    """曲面分类前提条件不满足"""

    def __init__(self, precondition: str, detail: str = ""):
        self.precondition = precondition
        message = f"曲面分类前提不满足: {precondition}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class GluingError(ModuliTilingError, RuntimeError):
    """扭转粘合不自洽（内部错误，有效输入下不应出现）"""

    def __init__(self, cell: int, detail: str):
        self.cell = cell
        super().__init__(f"胞腔 {cell} 的粘合不自洽: {detail}")


class ExportSchemaError(ModuliTilingError, RuntimeError):
    """导出数据不符合 JSON schema（内部错误）"""

    def __init__(self, schema: str, detail: str):
        self.schema = schema
        super().__init__(f"导出数据不符合 {schema} schema: {detail}")
