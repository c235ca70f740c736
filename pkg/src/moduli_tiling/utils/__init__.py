# moduli-tiling 工具模块
