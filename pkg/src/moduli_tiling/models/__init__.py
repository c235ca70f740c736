# moduli-tiling 数据模型模块
