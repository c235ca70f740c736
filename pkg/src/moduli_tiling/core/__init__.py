# moduli-tiling 核心算法模块
