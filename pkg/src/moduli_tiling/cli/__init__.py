# moduli-tiling CLI 模块
