# moduli-tiling 测试包
