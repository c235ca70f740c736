# 集成测试
