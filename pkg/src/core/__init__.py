# 数值核心：Hermite 基础设施、Fock 空间、STFT 桥接与径向分析
