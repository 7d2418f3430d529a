# src/config/env.py
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

# 加载项目根目录的.env文件
load_dotenv(dotenv_path=os.path.join(os.path.dirname(__file__), '..', '..', '.env'))

#  日志配置
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# 数值配置
# 单个展开允许的最大次数，双精度下多圆盘求值在此范围内条件良好
MAX_DEGREE = int(os.getenv("FOCK_RADIAL_MAX_DEGREE", "64"))
# 0 表示使用 os.cpu_count()
THREADS = int(os.getenv("FOCK_RADIAL_THREADS", "0"))


class Settings(BaseSettings):
    """命令行工具配置类

    使用Pydantic的BaseSettings来管理配置，支持从环境变量加载配置（前缀 FOCK_RADIAL_）
    """
    model_config = SettingsConfigDict(env_prefix="FOCK_RADIAL_", extra="ignore")

    # 应用信息
    app_name: str = "Fock Radial"
    app_description: str = "Bargmann变换与径向对称性检测的数值工具"
    app_version: str = "0.1.0"

    # 并行配置
    threads: int = THREADS

    # 数值配置
    max_degree: int = MAX_DEGREE
    default_tol: float = 1e-9
    default_seed: int = 0
    csv_digits: int = 17
    # verify 命令的时间预算（秒）
    verify_time_budget: float = 120.0

    # 日志配置
    log_level: str = LOG_LEVEL

    @property
    def worker_count(self) -> int:
        """实际使用的线程数"""
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1


@lru_cache()
def get_settings() -> Settings:
    """获取应用配置，使用lru_cache缓存结果

    Returns:
        Settings: 配置实例
    """
    return Settings()
