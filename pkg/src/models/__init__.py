# JSON文档模型模块

from src.models.common import *
from src.models.documents import *
from src.models.run_config import *
