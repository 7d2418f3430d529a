# Fock Radial 包
# 提供 Bargmann 变换、Fock 空间求值与径向对称性检测

from src.core.fock_space import FockSeries, SampledFunction, bargmann_of_expansion, bargmann_of_samples
from src.core.hermite_core import HermiteExpansion, gauss_hermite
from src.core.radial_analysis import RadialProfile, extract_profile, radial_test, reduce_dimension

__all__ = [
    'FockSeries',
    'SampledFunction',
    'bargmann_of_expansion',
    'bargmann_of_samples',
    'HermiteExpansion',
    'gauss_hermite',
    'RadialProfile',
    'extract_profile',
    'radial_test',
    'reduce_dimension',
]
