"""Special Affine Fourier Transform (SAFT) toolkit.

Quadrature-based forward and inverse transforms, the associated
convolution structures, Zak transform and Poisson summation, sampling of
SAFT-bandlimited signals and shift-invariant reconstruction.
"""

from .errors import NumericError, SaftError, ValidationError
from .params import SaftParams, parse_preset, parse_saft, preset, validate
from .signal import SampleSeq, Signal, Spectrum, UniformGrid
from .transform import forward, inverse

__all__ = [
    "SaftError", "ValidationError", "NumericError",
    "SaftParams", "validate", "preset", "parse_saft", "parse_preset",
    "UniformGrid", "Signal", "Spectrum", "SampleSeq",
    "forward", "inverse",
]
__version__ = "0.1.0"
