"""
mfkit - exact matrix factorizations of the Fermat cubic in four variables.

Builds, verifies and classifies the rank-one MCM modules over
K[Y1..Y4]/(Y1^3+Y2^3+Y3^3+Y4^3) through their matrix factorizations, with
exact arithmetic over Q(e), e a primitive cube root of unity.
"""

__version__ = "0.1.0"
__license__ = "MIT"

from .catalog import (
    AlphaParams,
    EtaParams,
    RawCaseParams,
    ThetaParams,
    TwoGenParams,
    complete_factorization,
    enumerate_all,
    enumerate_M3,
    enumerate_N3,
    enumerate_two_gen,
)
from .config import Config, load_config, validate_config
from .cyclofield import CycNum
from .equiv import classify, decide_equiv, verify_witness
from .groebner import Ideal, buchberger
from .logger import get_logger, setup_logger
from .matpoly import MatrixFactorization, PolyMat
from .multipoly import Poly, VarTable, parse_poly

__all__ = [
    "__version__",
    "AlphaParams",
    "EtaParams",
    "RawCaseParams",
    "ThetaParams",
    "TwoGenParams",
    "complete_factorization",
    "enumerate_all",
    "enumerate_M3",
    "enumerate_N3",
    "enumerate_two_gen",
    "Config",
    "load_config",
    "validate_config",
    "CycNum",
    "classify",
    "decide_equiv",
    "verify_witness",
    "Ideal",
    "buchberger",
    "get_logger",
    "setup_logger",
    "MatrixFactorization",
    "PolyMat",
    "Poly",
    "VarTable",
    "parse_poly",
]
