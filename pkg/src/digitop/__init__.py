"""Fixed-point verification workbench for finite digital images."""

from .errors import DigitopError, HypothesisError, IndeterminateComparison
from .image import CU, DigitalImage, NormalProduct, boundary, interval, product, rectangle
from .maps import EnumerationConstraints, SelfMap, enumerate_maps, is_continuous
from .metrics import LpMetric, ShortestPathMetric, parse_metric

__version__ = "0.1.0"

__all__ = [
    "CU",
    "DigitalImage",
    "DigitopError",
    "EnumerationConstraints",
    "HypothesisError",
    "IndeterminateComparison",
    "LpMetric",
    "NormalProduct",
    "SelfMap",
    "ShortestPathMetric",
    "boundary",
    "enumerate_maps",
    "interval",
    "is_continuous",
    "parse_metric",
    "product",
    "rectangle",
]
