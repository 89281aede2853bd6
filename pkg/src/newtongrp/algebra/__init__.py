from .scalars import QQ, PrimeField, RationalField, ScalarElem, ScalarRing, TestRing, parse_ring
from .mpoly import MPoly, exact_divide
from .parser import parse_poly
from .matrix import SquareMatrix, det_and_adjugate

__all__ = [
    "QQ",
    "PrimeField",
    "RationalField",
    "ScalarElem",
    "ScalarRing",
    "TestRing",
    "parse_ring",
    "MPoly",
    "exact_divide",
    "parse_poly",
    "SquareMatrix",
    "det_and_adjugate",
]
