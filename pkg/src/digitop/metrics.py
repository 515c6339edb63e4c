"""Metrics on digital images and exact comparison helpers.

Distances under l1 and the shortest-path metric are integers. Under l2 they are
square roots of integers, handled exactly by :class:`Surd`. For any integer p
the p-th power of an l_p distance is an integer, which is what :meth:`Metric.key`
returns; ratio-style verdicts compare keys and stay exact.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import mpmath

from .errors import DigitopError, IndeterminateComparison
from .image import DigitalImage, ImageError, is_connected

FLOAT_TOL = 1e-9


class MetricError(DigitopError):
    pass


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = k^2 * s with s squarefree; returns (k, s)."""
    k, s = 1, 1
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            k *= f
        if n % f == 0:
            n //= f
            s *= f
        f += 1
    return k, s * n


class Surd:
    """Exact rational combination of square roots of integers."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {s: c for s, c in (terms or {}).items() if c != 0}

    @classmethod
    def sqrt(cls, n: int) -> "Surd":
        if n < 0:
            raise ValueError("negative radicand")
        if n == 0:
            return cls()
        k, s = _squarefree_split(n)
        return cls({s: Fraction(k)})

    @staticmethod
    def _lift(other) -> "Surd":
        if isinstance(other, Surd):
            return other
        if isinstance(other, (int, Fraction)):
            return Surd({1: Fraction(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd({s: c * other for s, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(sum(float(c) * math.sqrt(s) for s, c in self.terms.items()))

    def sign(self) -> int:
        # Square roots of distinct squarefree integers are linearly independent
        # over Q, so the combination is zero exactly when every coefficient is.
        if not self.terms:
            return 0
        approx = float(self)
        if abs(approx) > 1e-6:
            return 1 if approx > 0 else -1
        with mpmath.workdps(80):
            v = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(s)
                            for s, c in self.terms.items())
        return 1 if v > 0 else -1

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for s, c in sorted(self.terms.items()):
            parts.append(str(c) if s == 1 else f"{c}*sqrt({s})")
        return " + ".join(parts)


def compare(a, b) -> int:
    """Sign of a - b; exact for int/Fraction/Surd, toleranced for floats."""
    if isinstance(a, float) or isinstance(b, float):
        diff = float(a) - float(b)
        if abs(diff) <= FLOAT_TOL:
            raise IndeterminateComparison(f"|{float(a)} - {float(b)}| <= {FLOAT_TOL}")
        return 1 if diff > 0 else -1
    if isinstance(a, Surd) or isinstance(b, Surd):
        return Surd._lift(a)._cmp(b)
    return (a > b) - (a < b)


def as_rational(x) -> Fraction:
    """Parse a user constant ('1/2', 0.75, 3) as an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def lp_distance(x: Sequence[int], y: Sequence[int], p) -> float:
    if len(x) != len(y):
        raise MetricError(f"dimension mismatch: {len(x)} vs {len(y)}")
    p = float(p)
    if p <= 0:
        raise MetricError("l_p needs p > 0")
    s = sum(abs(a - b) ** p for a, b in zip(x, y))
    return s ** (1.0 / p)


class Metric:
    """A metric bound to a finite image, addressed by point or point index."""

    image: DigitalImage
    name: str

    #: d = key ** (1 / exponent)
    exponent: int | float = 1

    @property
    def is_exact(self) -> bool:
        return True

    def key_idx(self, i: int, j: int):
        raise NotImplementedError

    def value_idx(self, i: int, j: int):
        """Exact distance (int or Surd) when available, otherwise float."""
        raise NotImplementedError

    def distance(self, x: Sequence[int], y: Sequence[int]):
        v = self.value_idx(self._idx(x), self._idx(y))
        return float(v) if isinstance(v, Surd) else v

    def __call__(self, x, y):
        return self.distance(x, y)

    def _idx(self, p) -> int:
        try:
            return self.image.index_of(p)
        except ImageError:
            raise MetricError(f"point {tuple(p)} is outside the metric's image") from None

    @cached_property
    def key_table(self) -> list[list]:
        n = len(self.image)
        return [[self.key_idx(i, j) for j in range(n)] for i in range(n)]

    @cached_property
    def value_table(self) -> list[list]:
        n = len(self.image)
        return [[self.value_idx(i, j) for j in range(n)] for i in range(n)]

    def float_idx(self, i: int, j: int) -> float:
        v = self.value_idx(i, j)
        return float(v)

    def spec(self) -> str:
        return self.name


class LpMetric(Metric):
    def __init__(self, image: DigitalImage, p=2):
        if isinstance(p, str):
            p = Fraction(p)
        if p <= 0:
            raise MetricError("l_p needs p > 0")
        self.image = image
        self.p = p
        self._int_p = int(p) if Fraction(p).denominator == 1 else None
        self.exponent = self._int_p if self._int_p is not None else float(p)
        self.name = f"lp:{p}"

    @property
    def is_exact(self) -> bool:
        return self._int_p in (1, 2)

    @property
    def keys_exact(self) -> bool:
        return self._int_p is not None

    def key_idx(self, i, j):
        x, y = self.image.points[i], self.image.points[j]
        if self._int_p is not None:
            return sum(abs(a - b) ** self._int_p for a, b in zip(x, y))
        return sum(abs(a - b) ** float(self.p) for a, b in zip(x, y))

    def value_idx(self, i, j):
        k = self.key_idx(i, j)
        if self._int_p == 1:
            return k
        if self._int_p == 2:
            return Surd.sqrt(k)
        return float(k) ** (1.0 / float(self.p))


class ShortestPathMetric(Metric):
    """Path-length metric of a connected image, tabulated by repeated BFS."""

    name = "spath"

    def __init__(self, image: DigitalImage):
        if not image.points or not is_connected(image):
            raise MetricError("the shortest-path metric is undefined on a disconnected image")
        self.image = image
        n = len(image)
        nt = image.neighbor_table
        table = []
        for root in range(n):
            dist = [-1] * n
            dist[root] = 0
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in nt[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            table.append(dist)
        self.table = table

    @property
    def keys_exact(self) -> bool:
        return True

    def key_idx(self, i, j):
        return self.table[i][j]

    value_idx = key_idx


def build_shortest_path_metric(X: DigitalImage) -> ShortestPathMetric:
    return ShortestPathMetric(X)


def parse_metric(spec: str, image: DigitalImage) -> Metric:
    """'lp:<p>' or 'spath'."""
    spec = spec.strip()
    if spec == "spath":
        return ShortestPathMetric(image)
    if spec.startswith("lp:"):
        try:
            p = Fraction(spec[3:])
        except (ValueError, ZeroDivisionError):
            raise MetricError(f"bad exponent in metric spec {spec!r}") from None
        return LpMetric(image, p)
    raise MetricError(f"unknown metric {spec!r}; expected lp:<p> or spath")


def diameter(X: DigitalImage, d: Metric):
    if not X.points:
        raise MetricError("diameter of the empty image is undefined")
    n = len(X)
    best_i, best_j = 0, 0
    for i in range(n):
        for j in range(i + 1, n):
            if compare_keys(d, d.key_idx(i, j), d.key_idx(best_i, best_j)) > 0:
                best_i, best_j = i, j
    return d.distance(X.points[best_i], X.points[best_j])


def min_positive_distance(X: DigitalImage, d: Metric):
    """Least distance between distinct points: the uniform-discreteness witness."""
    n = len(X)
    if n < 2:
        raise MetricError("need at least two points")
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            if best is None or compare_keys(d, d.key_idx(i, j), d.key_idx(*best)) < 0:
                best = (i, j)
    return d.distance(X.points[best[0]], X.points[best[1]])


def compare_keys(d: Metric, a, b) -> int:
    if isinstance(a, float) or isinstance(b, float):
        return compare(a, b)
    return (a > b) - (a < b)


class SequenceStatus(enum.Enum):
    EVENTUALLY_CONSTANT = "EVENTUALLY_CONSTANT"
    NOT_CONSTANT_WITHIN_PREFIX = "NOT_CONSTANT_WITHIN_PREFIX"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SequenceVerdict:
    status: SequenceStatus
    index: int | None = None


def analyze_sequence(prefix: Sequence[Sequence[int]], d: Metric) -> SequenceVerdict:
    """Report what a finite prefix shows about eventual constancy.

    EVENTUALLY_CONSTANT(m) needs a final constant run of at least two terms.
    A run of one term at the end means the prefix is still changing; a
    one-term prefix has no tail at all and is INCONCLUSIVE.
    """
    if not prefix:
        raise MetricError("empty prefix")
    idx = [d._idx(p) for p in prefix]
    m = len(idx) - 1
    while m > 0 and d.key_idx(idx[m - 1], idx[m]) == 0:
        m -= 1
    if m < len(idx) - 1:
        return SequenceVerdict(SequenceStatus.EVENTUALLY_CONSTANT, m)
    if len(idx) == 1:
        return SequenceVerdict(SequenceStatus.INCONCLUSIVE)
    return SequenceVerdict(SequenceStatus.NOT_CONSTANT_WITHIN_PREFIX)

