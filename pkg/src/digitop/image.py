"""Digital images: finite subsets of Z^n carrying an adjacency relation.

Points are integer tuples. Images keep their points sorted lexicographically
and expose an index-based neighbor table so the search engines can work on
small integers instead of tuples.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DigitopError

Point = tuple[int, ...]

MAX_DIMENSION = 8
MAX_POINTS = 10**6


class ImageError(DigitopError):
    """Invalid image construction or query."""


def as_point(coords: Iterable[int]) -> Point:
    pt = tuple(coords)
    for c in pt:
        if isinstance(c, bool) or not isinstance(c, int):
            raise ImageError(f"coordinate {c!r} is not an integer")
    if not pt:
        raise ImageError("points need at least one coordinate")
    return pt


def cu_adjacent(x: Point, y: Point, u: int) -> bool:
    """c_u adjacency: distinct, differ by exactly 1 in at most u coordinates, equal elsewhere."""
    if len(x) != len(y):
        raise ImageError(f"dimension mismatch: {len(x)} vs {len(y)}")
    if not 1 <= u <= len(x):
        raise ImageError(f"c_{u} is undefined in dimension {len(x)}")
    ones = 0
    for a, b in zip(x, y):
        diff = abs(a - b)
        if diff == 1:
            ones += 1
        elif diff != 0:
            return False
    return 0 < ones <= u


@dataclass(frozen=True)
class CU:
    u: int

    def adjacent(self, x: Point, y: Point) -> bool:
        return cu_adjacent(x, y, self.u)

    def offsets(self, dim: int) -> list[Point]:
        out = []
        for off in itertools.product((-1, 0, 1), repeat=dim):
            nz = sum(1 for c in off if c)
            if 0 < nz <= self.u:
                out.append(off)
        return out

    def validate(self, dim: int) -> None:
        if not 1 <= self.u <= dim:
            raise ImageError(f"c_{self.u} is undefined in dimension {dim}")

    def __str__(self) -> str:
        return f"c{self.u}"


@dataclass(frozen=True)
class NormalProduct:
    """Normal-product adjacency NP_v over coordinate blocks.

    Distinct points are adjacent when every block is equal or adjacent under
    that block's factor adjacency.
    """

    factors: tuple  # tuple of CU | NormalProduct
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.factors) != len(self.dims):
            raise ImageError("normal product arity does not match its factor dimensions")

    def _blocks(self, x: Point):
        start = 0
        for d in self.dims:
            yield x[start:start + d]
            start += d

    def adjacent(self, x: Point, y: Point) -> bool:
        if len(x) != len(y) or len(x) != sum(self.dims):
            raise ImageError("dimension mismatch for normal product adjacency")
        if x == y:
            return False
        for adj, bx, by in zip(self.factors, self._blocks(x), self._blocks(y)):
            if bx != by and not adj.adjacent(bx, by):
                return False
        return True

    def offsets(self, dim: int) -> list[Point]:
        per_factor = [[(0,) * d] + adj.offsets(d) for adj, d in zip(self.factors, self.dims)]
        out = []
        for combo in itertools.product(*per_factor):
            off = tuple(itertools.chain.from_iterable(combo))
            if any(off):
                out.append(off)
        return out

    def validate(self, dim: int) -> None:
        if sum(self.dims) != dim:
            raise ImageError("normal product factor dimensions do not sum to the image dimension")
        for adj, d in zip(self.factors, self.dims):
            adj.validate(d)

    def __str__(self) -> str:
        return "np(" + ",".join(str(f) for f in self.factors) + ")"


Adjacency = CU | NormalProduct


@dataclass(frozen=True, eq=False)
class DigitalImage:
    """A finite digital image (X, kappa).

    ``points`` is stored sorted and duplicate-free. ``factors`` is set only for
    images built by :func:`product`.
    """

    points: tuple[Point, ...]
    adjacency: Adjacency
    dimension: int
    factors: tuple["DigitalImage", ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.dimension <= MAX_DIMENSION:
            raise ImageError(f"dimension must be in [1, {MAX_DIMENSION}]")
        if len(self.points) > MAX_POINTS:
            raise ImageError(f"images are capped at {MAX_POINTS} points")
        self.adjacency.validate(self.dimension)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], adjacency: Adjacency | int = 1,
                    dimension: int | None = None) -> "DigitalImage":
        pts = [as_point(p) for p in points]
        if dimension is None:
            if not pts:
                raise ImageError("cannot infer the dimension of an empty image")
            dimension = len(pts[0])
        for p in pts:
            if len(p) != dimension:
                raise ImageError(f"point {p} does not have dimension {dimension}")
        uniq = sorted(set(pts))
        if len(uniq) != len(pts):
            raise ImageError("duplicate points")
        if isinstance(adjacency, int):
            adjacency = CU(adjacency)
        return cls(tuple(uniq), adjacency, dimension)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, DigitalImage):
            return NotImplemented
        return (self.points == other.points and self.adjacency == other.adjacency
                and self.dimension == other.dimension)

    def __hash__(self) -> int:
        return hash((self.points, self.adjacency, self.dimension))

    def __getstate__(self):
        # Cached tables are rebuilt on demand in worker processes.
        return {k: self.__dict__[k] for k in ("points", "adjacency", "dimension", "factors")}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)

    @cached_property
    def point_set(self) -> frozenset[Point]:
        return frozenset(self.points)

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index_of(self, p: Sequence[int]) -> int:
        try:
            return self.index[tuple(p)]
        except KeyError:
            raise ImageError(f"point {tuple(p)} is not in the image") from None

    @cached_property
    def neighbor_table(self) -> tuple[tuple[int, ...], ...]:
        idx = self.index
        offs = self.adjacency.offsets(self.dimension)
        n = len(self.points)
        # Offset generation is O(N * 3^n); all-pairs is cheaper for tiny images in high dimension.
        if n * n < n * len(offs):
            adj = self.adjacency.adjacent
            table = [[j for j in range(n) if adj(self.points[i], self.points[j])] for i in range(n)]
        else:
            table = []
            for p in self.points:
                row = []
                for off in offs:
                    j = idx.get(tuple(a + b for a, b in zip(p, off)))
                    if j is not None:
                        row.append(j)
                row.sort()
                table.append(row)
        return tuple(tuple(r) for r in table)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Bitmask of each point's closed neighborhood, bit j = point j."""
        masks = []
        for i, row in enumerate(self.neighbor_table):
            m = 1 << i
            for j in row:
                m |= 1 << j
            masks.append(m)
        return tuple(masks)

    def adjacent(self, x: Point, y: Point) -> bool:
        return self.adjacency.adjacent(tuple(x), tuple(y))

    def adjacent_or_equal(self, x: Point, y: Point) -> bool:
        return tuple(x) == tuple(y) or self.adjacent(x, y)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.neighbor_table) for j in row if i < j]

    def subimage(self, pts: Iterable[Sequence[int]]) -> "DigitalImage":
        chosen = sorted({tuple(p) for p in pts})
        for p in chosen:
            self.index_of(p)
        return DigitalImage(tuple(chosen), self.adjacency, self.dimension)

    def with_adjacency(self, adjacency: Adjacency | int) -> "DigitalImage":
        if isinstance(adjacency, int):
            adjacency = CU(adjacency)
        return DigitalImage(self.points, adjacency, self.dimension)

    def components(self) -> list[list[int]]:
        """Connected components as index lists, each in BFS order from its least point."""
        seen = [False] * len(self.points)
        comps = []
        for root in range(len(self.points)):
            if not seen[root]:
                seen[root] = True
                order = [root]
                queue = deque([root])
                while queue:
                    v = queue.popleft()
                    for w in self.neighbor_table[v]:
                        if not seen[w]:
                            seen[w] = True
                            order.append(w)
                            queue.append(w)
                comps.append(order)
        return comps


def neighbors(X: DigitalImage, x: Sequence[int]) -> list[Point]:
    i = X.index_of(x)
    return [X.points[j] for j in X.neighbor_table[i]]


def is_connected(X: DigitalImage) -> bool:
    if not X.points:
        raise ImageError("connectivity of the empty image is undefined")
    return len(X.components()) == 1


def find_path(X: DigitalImage, x: Sequence[int], y: Sequence[int]) -> list[Point] | None:
    """Shortest path from x to y, or None.

    BFS visits neighbors in lexicographic order, so among shortest paths the one
    returned takes the least available successor at each step.
    """
    src, dst = X.index_of(x), X.index_of(y)
    if src == dst:
        return [X.points[src]]
    # BFS from the target gives distances; then walk greedily from the source.
    dist = _bfs(X, dst)
    if dist[src] < 0:
        return None
    path = [src]
    cur = src
    while cur != dst:
        cur = min(j for j in X.neighbor_table[cur] if dist[j] == dist[cur] - 1)
        path.append(cur)
    return [X.points[i] for i in path]


def _bfs(X: DigitalImage, root: int) -> list[int]:
    dist = [-1] * len(X.points)
    dist[root] = 0
    queue = deque([root])
    nt = X.neighbor_table
    while queue:
        v = queue.popleft()
        for w in nt[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def boundary(X: DigitalImage | Iterable[Sequence[int]]) -> list[Point]:
    """Points with a c_1-neighbor in Z^n outside the set.

    The ambient c_1 rule applies whatever adjacency the image carries.
    """
    pts = X.point_set if isinstance(X, DigitalImage) else {tuple(p) for p in X}
    out = []
    for p in pts:
        for k in range(len(p)):
            for step in (-1, 1):
                q = p[:k] + (p[k] + step,) + p[k + 1:]
                if q not in pts:
                    out.append(p)
                    break
            else:
                continue
            break
    return sorted(out)


def rectangle(*extents: int, adjacency: Adjacency | int | None = None) -> DigitalImage:
    """The grid prod_j [0, m_j]_Z, with c_n adjacency unless overridden."""
    if len(extents) == 1 and isinstance(extents[0], (list, tuple)):
        extents = tuple(extents[0])
    if not extents:
        raise ImageError("rectangle needs at least one extent")
    for m in extents:
        if m < 0:
            raise ImageError(f"negative extent {m}")
    n = len(extents)
    if adjacency is None:
        adjacency = CU(n)
    elif isinstance(adjacency, int):
        adjacency = CU(adjacency)
    pts = itertools.product(*(range(m + 1) for m in extents))
    return DigitalImage(tuple(pts), adjacency, n)


def interval(a: int, b: int, u: int = 1) -> DigitalImage:
    """[a, b]_Z as a 1-D image."""
    return DigitalImage(tuple((i,) for i in range(a, b + 1)), CU(u), 1)


def product(factors: Sequence[DigitalImage]) -> DigitalImage:
    """Cartesian product with normal-product adjacency."""
    factors = tuple(factors)
    if len(factors) < 2:
        raise ImageError("a product needs at least two factors")
    for f in factors:
        if not f.points:
            raise ImageError("product factors must be non-empty")
    pts = tuple(tuple(itertools.chain.from_iterable(combo))
                for combo in itertools.product(*(f.points for f in factors)))
    adjacency = NormalProduct(tuple(f.adjacency for f in factors), tuple(f.dimension for f in factors))
    dim = sum(f.dimension for f in factors)
    # Lexicographic order of concatenated coordinates equals product order.
    return DigitalImage(pts, adjacency, dim, factors)


def project_point(X: DigitalImage, p: Sequence[int], i: int) -> Point:
    """p_i(p): the i-th factor block (0-based) of a product point."""
    if X.factors is None:
        raise ImageError("image was not built as a product")
    if not 0 <= i < len(X.factors):
        raise ImageError(f"projection index {i} out of range")
    start = sum(f.dimension for f in X.factors[:i])
    return tuple(p)[start:start + X.factors[i].dimension]


def projection(X: DigitalImage, i: int) -> DigitalImage:
    """The i-th factor image (0-based)."""
    if X.factors is None:
        raise ImageError("image was not built as a product")
    if not 0 <= i < len(X.factors):
        raise ImageError(f"projection index {i} out of range")
    return X.factors[i]
