"""Maps between digital images and the pruned enumerator for C(X, kappa).

Map tables are tuples of target point indices aligned with the source image's
sorted point order. Continuity is checked through the adjacency
characterization: adjacent points must go to adjacent-or-equal points.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DigitopError
from .image import DigitalImage, Point


class MapError(DigitopError):
    pass


@dataclass(frozen=True, eq=False)
class ImageMap:
    """A total function source -> target, stored as target indices."""

    source: DigitalImage
    target: DigitalImage
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.source):
            raise MapError("map table is not total on its source")
        n = len(self.target)
        for j in self.images:
            if not 0 <= j < n:
                raise MapError("map sends a point outside its target")

    @classmethod
    def from_table(cls, source: DigitalImage, target: DigitalImage,
                   table: Mapping[Sequence[int], Sequence[int]]) -> "ImageMap":
        norm = {tuple(k): tuple(v) for k, v in table.items()}
        missing = [p for p in source.points if p not in norm]
        if missing:
            raise MapError(f"map is not defined at {missing[0]}")
        extra = [k for k in norm if k not in source.index]
        if extra:
            raise MapError(f"map defines a value at {extra[0]}, which is not a source point")
        imgs = []
        for p in source.points:
            v = norm[p]
            if v not in target.index:
                raise MapError(f"image {v} of {p} is not a target point")
            imgs.append(target.index[v])
        return cls(source, target, tuple(imgs))

    def __call__(self, p: Sequence[int]) -> Point:
        return self.target.points[self.images[self.source.index_of(p)]]

    @property
    def table(self) -> dict[Point, Point]:
        tp = self.target.points
        return {p: tp[j] for p, j in zip(self.source.points, self.images)}

    def values(self) -> tuple[Point, ...]:
        tp = self.target.points
        return tuple(tp[j] for j in self.images)

    def image_set(self, pts: Iterable[Sequence[int]] | None = None) -> set[Point]:
        if pts is None:
            return {self.target.points[j] for j in self.images}
        return {self(p) for p in pts}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImageMap):
            return NotImplemented
        return (self.images == other.images and self.source == other.source
                and self.target == other.target)

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        body = ", ".join(f"{_fmt(p)}->{_fmt(q)}" for p, q in self.table.items())
        return f"{type(self).__name__}({body})"


def _fmt(p: Point) -> str:
    return str(p[0]) if len(p) == 1 else "(" + ",".join(map(str, p)) + ")"


class SelfMap(ImageMap):
    """A self-map f: X -> X."""

    def __init__(self, domain: DigitalImage, images: Sequence[int]):
        super().__init__(domain, domain, tuple(images))

    @property
    def domain(self) -> DigitalImage:
        return self.source

    @classmethod
    def from_table(cls, domain: DigitalImage, table: Mapping) -> "SelfMap":
        m = ImageMap.from_table(domain, domain, table)
        return cls(domain, m.images)

    @classmethod
    def from_values(cls, domain: DigitalImage, values: Sequence) -> "SelfMap":
        """Build from image points listed in the domain's point order.

        1-D values may be given as plain integers.
        """
        pts = [(v,) if isinstance(v, int) else tuple(v) for v in values]
        if len(pts) != len(domain):
            raise MapError("value list length differs from the domain size")
        return cls(domain, [domain.index_of(p) for p in pts])

    @classmethod
    def identity(cls, domain: DigitalImage) -> "SelfMap":
        return cls(domain, range(len(domain)))

    @classmethod
    def constant(cls, domain: DigitalImage, c: Sequence[int] | int) -> "SelfMap":
        c = (c,) if isinstance(c, int) else tuple(c)
        j = domain.index_of(c)
        return cls(domain, [j] * len(domain))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __getstate__(self):
        return (self.source, self.images)

    def __setstate__(self, state):
        dom, imgs = state
        object.__setattr__(self, "source", dom)
        object.__setattr__(self, "target", dom)
        object.__setattr__(self, "images", imgs)


def all_self_maps(X: DigitalImage) -> Iterable[SelfMap]:
    """Every function X -> X, in lexicographic order of value tables."""
    n = len(X)
    for imgs in itertools.product(range(n), repeat=n):
        yield SelfMap(X, imgs)


def is_continuous(f: ImageMap) -> bool:
    src, tgt = f.source, f.target
    masks = tgt.closed_masks
    imgs = f.images
    for i, row in enumerate(src.neighbor_table):
        m = masks[imgs[i]]
        for j in row:
            if not (m >> imgs[j]) & 1:
                return False
    return True


def fixed_points(f: SelfMap) -> list[Point]:
    return [f.source.points[i] for i, j in enumerate(f.images) if i == j]


def compose(f: SelfMap, g: SelfMap) -> SelfMap:
    """f o g."""
    if f.source != g.source:
        raise MapError("composition needs a shared domain")
    return SelfMap(f.source, [f.images[j] for j in g.images])


def is_onto(f: ImageMap) -> bool:
    return len(set(f.images)) == len(f.target)


@dataclass(frozen=True)
class Orbit:
    """Outcome of iterating a self-map from one point.

    ``eventual`` is the fixed point reached (None when the orbit enters a
    longer cycle); ``steps`` is the least n0 with f^n0(x) = eventual, or the
    index at which the cycle is entered.
    """

    eventual: Point | None
    steps: int
    cycle: tuple[Point, ...] = ()

    @property
    def is_cycle(self) -> bool:
        return self.eventual is None


def iterate_orbit(f: SelfMap, x: Sequence[int], cap: int) -> Orbit:
    X = f.source
    if cap < len(X):
        raise MapError(f"cap {cap} is below |X| = {len(X)}; detection is not guaranteed")
    cur = X.index_of(x)
    first_seen = {cur: 0}
    trail = [cur]
    for step in range(cap + 1):
        nxt = f.images[cur]
        if nxt == cur:
            return Orbit(X.points[cur], step)
        if nxt in first_seen:
            start = first_seen[nxt]
            return Orbit(None, start, tuple(X.points[i] for i in trail[start:]))
        first_seen[nxt] = step + 1
        trail.append(nxt)
        cur = nxt
    raise MapError("orbit did not close within the cap")  # unreachable for cap >= |X|


def is_isomorphism(F: ImageMap) -> bool:
    """Continuous bijection whose inverse is continuous."""
    if len(F.source) != len(F.target) or not is_onto(F):
        return False
    if not is_continuous(F):
        return False
    inv = [0] * len(F.target)
    for i, j in enumerate(F.images):
        inv[j] = i
    return is_continuous(ImageMap(F.target, F.source, tuple(inv)))


def is_retraction(r: SelfMap, Xprime: Iterable[Sequence[int]]) -> bool:
    X = r.source
    sub = {tuple(p) for p in Xprime}
    for p in sub:
        if p not in X.index:
            raise MapError(f"{p} is not a point of the domain")
    idx = {X.index[p] for p in sub}
    if any(r.images[i] != i for i in idx):
        return False
    if any(j not in idx for j in r.images):
        return False
    return is_continuous(r)


# ---------------------------------------------------------------------------
# enumeration engine


class EnumStatus(enum.Enum):
    COMPLETE = "COMPLETE"
    STOPPED = "STOPPED"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class EnumerationConstraints:
    """Restrictions on the self-maps visited by :func:`enumerate_maps`.

    ``allowed_range`` (an extension used for retraction searches) limits every
    image value to the given points.
    """

    pinned: Mapping[Sequence[int], Sequence[int]] = field(default_factory=dict)
    require_continuous: bool = True
    require_onto: bool = False
    forbid_identity: bool = False
    node_budget: int = 10**7
    allowed_range: Iterable[Sequence[int]] | None = None

    def __post_init__(self) -> None:
        if self.node_budget <= 0:
            raise MapError("node_budget must be positive")


@dataclass
class EnumerationResult:
    count: int
    nodes: int
    status: EnumStatus

    @property
    def budget_exceeded(self) -> bool:
        return self.status is EnumStatus.BUDGET_EXCEEDED


class _Stop(Exception):
    pass


class _Budget(Exception):
    pass


def search_order(X: DigitalImage) -> list[int]:
    """BFS order over components, each rooted at its least point."""
    return [i for comp in X.components() for i in comp]


class _Plan:
    """Precomputed search data shared by serial and partitioned runs."""

    def __init__(self, X: DigitalImage, c: EnumerationConstraints):
        n = len(X)
        self.X = X
        self.n = n
        self.c = c
        self.order = search_order(X)
        pos = {v: k for k, v in enumerate(self.order)}
        nt = X.neighbor_table
        self.prev = [[w for w in nt[v] if pos[w] < pos[v]] for v in self.order]
        full = (1 << n) - 1
        base = full
        if c.allowed_range is not None:
            base = 0
            for p in c.allowed_range:
                base |= 1 << X.index_of(p)
        pin_mask = [base] * n
        for src, dst in c.pinned.items():
            i, j = X.index_of(src), X.index_of(dst)
            pin_mask[i] &= 1 << j
        self.start_mask = [pin_mask[v] for v in self.order]
        self.masks = X.closed_masks
        self.full = full

    def root_candidates(self) -> list[int]:
        return _bits(self.start_mask[0]) if self.n else []


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _run(plan: _Plan, visitor, budget: int, root_choice: int | None = None,
         collect: list | None = None) -> tuple[int, int, EnumStatus]:
    X, c, n = plan.X, plan.c, plan.n
    order, prev, start_mask, masks = plan.order, plan.prev, plan.start_mask, plan.masks
    cont, onto, forbid = c.require_continuous, c.require_onto, c.forbid_identity
    img = [0] * n
    hits = [0] * n
    unhit = [n]
    count = 0
    nodes = 0

    def emit():
        nonlocal count
        if forbid and all(img[i] == i for i in range(n)):
            return
        count += 1
        if collect is not None:
            collect.append(tuple(img))
        if visitor is not None and visitor(SelfMap(X, tuple(img))):
            raise _Stop

    def rec(k: int):
        nonlocal nodes
        if k == n:
            emit()
            return
        v = order[k]
        cand = start_mask[k]
        if k == 0 and root_choice is not None:
            cand &= 1 << root_choice
        if cont:
            for w in prev[k]:
                cand &= masks[img[w]]
                if not cand:
                    return
        remaining = n - k - 1
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            nodes += 1
            if nodes > budget:
                raise _Budget
            img[v] = j
            hits[j] += 1
            if hits[j] == 1:
                unhit[0] -= 1
            if not onto or unhit[0] <= remaining:
                rec(k + 1)
            hits[j] -= 1
            if hits[j] == 0:
                unhit[0] += 1

    try:
        rec(0)
    except _Stop:
        return count, nodes, EnumStatus.STOPPED
    except _Budget:
        return count, nodes - 1, EnumStatus.BUDGET_EXCEEDED
    return count, nodes, EnumStatus.COMPLETE


def _worker(args):
    X, c, root_choice, budget, want_maps = args
    plan = _Plan(X, c)
    bucket = [] if want_maps else None
    count, nodes, status = _run(plan, None, budget, root_choice, bucket)
    return count, nodes, status, bucket


def enumerate_maps(X: DigitalImage, c: EnumerationConstraints,
                   visitor: Callable[[SelfMap], bool | None] | None = None,
                   jobs: int = 1) -> EnumerationResult:
    """Visit every self-map of X meeting the constraints, in deterministic order.

    The visitor may return True to stop the search early. With ``jobs > 1`` the
    search is split on the root point's image; partitions run in worker
    processes and their maps are delivered to the visitor serially, in
    partition order, so the visiting order matches the serial run.
    """
    if not X.points:
        return EnumerationResult(0 if c.forbid_identity else 1, 0, EnumStatus.COMPLETE)
    plan = _Plan(X, c)
    if jobs <= 1:
        count, nodes, status = _run(plan, visitor, c.node_budget)
        return EnumerationResult(count, nodes, status)

    roots = plan.root_candidates()
    tasks = [(X, c, r, c.node_budget, visitor is not None) for r in roots]
    total, nodes = 0, 0
    status = EnumStatus.COMPLETE
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for cnt, nd, st, bucket in pool.map(_worker, tasks):
            nodes += nd
            if status is not EnumStatus.COMPLETE:
                continue
            if st is EnumStatus.BUDGET_EXCEEDED or nodes > c.node_budget:
                status = EnumStatus.BUDGET_EXCEEDED
                continue
            if visitor is None:
                total += cnt
                continue
            for imgs in bucket:
                total += 1
                if visitor(SelfMap(X, imgs)):
                    status = EnumStatus.STOPPED
                    break
    return EnumerationResult(total, nodes, status)


def collect_maps(X: DigitalImage, c: EnumerationConstraints, jobs: int = 1) -> tuple[list[SelfMap], EnumerationResult]:
    out: list[SelfMap] = []

    def keep(f):
        out.append(f)

    res = enumerate_maps(X, c, keep, jobs=jobs)
    return out, res


def continuous_self_maps(X: DigitalImage, node_budget: int = 10**7) -> list[SelfMap]:
    maps, res = collect_maps(X, EnumerationConstraints(node_budget=node_budget))
    if res.budget_exceeded:
        raise MapError("node budget exceeded while enumerating C(X)")
    return maps
