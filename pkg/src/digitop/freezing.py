"""Freezing sets: verification, minimality, and the transfer theorems.

A set A is freezing for (X, kappa) when the identity is the only continuous
self-map fixing A pointwise. Verification searches for a counter-witness with
the enumeration engine and only reports FREEZING once the search space is
exhausted.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DigitopError, HypothesisError
from .image import CU, DigitalImage, NormalProduct, Point, boundary, project_point
from .maps import (EnumerationConstraints, EnumStatus, ImageMap, SelfMap, enumerate_maps,
                   fixed_points, is_continuous, is_isomorphism, is_retraction)

DEFAULT_BUDGET = 10**7


class FreezingError(DigitopError):
    pass


class Verdict(enum.Enum):
    FREEZING = "FREEZING"
    NOT_FREEZING = "NOT_FREEZING"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class FreezingReport:
    verdict: Verdict
    witness: SelfMap | None
    nodes_explored: int
    elapsed: float

    @property
    def freezing(self) -> bool:
        return self.verdict is Verdict.FREEZING

    @property
    def ms(self) -> int:
        return int(round(self.elapsed * 1000))


def _point_set(X: DigitalImage, A: Iterable[Sequence[int]]) -> list[Point]:
    pts = sorted({tuple(a) for a in A})
    for p in pts:
        if p not in X.index:
            raise FreezingError(f"{p} is not a point of the image")
    return pts


def validate_witness(f: SelfMap, A: Iterable[Sequence[int]]) -> bool:
    """Independent re-check: continuous, fixes A, and is not the identity."""
    return (is_continuous(f) and all(f(a) == tuple(a) for a in A)
            and not f.is_identity())


def is_freezing_set(X: DigitalImage, A: Iterable[Sequence[int]],
                    budget: int = DEFAULT_BUDGET, jobs: int = 1) -> FreezingReport:
    pts = _point_set(X, A)
    t0 = time.perf_counter()
    found: list[SelfMap] = []

    def stop(f: SelfMap) -> bool:
        found.append(f)
        return True

    c = EnumerationConstraints(pinned={p: p for p in pts}, require_continuous=True,
                               forbid_identity=True, node_budget=budget)
    res = enumerate_maps(X, c, stop, jobs=jobs)
    elapsed = time.perf_counter() - t0
    if found:
        w = found[0]
        if not validate_witness(w, pts):
            raise AssertionError(f"engine produced an invalid witness {w}")
        return FreezingReport(Verdict.NOT_FREEZING, w, res.nodes, elapsed)
    if res.status is EnumStatus.BUDGET_EXCEEDED:
        return FreezingReport(Verdict.BUDGET_EXCEEDED, None, res.nodes, elapsed)
    return FreezingReport(Verdict.FREEZING, None, res.nodes, elapsed)


class Minimality(enum.Enum):
    MINIMAL = "MINIMAL"
    NOT_MINIMAL = "NOT_MINIMAL"
    NOT_FREEZING = "NOT_FREEZING"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class MinimalityReport:
    verdict: Minimality
    freezing: FreezingReport
    removals: dict[Point, FreezingReport] = field(default_factory=dict)
    #: a point whose removal still leaves a freezing set
    redundant: Point | None = None

    @property
    def minimal(self) -> bool:
        return self.verdict is Minimality.MINIMAL

    @property
    def nodes_explored(self) -> int:
        return self.freezing.nodes_explored + sum(r.nodes_explored for r in self.removals.values())

    @property
    def elapsed(self) -> float:
        return self.freezing.elapsed + sum(r.elapsed for r in self.removals.values())


def is_minimal_freezing_set(X: DigitalImage, A: Iterable[Sequence[int]],
                            budget: int = DEFAULT_BUDGET, jobs: int = 1) -> MinimalityReport:
    """A is minimal when it freezes X and no A minus one point does.

    Freezing sets are closed under supersets, so non-freezing sets are closed
    under subsets: if every A - {a} fails, every proper subset fails too.
    """
    pts = _point_set(X, A)
    rep = is_freezing_set(X, pts, budget, jobs)
    if rep.verdict is Verdict.BUDGET_EXCEEDED:
        return MinimalityReport(Minimality.BUDGET_EXCEEDED, rep)
    if rep.verdict is Verdict.NOT_FREEZING:
        return MinimalityReport(Minimality.NOT_FREEZING, rep)
    out = MinimalityReport(Minimality.MINIMAL, rep)
    remaining = budget - rep.nodes_explored
    for a in pts:
        sub = [p for p in pts if p != a]
        r = is_freezing_set(X, sub, max(remaining, 1), jobs)
        out.removals[a] = r
        remaining -= r.nodes_explored
        if r.verdict is Verdict.BUDGET_EXCEEDED:
            out.verdict = Minimality.BUDGET_EXCEEDED
            return out
        if r.verdict is Verdict.FREEZING:
            out.verdict = Minimality.NOT_MINIMAL
            out.redundant = a
            return out
    return out


@dataclass
class TransferReport:
    image_set: list[Point]
    source: FreezingReport | None
    target: FreezingReport


class NotAnIsomorphism(FreezingError):
    pass


def transfer_freezing(A: Iterable[Sequence[int]], F: ImageMap, budget: int = DEFAULT_BUDGET,
                      assume_freezing: bool = False) -> TransferReport:
    """Push a freezing set of F's source forward and re-verify it on the target."""
    if not is_isomorphism(F):
        raise NotAnIsomorphism("the transfer needs an isomorphism (continuous bijection with continuous inverse)")
    pts = _point_set(F.source, A)
    src = None
    if not assume_freezing:
        src = is_freezing_set(F.source, pts, budget)
        if src.verdict is Verdict.NOT_FREEZING:
            raise HypothesisError("A is freezing for the source", f"witness {src.witness}")
        if src.verdict is Verdict.BUDGET_EXCEEDED:
            raise HypothesisError("A is freezing for the source", "budget exceeded while checking")
    image = sorted(F.image_set(pts))
    return TransferReport(image, src, is_freezing_set(F.target, image, budget))


@dataclass
class ProjectionReport:
    product: FreezingReport
    factors: list[tuple[list[Point], FreezingReport]]

    @property
    def all_freezing(self) -> bool:
        return all(r.freezing for _, r in self.factors)


def check_projection_freezing(X: DigitalImage, A: Iterable[Sequence[int]],
                              budget: int = DEFAULT_BUDGET) -> ProjectionReport:
    if X.factors is None or not isinstance(X.adjacency, NormalProduct):
        raise FreezingError("projection check needs a normal-product image")
    pts = _point_set(X, A)
    rep = is_freezing_set(X, pts, budget)
    if rep.verdict is not Verdict.FREEZING:
        raise HypothesisError("A is freezing for the product", rep.verdict.value)
    factors = []
    for i, Xi in enumerate(X.factors):
        proj = sorted({project_point(X, p, i) for p in pts})
        factors.append((proj, is_freezing_set(Xi, proj, budget)))
    return ProjectionReport(rep, factors)


def check_boundary_fix_extension(X: DigitalImage, A: Iterable[Sequence[int]], f: SelfMap) -> bool:
    """Does "Bd(A) within Fix(f) implies A within Fix(f)" hold for this f?

    Returns True when the hypothesis fails (vacuous) or the conclusion holds.
    """
    if not isinstance(X.adjacency, CU):
        raise FreezingError("boundary extension is stated for c_u adjacencies")
    if f.source != X:
        raise FreezingError("map is not a self-map of X")
    if not is_continuous(f):
        raise HypothesisError("f is continuous")
    pts = _point_set(X, A)
    fix = set(fixed_points(f))
    if not set(boundary(pts)) <= fix:
        return True
    return set(pts) <= fix


@dataclass
class RetractReport:
    retraction: SelfMap
    freezing: FreezingReport

    @property
    def witness(self) -> SelfMap | None:
        return self.freezing.witness


def check_retract_exclusion(X: DigitalImage, Xprime: Iterable[Sequence[int]],
                            budget: int = DEFAULT_BUDGET) -> RetractReport:
    """A proper retract contains no freezing set.

    By upward closure it is enough to show Xprime itself is not freezing.
    """
    sub = _point_set(X, Xprime)
    if len(sub) == len(X):
        raise HypothesisError("Xprime is a proper subset", "X is a retract of itself via the identity")
    found: list[SelfMap] = []

    def stop(f):
        found.append(f)
        return True

    c = EnumerationConstraints(pinned={p: p for p in sub}, require_continuous=True,
                               allowed_range=sub, node_budget=budget)
    res = enumerate_maps(X, c, stop)
    if not found:
        detail = "budget exceeded" if res.budget_exceeded else "no continuous retraction exists"
        raise HypothesisError("Xprime is a retract of X", detail)
    r = found[0]
    if not is_retraction(r, sub):
        raise AssertionError(f"engine produced an invalid retraction {r}")
    rep = is_freezing_set(X, sub, budget)
    if rep.verdict is Verdict.FREEZING:
        raise AssertionError("a proper retract was certified freezing")
    return RetractReport(r, rep)


@dataclass
class SubsetSearchReport:
    minimal_sets: list[list[Point]]
    nodes_explored: int
    complete: bool


def search_freezing_subsets(X: DigitalImage, max_size: int,
                            budget: int = DEFAULT_BUDGET) -> SubsetSearchReport:
    """Every inclusion-minimal freezing set with at most max_size points.

    Subsets are tried by size, then lexicographically. A freezing set found at
    size k is minimal because all its proper subsets were tried earlier.
    """
    if max_size > len(X):
        raise FreezingError("max_size exceeds |X|")
    found: list[frozenset[Point]] = []
    nodes = 0
    for k in range(max_size + 1):
        for combo in itertools.combinations(X.points, k):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            if nodes >= budget:
                return SubsetSearchReport([sorted(f) for f in found], nodes, False)
            rep = is_freezing_set(X, combo, budget - nodes)
            nodes += rep.nodes_explored
            if rep.verdict is Verdict.BUDGET_EXCEEDED:
                return SubsetSearchReport([sorted(f) for f in found], nodes, False)
            if rep.freezing:
                found.append(s)
    return SubsetSearchReport([sorted(f) for f in found], nodes, True)
