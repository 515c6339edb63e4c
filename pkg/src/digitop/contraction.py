"""Contraction-type hypotheses on finite digital metric spaces.

Classifiers compute the best constant a map can use (q*), the constancy and
triviality sweeps exhaust small images, and :func:`rani_common_fixed_point`
runs the constructive common-fixed-point argument for commuting pairs.

Ratio verdicts use :meth:`Metric.key_idx` (d ** exponent, an integer for
integer p), so "q* < 1" never depends on rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import DigitopError, HypothesisError, IndeterminateComparison
from .image import CU, DigitalImage, Point, is_connected
from .maps import SelfMap, all_self_maps, compose, continuous_self_maps, fixed_points, iterate_orbit
from .metrics import FLOAT_TOL, LpMetric, Metric, ShortestPathMetric, as_rational, compare


class ContractionError(DigitopError):
    pass


@dataclass
class ContractionReport:
    class_name: str
    satisfied: bool
    #: q* on the key scale (q* ** exponent); exact Fraction when keys are integers
    ratio_key: Fraction | float
    exponent: int | float = 1
    witness_pair: tuple[Point, Point] | None = None
    indeterminate: bool = False

    @property
    def best_coefficient(self) -> float:
        return float(self.ratio_key) ** (1.0 / self.exponent)

    def qstar_text(self) -> str:
        if isinstance(self.ratio_key, Fraction) and self.exponent == 1:
            return str(self.ratio_key)
        if isinstance(self.ratio_key, Fraction) and self.exponent == 2:
            r = self.ratio_key
            a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
            if a * a == r.numerator and b * b == r.denominator:
                return str(Fraction(a, b))
            return f"sqrt({r})"
        return f"{self.best_coefficient:.12g}"


def _keys_exact(d: Metric) -> bool:
    return getattr(d, "keys_exact", True)


def _ratio(num, den, exact: bool):
    return Fraction(num, den) if exact else num / den


def _pairs(n: int, diagonal: bool = False):
    for i in range(n):
        for j in range(i if diagonal else i + 1, n):
            yield i, j


def _finish(name: str, best, pair, d: Metric, X: DigitalImage) -> ContractionReport:
    exact = _keys_exact(d)
    if best is None:
        best = Fraction(0) if exact else 0.0
    indeterminate = (not exact) and abs(best - 1.0) <= FLOAT_TOL
    wp = (X.points[pair[0]], X.points[pair[1]]) if pair else None
    return ContractionReport(name, (best < 1) and not indeterminate, best, d.exponent, wp,
                             indeterminate)


def digital_contraction_coefficient(S: SelfMap, d: Metric) -> ContractionReport:
    """q* = max over x != y of d(Sx,Sy)/d(x,y); a contraction iff q* < 1."""
    X = S.source
    K = d.key_table
    s = S.images
    exact = _keys_exact(d)
    best, pair = None, None
    for i, j in _pairs(len(X)):
        r = _ratio(K[s[i]][s[j]], K[i][j], exact)
        if best is None or r > best:
            best, pair = r, (i, j)
    return _finish("contraction", best, pair, d, X)


def _quasi_m_key(K, s, i, j):
    return max(K[i][j], K[i][s[i]], K[j][s[j]], K[i][s[j]], K[j][s[i]])


def is_quasi_contraction(S: SelfMap, d: Metric) -> ContractionReport:
    """Ciric quasi-contraction against the five-term maximum.

    Keys are monotone in distance, so the maximum can be taken on keys.
    """
    X = S.source
    K = d.key_table
    s = S.images
    exact = _keys_exact(d)
    best, pair = None, None
    for i, j in _pairs(len(X), diagonal=True):
        m = _quasi_m_key(K, s, i, j)
        if m == 0:
            continue
        r = _ratio(K[s[i]][s[j]], m, exact)
        if best is None or r > best:
            best, pair = r, (i, j)
    return _finish("quasi", best, pair, d, X)


@dataclass(frozen=True)
class FunctionTable:
    """Samples (t, value) of a function [0, inf) -> [0, inf) with increasing t."""

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        ts = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ContractionError("function table abscissae must strictly increase")
        if any(t < 0 or v < 0 for t, v in self.samples):
            raise ContractionError("function table entries must be non-negative")

    def __call__(self, t: float) -> float:
        for s, v in self.samples:
            if s == t:
                return v
        raise ContractionError(f"{t} is not a sampled abscissa")

    def in_theta_class(self) -> bool:
        """Increasing, and 0 < value < sqrt(t) at every positive sample."""
        vals = [v for _, v in self.samples]
        if any(b < a for a, b in zip(vals, vals[1:])):
            return False
        for t, v in self.samples:
            if t == 0:
                if v != 0:
                    return False
            elif not 0 < v < math.sqrt(t):
                return False
        return True


@dataclass
class ThetaReport(ContractionReport):
    theta: FunctionTable | None = None
    #: (distance key, envelope key) per realized positive distance
    envelope: list = field(default_factory=list)


def admits_theta_contraction(T: SelfMap, d: Metric) -> ThetaReport:
    """Decide whether some theta in Theta makes T a theta-contraction.

    With t_1 < ... < t_k the realized positive distances and M_i the running
    maximum of d(Tx,Ty) over pairs at distance t_j, j <= i, such a theta exists
    iff M_i < sqrt(t_i) for every i. The witness uses (M_i + sqrt(t_i)) / 2 at
    t_i; between samples it may be held constant.
    """
    X = T.source
    K = d.key_table
    s = T.images
    exact = _keys_exact(d)
    by_t: dict = {}
    for i, j in _pairs(len(X)):
        t = K[i][j]
        m = K[s[i]][s[j]]
        if m > by_t.get(t, -1):
            by_t[t] = m
    env = []
    run = 0
    ok = True
    indeterminate = False
    worst, worst_t = None, None
    for t in sorted(by_t):
        run = max(run, by_t[t])
        env.append((t, run))
        # d_T < sqrt(d_t)  <=>  key_T ** 2 < key_t
        if exact:
            r = Fraction(run * run, t)
        else:
            r = run * run / t
            if abs(r - 1.0) <= FLOAT_TOL:
                indeterminate = True
        if worst is None or r > worst:
            worst, worst_t = r, t
        if not r < 1:
            ok = False
    pair = None
    if worst_t is not None:
        pair = next(((X.points[i], X.points[j]) for i, j in _pairs(len(X)) if K[i][j] == worst_t), None)
    theta = None
    if ok and not indeterminate:
        e = float(d.exponent)
        samples = [(0.0, 0.0)]
        for t, m in env:
            tv = float(t) ** (1.0 / e)
            mv = float(m) ** (1.0 / e)
            samples.append((tv, (mv + math.sqrt(tv)) / 2))
        theta = FunctionTable(tuple(samples))
    # worst = key_T^2 / key_t = (d_T / sqrt(d_t)) ** (2 * exponent)
    if worst is None:
        worst = Fraction(0) if exact else 0.0
    return ThetaReport("theta", ok and not indeterminate, worst, 2 * d.exponent, pair,
                       indeterminate, theta, env)


def check_dominated_pair(f: SelfMap, g: SelfMap, d: Metric) -> bool:
    """d(fx,fy) < d(gx,gy) over all distinct pairs.

    At x = y both sides vanish and the strict inequality cannot hold; the
    constancy argument only needs adjacent pairs, so the diagonal is skipped.
    """
    if f.source != g.source:
        raise ContractionError("maps need a shared domain")
    K = d.key_table
    a, b = f.images, g.images
    exact = _keys_exact(d)
    for i, j in _pairs(len(f.source)):
        lhs, rhs = K[a[i]][a[j]], K[b[i]][b[j]]
        if not exact and abs(lhs - rhs) <= FLOAT_TOL:
            raise IndeterminateComparison("dominated-pair comparison within tolerance")
        if not lhs < rhs:
            return False
    return True


@dataclass
class SweepReport:
    """Outcome of an exhaustive property sweep."""

    name: str
    confirmed: bool
    checked: int
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    budget_exceeded: bool = False

    def line(self) -> str:
        status = "CONFIRMED" if self.confirmed else ("BUDGET_EXCEEDED" if self.budget_exceeded else "VIOLATED")
        return f"{self.name}: {status} checked={self.checked} violations={len(self.violations)}"


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1) -> bool:
        self.used += k
        return self.used <= self.limit


def _require_constancy_setting(X: DigitalImage, d: Metric) -> None:
    if d.image != X:
        raise HypothesisError("metric lives on X", "metric is bound to another image")
    if not is_connected(X):
        raise HypothesisError("X is connected")
    if isinstance(d, ShortestPathMetric):
        return
    if isinstance(d, LpMetric) and X.adjacency == CU(1):
        return
    raise HypothesisError("d is the shortest-path metric, or d is l_p with c_1 adjacency",
                          f"got {d.name} with {X.adjacency}")


def _is_constant(imgs: Sequence[int]) -> bool:
    return all(v == imgs[0] for v in imgs)


def _edge_certificate(X: DigitalImage, d: Metric) -> list[str]:
    """Checks the two facts the constancy proof needs for this (X, d)."""
    K = d.key_table
    notes = []
    edge_max = max((K[i][j] for i, j in X.edges()), default=0)
    if edge_max > 1 + (0 if _keys_exact(d) else FLOAT_TOL):
        raise AssertionError("an adjacent pair has distance above 1")
    notes.append("adjacent points are at distance <= 1, so continuous g gives d(gx,gy) <= 1 on edges")
    n = len(X)
    min_pos = min((K[i][j] for i, j in _pairs(n)), default=None)
    if min_pos is not None and min_pos < 1 - (0 if _keys_exact(d) else FLOAT_TOL):
        raise AssertionError("distinct points closer than 1")
    notes.append("distinct points are at distance >= 1, so d(fx,fy) < 1 forces fx = fy")
    notes.append("X is connected, so equality along edges makes f constant")
    return notes


SWEEP_LIMIT = 4


def verify_constant_forcing(X: DigitalImage, d: Metric, budget: int = 10**7) -> SweepReport:
    """If d(fx,fy) < d(gx,gy) for distinct pairs and g is continuous, f is constant."""
    _require_constancy_setting(X, d)
    rep = SweepReport("d-under-1-constancy", True, 0)
    rep.details["certificate"] = _edge_certificate(X, d)
    n = len(X)
    if n > SWEEP_LIMIT:
        rep.details["sweep"] = f"skipped: |X| = {n} > {SWEEP_LIMIT}"
        return rep
    K = d.key_table
    pairs = list(_pairs(n))
    gs = [tuple(K[g.images[i]][g.images[j]] for i, j in pairs) for g in continuous_self_maps(X)]
    b = _Budget(budget)
    for f in all_self_maps(X):
        fv = tuple(K[f.images[i]][f.images[j]] for i, j in pairs)
        if not b.spend(len(gs)):
            rep.confirmed = False
            rep.budget_exceeded = True
            break
        rep.checked += len(gs)
        for gv in gs:
            if all(a < c for a, c in zip(fv, gv)):
                if not _is_constant(f.images):
                    rep.violations.append(f)
                    rep.confirmed = False
                break
    rep.details["continuous_g"] = len(gs)
    return rep


def _constancy_sweep(name: str, X: DigitalImage, d: Metric, accepts: Callable[[SelfMap], bool],
                     budget: int) -> SweepReport:
    _require_constancy_setting(X, d)
    n = len(X)
    if n ** n > budget:
        return SweepReport(name, False, 0, budget_exceeded=True)
    rep = SweepReport(name, True, 0)
    hits = 0
    for S in all_self_maps(X):
        rep.checked += 1
        if accepts(S):
            hits += 1
            if not _is_constant(S.images):
                rep.violations.append(S)
                rep.confirmed = False
    rep.details["satisfying_maps"] = hits
    return rep


def contraction_constancy_check(X: DigitalImage, d: Metric, budget: int = 10**7) -> SweepReport:
    """Every digital contraction of a connected (X, d) is constant."""
    return _constancy_sweep("contraction-constancy", X, d,
                            lambda S: digital_contraction_coefficient(S, d).satisfied, budget)


def theta_constancy_check(X: DigitalImage, d: Metric, budget: int = 10**7) -> SweepReport:
    """Every theta-contraction of a connected (X, d) is constant."""
    return _constancy_sweep("theta-constancy", X, d,
                            lambda S: admits_theta_contraction(S, d).satisfied, budget)


def _rani_bound_ok(K, a, b, pairs, q_key) -> bool:
    return all(K[a[i]][a[j]] <= q_key * K[b[i]][b[j]] for i, j in pairs)


def _q_key(q: Fraction, d: Metric):
    e = d.exponent
    return q ** e if isinstance(e, int) else float(q) ** e


def rani_triviality_check(X: DigitalImage, d: Metric, q="1/2", budget: int = 10**7) -> SweepReport:
    """With continuous g and d(fx,fy) <= q d(gx,gy), q < 1, f is constant."""
    _require_constancy_setting(X, d)
    q = as_rational(q)
    if not 0 < q < 1:
        raise HypothesisError("0 < q < 1")
    n = len(X)
    gs = continuous_self_maps(X)
    if n ** n * len(gs) > budget:
        return SweepReport("rani-triviality", False, 0, budget_exceeded=True)
    K = d.key_table
    qk = _q_key(q, d)
    pairs = list(_pairs(n))
    rep = SweepReport("rani-triviality", True, 0)
    hits = 0
    for f in all_self_maps(X):
        for g in gs:
            rep.checked += 1
            if _rani_bound_ok(K, f.images, g.images, pairs, qk):
                hits += 1
                if not _is_constant(f.images):
                    rep.violations.append((f, g))
                    rep.confirmed = False
    rep.details["satisfying_pairs"] = hits
    return rep


@dataclass
class RaniResult:
    point: Point
    trace: list[tuple[int, Point, Point]]
    common_fixed_points: list[Point]


def check_rani_hypotheses(f: SelfMap, g: SelfMap, d: Metric, q) -> Fraction:
    if f.source != g.source or d.image != f.source:
        raise HypothesisError("shared domain", "f, g and d must live on the same image")
    q = as_rational(q)
    if not 0 < q < 1:
        raise HypothesisError("0 < q < 1", f"q = {q}")
    if not set(f.images) <= set(g.images):
        raise HypothesisError("f(X) is contained in g(X)")
    K = d.key_table
    qk = _q_key(q, d)
    a, b = f.images, g.images
    for i, j in _pairs(len(f.source)):
        lhs, rhs = K[a[i]][a[j]], qk * K[b[i]][b[j]]
        if not _keys_exact(d) and abs(lhs - rhs) <= FLOAT_TOL:
            raise IndeterminateComparison("contraction inequality within tolerance")
        if lhs > rhs:
            raise HypothesisError("d(fx,fy) <= q d(gx,gy)",
                                  f"fails at {f.source.points[i]}, {f.source.points[j]}")
    if compose(f, g).images != compose(g, f).images:
        raise HypothesisError("f and g commute")
    return q


def rani_common_fixed_point(f: SelfMap, g: SelfMap, d: Metric, q) -> RaniResult:
    """Common fixed point of commuting f, g with d(fx,fy) <= q d(gx,gy).

    From x_0 (the least point) choose x_{n+1} as the least point with
    g x_{n+1} = f x_n. Once f x_n = f x_{n+1} the contraction keeps the f-values
    constant forever; that value is the common fixed point.
    """
    check_rani_hypotheses(f, g, d, q)
    X = f.source
    n = len(X)
    preimage: dict[int, int] = {}
    for i, v in enumerate(g.images):
        preimage.setdefault(v, i)
    x = 0
    trace = [(0, X.points[x], X.points[f.images[x]])]
    z = None
    for step in range(1, n + 2):
        nxt = preimage[f.images[x]]
        trace.append((step, X.points[nxt], X.points[f.images[nxt]]))
        if f.images[nxt] == f.images[x]:
            z = f.images[x]
            break
        x = nxt
    if z is None:
        raise AssertionError("f-values did not stabilize; hypotheses were violated")
    if f.images[z] != z or g.images[z] != z:
        raise AssertionError(f"{X.points[z]} is not a common fixed point")
    common = [X.points[i] for i in range(n) if f.images[i] == i and g.images[i] == i]
    if common != [X.points[z]]:
        raise AssertionError(f"common fixed points {common} are not unique")
    return RaniResult(X.points[z], trace, common)


# ---------------------------------------------------------------------------
# expansive-pair inequalities


@dataclass(frozen=True)
class TiwariParams:
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)
    eta: Fraction = Fraction(0)

    @classmethod
    def of(cls, alpha=0, beta=0, gamma=0, eta=0) -> "TiwariParams":
        return cls(as_rational(alpha), as_rational(beta), as_rational(gamma), as_rational(eta))


TIWARI_FORMS = {
    1: "d(T1x,T2y) >= a d(x,y) + b[d(x,T1x) + d(y,T2y)]",
    2: "d(T1x,T2y) >= a d(x,y) + b[d(x,T2y) + d(y,T1x)]",
    3: "d(T1x,T2y) >= a d(x,y) + b d(x,T1x) + c d(y,T2y) + e[d(x,T1x) + d(y,T2y)]",
    4: "d(T1x,T2y) >= a[d(x,y) + d(x,T1x) + d(y,T2y)] + b[d(x,T2y) + d(y,T1x)]",
    5: "d(T1x,T2y) >= a max{d(x,y), d(x,T1x), d(y,T2y)} + b max{d(x,T2y), d(x,y)} + c d(x,y)",
}
#: variant 4 as printed, with the misplaced bracket
TIWARI4_PRINTED = "d(T1x,T2y) >= a[d(x,y) + d(x,T1x) + d(y,T2y)] + [b d(x,T2y) + d(y,T1x)]"

#: constants each variant actually uses
TIWARI_CONSTANTS = {1: "ab", 2: "ab", 3: "abce", 4: "ab", 5: "abc"}


def _tiwari_rhs(variant: int, p: TiwariParams, dxy, dx1, dy2, dx2, dy1, printed: bool):
    a, b, c, e = p.alpha, p.beta, p.gamma, p.eta
    if variant == 1:
        return a * dxy + b * (dx1 + dy2)
    if variant == 2:
        return a * dxy + b * (dx2 + dy1)
    if variant == 3:
        return a * dxy + b * dx1 + c * dy2 + e * (dx1 + dy2)
    if variant == 4:
        if printed:
            return a * (dxy + dx1 + dy2) + (b * dx2 + dy1)
        return a * (dxy + dx1 + dy2) + b * (dx2 + dy1)
    if variant == 5:
        return a * max(dxy, dx1, dy2) + b * max(dx2, dxy) + c * dxy
    raise ContractionError(f"unknown inequality variant {variant}")


def _tiwari_float_params(p: TiwariParams) -> TiwariParams:
    return TiwariParams(float(p.alpha), float(p.beta), float(p.gamma), float(p.eta))


def tiwari_inequality_holds(T1: SelfMap, T2: SelfMap, d: Metric, p: TiwariParams, variant: int,
                            printed: bool = False) -> bool:
    """Whether the selected expansive inequality holds for every ordered pair (x, y).

    ``printed`` evaluates variant 4 with its bracket exactly as published.
    """
    if T1.source != T2.source:
        raise ContractionError("maps need a shared domain")
    if variant not in TIWARI_FORMS:
        raise ContractionError(f"unknown inequality variant {variant}")
    V = d.value_table
    a, b = T1.images, T2.images
    n = len(T1.source)
    if not d.is_exact:
        p = _tiwari_float_params(p)
    for x in range(n):
        for y in range(n):
            lhs = V[a[x]][b[y]]
            rhs = _tiwari_rhs(variant, p, V[x][y], V[x][a[x]], V[y][b[y]], V[x][b[y]], V[y][a[x]],
                              printed)
            if compare(lhs, rhs) < 0:
                return False
    return True


def tiwari_trivialization_check(X: DigitalImage, d: Metric, variant: int, p: TiwariParams,
                                budget: int = 10**7, t1_onto: bool = False) -> SweepReport:
    """Sweep pairs (T1, T2), T2 onto: satisfying pairs must be (id, id), and none if alpha > 1."""
    if variant not in TIWARI_FORMS:
        raise ContractionError(f"unknown inequality variant {variant}")
    names = {"a": "alpha", "b": "beta", "c": "gamma", "e": "eta"}
    for ch in TIWARI_CONSTANTS[variant]:
        if getattr(p, names[ch]) <= 0:
            raise HypothesisError("all constants positive", f"{names[ch]} = {getattr(p, names[ch])}")
    n = len(X)
    onto = [SelfMap(X, perm) for perm in itertools.permutations(range(n))]
    t1s = onto if t1_onto else list(all_self_maps(X))
    total = len(onto) * len(t1s)
    name = f"tiwari-{variant}-trivialization"
    if total > budget:
        return SweepReport(name, False, 0, budget_exceeded=True)
    rep = SweepReport(name, True, 0)
    sat = []
    for T1 in t1s:
        for T2 in onto:
            rep.checked += 1
            if tiwari_inequality_holds(T1, T2, d, p, variant):
                sat.append((T1, T2))
    rep.details["satisfying_pairs"] = sat
    for T1, T2 in sat:
        if not (T1.is_identity() and T2.is_identity()):
            rep.violations.append((T1, T2))
    if p.alpha > 1 and n >= 2 and sat:
        rep.violations.extend(x for x in sat if x not in rep.violations)
    rep.confirmed = not rep.violations
    return rep


def quasi_orbit_theorem_check(X: DigitalImage, budget: int = 10**7) -> SweepReport:
    """Every quasi-contraction under the path metric: all orbits end at its unique fixed point."""
    if not is_connected(X):
        raise HypothesisError("X is connected")
    d = ShortestPathMetric(X)
    n = len(X)
    if n ** n > budget:
        return SweepReport("quasi-orbit", False, 0, budget_exceeded=True)
    rep = SweepReport("quasi-orbit", True, 0)
    quasi = 0
    for S in all_self_maps(X):
        rep.checked += 1
        if not is_quasi_contraction(S, d).satisfied:
            continue
        quasi += 1
        fix = fixed_points(S)
        if len(fix) != 1:
            rep.violations.append((S, "fixed points", fix))
            continue
        u = fix[0]
        for x in X.points:
            orb = iterate_orbit(S, x, n)
            if orb.eventual != u:
                rep.violations.append((S, "orbit", x))
                break
    rep.details["quasi_contractions"] = quasi
    rep.confirmed = not rep.violations
    return rep


def m_of(x: Sequence[int], y: Sequence[int], S: SelfMap, T: SelfMap, A: SelfMap, B: SelfMap,
         d: Metric):
    """max{d(Sx,Ty), d(By,Sx), d(Sx,Ax), d(By,Ty), d(Ax,Ty), 2d(Sx,Ax)/(1+d(By,Ty))}."""
    dist = d.distance
    sx, ty, ax, by = S(x), T(y), A(x), B(y)
    terms = [dist(sx, ty), dist(by, sx), dist(sx, ax), dist(by, ty), dist(ax, ty)]
    num, den = 2 * dist(sx, ax), 1 + dist(by, ty)
    terms.append(Fraction(num, den) if isinstance(num, int) and isinstance(den, int) else num / den)
    return max(terms)


@dataclass(frozen=True)
class PairWeightTable:
    image: DigitalImage
    weights: Mapping[tuple[Point, Point], float]

    def __post_init__(self) -> None:
        for x in self.image.points:
            for y in self.image.points:
                if (x, y) not in self.weights:
                    raise ContractionError(f"weight table is missing ({x}, {y})")
                if self.weights[(x, y)] < 0:
                    raise ContractionError("weights must be non-negative")

    @classmethod
    def constant(cls, image: DigitalImage, value) -> "PairWeightTable":
        return cls(image, {(x, y): value for x in image.points for y in image.points})

    def __call__(self, x, y):
        return self.weights[(tuple(x), tuple(y))]


def is_alpha_admissible(T: SelfMap, w: PairWeightTable) -> bool:
    """alpha(x,y) >= 1 implies alpha(Tx,Ty) >= 1, for all pairs."""
    if w.image != T.source:
        raise ContractionError("weight table and map live on different images")
    for x in T.source.points:
        for y in T.source.points:
            if w(x, y) >= 1 and not w(T(x), T(y)) >= 1:
                return False
    return True
