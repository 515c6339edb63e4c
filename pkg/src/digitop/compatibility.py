"""Compatibility notions for pairs of self-maps on a finite digital metric space.

Finite spaces are uniformly discrete, so a sequence with S x_n -> t and
T x_n -> t eventually has S x_n = T x_n = t: its tail runs through coincidence
points with common value t. Every sequence-based condition therefore reduces
to a statement about coincidence points, and each one below is evaluated from
its own defining expressions on those tails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DigitopError, HypothesisError
from .image import Point
from .maps import SelfMap
from .metrics import Metric, SequenceStatus, analyze_sequence


class CompatibilityError(DigitopError):
    pass


def _shared(S: SelfMap, T: SelfMap) -> None:
    if S.source != T.source:
        raise CompatibilityError("maps need a shared domain")


def coincidence_points(S: SelfMap, T: SelfMap) -> list[Point]:
    _shared(S, T)
    return [S.source.points[i] for i, (a, b) in enumerate(zip(S.images, T.images)) if a == b]


def is_weakly_compatible(S: SelfMap, T: SelfMap) -> tuple[bool, Point | None]:
    """S and T commute at every coincidence point; returns (verdict, first failing point)."""
    _shared(S, T)
    s, t = S.images, T.images
    for i in range(len(s)):
        if s[i] == t[i] and s[t[i]] != t[s[i]]:
            return False, S.source.points[i]
    return True, None


def is_occasionally_weakly_compatible(S: SelfMap, T: SelfMap) -> bool:
    """Some coincidence point exists at which S and T commute."""
    _shared(S, T)
    s, t = S.images, T.images
    return any(s[i] == t[i] and s[t[i]] == t[s[i]] for i in range(len(s)))


@dataclass
class CompatibilityReport:
    weakly_compatible: bool
    compatible: bool
    type_A: bool
    type_P: bool
    occasionally_weakly_compatible: bool
    coincidence_points: list[Point]
    failing_witness: tuple[Point, object] | None = None
    #: no coincidence point: compatibility holds vacuously, owc is false
    vacuous: bool = False

    def line(self) -> str:
        pts = ";".join(",".join(map(str, p)) for p in self.coincidence_points)
        b = lambda v: "true" if v else "false"  # noqa: E731
        return (f"wc={b(self.weakly_compatible)} compat={b(self.compatible)} "
                f"typeA={b(self.type_A)} typeP={b(self.type_P)} "
                f"owc={b(self.occasionally_weakly_compatible)} coincidence={pts or '-'}")


def compatibility_report(S: SelfMap, T: SelfMap, d: Metric) -> CompatibilityReport:
    _shared(S, T)
    if d.image != S.source:
        raise CompatibilityError("metric is bound to another image")
    s, t = S.images, T.images
    K = d.key_table
    coin = [i for i in range(len(s)) if s[i] == t[i]]

    compat, type_a, type_p = True, True, True
    witness = None
    # A constant sequence at a coincidence point x realizes the tail value
    # t = Sx = Tx; all qualifying tails yield the same limits for a given t.
    for x in coin:
        st, ts = s[t[x]], t[s[x]]
        if K[st][ts] != 0:
            compat = False
            if witness is None:
                witness = (S.source.points[x], d.distance(S.source.points[st], S.source.points[ts]))
        tt, ss = t[t[x]], s[s[x]]
        if K[st][tt] != 0 or K[ts][ss] != 0:
            type_a = False
        if K[ss][tt] != 0:
            type_p = False
    if not (compat == type_a == type_p):
        raise AssertionError(f"finite-space equivalence violated: compatible={compat}, "
                             f"type A={type_a}, type P={type_p}")
    wc, _ = is_weakly_compatible(S, T)
    return CompatibilityReport(
        weakly_compatible=wc,
        compatible=compat,
        type_A=type_a,
        type_P=type_p,
        occasionally_weakly_compatible=is_occasionally_weakly_compatible(S, T),
        coincidence_points=[S.source.points[i] for i in coin],
        failing_witness=witness,
        vacuous=not coin,
    )


@dataclass
class LimitCheck:
    holds: bool
    compatible: bool
    limit: Point
    stable_from: int
    #: prefix index where ST x_n or TS x_n misses its predicted limit
    witness_index: int | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def compat_limit_check(S: SelfMap, T: SelfMap, prefix: Sequence[Sequence[int]], d: Metric) -> LimitCheck:
    """On a prefix with S x_n and T x_n both settling at t, check ST x_n -> Tt and TS x_n -> St."""
    _shared(S, T)
    xs = [tuple(p) for p in prefix]
    sv = analyze_sequence([S(p) for p in xs], d)
    tv = analyze_sequence([T(p) for p in xs], d)
    if sv.status is not SequenceStatus.EVENTUALLY_CONSTANT or tv.status is not SequenceStatus.EVENTUALLY_CONSTANT:
        raise HypothesisError("lim S x_n = lim T x_n = t", "S x_n or T x_n is not constant on the prefix tail")
    t = S(xs[-1])
    if T(xs[-1]) != t:
        raise HypothesisError("lim S x_n = lim T x_n = t", "the two tails settle at different points")
    m = max(sv.index, tv.index)
    rep = compatibility_report(S, T, d)
    out = LimitCheck(True, rep.compatible, t, m)
    if not rep.compatible:
        out.notes.append("pair is not compatible; the conclusion is not guaranteed")
    want_st, want_ts = T(t), S(t)
    for n in range(m, len(xs)):
        if S(T(xs[n])) != want_st or T(S(xs[n])) != want_ts:
            out.holds = False
            out.witness_index = n
            break
    return out
