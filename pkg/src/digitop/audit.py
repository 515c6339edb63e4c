"""Registry of critiqued fixed-point assertions and their executable evidence.

Each record carries one or more verdicts, and each verdict is backed by an
evidence item of the matching kind. Running a record executes every
non-documentary evidence item; documentary items only contribute citations.
"""

from __future__ import annotations

import enum
import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .compatibility import coincidence_points, is_weakly_compatible
from .contraction import (PairWeightTable, SweepReport, TiwariParams, contraction_constancy_check,
                          is_alpha_admissible, quasi_orbit_theorem_check, rani_common_fixed_point,
                          rani_triviality_check, theta_constancy_check, tiwari_trivialization_check,
                          verify_constant_forcing)
from .errors import DigitopError
from .freezing import DEFAULT_BUDGET, Verdict as FreezeVerdict, check_retract_exclusion, is_freezing_set
from .image import CU, DigitalImage, interval, rectangle
from .maps import (EnumerationConstraints, SelfMap, all_self_maps, collect_maps, is_continuous,
                   is_retraction)
from .metrics import LpMetric, SequenceStatus, ShortestPathMetric, analyze_sequence

DEFAULT_PREFIX = 50


class AuditError(DigitopError):
    pass


class BudgetExhausted(AuditError):
    pass


class AssertionVerdict(enum.Enum):
    REFUTED = "REFUTED"
    UNPROVEN = "UNPROVEN"
    TRIVIALIZES = "TRIVIALIZES"
    DUPLICATE = "DUPLICATE"


class EvidenceKind(enum.Enum):
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    SWEEP = "SWEEP"
    GAP_DEMO = "GAP_DEMO"
    DOC_ONLY = "DOC_ONLY"


ALLOWED_EVIDENCE = {
    AssertionVerdict.REFUTED: {EvidenceKind.COUNTEREXAMPLE},
    AssertionVerdict.TRIVIALIZES: {EvidenceKind.SWEEP},
    AssertionVerdict.UNPROVEN: {EvidenceKind.GAP_DEMO, EvidenceKind.DOC_ONLY},
    AssertionVerdict.DUPLICATE: {EvidenceKind.DOC_ONLY},
}


class AuditStatus(enum.Enum):
    CONFIRMED = "CONFIRMED"
    FAILED = "FAILED"
    SKIPPED_DOC_ONLY = "SKIPPED_DOC_ONLY"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class Context:
    """Resources handed to an evidence runner."""

    budget: int
    prefix: int
    notes: list[str] = field(default_factory=list)


Runner = Callable[[Context], list[Check]]


@dataclass(frozen=True)
class Evidence:
    kind: EvidenceKind
    summary: str
    run: Runner | None = None


@dataclass(frozen=True)
class AssertionRecord:
    id: str
    source: str
    statement: str
    verdicts: tuple[AssertionVerdict, ...]
    evidence: tuple[Evidence, ...]

    @property
    def verdict(self) -> AssertionVerdict:
        return self.verdicts[0]

    @property
    def verdict_label(self) -> str:
        return "+".join(v.value for v in self.verdicts)

    @property
    def doc_only(self) -> bool:
        return all(e.kind is EvidenceKind.DOC_ONLY for e in self.evidence)

    @property
    def citations(self) -> list[str]:
        return [e.summary for e in self.evidence if e.kind is EvidenceKind.DOC_ONLY]

    def consistency_errors(self) -> list[str]:
        errs = []
        for v in self.verdicts:
            if not any(e.kind in ALLOWED_EVIDENCE[v] for e in self.evidence):
                errs.append(f"{self.id}: verdict {v.value} has no evidence of kind "
                            f"{'/'.join(sorted(k.value for k in ALLOWED_EVIDENCE[v]))}")
        allowed = set().union(*(ALLOWED_EVIDENCE[v] for v in self.verdicts))
        for e in self.evidence:
            if e.kind not in allowed:
                errs.append(f"{self.id}: evidence {e.kind.value} backs none of its verdicts")
            if (e.kind is EvidenceKind.DOC_ONLY) != (e.run is None):
                errs.append(f"{self.id}: {e.kind.value} evidence must "
                            f"{'not ' if e.kind is EvidenceKind.DOC_ONLY else ''}be executable")
        return errs


@dataclass
class AuditReport:
    id: str
    verdict: str
    status: AuditStatus
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    citations: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def confirmed(self) -> bool:
        return self.status is AuditStatus.CONFIRMED

    def lines(self) -> list[str]:
        out = [f"id={self.id} verdict={self.verdict} status={self.status.value}"]
        for c in self.checks:
            out.append(f"  check={c.name} pass={'true' if c.passed else 'false'} {c.detail}".rstrip())
        out.extend(f"  cite={c}" for c in self.citations)
        out.extend(f"  note={n}" for n in self.notes)
        return out

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "verdict": self.verdict,
            "status": self.status.value,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "citations": list(self.citations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# shared fixtures and helpers


def _sweep_images() -> list[DigitalImage]:
    """Small connected images used by the triviality sweeps."""
    return [
        interval(0, 2),
        interval(0, 3),
        rectangle(1, 1, adjacency=1),
        rectangle(1, 1, adjacency=2),
        DigitalImage.from_points([(0, 0), (1, 0), (1, 1)], 1),
    ]


def _describe(X: DigitalImage) -> str:
    lo = [min(p[k] for p in X.points) for k in range(X.dimension)]
    hi = [max(p[k] for p in X.points) for k in range(X.dimension)]
    box = "x".join(f"[{a},{b}]" for a, b in zip(lo, hi))
    return f"{box}/{X.adjacency}/n={len(X)}"


def _sweep_check(rep: SweepReport, label: str) -> Check:
    if rep.budget_exceeded:
        raise BudgetExhausted(f"{label}: budget exceeded after {rep.checked} cases")
    extra = " ".join(f"{k}={v}" for k, v in sorted(rep.details.items())
                     if isinstance(v, (int, str)))
    detail = f"checked={rep.checked} violations={len(rep.violations)}"
    if extra:
        detail += " " + extra
    return Check(label, rep.confirmed, detail)


def _metric_pairs(X: DigitalImage):
    yield "spath", ShortestPathMetric(X)
    if X.adjacency == CU(1):
        yield "lp:1", LpMetric(X, 1)
        yield "lp:2", LpMetric(X, 2)


# ---------------------------------------------------------------------------
# counterexamples


def _sug31(ctx: Context) -> list[Check]:
    N = ctx.prefix
    if N < 3:
        raise AuditError("the bounded prefix needs N >= 3")
    pts = range(1, N + 1)
    A = lambda x: x + 1  # noqa: E731
    B = lambda x: 2  # noqa: E731
    gamma = lambda a: Fraction(a, 2)  # noqa: E731
    ctx.notes.append(f"bounded prefix: checked on [1,{N}]; points beyond {N} are covered only by the "
                     f"analytic argument A(x) = x + 1 > x")
    a_image = {A(x) for x in pts}
    return [
        Check("B(X) within A(X)", {B(x) for x in pts} <= a_image, f"B(X)={{2}} and A(1)=2, N={N}"),
        Check("gamma(a) < a for a > 0", all(gamma(a) < a for a in range(1, N)),
              f"a in [1,{N - 1}]"),
        Check("d(Bx,By) <= gamma(d(Ax,Ay))",
              all(abs(B(x) - B(y)) <= gamma(abs(A(x) - A(y))) for x in pts for y in pts),
              f"{N * N} ordered pairs"),
        Check("A has no fixed point", all(A(x) != x for x in pts), f"x in [1,{N}]"),
        Check("no common fixed point", not any(A(x) == x == B(x) for x in pts), ""),
    ]


def _sug_ex32(ctx: Context) -> list[Check]:
    N = ctx.prefix
    maps = {"A": lambda x: x + 1, "B": lambda y: y + 1, "S": lambda x: x - 1, "T": lambda y: y - 1}
    ctx.notes.append(f"bounded prefix: checked on [1,{N}]; translations by +-1 have no fixed point anywhere")
    out = [Check(f"{name} has no fixed point", all(f(x) != x for x in range(1, N + 1)), f"x in [1,{N}]")
           for name, f in maps.items()]
    out.append(Check("no common fixed point",
                     not any(all(f(x) == x for f in maps.values()) for x in range(1, N + 1)), ""))
    return out


def _sj_ex32(ctx: Context) -> list[Check]:
    J = lambda u: 1 / (1 + Fraction(u))  # noqa: E731
    half = Fraction(1, 2)
    return [
        Check("F is not a set of lattice points", half.denominator != 1,
              "1/2 lies in F = [0,1] and is not an integer"),
        Check("J is not integer-valued", J(1).denominator != 1, f"J(1) = {J(1)}"),
    ]


def _almu25(ctx: Context) -> list[Check]:
    U = rectangle(1, 1, adjacency=2)
    a, a2, i = (0, 0), (1, 0), 1
    f = SelfMap.from_table(U, {p: ((1, 1) if p == (1, 0) else p) for p in U.points})
    hyp = f(a)[i] <= a[i] <= a2[i]
    out = [
        Check("f is continuous", is_continuous(f), "[0,1]^2 under c_2, f moves (1,0) to (1,1)"),
        Check("alpha, alpha' adjacent", U.adjacent(a, a2), f"{a} ~ {a2}"),
        Check("non-strict hypothesis holds", hyp, f"coordinate {i + 1}: 0 <= 0 <= 0"),
        Check("non-strict conclusion fails", not f(a2)[i] <= a2[i],
              f"p(f(alpha'))={f(a2)[i]} > p(alpha')={a2[i]}"),
    ]
    # the strict form is a theorem; it must survive an exhaustive check
    violations, cases = 0, 0
    b_left = ctx.budget
    for X in [interval(0, 2), interval(0, 3), rectangle(1, 1, adjacency=1), rectangle(1, 1, adjacency=2),
              rectangle(2, 1, adjacency=1)]:
        maps, res = collect_maps(X, EnumerationConstraints(pinned={}, node_budget=b_left))
        if res.budget_exceeded:
            raise BudgetExhausted("strict-form sweep exhausted the budget")
        b_left -= res.nodes
        for g in maps:
            for q, q2 in itertools.permutations(X.points, 2):
                if not X.adjacent(q, q2):
                    continue
                for k in range(X.dimension):
                    cases += 1
                    gq, gq2 = g(q)[k], g(q2)[k]
                    if gq > q[k] > q2[k] and not gq2 > q2[k]:
                        violations += 1
                    if gq < q[k] < q2[k] and not gq2 < q2[k]:
                        violations += 1
    out.append(Check("strict form holds", violations == 0, f"cases={cases} violations={violations}"))
    ctx.notes.append("the printed conclusion p_i(f(alpha)) <= p_i(alpha') is immediate by transitivity; "
                     "the counterexample targets the evident intent p_i(f(alpha')) <= p_i(alpha')")
    return out


def _almu26(ctx: Context) -> list[Check]:
    X = interval(0, 2)
    ident = SelfMap.identity(X)
    rep = is_freezing_set(X, X.points, ctx.budget)
    out = [
        Check("X is a retract of itself", is_retraction(ident, X.points), "via the identity"),
        Check("X contains a freezing set", rep.verdict is FreezeVerdict.FREEZING,
              f"A = X freezes X, nodes={rep.nodes_explored}"),
    ]
    proper = check_retract_exclusion(X, [(0,), (1,)], ctx.budget)
    out.append(Check("proper retract {0,1} is not freezing", proper.witness is not None,
                     f"witness {proper.witness}"))
    return out


# ---------------------------------------------------------------------------
# gap demonstrations


def _decreasing_not_to_zero(ctx: Context) -> list[Check]:
    N = ctx.prefix
    s = [1 + Fraction(1, n) for n in range(1, N + 1)]
    ctx.notes.append("analytic: 1 + 1/n decreases strictly to 1, not to 0; checked on n <= "
                     f"{N}")
    return [
        Check("strictly decreasing", all(a > b for a, b in zip(s, s[1:])), f"n in [1,{N}]"),
        Check("positive terms bounded below by 1", all(x > 1 for x in s), ""),
        Check("never eventually constant", len(set(s)) == len(s), "all terms distinct"),
    ]


def _dalal_cauchy(ctx: Context) -> list[Check]:
    N = ctx.prefix
    X = interval(0, N)
    d = LpMetric(X, 1)
    ys = [((k // 2),) for k in range(2 * N + 1)]
    even_gaps = [d(ys[2 * n], ys[2 * n + 1]) for n in range(N)]
    odd_gaps = [d(ys[2 * n + 1], ys[2 * n + 2]) for n in range(N)]
    verdict = analyze_sequence(ys, d)
    ctx.notes.append("y_{2n} = y_{2n+1} = n on Z: a Cauchy sequence in a uniformly discrete space is "
                     "eventually constant, and this one moves by 1 at every odd index")
    return [
        Check("d(y_2n, y_2n+1) = 0", all(g == 0 for g in even_gaps), f"n < {N}"),
        Check("d(y_2n+1, y_2n+2) = 1", all(g == 1 for g in odd_gaps), ""),
        Check("not eventually constant", verdict.status is SequenceStatus.NOT_CONSTANT_WITHIN_PREFIX,
              verdict.status.value),
    ]


def _sj215_gap(ctx: Context) -> list[Check]:
    X = interval(0, 2)
    demo = None
    for J in all_self_maps(X):
        for K in all_self_maps(X):
            vals = {J(p) for p in coincidence_points(J, K)}
            if len(vals) != 1:
                continue
            sigma = coincidence_points(J, K)
            if any(J(s) != J(K(s)) or K(J(s)) != K(s) for s in sigma):
                demo = (J, K)
                break
        if demo:
            break
    out = [Check("unique coincidence value, equations fail", demo is not None,
                 f"J={demo[0]} K={demo[1]}" if demo else "none found")]
    # with weak compatibility the conclusion does hold
    bad, seen = 0, 0
    for J in all_self_maps(X):
        for K in all_self_maps(X):
            vals = {J(p) for p in coincidence_points(J, K)}
            if len(vals) != 1 or not is_weakly_compatible(J, K)[0]:
                continue
            seen += 1
            (eta,) = vals
            common = [p for p in X.points if J(p) == p == K(p)]
            if common != [eta]:
                bad += 1
    out.append(Check("weakly compatible case holds", bad == 0, f"pairs={seen} violations={bad}"))
    ctx.notes.append("the equations do follow once weak compatibility and uniqueness are both used; "
                     "the printed argument gives no such reason")
    return out


def _sug32_gap(ctx: Context) -> list[Check]:
    X = interval(0, 2)
    ident = SelfMap.identity(X)
    zero = PairWeightTable.constant(X, 0)
    diag = PairWeightTable(X, {(x, y): (1 if x == y else 0) for x in X.points for y in X.points})
    return [
        Check("identity is admissible for alpha = 0", is_alpha_admissible(ident, zero), "alpha(x,y) = 0 < 1"),
        Check("identity is admissible for the diagonal weight", is_alpha_admissible(ident, diag),
              "alpha(0,1) = 0 < 1"),
    ]


def _tiwari33_gap(ctx: Context) -> list[Check]:
    a, b, c, e = Fraction(0), Fraction(1, 2), Fraction(0), Fraction(1)
    hyp = a >= -1 and b > 0 and c <= Fraction(1, 2) and Fraction(1, 2) < e <= 1 and a + b + c + e > 1
    den = 1 - (b + e)
    u, v = Fraction(1), Fraction(-1)
    return [
        Check("parameters satisfy the hypotheses", hyp, f"alpha={a} beta={b} gamma={c} eta={e}"),
        Check("1 - (beta + eta) <= 0", den <= 0, f"= {den}"),
        Check("division step fails for this sign", den * u >= v and not u >= v / den,
              f"{den}*{u} >= {v} but {u} < {v / den}"),
    ]


def _tiwari34_gap(ctx: Context) -> list[Check]:
    grid = [Fraction(k, 4) for k in range(0, 9)]
    admissible = [(a, b) for a in grid for b in [Fraction(k, 4) - 1 for k in range(8)]
                  if a >= 0 and b < 1 and a + b > 1]
    worst = max(1 - (a + b) for a, b in admissible)
    return [
        Check("denominator always negative", worst < 0,
              f"max 1-(alpha+beta) = {worst} over {len(admissible)} admissible grid points"),
        Check("dividing by a negative number reverses the inequality",
              Fraction(-1, 2) * 1 >= -1 and not 1 >= Fraction(-1) / Fraction(-1, 2), "u=1, v=-1, c=-1/2"),
    ]


def _tiwari35_gap(ctx: Context) -> list[Check]:
    a = b = c = Fraction(1, 2)
    h = 1 / (a + b + c)
    N = ctx.prefix
    D = [Fraction(1) if k % 2 == 0 else h for k in range(2 * N)]
    odd_ok = all(D[2 * n + 1] <= h * D[2 * n] for n in range(N))
    claimed = all(D[2 * n] <= h ** (2 * n) * D[0] for n in range(N))
    return [
        Check("hypothesis constants admissible", a >= 0 and b > 0 and c <= 1 and a + b + c > 1, f"h = {h}"),
        Check("odd-step bound holds", odd_ok, "D_2n = 1, D_2n+1 = h"),
        Check("claimed geometric bound fails", not claimed, f"D_2 = 1 > h^2 = {h * h}"),
    ]


def _rani_gap(ctx: Context) -> list[Check]:
    X = interval(0, 1)
    d = LpMetric(X, 1)
    alt = [(k % 2,) for k in range(ctx.prefix)]
    steps = [d(p, q) for p, q in zip(alt, alt[1:])]
    out = [Check("consecutive distances tending to 1 do not converge",
                 all(s == 1 for s in steps)
                 and analyze_sequence(alt, d).status is SequenceStatus.NOT_CONSTANT_WITHIN_PREFIX,
                 "0,1,0,1,... on [0,1]")]
    # the improved statement needs no digital continuity of g
    Y = DigitalImage.from_points([(0,), (1,), (2,), (3,)], 1)
    g = SelfMap.from_values(Y, [0, 3, 2, 1])
    f = SelfMap.from_values(Y, [2, 2, 2, 2])
    r = rani_common_fixed_point(f, g, LpMetric(Y, 2), "1/2")
    out.append(Check("common fixed point without digital continuity of g",
                     not is_continuous(g) and r.point == (2,), f"g={g} z={r.point}"))
    return out


# ---------------------------------------------------------------------------
# sweeps


def _constancy_sweeps(kind: str) -> Runner:
    def run(ctx: Context) -> list[Check]:
        out = []
        for X in _sweep_images():
            for name, d in _metric_pairs(X):
                if kind == "contraction":
                    rep = contraction_constancy_check(X, d, ctx.budget)
                elif kind == "theta":
                    rep = theta_constancy_check(X, d, ctx.budget)
                elif kind == "forcing":
                    rep = verify_constant_forcing(X, d, ctx.budget)
                else:
                    rep = rani_triviality_check(X, d, "1/2", ctx.budget)
                out.append(_sweep_check(rep, f"{rep.name} {_describe(X)} {name}"))
        return out
    return run


def _gh_c31(ctx: Context) -> list[Check]:
    return _constancy_sweeps("contraction")(ctx) + _constancy_sweeps("forcing")(ctx)


def _gh34(ctx: Context) -> list[Check]:
    out = []
    for X in [interval(0, 2), interval(0, 3), rectangle(1, 1, adjacency=1), rectangle(1, 1, adjacency=2)]:
        rep = quasi_orbit_theorem_check(X, ctx.budget)
        out.append(_sweep_check(rep, f"quasi-orbit {_describe(X)}"))
    return out


TIWARI_SWEEP_PARAMS = {
    1: [TiwariParams.of(alpha="1/2", beta="3/4"), TiwariParams.of(alpha=2, beta="1/2")],
    2: [TiwariParams.of(alpha="1/2", beta="3/4"), TiwariParams.of(alpha=2, beta="1/2")],
    3: [TiwariParams.of(alpha="1/4", beta="1/4", gamma="1/4", eta="3/4")],
    4: [TiwariParams.of(alpha="1/2", beta="3/4")],
    5: [TiwariParams.of(alpha="1/2", beta="1/2", gamma="1/2"), TiwariParams.of(alpha=2, beta="1/2", gamma="1/2")],
}


def _identity_coefficient(variant: int, p: TiwariParams) -> Fraction:
    return {1: p.alpha, 2: p.alpha + 2 * p.beta, 3: p.alpha, 4: p.alpha + 2 * p.beta,
            5: p.alpha + p.beta + p.gamma}[variant]


def _tiwari_sweep(variant: int) -> Runner:
    def run(ctx: Context) -> list[Check]:
        out = []
        for X in [interval(0, 2), rectangle(1, 1, adjacency=2), interval(0, 0)]:
            for name, d in [("lp:1", LpMetric(X, 1)), ("lp:2", LpMetric(X, 2))]:
                for p in TIWARI_SWEEP_PARAMS[variant]:
                    rep = tiwari_trivialization_check(X, d, variant, p, ctx.budget)
                    sat = rep.details["satisfying_pairs"]
                    label = f"{rep.name} {_describe(X)} {name} alpha={p.alpha}"
                    chk = _sweep_check(rep, label)
                    chk.detail += f" satisfying={len(sat)}"
                    # for T1 = T2 = id the inequality collapses to d(x,y) >= k d(x,y)
                    ident_ok = len(X) == 1 or _identity_coefficient(variant, p) <= 1
                    ident_in = any(a.is_identity() and b.is_identity() for a, b in sat)
                    if ident_ok != ident_in:
                        chk.passed = False
                        chk.detail += f" identity_expected={ident_ok}"
                    out.append(chk)
        return out
    return run


# ---------------------------------------------------------------------------
# registry


def _doc(text: str) -> Evidence:
    return Evidence(EvidenceKind.DOC_ONLY, text)


_R = AssertionVerdict
_K = EvidenceKind

_REGISTRY: tuple[AssertionRecord, ...] = (
    AssertionRecord(
        "ALMU-2.4", "AlmuEtAl, Theorem 2.4",
        "An isomorphism carries a freezing set to a freezing set.",
        (_R.DUPLICATE,), (_doc("duplicates BxFPsets2 Theorem 5.3"),)),
    AssertionRecord(
        "ALMU-2.5", "AlmuEtAl, Theorem 2.5",
        "Coordinate ordering is preserved along an adjacency under a continuous map (non-strict form).",
        (_R.REFUTED, _R.DUPLICATE),
        (Evidence(_K.COUNTEREXAMPLE, "non-strict inequalities fail on [0,1]^2 under c_2", _almu25),
         _doc("the strict form is BxFPsets2 Lemma 5.5"))),
    AssertionRecord(
        "ALMU-2.6", "AlmuEtAl, Theorem 2.6",
        "(i) A retract contains no freezing set; (ii) freezing sets contain every reduction point.",
        (_R.REFUTED, _R.DUPLICATE),
        (Evidence(_K.COUNTEREXAMPLE, "X is a retract of itself by the identity and is freezing", _almu26),
         _doc("item ii duplicates BxFPsets2 Corollary 5.7; the proper-retract form of item i is Theorem 5.6"))),
    AssertionRecord(
        "ALMU-3.2", "AlmuEtAl, Theorem 3.2",
        "Bd(A) in Fix(f) with Bd(A) freezing implies A in Fix(f).",
        (_R.DUPLICATE,), (_doc("immediate from upward closure; weaker than BxFPsets2 Proposition 5.12"),)),
    AssertionRecord(
        "ALMU-3.3", "AlmuEtAl, Theorem 3.3",
        "Bd of a box with all sides > 1 is a minimal freezing set under c_n.",
        (_R.DUPLICATE,), (_doc("duplicates BxFPsets2 Theorem 5.17; minimality is not proven in the source"),)),
    AssertionRecord(
        "ALMU-3.4", "AlmuEtAl, Theorem 3.4",
        "Projections of a freezing set of a normal product are freezing for the factors.",
        (_R.DUPLICATE,), (_doc("duplicates BxFPsets2 Theorem 5.18"),)),
    AssertionRecord(
        "DALAL-3.1", "DalalJAM, Theorem 3.1",
        "Four compatible self-maps under a phi-contractive condition have a unique common fixed point.",
        (_R.UNPROVEN,),
        (Evidence(_K.GAP_DEMO, "d(y_2n, y_2n+1) -> 0 does not make {y_n} Cauchy", _dalal_cauchy),
         Evidence(_K.GAP_DEMO, "a strictly decreasing positive sequence need not tend to 0",
                  _decreasing_not_to_zero))),
    AssertionRecord(
        "GH-3.1", "GayaHema, Theorem 3.1",
        "Cauchy sequences in a digital metric space are eventually constant.",
        (_R.DUPLICATE,), (_doc("duplicates HanBanach Proposition 3.5"),)),
    AssertionRecord(
        "GH-3.2", "GayaHema, Theorem 3.2",
        "Convergent sequences in a digital metric space are eventually constant at the limit.",
        (_R.DUPLICATE,), (_doc("duplicates HanBanach Proposition 3.9"),)),
    AssertionRecord(
        "GH-3.3", "GayaHema, Theorem 3.3",
        "A digital metric space is complete.",
        (_R.DUPLICATE,), (_doc("duplicates HanBanach Theorem 3.11"),)),
    AssertionRecord(
        "GH-C3.1", "GayaHema, Corollary 3.1",
        "A digital contraction under the path-length metric has a unique fixed point.",
        (_R.TRIVIALIZES,),
        (Evidence(_K.SWEEP, "contractions of connected images are constant", _gh_c31),)),
    AssertionRecord(
        "GH-3.4", "GayaHema, Theorem 3.4",
        "Orbits of a quasi-contraction converge to its unique fixed point.",
        (_R.TRIVIALIZES,),
        (Evidence(_K.SWEEP, "on connected images every orbit reaches the fixed point in finitely many steps",
                  _gh34),)),
    AssertionRecord(
        "GUPTA-3.1", "GuptaEtAl, Theorem 3.1",
        "A digital theta-contraction has a unique fixed point.",
        (_R.UNPROVEN, _R.TRIVIALIZES),
        (Evidence(_K.GAP_DEMO, "strictly decreasing distances need not reach 0", _decreasing_not_to_zero),
         Evidence(_K.SWEEP, "theta-contractions of connected images are constant", _constancy_sweeps("theta")))),
    AssertionRecord(
        "RANI-3.1", "Rani, Theorem 3.1",
        "Commuting f, g with f(X) in g(X), g continuous, d(fx,fy) <= q d(gx,gy) have a unique common "
        "fixed point.",
        (_R.UNPROVEN, _R.TRIVIALIZES),
        (Evidence(_K.GAP_DEMO, "the printed limit 1 does not give convergence; continuity of g is not needed",
                  _rani_gap),
         Evidence(_K.SWEEP, "with g digitally continuous on a connected image, f is constant",
                  _constancy_sweeps("rani")))),
    AssertionRecord(
        "SJ-2.15", "SalJha, Proposition 2.15",
        "Weakly compatible maps with a unique point of coincidence have a unique common fixed point.",
        (_R.UNPROVEN,),
        (Evidence(_K.GAP_DEMO, "the intermediate equations fail for some pair with a unique coincidence value",
                  _sj215_gap),)),
    AssertionRecord(
        "SJ-3.1", "SalJha, Theorem 3.1",
        "A four-term contractive condition with constant below 1/4 gives a unique common fixed point.",
        (_R.UNPROVEN,), (_doc("the argument depends on SJ-2.15, which is unproven"),)),
    AssertionRecord(
        "SJ-EX-3.2", "SalJha, Example 3.2",
        "J(u) = 1/(1+u) on F = [0,1] as a digital metric space example.",
        (_R.REFUTED,),
        (Evidence(_K.COUNTEREXAMPLE, "F is not a subset of Z^n and J is not integer-valued", _sj_ex32),)),
    AssertionRecord(
        "SUG-3.1", "Sug, Theorem 3.1",
        "B(X) in A(X) with d(Bx,By) <= gamma(d(Ax,Ay)) gives a unique common fixed point.",
        (_R.REFUTED,),
        (Evidence(_K.COUNTEREXAMPLE, "A(x) = x+1, B(x) = 2, gamma(x) = x/2 on N", _sug31),)),
    AssertionRecord(
        "SUG-3.2", "Sug, Theorem 3.2",
        "Four alpha-psi-phi contractive maps with occasionally weakly compatible pairs share a fixed point.",
        (_R.UNPROVEN,),
        (Evidence(_K.GAP_DEMO, "alpha-admissibility does not force alpha >= 1", _sug32_gap),)),
    AssertionRecord(
        "SUG-EX-3.2", "Sug, Example 3.2",
        "Ax = x+1, By = y+1, Sx = x-1, Ty = y-1 on N have a common fixed point.",
        (_R.REFUTED,),
        (Evidence(_K.COUNTEREXAMPLE, "none of the four maps has a fixed point", _sug_ex32),)),
    AssertionRecord(
        "SUG-M6", "Sug, definition of M_6",
        "The function class M_6 defined by integral conditions (A)-(C).",
        (_R.UNPROVEN,),
        (_doc("ill-defined: varphi is undefined, or with varphi = phi every continuous phi qualifies"),)),
    AssertionRecord(
        "TIWARI-3.1", "TiwariEtAl, Theorem 3.1",
        "Expansive pair (first inequality) has a common fixed point.",
        (_R.TRIVIALIZES,),
        (Evidence(_K.SWEEP, "positive constants and T2 onto force T1 = T2 = id", _tiwari_sweep(1)),)),
    AssertionRecord(
        "TIWARI-3.2", "TiwariEtAl, Theorem 3.2",
        "Expansive pair (second inequality) has a common fixed point.",
        (_R.TRIVIALIZES,),
        (Evidence(_K.SWEEP, "positive constants and T2 onto force T1 = T2 = id", _tiwari_sweep(2)),)),
    AssertionRecord(
        "TIWARI-3.3", "TiwariEtAl, Theorem 3.3",
        "Expansive pair (third inequality) has a common fixed point.",
        (_R.UNPROVEN, _R.TRIVIALIZES),
        (Evidence(_K.GAP_DEMO, "the hypotheses allow 1 - (beta + eta) <= 0", _tiwari33_gap),
         Evidence(_K.SWEEP, "positive constants and T2 onto force T1 = T2 = id", _tiwari_sweep(3)))),
    AssertionRecord(
        "TIWARI-3.4", "TiwariEtAl, Theorem 3.4",
        "Expansive pair (fourth inequality) has a common fixed point.",
        (_R.UNPROVEN, _R.TRIVIALIZES),
        (Evidence(_K.GAP_DEMO, "the denominator 1 - (alpha + beta) is negative", _tiwari34_gap),
         Evidence(_K.SWEEP, "positive constants and T2 onto force T1 = T2 = id", _tiwari_sweep(4)))),
    AssertionRecord(
        "TIWARI-3.5", "TiwariEtAl, Theorem 3.5",
        "Expansive pair (max-type inequality) has a common fixed point.",
        (_R.UNPROVEN, _R.TRIVIALIZES),
        (Evidence(_K.GAP_DEMO, "the induction has no even-index step", _tiwari35_gap),
         Evidence(_K.SWEEP, "positive constants and T2 onto force T1 = T2 = id", _tiwari_sweep(5)))),
)


def list_assertions() -> list[AssertionRecord]:
    return list(_REGISTRY)


def get_assertion(id: str) -> AssertionRecord:
    for r in _REGISTRY:
        if r.id == id:
            return r
    raise AuditError(f"unknown assertion id {id!r}")


def registry_errors() -> list[str]:
    errs = []
    ids = [r.id for r in _REGISTRY]
    dups = sorted({i for i in ids if ids.count(i) > 1})
    if dups:
        errs.append(f"duplicate ids: {', '.join(dups)}")
    for r in _REGISTRY:
        errs.extend(r.consistency_errors())
    return errs


def run_audit(id: str, budget: int = DEFAULT_BUDGET, prefix: int = DEFAULT_PREFIX) -> AuditReport:
    rec = get_assertion(id)
    rep = AuditReport(rec.id, rec.verdict_label, AuditStatus.SKIPPED_DOC_ONLY, citations=rec.citations)
    if rec.doc_only:
        return rep
    t0 = time.perf_counter()
    ctx = Context(budget, prefix)
    try:
        for e in rec.evidence:
            if e.run is not None:
                rep.checks.extend(e.run(ctx))
    except BudgetExhausted as exc:
        rep.checks.append(Check("budget", False, str(exc)))
    except DigitopError as exc:
        rep.checks.append(Check("evidence", False, f"{type(exc).__name__}: {exc}"))
    rep.notes = ctx.notes
    rep.elapsed = time.perf_counter() - t0
    ok = bool(rep.checks) and all(c.passed for c in rep.checks)
    rep.status = AuditStatus.CONFIRMED if ok else AuditStatus.FAILED
    return rep


def run_all(ids: Iterable[str] | None = None, budget: int = DEFAULT_BUDGET,
            prefix: int = DEFAULT_PREFIX) -> list[AuditReport]:
    return [run_audit(i, budget, prefix) for i in (ids or [r.id for r in _REGISTRY])]
