"""Elimination screens for possible counterexamples to the claim that the
balanced complete bipartite graph has the most cycles among triangle-free
graphs on ``n`` vertices, plus an exhaustive checker for small ``n``.

Every screen produces :class:`CandidateRecord` values. A record lists each
bound that was tried, in order, and is marked eliminated by the first one that
falls strictly below the exact Turan count stored alongside it, so a verdict
can be re-checked from the record alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterable, Sequence

import mpmath

from .bounds import (
    LOG_DPS,
    LogBound,
    below,
    edge_bound,
    edge_bound_literal,
    edge_bound_log,
    exact_upper,
    hmorph_bound,
    hmorph_bound_log,
    pi_max_product,
    turan_log_lower_cutoff,
)
from .cycles import count_cycles, turan_cycle_count
from .graph import Graph, GraphError, gamma_blowup, is_complete_bipartite, make_blowup
from .permanent import BlockMatrixSpec, block_permanent, cycle_block_permanent

EXACT_COUNT = "exact-count"


@lru_cache(maxsize=None)
def turan(n: int) -> int:
    return turan_cycle_count(n)


# --- records ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundValue:
    """One bound applied to a candidate: an exact integer or a natural log."""

    name: str
    value: int | None = None
    ln_value: str | None = None

    def __post_init__(self):
        if (self.value is None) == (self.ln_value is None):
            raise ValueError("a bound carries exactly one of value / ln_value")

    def is_below(self, turan_count: int) -> bool:
        if self.value is not None:
            return self.value < turan_count
        with mpmath.workdps(LOG_DPS):
            return mpmath.mpf(self.ln_value) < mpmath.log(mpmath.mpf(turan_count))

    def to_json(self) -> dict:
        if self.value is not None:
            return {"name": self.name, "value": str(self.value)}
        return {"ln_value": self.ln_value, "name": self.name}

    @classmethod
    def from_json(cls, data: dict) -> "BoundValue":
        if "value" in data:
            return cls(data["name"], value=int(data["value"]))
        return cls(data["name"], ln_value=data["ln_value"])

    def render(self) -> str:
        return str(self.value) if self.value is not None else f"exp({self.ln_value})"


def _log_entry(name: str, bound: LogBound) -> BoundValue:
    return BoundValue(name, ln_value=mpmath.nstr(bound.ln_value, 20))


@dataclass(frozen=True)
class CandidateRecord:
    family: str  # regular-pair | gamma-blowup | near-regular-shape | explicit-graph
    params: tuple[tuple[str, object], ...]
    turan: int
    bounds: tuple[BoundValue, ...] = ()
    verdict: str = "survivor"

    def __post_init__(self):
        if self.verdict != "survivor":
            name = self.verdict.removeprefix("eliminated-by-")
            hit = [b for b in self.bounds if b.name == name]
            if not hit or not hit[0].is_below(self.turan):
                raise ValueError(f"verdict {self.verdict} not backed by a bound below {self.turan}")

    @property
    def n(self) -> int:
        return dict(self.params)["n"]

    @property
    def eliminated(self) -> bool:
        return self.verdict != "survivor"

    @property
    def survived_bounds(self) -> bool:
        """Not eliminated by any bound other than an exact count."""
        return self.verdict in ("survivor", f"eliminated-by-{EXACT_COUNT}")

    def bound(self, name: str) -> BoundValue | None:
        return next((b for b in self.bounds if b.name == name), None)

    def with_bound(self, entry: BoundValue) -> "CandidateRecord":
        """Append a bound; the verdict switches to it if it eliminates."""
        verdict = self.verdict
        if verdict == "survivor" and entry.is_below(self.turan):
            verdict = f"eliminated-by-{entry.name}"
        return CandidateRecord(self.family, self.params, self.turan, self.bounds + (entry,), verdict)

    def comparison(self) -> str:
        if not self.eliminated:
            return ""
        b = self.bound(self.verdict.removeprefix("eliminated-by-"))
        return f"{b.render()} < {self.turan}"

    def to_json(self) -> str:
        data = {
            "bounds": [b.to_json() for b in self.bounds],
            "family": self.family,
            "params": {k: _json_param(v) for k, v in self.params},
            "turan": str(self.turan),
            "verdict": self.verdict,
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "CandidateRecord":
        data = json.loads(line)
        raw = data["params"]
        params = tuple((k, _param_from_json(raw[k])) for k in _PARAM_ORDER if k in raw)
        return cls(
            data["family"],
            params,
            int(data["turan"]),
            tuple(BoundValue.from_json(b) for b in data["bounds"]),
            data["verdict"],
        )


_PARAM_ORDER = ("n", "delta", "Delta", "m", "i", "t", "sizes", "labellings", "cap")


def _params(**kwargs) -> tuple[tuple[str, object], ...]:
    return tuple((k, kwargs[k]) for k in _PARAM_ORDER if k in kwargs)


def _json_param(v):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def _param_from_json(v):
    return tuple(v) if isinstance(v, list) else v


def summary(records: Sequence[CandidateRecord]) -> str:
    total = len(records)
    through = [r for r in records if r.survived_bounds]
    line = f"{total} candidates, {total - len(through)} eliminated, {len(through)} survivors"
    counted = [r for r in through if r.bound(EXACT_COUNT)]
    if counted:
        beaten = sum(r.eliminated for r in counted)
        line += f"; exact count below Turan for {beaten} of {len(counted)} survivors"
    return line


def records_table(records: Sequence[CandidateRecord]) -> list[list[str]]:
    """Rows (with header) carrying the same data as the JSON form."""
    rows = [["family", "params", "turan", "bounds", "verdict", "comparison"]]
    for r in records:
        rows.append(
            [
                r.family,
                " ".join(f"{k}={_render_param(v)}" for k, v in r.params),
                str(r.turan),
                "; ".join(f"{b.name}={b.render()}" for b in r.bounds),
                r.verdict,
                r.comparison(),
            ]
        )
    return rows


def _render_param(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


# --- minimum-degree thresholds ----------------------------------------------


@dataclass(frozen=True)
class Threshold:
    fraction: Fraction
    implication: str
    gamma_index: int | None = None  # homomorphic to Gamma_{gamma_index}


@dataclass(frozen=True)
class DegreeThresholds:
    """``delta(G) > fraction * n`` implies the stated structure for triangle-free ``G``."""

    entries: tuple[Threshold, ...]

    def homomorphism(self, i: int) -> Fraction:
        """Fraction above which ``G`` is homomorphic to ``Gamma_i``."""
        for e in self.entries:
            if e.gamma_index == i:
                return e.fraction
        raise KeyError(i)

    def by_implication(self, implication: str) -> Fraction:
        for e in self.entries:
            if e.implication == implication:
                return e.fraction
        raise KeyError(implication)


def thresholds() -> DegreeThresholds:
    entries = [
        Threshold(Fraction(i, 3 * i - 1), f"homomorphic to Gamma_{i - 1}", i - 1)
        for i in range(2, 11)
    ]
    entries += [
        Threshold(Fraction(2, 5), "bipartite"),
        Threshold(Fraction(10, 29), "3-colourable"),
        Threshold(Fraction(1, 3), "4-colourable"),
    ]
    return DegreeThresholds(tuple(entries))


def near_regular_caps() -> list[Fraction]:
    """Degree caps for near-regular graphs outside each structural class, in the
    order they are tightened: not homomorphic to Gamma_2..Gamma_7, not
    3-colourable, not 4-colourable."""
    table = thresholds()
    caps = [table.homomorphism(i) for i in range(2, 8)]
    return caps + [table.by_implication("3-colourable"), table.by_implication("4-colourable")]


# --- regular graphs: gamma blowups -----------------------------------------

GAMMA_INDICES = range(2, 10)
# Stage A is run for every blowup on at most this many vertices; each family's
# closed-form bound has a smaller coefficient of n than the Turan bound, so the
# eliminations found past the last survivor persist.
GAMMA_HORIZON = 300


def _gamma_girth(i: int, t: int) -> int:
    return 5 if (i, t) == (2, 1) else 4


def gamma_stage_a(i: int, t: int) -> CandidateRecord:
    """Closed-form log bounds against the cut-off Turan bound: the homomorphism
    bound always, the edge bound too where its closed form applies
    (``3n-7 < m``). The smaller one decides."""
    p = 3 * i - 1
    n, m = p * t, p * i * t * t // 2
    g = _gamma_girth(i, t)
    uppers = [("hmorph-log", hmorph_bound_log(n, p, i, g))]
    if 3 * n - 7 < m < comb(n, 2):
        uppers.append(("edge-log", edge_bound_log(n, m, g)))
    name, best = min(uppers, key=lambda u: u[1].ln_value)
    verdict = f"eliminated-by-{name}" if below(best, turan_log_lower_cutoff(n)) else "survivor"
    return CandidateRecord(
        "gamma-blowup",
        _params(n=n, m=m, i=i, t=t),
        turan(n),
        tuple(_log_entry(nm, b) for nm, b in uppers),
        verdict,
    )


def regular_gamma_screen(threads: int | None = None) -> list[CandidateRecord]:
    """Blowups ``Gamma_i(t)``, ``2 <= i <= 9``, through four stages.

    A: closed-form log bounds; B: the edge bound with ``Pi(n, m)``; C: the
    block-permanent bound; D: an exact cycle count.
    """
    out = []
    for i in GAMMA_INDICES:
        p = 3 * i - 1
        for t in range(1, GAMMA_HORIZON // p + 1):
            rec = gamma_stage_a(i, t)
            n, m = p * t, p * i * t * t // 2
            g = _gamma_girth(i, t)
            if not rec.eliminated:
                rec = rec.with_bound(BoundValue("edge-pi-n", value=edge_bound_literal(n, m, g)))
            if not rec.eliminated:
                bound = block_permanent(BlockMatrixSpec.from_blowup(gamma_blowup(i, t)), threads) // 2
                rec = rec.with_bound(BoundValue("perm-block", value=bound))
            if not rec.eliminated:
                exact = count_cycles(make_blowup(gamma_blowup(i, t)))
                rec = rec.with_bound(BoundValue(EXACT_COUNT, value=exact))
            out.append(rec)
    return sorted(out, key=lambda r: (dict(r.params)["i"], dict(r.params)["t"]))


def stage_of(rec: CandidateRecord) -> str:
    """Stage letter that decided a gamma-blowup record (``""`` for survivors)."""
    stages = {"edge-log": "A", "hmorph-log": "A", "edge-pi-n": "B", "perm-block": "C", EXACT_COUNT: "D"}
    return stages.get(rec.verdict.removeprefix("eliminated-by-"), "")


# --- regular graphs: (n, delta) pairs --------------------------------------

REGULAR_MAX_N = 61


def regular_pairs() -> list[tuple[int, int]]:
    """``(n, delta)`` with ``3 <= n <= 61``, ``2 <= delta <= 10n/29``, ``n delta`` even."""
    return [
        (n, d)
        for n in range(3, REGULAR_MAX_N + 1)
        for d in range(2, 10 * n // 29 + 1)
        if n * d % 2 == 0
    ]


def _bregman_cycle_bound(n: int, d: int) -> int:
    """``floor(((d+1)!)^(n/(d+1)) / 2)``: the permanent of ``A + I`` for a
    ``d``-regular graph is at most the Bregman-Minc product, and cycles are at
    most half that permanent."""
    r = d + 1
    x = factorial(r) ** n
    # integer r-th root, floored
    root = int(mpmath.floor(mpmath.root(mpmath.mpf(x), r)))
    while root**r > x:
        root -= 1
    while (root + 1) ** r <= x:
        root += 1
    return root // 2


def regular_degree_screen() -> list[CandidateRecord]:
    """Every admissible ``(n, delta)`` pair, screened with the edge bound at
    ``m = n delta / 2`` and, where that is not enough, a degree-specific bound.

    The fallback is a union-of-cycles count (``floor(n/4)``) for ``delta = 2``,
    since a triangle-free 2-regular graph is a disjoint union of cycles of
    length at least 4, and the Bregman-Minc permanent bound otherwise.
    """
    out = []
    for n, d in regular_pairs():
        m = n * d // 2
        rec = CandidateRecord("regular-pair", _params(n=n, delta=d, m=m), turan(n))
        rec = rec.with_bound(BoundValue("edge-bound", value=edge_bound(n, m, 4)))
        if not rec.eliminated:
            if d == 2:
                rec = rec.with_bound(BoundValue("cycle-union", value=n // 4))
            else:
                rec = rec.with_bound(BoundValue("perm-bregman", value=_bregman_cycle_bound(n, d)))
        out.append(rec)
    return out


# --- near-regular graphs ----------------------------------------------------

NEAR_REGULAR_PRECURSOR_MAX = 1200
NEAR_REGULAR_MAX_N = 804


def near_regular_precursor() -> int:
    """Largest ``n`` for which the closed-form edge bound at the densest
    near-regular edge count ``n^2/5 + (n-1)/2`` is not below the cut-off Turan
    bound."""
    best = 0
    for n in range(5, NEAR_REGULAR_PRECURSOR_MAX + 1):
        m = Fraction(n * n, 5) + Fraction(n - 1, 2)
        if not 3 * n - 7 < m < comb(n, 2):
            best = n
            continue
        if not below(edge_bound_log(n, m, 4), turan_log_lower_cutoff(n)):
            best = n
    return best


def _near_regular_feasible(n: int, cap: Fraction | None, strict_pi: bool) -> int | None:
    """Largest feasible edge count at ``n``, or None.

    ``Pi(n, m)`` never decreases with ``m``, so the program is feasible at ``n``
    exactly when it is feasible at the largest edge count allowed: the largest
    ``delta`` and as many high-degree vertices as parity permits.
    """
    top = Fraction(2 * n, 5) if cap is None else min(Fraction(2 * n, 5), cap * n)
    d = int(top)
    if d < 2:
        return None
    # n_low in {1, 2}: the degree sum n_low*d + (n - n_low)*(d + 1) must be even
    n_low = 1 if (n * (d + 1) - 1) % 2 == 0 else 2
    if n_low >= n:
        return None
    m = (n * (d + 1) - n_low) // 2
    pi_n = n - 1 if strict_pi else n
    if pi_n < 3 or m > comb(pi_n, 2):
        return None
    if pi_max_product(pi_n, m).value * n * n < 8 * turan(n):
        return None
    return m


def near_regular_bound(cap: Fraction | None = None, strict_pi: bool = False) -> int:
    """Largest ``n <= 804`` satisfying the near-regular constraint program, 0 if none.

    ``cap`` adds ``delta <= cap * n``. ``strict_pi`` swaps ``Pi(n, m)`` for the
    sharper ``Pi(n-1, m)`` of the edge bound.
    """
    if cap is not None:
        cap = Fraction(cap)
    best = 0
    for n in range(4, NEAR_REGULAR_MAX_N + 1):
        if _near_regular_feasible(n, cap, strict_pi) is not None:
            best = n
    return best


def near_regular_screen(strict_pi: bool = False) -> list[CandidateRecord]:
    """One record per cap (uncapped first) giving the largest feasible ``n``."""
    out = []
    for cap in [None] + near_regular_caps():
        n = near_regular_bound(cap, strict_pi)
        rec = CandidateRecord(
            "near-regular-shape",
            _params(n=n, cap=str(cap) if cap is not None else "2/5"),
            turan(n) if n >= 2 else 0,
        )
        m = _near_regular_feasible(n, cap, strict_pi) if n else None
        if m is not None:
            pi_n = n - 1 if strict_pi else n
            value = pi_max_product(pi_n, m).value * n * n // 8
            rec = rec.with_bound(BoundValue("edge-pi-n" if not strict_pi else "edge-bound", value=value))
        out.append(rec)
    return out


# --- near-regular blowups of the 5-cycle -----------------------------------

# Gamma_2 vertex labels in cyclic order: v1 ~ v3 ~ v5 ~ v2 ~ v4 ~ v1
GTWO_RING = (0, 2, 4, 1, 3)


def gtwo_degrees(sizes: Sequence[int]) -> list[int]:
    """Degree of a vertex in each part of ``Gamma_2(sizes)``."""
    return [sizes[(j + 2) % 5] + sizes[(j + 3) % 5] for j in range(5)]


def gtwo_relabellings(sizes: Sequence[int]) -> set[tuple[int, ...]]:
    """Part-size vectors of all blowups obtained by an automorphism of ``Gamma_2``."""
    ring = [sizes[v] for v in GTWO_RING]
    out = set()
    for k in range(5):
        for seq in (ring[k:] + ring[:k], (ring[k:] + ring[:k])[::-1]):
            labelled = [0] * 5
            for pos, v in enumerate(GTWO_RING):
                labelled[v] = seq[pos]
            out.add(tuple(labelled))
    return out


def gtwo_shapes(max_n: int) -> list[tuple[int, ...]]:
    """All ``(n_1..n_5)`` with positive entries, not all equal, total at most
    ``max_n``, and adjacent parts differing by at most one."""
    pairs = [(2, 4), (3, 0), (4, 1), (0, 2), (1, 3)]
    out = []
    for low in range(1, max_n // 5 + 1):
        for offsets in product(range(3), repeat=5):
            if min(offsets) != 0 or max(offsets) == 0:
                continue
            sizes = tuple(low + o for o in offsets)
            if sum(sizes) > max_n:
                continue
            if all(abs(sizes[a] - sizes[b]) <= 1 for a, b in pairs):
                out.append(sizes)
    return sorted(out)


def gtwo_cap(limit: int = 400) -> int:
    """Largest ``n`` at which the homomorphism bound for ``Gamma_2(floor((n+6)/5))``
    is not below the cut-off Turan bound."""
    best = 0
    for n in range(6, limit + 1):
        big = 5 * ((n + 6) // 5)
        upper = exact_upper(hmorph_bound(big, 5, 2, 4))
        if not below(upper, turan_log_lower_cutoff(n)):
            best = n
    return best


def gtwo_blowup_screen(cap: int | None = None) -> list[CandidateRecord]:
    """Near-regular ``Gamma_2(n_1..n_5)`` up to the cap, one record per
    isomorphism class, represented by its lexicographically least labelling.

    Bounds, in order: the edge bound with ``Pi(n, m)``, the block-permanent
    bound, and for whatever survives, the exact cycle count.
    """
    if cap is None:
        cap = gtwo_cap()
    classes: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for sizes in gtwo_shapes(cap):
        degrees = gtwo_degrees(sizes)
        if max(degrees) - min(degrees) != 1:
            continue
        rep = min(gtwo_relabellings(sizes))
        classes.setdefault(rep, []).append(sizes)
    out = []
    for rep in sorted(classes, key=lambda s: (sum(s), s)):
        spec = gamma_blowup(2, rep)
        n, m = spec.n, spec.m
        degrees = gtwo_degrees(rep)
        rec = CandidateRecord(
            "near-regular-shape",
            _params(n=n, delta=min(degrees), Delta=max(degrees), m=m, sizes=rep,
                    labellings=len(classes[rep])),
            turan(n),
        )
        rec = rec.with_bound(BoundValue("edge-pi-n", value=edge_bound_literal(n, m, 4)))
        if not rec.eliminated:
            perm = cycle_block_permanent(BlockMatrixSpec.from_blowup(spec))
            rec = rec.with_bound(BoundValue("perm-block", value=perm // 2))
        if not rec.eliminated:
            rec = rec.with_bound(BoundValue(EXACT_COUNT, value=count_cycles(make_blowup(spec))))
        out.append(rec)
    return out


# --- exhaustive check for small n -------------------------------------------

VERIFY_MAX_N = 8
VERIFY_SAFE_N = 7


class GuardError(GraphError):
    """A request beyond the desk-scale limit without an explicit override."""


@dataclass(frozen=True)
class VerifyReport:
    n: int
    graphs: int  # graphs whose cycles were counted
    max_cycles: int
    turan: int
    maximizers: int
    unique: bool  # every maximizer is T(n, 2)
    maximal_only: bool

    @property
    def ok(self) -> bool:
        return self.max_cycles == self.turan and self.unique


def triangle_free_graphs(n: int) -> Iterable[tuple[int, ...]]:
    """Adjacency masks of every labelled triangle-free graph on ``n`` vertices.

    Edge slots ``(u, v)``, ``u < v``, are decided in lexicographic order; an
    edge is only added when its ends have no common neighbour yet.
    """
    slots = list(combinations(range(n), 2))
    adj = [0] * n

    def go(k: int):
        if k == len(slots):
            yield tuple(adj)
            return
        u, v = slots[k]
        yield from go(k + 1)
        if not adj[u] & adj[v]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            yield from go(k + 1)
            adj[u] ^= 1 << v
            adj[v] ^= 1 << u

    return go(0)


def _is_maximal(n: int, adj: Sequence[int]) -> bool:
    return all(adj[u] >> v & 1 or adj[u] & adj[v] for u, v in combinations(range(n), 2))


def verify_conjecture(
    max_n: int, min_n: int = 4, allow_large: bool = False, maximal_only: bool = False
) -> list[VerifyReport]:
    """Exhaustive check that ``T(n, 2)`` is the unique cycle-maximal
    triangle-free graph for ``min_n <= n <= max_n``.

    ``maximal_only`` counts cycles only in maximal triangle-free graphs, which
    is enough because a cycle-maximal graph has every edge in a 4-cycle and is
    maximal triangle-free.
    """
    if max_n < 4 or min_n < 4:
        raise GuardError("verification starts at n = 4")
    limit = VERIFY_MAX_N if maximal_only else VERIFY_SAFE_N
    if max_n > limit and not allow_large:
        raise GuardError(f"n = {max_n} is beyond desk scale (limit {limit}); pass the override")
    out = []
    for n in range(min_n, max_n + 1):
        best, hits, counted = -1, [], 0
        for adj in triangle_free_graphs(n):
            if maximal_only and not _is_maximal(n, adj):
                continue
            counted += 1
            c = count_cycles(Graph(n, adj))
            if c > best:
                best, hits = c, [adj]
            elif c == best:
                hits.append(adj)
        parts = (n // 2, n - n // 2)
        unique = all(is_complete_bipartite(Graph(n, adj)) == parts for adj in hits)
        out.append(VerifyReport(n, counted, best, turan(n), len(hits), unique, maximal_only))
    return out
