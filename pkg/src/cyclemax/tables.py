"""Reference table of exact cycle counts and permanent bounds, sorted by ``n``.

Each row is regenerated from scratch and compared digit for digit with the
stored value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import complete_bipartite_cycle_count, count_cycles
from .graph import gamma_blowup, make_cycle
from .permanent import cycle_bound_blowup


@dataclass(frozen=True)
class TableRow:
    label: str
    n: int
    value: int
    kind: str  # "exact" or "bound"
    family: str  # "cycle", "bipartite" or "gamma"
    args: tuple[int, ...]


def _k(a: int, b: int, value: int) -> TableRow:
    return TableRow(f"K_{{{a},{b}}}", a + b, value, "exact", "bipartite", (a, b))


def _g(i: int, t: int, value: int) -> TableRow:
    label = f"Gamma_{i}" if t == 1 else f"Gamma_{i}({t})"
    return TableRow(label, (3 * i - 1) * t, value, "bound", "gamma", (i, t))


GOLDEN: tuple[TableRow, ...] = (
    TableRow("Gamma_2=C_5", 5, 1, "exact", "cycle", (5,)),
    _k(2, 3, 3),
    _g(3, 1, 130),
    _k(4, 4, 204),
    _g(2, 2, 2876),
    _k(5, 5, 3940),
    _g(4, 1, 6151),
    _k(5, 6, 15390),
    _g(5, 1, 602261),
    _k(7, 7, 4662231),
    _g(2, 3, 12782394),
    _k(7, 8, 24864588),
    _g(3, 2, 36552880),
    _k(8, 8, 256485040),
    _g(6, 1, 104770595),
    _k(8, 9, 1549436112),
    _g(7, 1, 29685072610),
    _g(2, 4, 275455237776),
    _k(10, 10, 1623855701385),
    _g(4, 2, 3544330396616),
    _k(11, 11, 177195820499335),
    _g(3, 3, 504887523966914),
    _k(12, 12, 23237493232953516),
    _g(2, 5, 19610234100506750),
    _k(12, 13, 205717367581496628),
    _g(5, 2, 1583204062862484492),
    _k(14, 14, 653193551573628900289),
    _g(2, 6, 3664979770718930748156),
    _k(15, 15, 136634950180317224866335),
    _g(3, 4, 93314267145221727988928),
    _k(16, 16, 32681589590709963123092160),
    _g(4, 3, 472536908624040051159801),
    _k(16, 17, 380842679006967756257282880),
    _g(2, 7, 1538132015230964742594686226),
    _k(17, 18, 109481704025024759751150754248),
    _g(3, 5, 121876741093584265201282594275138),
    _g(2, 8, 1295546973219341717643333826977344),
    _k(20, 20, 350014073794168154275473348323458540),
    _g(2, 9, 2011552320593475430049513125845530235126),
    _k(22, 23, 1072464279544434376131539091650605148971323),
    _g(3, 6, 765658164243897411689143843074192950614512),
    _k(24, 24, 18847819366080117996802964862587612140097642544),
    _g(2, 10, 5387065180713482750668088096305965320151649500),
    _k(25, 25, 11294267336237005395453340472970226376143920186000),
    _g(3, 7, 17877864251518595245276779749582885338633210045796098),
    _k(28, 28, 3883426377993747808177077817275217253080577404858001996940),
)


def compute(row: TableRow, threads: int | None = None) -> int:
    if row.family == "cycle":
        return count_cycles(make_cycle(*row.args))
    if row.family == "bipartite":
        return complete_bipartite_cycle_count(*row.args)
    i, t = row.args
    return cycle_bound_blowup(gamma_blowup(i, t), threads)


def regenerate(threads: int | None = None) -> list[tuple[TableRow, int]]:
    """Every row with its freshly computed value, stably sorted by ``n``."""
    rows = sorted(GOLDEN, key=lambda r: r.n)
    return [(row, compute(row, threads)) for row in rows]


def diff(results: list[tuple[TableRow, int]]) -> list[str]:
    return [
        f"{row.label} (n={row.n}): expected {row.value}, got {got}"
        for row, got in results
        if got != row.value
    ]
