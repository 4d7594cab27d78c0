"""Splitting and vanishing condition tables as queryable rules.

Every row of every table is a :class:`Rule` with a stable id and the row's
condition written out.  Queries report *all* matching rows.  The tables
are sufficient conditions only: a query that matches nothing is
``NotCovered``, which says nothing about whether the group vanishes.

``[x]`` in the condition strings is the floor of x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class Rule:
    id: str
    table: str
    condition: str
    predicate: Callable[..., bool] = field(compare=False, repr=False)
    note: str = ""

    def __call__(self, *args: int) -> bool:
        return bool(self.predicate(*args))


@dataclass(frozen=True)
class VanishingVerdict:
    rules: Tuple[str, ...] = ()

    @property
    def vanishes(self) -> bool:
        return bool(self.rules)

    def __bool__(self) -> bool:
        return bool(self.rules)

    @property
    def label(self) -> str:
        return "Vanishes" if self.rules else "NotCovered"

    def __str__(self) -> str:
        if not self.rules:
            return "NotCovered"
        return f"Vanishes [{', '.join(self.rules)}]"


@dataclass(frozen=True)
class SplittingVerdict:
    rules: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.rules)

    def __str__(self) -> str:
        return f"splits [{', '.join(self.rules)}]" if self.rules else "not covered"


# -- splitting tables ---------------------------------------------------------

SPLIT_RULES: Tuple[Rule, ...] = (
    Rule("split-row1", "split", "m <= -n-[k/2]-2, 1 <= k <= 2n+1",
         lambda n, k, m: m <= -n - k // 2 - 2),
    Rule("split-row2", "split", "-n-1 <= m <= -k-1, 1 <= k <= n",
         lambda n, k, m: k <= n and -n - 1 <= m <= -k - 1),
    Rule("split-row3", "split", "m >= -[k/2], 1 <= k <= 2n+1",
         lambda n, k, m: m >= -(k // 2)),
)

SPLIT_CP_RULES: Tuple[Rule, ...] = (
    Rule("split-cp-even-row1", "split-cp", "m even, m <= -2n-2[k/2]-4, 1 <= k <= 2n+1",
         lambda n, k, m: m % 2 == 0 and m <= -2 * n - 2 * (k // 2) - 4),
    Rule("split-cp-even-row2", "split-cp", "m even, -2n-2 <= m <= -2k-2, 1 <= k <= n",
         lambda n, k, m: m % 2 == 0 and k <= n and -2 * n - 2 <= m <= -2 * k - 2),
    Rule("split-cp-even-row3", "split-cp", "m even, m >= -2[k/2], 1 <= k <= 2n+1",
         lambda n, k, m: m % 2 == 0 and m >= -2 * (k // 2)),
    Rule("split-cp-odd-row1", "split-cp", "m odd, m <= -2n-2[k/2]-3, 1 <= k <= 2n+1",
         lambda n, k, m: m % 2 == 1 and m <= -2 * n - 2 * (k // 2) - 3),
    Rule("split-cp-odd-row2", "split-cp", "m odd, m >= -2n-3, 1 <= k <= 2n+1",
         lambda n, k, m: m % 2 == 1 and m >= -2 * n - 3),
)


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 1 <= k <= 2 * n + 1:
        raise ValueError(f"k must lie in 1..{2 * n + 1}, got {k}")


def _check_i(n: int, i: int) -> None:
    if not 0 <= i <= 2 * n + 1:
        raise ValueError(f"i must lie in 0..{2 * n + 1}, got {i}")


def splitting_ok(n: int, k: int, m: int) -> SplittingVerdict:
    """Twisted splitting on a general complex contact manifold (twist L^m)."""
    _check_nk(n, k)
    return SplittingVerdict(tuple(r.id for r in SPLIT_RULES if r(n, k, m)))


def splitting_ok_cp(n: int, k: int, m: int) -> SplittingVerdict:
    """Splitting twisted by O(m) on odd-dimensional projective space."""
    _check_nk(n, k)
    return SplittingVerdict(tuple(r.id for r in SPLIT_CP_RULES if r(n, k, m)))


# -- vanishing tables ---------------------------------------------------------

KAHLER_POS_RULES: Tuple[Rule, ...] = (
    Rule("kahler-pos-row1", "kahler+", "i <= 2n-k, m <= -[(k+1)/2]-n-1, 1 <= k <= 2n+1",
         lambda n, k, m, i: i <= 2 * n - k and m <= -((k + 1) // 2) - n - 1),
    Rule("kahler-pos-row2", "kahler+", "all i, -n <= m <= -k-1, 1 <= k <= n-1",
         lambda n, k, m, i: k <= n - 1 and -n <= m <= -k - 1),
    Rule("kahler-pos-row3", "kahler+", "i >= k+1, m >= -[k/2], 1 <= k <= 2n+1",
         lambda n, k, m, i: i >= k + 1 and m >= -(k // 2)),
)

KAHLER_NEG_RULES: Tuple[Rule, ...] = (
    Rule("kahler-neg-row1", "kahler-", "i >= k+1, m <= -n-[k/2]-2, 1 <= k <= 2n+1",
         lambda n, k, m, i: i >= k + 1 and m <= -n - k // 2 - 2),
    Rule("kahler-neg-row2", "kahler-", "i >= k+2, m = -n-1, 1 <= k <= n",
         lambda n, k, m, i: k <= n and i >= k + 2 and m == -n - 1),
    Rule("kahler-neg-row3", "kahler-", "i <= 2n-k-1, m = -k, 1 <= k <= n",
         lambda n, k, m, i: k <= n and i <= 2 * n - k - 1 and m == -k),
    Rule("kahler-neg-row4", "kahler-", "i <= 2n-k, m >= -[k/2], 1 <= k <= 2n+1",
         lambda n, k, m, i: i <= 2 * n - k and m >= -(k // 2)),
)

CP_EVEN_RULES: Tuple[Rule, ...] = (
    Rule("cp-even-row1", "cp", "i != 2n+1, m <= -2n-2-2[(k+1)/2], 1 <= k <= 2n+1",
         lambda n, k, m, i: i != 2 * n + 1 and m <= -2 * n - 2 - 2 * ((k + 1) // 2)),
    Rule("cp-even-row2", "cp", "i != 2n+1-k, m = -2n-2, 1 <= k <= n",
         lambda n, k, m, i: k <= n and i != 2 * n + 1 - k and m == -2 * n - 2),
    Rule("cp-even-row3", "cp", "all i, -2n <= m <= -2k-2, 1 <= k <= n",
         lambda n, k, m, i: k <= n and -2 * n <= m <= -2 * k - 2),
    Rule("cp-even-row4", "cp", "i != k, m = -2k, 1 <= k <= n",
         lambda n, k, m, i: k <= n and i != k and m == -2 * k),
    Rule("cp-even-row5", "cp", "i != 0, m >= -2[k/2], 1 <= k <= 2n+1",
         lambda n, k, m, i: i != 0 and m >= -2 * (k // 2)),
)

CP_ODD_RULES: Tuple[Rule, ...] = (
    Rule("cp-odd-row1", "cp", "i != 2n+1, m <= -2n-3-k, 1 <= k <= 2n+1",
         lambda n, k, m, i: i != 2 * n + 1 and m <= -2 * n - 3 - k),
    Rule("cp-odd-row2", "cp", "all i, -2n-2-k <= m <= -2k+1, 1 <= k <= 2n+1",
         lambda n, k, m, i: -2 * n - 2 - k <= m <= -2 * k + 1),
    Rule("cp-odd-row3", "cp", "all i, -2n-3 <= m <= -k, 1 <= k <= 2n+1",
         lambda n, k, m, i: -2 * n - 3 <= m <= -k),
    Rule("cp-odd-row4", "cp", "i != 0, m >= -k+1, 1 <= k <= 2n+1",
         lambda n, k, m, i: i != 0 and m >= -k + 1,
         note="the reading m <= -k+1 breaks Serre-duality closure with cp-odd-row1 "
              "and contradicts the derivation of this row; m >= -k+1 is encoded"),
)

ALL_RULES: Tuple[Rule, ...] = (SPLIT_RULES + SPLIT_CP_RULES + KAHLER_POS_RULES
                               + KAHLER_NEG_RULES + CP_EVEN_RULES + CP_ODD_RULES)


def _match(rules: Iterable[Rule], *args: int) -> VanishingVerdict:
    return VanishingVerdict(tuple(r.id for r in rules if r(*args)))


def _sign(c1_sign) -> int:
    if c1_sign in ("+", "pos", "positive", 1, "+1"):
        return 1
    if c1_sign in ("-", "neg", "negative", -1, "-1"):
        return -1
    raise ValueError(f"invalid sign token {c1_sign!r}; use '+' or '-'")


def vanishes_kahler(n: int, k: int, m: int, i: int, c1_sign="+") -> VanishingVerdict:
    """H^i(M, L^m wedge^k D) on a compact Kaehler contact manifold with c1 of the given sign."""
    sign = _sign(c1_sign)
    _check_nk(n, k)
    _check_i(n, i)
    return _match(KAHLER_POS_RULES if sign > 0 else KAHLER_NEG_RULES, n, k, m, i)


def vanishes_cp(n: int, k: int, m: int, i: int) -> VanishingVerdict:
    """H^i(O(m) wedge^k D) on CP^{2n+1}, dispatched on the parity of m."""
    _check_nk(n, k)
    _check_i(n, i)
    return _match(CP_EVEN_RULES if m % 2 == 0 else CP_ODD_RULES, n, k, m, i)


def serre_dual_cp(n: int, k: int, m: int, i: int) -> Tuple[int, int]:
    """(i, m) -> (2n+1-i, -m-2n-2-2k); an involution."""
    return 2 * n + 1 - i, -m - 2 * n - 2 - 2 * k


def serre_dual_kahler(n: int, k: int, m: int, i: int) -> Tuple[int, int]:
    """(i, m) -> (2n+1-i, -k-m-n-1)."""
    return 2 * n + 1 - i, -k - m - n - 1


@dataclass
class ClosureReport:
    checked: int = 0
    vanishing: int = 0
    violations: List[Tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def duality_closure_check(n_max: int, k_max: int | None = None,
                          m_range: Sequence[int] = range(-40, 21)) -> ClosureReport:
    """Every CP vanishing verdict must also hold at its Serre-dual index."""
    report = ClosureReport()
    for n in range(1, n_max + 1):
        top = 2 * n + 1 if k_max is None else min(k_max, 2 * n + 1)
        for k in range(1, top + 1):
            for m in m_range:
                for i in range(0, 2 * n + 2):
                    report.checked += 1
                    if not vanishes_cp(n, k, m, i).vanishes:
                        continue
                    report.vanishing += 1
                    i2, m2 = serre_dual_cp(n, k, m, i)
                    if not vanishes_cp(n, k, m2, i2).vanishes:
                        report.violations.append((n, k, m, i))
    return report


# -- table emission -----------------------------------------------------------

TABLES = ("kahler+", "kahler-", "cp")


def query(table: str, n: int, k: int, m: int, i: int) -> VanishingVerdict:
    if table == "kahler+":
        return vanishes_kahler(n, k, m, i, "+")
    if table == "kahler-":
        return vanishes_kahler(n, k, m, i, "-")
    if table == "cp":
        return vanishes_cp(n, k, m, i)
    raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLES)}")


def table_records(table: str, n: int, k_values: Iterable[int],
                  m_values: Iterable[int]) -> Iterator[dict]:
    m_values = list(m_values)
    for k in k_values:
        for m in m_values:
            for i in range(0, 2 * n + 2):
                v = query(table, n, k, m, i)
                yield {"n": n, "k": k, "m": m, "i": i, "verdict": v.label,
                       "rules": list(v.rules)}


def emit_table(table: str, n: int, k_values: Iterable[int] | None = None,
               m_values: Iterable[int] = range(-12, 5), fmt: str = "text") -> Iterator[str]:
    """Lines of a verdict grid: one block per k, rows m, columns i.

    ``fmt="json"`` yields one JSON record per (k, m, i) instead; ``V`` marks
    a certified vanishing and ``.`` a query no row covers.
    """
    if k_values is None:
        k_values = range(1, 2 * n + 2)
    k_values = list(k_values)
    m_values = list(m_values)
    if fmt == "json":
        for rec in table_records(table, n, k_values, m_values):
            yield json.dumps(rec, sort_keys=True)
        return
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    cols = range(0, 2 * n + 2)
    width = max(len(str(m)) for m in m_values) if m_values else 1
    for k in k_values:
        yield f"# table={table} n={n} k={k}"
        yield " " * (width + 3) + " ".join(str(i) for i in cols)
        for m in m_values:
            marks = " ".join("V" if query(table, n, k, m, i).vanishes else "."
                             for i in cols)
            yield f"m={m:>{width}} {marks}"
