"""Census of U_g inside F_q[t]_{<=N}, plus the omega-sum and omega-max computations."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cubic_ff import FFVerdict, MonogenicFF, PureCubicFF, decide_monogenic_ff
from .errors import BudgetExceeded, InvalidInput
from .ff_arith import GF, FqPoly, format_poly, gcd, irreducible_count, is_square_free_poly, polys_of_degree, polys_up_to

DEFAULT_BUDGET = 10**8


def squarefree_count(q: int, d: int) -> int:
    """Square-free polynomials of exact degree d, every leading coefficient allowed."""
    if d == 0:
        return q - 1
    if d == 1:
        return (q - 1) * q
    return (q - 1) * (q**d - q ** (d - 1))


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    total: int
    squarefree: int
    eligible: int
    monogenic: int


@dataclass
class FFCensusReport:
    F: GF
    g: FqPoly
    n_max: int
    rows: list[DegreeRow]
    monic_only: bool = False
    witnesses: dict[tuple, MonogenicFF] = field(default_factory=dict, repr=False)
    verdicts: dict[tuple, FFVerdict] = field(default_factory=dict, repr=False)

    @property
    def count(self) -> int:
        """|U_g intersect F[t]_{<=N}|, constants included."""
        return sum(r.monogenic for r in self.rows)

    @property
    def count_nonconstant(self) -> int:
        return sum(r.monogenic for r in self.rows if r.degree > 0)

    @property
    def lower_ratio(self) -> float:
        return self.count / self.F.q ** (self.n_max / 3)

    @property
    def upper_ratio(self) -> float:
        return self.count / (max(self.n_max, 1) ** 2 * self.F.q ** (self.n_max / 3))

    @property
    def filename(self) -> str:
        g = "".join(str(c) for c in self.g.c)
        return f"census_ff_q{self.F.q}_g{g}_N{self.n_max}.csv"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "total", "squarefree", "eligible", "monogenic", "cumulative",
                    "cumulative_nonconstant", "ratio_lower", "ratio_upper"])
        q, cum, cum_nc = self.F.q, 0, 0
        for r in self.rows:
            cum += r.monogenic
            cum_nc += r.monogenic if r.degree > 0 else 0
            d = r.degree
            w.writerow([d, r.total, r.squarefree, r.eligible, r.monogenic, cum, cum_nc,
                        f"{cum / q ** (d / 3):.10g}", f"{cum / (max(d, 1) ** 2 * q ** (d / 3)):.10g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "field": self.F.metadata,
                "g": list(self.g.c),
                "g_text": format_poly(self.g),
                "N": self.n_max,
                "monic_only": self.monic_only,
                "count": self.count,
                "count_nonconstant": self.count_nonconstant,
                "ratio_lower": self.lower_ratio,
                "ratio_upper": self.upper_ratio,
                "rows": [vars(r) for r in self.rows],
            },
            indent=2,
            sort_keys=True,
        )


def _degree_slice(args) -> tuple[DegreeRow, dict]:
    F, g, d, monic_only, known = args
    total = squarefree = eligible = 0
    verdicts = {}
    for h in polys_of_degree(F, d, monic=monic_only):
        total += 1
        if not is_square_free_poly(h):
            continue
        squarefree += 1
        if gcd(g, h).degree > 0:
            continue
        eligible += 1
        verdict = known[h.c] if h.c in known else decide_monogenic_ff(PureCubicFF(F, g, h))
        verdicts[h.c] = verdict
    monogenic = sum(isinstance(v, MonogenicFF) for v in verdicts.values())
    return DegreeRow(d, total, squarefree, eligible, monogenic), verdicts


def enumerate_Ug(
    F: GF,
    g: FqPoly,
    n_max: int,
    monic_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    known: dict[tuple, FFVerdict] | None = None,
) -> FFCensusReport:
    """Decide every square-free h coprime to g with deg h <= n_max, degree by degree.

    ``known`` maps coefficient tuples of h to verdicts already on record.
    """
    if g.degree < 1 or not g.is_monic() or not is_square_free_poly(g):
        raise InvalidInput("g must be monic, square-free and non-constant")
    if n_max < 0:
        raise InvalidInput("N must be >= 0")
    calls = sum(F.q**d * (1 if monic_only else F.q - 1) for d in range(n_max + 1))
    if calls > budget:
        raise BudgetExceeded(f"{calls} candidate h exceed the budget {budget}")
    known = known or {}
    jobs = [(F, g, d, monic_only, {c: v for c, v in known.items() if len(c) == d + 1})
            for d in range(n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_degree_slice, jobs))
    else:
        parts = [_degree_slice(j) for j in jobs]
    verdicts = {}
    for _, part in parts:
        verdicts.update(part)
    witnesses = {c: v for c, v in verdicts.items() if isinstance(v, MonogenicFF)}
    return FFCensusReport(F, g, n_max, [row for row, _ in parts], monic_only, witnesses, verdicts)


def lower_bound_family_ff(F: GF, g: FqPoly, n_max: int) -> list[tuple[FqPoly, MonogenicFF]]:
    """h = gX^3 - 1 for deg X <= (N - deg g)/3, kept when square-free and coprime to g."""
    if g.degree < 1:
        raise InvalidInput("deg g must be >= 1")
    out = []
    if n_max < g.degree:
        return out
    one = FqPoly.const(F, 1)
    for x in polys_up_to(F, (n_max - g.degree) // 3):
        h = g * x**3 - 1
        if is_square_free_poly(h) and gcd(g, h).degree == 0:
            out.append((h, MonogenicFF(x, one, 1)))
    return out


def omega_table(F: GF, n_max: int) -> list[list[int]]:
    """omega of every monic polynomial, by degree: ``table[d][i]`` for the i-th monic of degree d.

    A sieve over monic irreducibles: a monic polynomial is irreducible exactly
    when no irreducible of smaller degree has marked it. Monic polynomials of
    degree d are indexed by their lower coefficients read base q.
    """
    q = F.q
    table = [[0] * q**d for d in range(n_max + 1)]

    def index(poly: FqPoly) -> int:
        return sum(c * q**i for i, c in enumerate(poly.c[:-1]))

    for d in range(1, n_max + 1):
        for i, flag in enumerate(table[d]):
            if flag:
                continue
            P = FqPoly.from_int(F, i + q**d)
            for e in range(0, n_max - d + 1):
                for cofactor in polys_of_degree(F, e, monic=True):
                    table[d + e][index(P * cofactor)] += 1
    return table


def omega_sum(F: GF, n: int, budget: int = DEFAULT_BUDGET, table: list[list[int]] | None = None) -> int:
    """Exact sum of 3^omega(P) over monic P of degree n."""
    if n < 0:
        raise InvalidInput("N must be >= 0")
    if F.q**n > budget:
        raise BudgetExceeded(f"q^N = {F.q ** n} exceeds the budget {budget}")
    table = table or omega_table(F, n)
    return sum(3**w for w in table[n])


def omega_sum_bound(q: int, n: int) -> int:
    """N-th coefficient of 1/(1 - qT)^3."""
    return math.comb(n + 2, 2) * q**n


def omega_max(q: int, n: int) -> int:
    """Maximum omega(P) over deg P <= n: take irreducibles smallest degree first."""
    if n < 0:
        raise InvalidInput("N must be >= 0")
    left, count, d = n, 0, 1
    while d <= left:
        take = min(irreducible_count(q, d), left // d)
        count += take
        left -= take * d
        if take < irreducible_count(q, d):
            break
        d += 1
    return count
