"""Census of S_k and T_k, the explicit lower-bound family, and the sieve-prime experiment."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidInput
from .int_arith import Mod9, is_cube_mod_p, is_rational_cube, is_square_free, primes_up_to, squarefree_segments
from .thue_z import Monogenic, NotMonogenic, SearchConfig, Undetermined, VerdictZ, decide_monogenic


class FieldClass(enum.Enum):
    S = "S"
    T = "T"


def class_of(k: int, m: int) -> FieldClass:
    return FieldClass.S if Mod9.of(k * k * m) is Mod9.NEITHER else FieldClass.T


def is_eligible(k: int, m: int, cls: FieldClass, sign: Mod9 | None = None) -> bool:
    """Membership test for the candidate set of S_k / T_k (everything but monogenicity)."""
    if m < 1 or math.gcd(k, m) != 1 or k * k * m < 2:
        return False
    mod9 = Mod9.of(k * k * m)
    if cls is FieldClass.S:
        return mod9 is Mod9.NEITHER
    if mod9 is Mod9.NEITHER:
        return False
    return sign is None or mod9 is sign


def _check_k(k: int, cls: FieldClass):
    if k < 1 or not is_square_free(k):
        raise InvalidInput(f"k={k} must be a square-free positive integer")
    if cls is FieldClass.T and k % 3 == 0:
        raise InvalidInput("T_k is only defined for k coprime to 3")


@dataclass(frozen=True)
class CensusRecordZ:
    m: int
    cls: FieldClass
    verdict: VerdictZ

    def row(self) -> dict:
        v = self.verdict
        return {
            "m": self.m,
            "class": self.cls.value,
            "verdict": v.tag,
            "X": v.x if isinstance(v, Monogenic) else "",
            "Y": v.y if isinstance(v, Monogenic) else "",
            "obstruction_modulus": v.modulus if isinstance(v, NotMonogenic) else "",
            "height": v.height if isinstance(v, Undetermined) else "",
        }


CSV_COLUMNS = ["m", "class", "verdict", "X", "Y", "obstruction_modulus", "height"]


@dataclass(frozen=True)
class DensityPoint:
    checkpoint: int
    eligible: int
    monogenic: int
    undetermined: int

    @property
    def density(self) -> float:
        return self.monogenic / self.checkpoint

    @property
    def upper_density(self) -> float:
        """(Monogenic + Undetermined) / N: the fraction not ruled out."""
        return (self.monogenic + self.undetermined) / self.checkpoint


@dataclass
class CensusReport:
    k: int
    cls: FieldClass
    n_max: int
    records: list[CensusRecordZ]
    density_series: list[DensityPoint]
    config: SearchConfig = field(default_factory=SearchConfig)
    sign: Mod9 | None = None

    @property
    def counts(self) -> dict[str, int]:
        out = {"monogenic": 0, "not_monogenic": 0, "undetermined": 0}
        for r in self.records:
            out[{"MONOGENIC": "monogenic", "NOT_MONOGENIC": "not_monogenic"}.get(r.verdict.tag, "undetermined")] += 1
        return out

    @property
    def filename(self) -> str:
        return f"census_z_k{self.k}_{self.cls.value}_N{self.n_max}.csv"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(r.row() for r in self.records)
        return buf.getvalue()

    def density_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["N", "eligible", "monogenic", "undetermined", "density", "upper_density"])
        for p in self.density_series:
            writer.writerow([p.checkpoint, p.eligible, p.monogenic, p.undetermined,
                             f"{p.density:.10g}", f"{p.upper_density:.10g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        policy = self.config.height_policy
        return json.dumps(
            {
                "k": self.k,
                "class": self.cls.value,
                "sign": self.sign.value if self.sign else None,
                "N": self.n_max,
                "counts": self.counts,
                "density_series": [
                    {"N": p.checkpoint, "eligible": p.eligible, "monogenic": p.monogenic,
                     "undetermined": p.undetermined, "density": p.density,
                     "upper_density": p.upper_density}
                    for p in self.density_series
                ],
                "config": {
                    "height_policy": type(policy).__name__,
                    "height_params": {k: str(v) for k, v in vars(policy).items()},
                    "obstruction_prime_bound": self.config.obstruction_prime_bound,
                    "extra_moduli": list(self.config.extra_moduli),
                },
            },
            indent=2,
            sort_keys=True,
        )


def eligible_m(k: int, cls: FieldClass, n_max: int, sign: Mod9 | None = None) -> list[int]:
    out = []
    for lo, flags in squarefree_segments(n_max):
        for i, flag in enumerate(flags):
            if flag and is_eligible(k, lo + i, cls, sign):
                out.append(lo + i)
    return out


def _decide_block(args) -> list[VerdictZ]:
    k, ms, cfg = args
    return [decide_monogenic(k, m, cfg) for m in ms]


def default_checkpoints(n_max: int) -> list[int]:
    points = [10**e for e in range(1, int(math.log10(n_max)) + 1) if 10**e < n_max]
    return points + [n_max]


def enumerate_census(
    k: int,
    cls: FieldClass,
    n_max: int,
    cfg: SearchConfig | None = None,
    checkpoints: Iterable[int] | None = None,
    sign: Mod9 | None = None,
    workers: int = 1,
    block: int = 2000,
    known: dict[int, VerdictZ] | None = None,
) -> CensusReport:
    """Decide every eligible m <= n_max; records come back ordered by m.

    ``known`` supplies already-established verdicts (the CLI's cache); only
    the remaining m are decided.
    """
    cfg = cfg or SearchConfig()
    _check_k(k, cls)
    if n_max < 1:
        raise InvalidInput("N must be >= 1")
    ms = eligible_m(k, cls, n_max, sign)
    known = known or {}
    todo = [m for m in ms if m not in known]
    if workers > 1 and len(todo) > block:
        chunks = [(k, todo[i : i + block], cfg) for i in range(0, len(todo), block)]
        with ProcessPoolExecutor(workers) as pool:
            fresh = [v for part in pool.map(_decide_block, chunks) for v in part]
    else:
        fresh = _decide_block((k, todo, cfg))
    verdicts = {**known, **dict(zip(todo, fresh))}
    records = [CensusRecordZ(m, cls, verdicts[m]) for m in ms]

    points = sorted(set(checkpoints or default_checkpoints(n_max)))
    if points[0] < 1 or points[-1] > n_max:
        raise InvalidInput("checkpoints must lie in [1, N]")
    series, idx, eligible, mono, undet = [], 0, 0, 0, 0
    for cp in points:
        while idx < len(records) and records[idx].m <= cp:
            tag = records[idx].verdict.tag
            eligible += 1
            mono += tag == "MONOGENIC"
            undet += tag == "UNDETERMINED"
            idx += 1
        series.append(DensityPoint(cp, eligible, mono, undet))
    return CensusReport(k, cls, n_max, records, series, cfg, sign)


def admissible_residues(k: int, cls: FieldClass) -> list[int]:
    """Residues r mod 9 for which m = k*r^3 - c lands in the requested class mod 9."""
    c = 1 if cls is FieldClass.S else 9
    return [r for r in range(9) if is_eligible_mod9(k, k * r**3 - c, cls)]


def is_eligible_mod9(k: int, m: int, cls: FieldClass) -> bool:
    mod9 = Mod9.of(k * k * m)
    return (mod9 is Mod9.NEITHER) == (cls is FieldClass.S)


def lower_bound_family(k: int, cls: FieldClass, n_max: int) -> list[tuple[int, tuple[int, int]]]:
    """m = k*X0^3 - c (c = 1 for S, 9 for T) with witness (X0, 1), filtered to eligible m <= n_max."""
    _check_k(k, cls)
    c = 1 if cls is FieldClass.S else 9
    residues = set(admissible_residues(k, cls))
    out = []
    x0 = 1
    while k * x0**3 - c <= n_max:
        m = k * x0**3 - c
        if x0 % 9 in residues and m >= 1 and is_eligible(k, m, cls) and is_square_free(m):
            out.append((m, (x0, 1)))
        x0 += 1
    return sorted(out)


@dataclass(frozen=True)
class SievePrimeReport:
    a: int
    b: int
    x: int
    s_count: int
    pi_x: int
    ratio: float
    partial_product: float
    log_x_pow: float

    @property
    def normalized_product(self) -> float:
        return self.partial_product / self.log_x_pow


def sieve_primes_in_s(a: int, b: int, x: int) -> list[int]:
    """Primes p <= x, p not dividing 3ab, for which b/a is not a cube mod p."""
    return [
        p for p in primes_up_to(x)
        if (3 * a * b) % p and not is_cube_mod_p(b * pow(a, -1, p), p)
    ]


def sieve_prime_density(a: int, b: int, x: int) -> SievePrimeReport:
    if a < 1 or b < 1:
        raise InvalidInput("a and b must be positive")
    if is_rational_cube(b, a):
        raise InvalidInput(f"{b}/{a} is a rational cube; the sieve set is empty")
    if x < 100:
        raise InvalidInput("x must be >= 100")
    s = sieve_primes_in_s(a, b, x)
    pi_x = len(primes_up_to(x))
    log_prod = math.fsum(math.log1p(-1 / p) for p in s)
    return SievePrimeReport(
        a, b, x, len(s), pi_x, len(s) / pi_x, math.exp(log_prod), math.log(x) ** (-1 / 3)
    )
