"""Command-line front door: basis, decide, censuses, sieve and omega reports.

Exit codes: 0 success, 2 invalid input, 3 undetermined (integer side),
4 budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .census_ff import (
    DEFAULT_BUDGET,
    enumerate_Ug,
    omega_max,
    omega_sum,
    omega_sum_bound,
    omega_table,
)
from .census_z import FieldClass, enumerate_census, lower_bound_family, sieve_prime_density
from .cubic_ff import (
    FFVerdict,
    MonogenicFF,
    NotMonogenicFF,
    PureCubicFF,
    decide_monogenic_ff,
    decide_monogenic_ff_congruence,
    integral_basis_ff,
)
from .cubic_field_z import integral_basis
from .errors import BudgetExceeded, CacheVersionError, InvalidInput
from .ff_arith import FqPoly, field_for, format_poly, parse_poly
from .int_arith import Mod9, cube_free_decompose
from .thue_z import AbcHeight, FixedHeight, Monogenic, NotMonogenic, SearchConfig, Undetermined, VerdictZ, decide_monogenic

EXIT_OK, EXIT_INVALID, EXIT_UNDETERMINED, EXIT_BUDGET = 0, 2, 3, 4
OUT_ENV = "MONOCUBIC_OUT"
CACHE_NAME = "verdict_cache.jsonl"


@dataclass(frozen=True)
class Config:
    height: int | None = None
    delta: Fraction = Fraction(1, 10)
    abc_constant: int = 4
    obstruction_prime_bound: int = 10**7
    extra_moduli: tuple[int, ...] = (9, 27, 7, 13, 19)
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    out_dir: str = "."

    def __post_init__(self):
        numeric = [self.delta, self.abc_constant, self.obstruction_prime_bound, self.workers, self.budget]
        if self.height is not None:
            numeric.append(self.height)
        if any(v <= 0 for v in numeric) or any(m < 2 for m in self.extra_moduli) or self.seed < 0:
            raise InvalidInput("config values must be positive (moduli >= 2, seed >= 0)")

    def search_config(self) -> SearchConfig:
        policy = FixedHeight(self.height) if self.height else AbcHeight(self.delta, self.abc_constant)
        return SearchConfig(policy, self.obstruction_prime_bound, self.extra_moduli)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["delta"] = str(self.delta)
        d["extra_moduli"] = list(self.extra_moduli)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Config:
        unknown = set(d) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        if "delta" in d:
            d["delta"] = Fraction(d["delta"])
        if "extra_moduli" in d:
            d["extra_moduli"] = tuple(int(m) for m in d["extra_moduli"])
        return cls(**d)

    @classmethod
    def load(cls, path: str | os.PathLike) -> Config:
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"cannot read config {path}: {exc}") from exc


def write_atomic(path: str | os.PathLike, text: str) -> Path:
    """Write via a temp file in the target directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


# Verdict (de)serialization for the cache and --json output.

def verdict_z_to_dict(v: VerdictZ) -> dict:
    if isinstance(v, Monogenic):
        return {"verdict": v.tag, "X": v.x, "Y": v.y}
    if isinstance(v, NotMonogenic):
        return {"verdict": v.tag, "modulus": v.modulus}
    return {"verdict": v.tag, "height": v.height}


def verdict_z_from_dict(d: dict) -> VerdictZ:
    if d["verdict"] == Monogenic.tag:
        return Monogenic(d["X"], d["Y"])
    if d["verdict"] == NotMonogenic.tag:
        return NotMonogenic(d["modulus"])
    return Undetermined(d["height"])


def verdict_ff_to_dict(v: FFVerdict) -> dict:
    if isinstance(v, MonogenicFF):
        return {"verdict": v.tag, "X": list(v.x.c), "Y": list(v.y.c), "alpha": v.alpha,
                "X_text": format_poly(v.x), "Y_text": format_poly(v.y)}
    return {"verdict": v.tag}


def verdict_ff_from_dict(F, d: dict) -> FFVerdict:
    if d["verdict"] == MonogenicFF.tag:
        return MonogenicFF(FqPoly(F, d["X"]), FqPoly(F, d["Y"]), d["alpha"])
    return NotMonogenicFF()


def z_key(k: int, m: int, cfg: SearchConfig) -> str:
    # The certificate modulus depends on which moduli were tried, so they are part of the key.
    return json.dumps(["Z", k, m, cfg.obstruction_prime_bound, list(cfg.extra_moduli)])


def ff_key(F, g: FqPoly, h: FqPoly) -> str:
    return json.dumps(["FF", F.q, list(F.modulus), list(g.c), list(h.c)])


class VerdictCache:
    """Append-only JSONL store of settled verdicts, one entry per line.

    Undetermined verdicts are never stored. Entries written by another tool
    version invalidate the whole file; in strict mode that raises instead.
    All writes go through the calling process, so there is a single appender.
    """

    def __init__(self, path: str | os.PathLike, version: str = __version__, strict: bool = False):
        self.path = Path(path)
        self.version = version
        self.entries: dict[str, dict] = {}
        self._load(strict)

    def _load(self, strict: bool):
        if not self.path.exists():
            return
        entries = {}
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CacheVersionError(f"{self.path}:{lineno}: corrupt cache line") from exc
            if rec.get("version") != self.version:
                if strict:
                    raise CacheVersionError(
                        f"{self.path}:{lineno}: entry from version {rec.get('version')}, tool is {self.version}"
                    )
                write_atomic(self.path, "")
                return
            old = entries.get(rec["key"])
            if old is not None and old != rec["verdict"]:
                raise CacheVersionError(f"{self.path}:{lineno}: conflicting verdicts for {rec['key']}")
            entries[rec["key"]] = rec["verdict"]
        self.entries = entries

    def get(self, key: str) -> dict | None:
        return self.entries.get(key)

    def put_many(self, items: list[tuple[str, dict]]):
        fresh = [(k, v) for k, v in items if v["verdict"] != Undetermined.tag and k not in self.entries]
        if not fresh:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        stamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        with open(self.path, "a") as fh:
            for key, verdict in fresh:
                fh.write(json.dumps({"key": key, "verdict": verdict, "version": self.version,
                                     "timestamp": stamp}, sort_keys=True) + "\n")
                self.entries[key] = verdict

    def put(self, key: str, verdict: dict):
        self.put_many([(key, verdict)])


# Argument helpers.

def _kv_pairs(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidInput(f"expected key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _ff_args(items: list[str], required: tuple[str, ...]):
    kv = _kv_pairs(items)
    missing = [r for r in required if r not in kv]
    if missing:
        raise InvalidInput(f"missing {', '.join(missing)}")
    try:
        F = field_for(int(kv["q"]))
    except ValueError as exc:
        raise InvalidInput(f"bad field size {kv['q']!r}") from exc
    return F, {k: parse_poly(F, v) for k, v in kv.items() if k != "q"}


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise InvalidInput(f"expected an integer, got {text!r}") from exc


def _config(args) -> Config:
    cfg = Config.load(args.config) if args.config else Config()
    overrides = {}
    for name in ("height", "workers", "budget", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "delta", None) is not None:
        overrides["delta"] = Fraction(args.delta)
    out = args.out or os.environ.get(OUT_ENV)
    if out:
        overrides["out_dir"] = out
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


def _cache(args, cfg: Config) -> VerdictCache | None:
    if args.no_cache:
        return None
    return VerdictCache(args.cache or Path(cfg.out_dir) / CACHE_NAME, strict=args.strict_cache)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# Subcommands.

def cmd_basis(args) -> int:
    if args.ff:
        F, polys = _ff_args(args.values, ("q", "f"))
        _emit(str(integral_basis_ff(PureCubicFF.from_f(polys["f"]))))
        return EXIT_OK
    if len(args.values) != 1:
        raise InvalidInput("basis takes one integer n")
    _emit(str(integral_basis(cube_free_decompose(_int(args.values[0])))))
    return EXIT_OK


def _describe_z(v: VerdictZ) -> str:
    if isinstance(v, Monogenic):
        return f"MONOGENIC X={v.x} Y={v.y}"
    if isinstance(v, NotMonogenic):
        return f"NOT_MONOGENIC mod={v.modulus}"
    return f"UNDETERMINED height={v.height}"


def _describe_ff(v: FFVerdict) -> str:
    if isinstance(v, MonogenicFF):
        return f"MONOGENIC X={format_poly(v.x)} Y={format_poly(v.y)} alpha={v.alpha}"
    return "NOT_MONOGENIC (complete search)"


def cmd_decide(args) -> int:
    cfg = _config(args)
    cache = _cache(args, cfg)
    if args.ff:
        F, polys = _ff_args(args.values, ("q", "g", "h"))
        field = PureCubicFF(F, polys["g"], polys["h"])
        key = ff_key(F, field.g, field.h)
        hit = cache.get(key) if cache else None
        if hit is not None:
            verdict = verdict_ff_from_dict(F, hit)
        elif args.method == "congruence":
            verdict = decide_monogenic_ff_congruence(field, seed=cfg.seed)
        else:
            verdict = decide_monogenic_ff(field, method=args.method)
        record = verdict_ff_to_dict(verdict)
        if cache:
            cache.put(key, record)
        if args.json:
            _emit(json.dumps({"q": F.q, "g": list(field.g.c), "h": list(field.h.c), **record}, sort_keys=True))
        else:
            _emit(_describe_ff(verdict))
        return EXIT_OK
    if len(args.values) != 2:
        raise InvalidInput("decide takes k and m")
    k, m = (_int(v) for v in args.values)
    scfg = cfg.search_config()
    key = z_key(k, m, scfg)
    hit = cache.get(key) if cache else None
    verdict = verdict_z_from_dict(hit) if hit is not None else decide_monogenic(k, m, scfg)
    record = verdict_z_to_dict(verdict)
    if cache:
        cache.put(key, record)
    _emit(json.dumps({"k": k, "m": m, **record}, sort_keys=True) if args.json else _describe_z(verdict))
    return EXIT_UNDETERMINED if isinstance(verdict, Undetermined) else EXIT_OK


def _sign(text: str | None) -> Mod9 | None:
    return None if text is None else Mod9(text)


def cmd_census_z(args) -> int:
    cfg = _config(args)
    cls = FieldClass(args.cls)
    scfg = cfg.search_config()
    cache = _cache(args, cfg)
    known = {}
    if cache:
        # Cached verdicts are keyed by m; only those for this k and moduli are usable.
        for m in range(1, args.N + 1):
            hit = cache.get(z_key(args.k, m, scfg))
            if hit is not None:
                known[m] = verdict_z_from_dict(hit)
    checkpoints = [int(c) for c in args.checkpoints.split(",")] if args.checkpoints else None
    report = enumerate_census(args.k, cls, args.N, scfg, checkpoints, _sign(args.sign),
                              workers=cfg.workers, known=known)
    if cache:
        cache.put_many([(z_key(args.k, r.m, scfg), verdict_z_to_dict(r.verdict)) for r in report.records])
    out = Path(cfg.out_dir)
    main = write_atomic(out / report.filename, report.to_csv())
    stem = report.filename[: -len(".csv")]
    write_atomic(out / f"{stem}_density.csv", report.density_csv())
    write_atomic(out / f"{stem}.json", report.to_json())
    _emit(f"wrote {main}")
    _emit(report.density_csv())
    return EXIT_OK


def cmd_census_ff(args) -> int:
    cfg = _config(args)
    F, polys = _ff_args([f"q={args.q}", f"g={args.g}"], ("q", "g"))
    g = polys["g"]
    cache = _cache(args, cfg)
    known = {}
    if cache:
        for key, rec in cache.entries.items():
            tag, q, mod, gc, hc = json.loads(key)
            if tag == "FF" and q == F.q and mod == list(F.modulus) and gc == list(g.c):
                known[tuple(hc)] = verdict_ff_from_dict(F, rec)
    report = enumerate_Ug(F, g, args.N, monic_only=args.monic_only, budget=cfg.budget,
                          workers=cfg.workers, known=known)
    if cache:
        cache.put_many([(ff_key(F, g, FqPoly(F, h)), verdict_ff_to_dict(v))
                        for h, v in sorted(report.verdicts.items())])
    out = Path(cfg.out_dir)
    main = write_atomic(out / report.filename, report.to_csv())
    write_atomic(out / (report.filename[: -len(".csv")] + ".json"), report.to_json())
    _emit(f"wrote {main}")
    _emit(report.to_csv())
    return EXIT_OK


def cmd_lower_bound(args) -> int:
    cfg = _config(args)
    family = lower_bound_family(args.k, FieldClass(args.cls), args.N)
    lines = ["m,X,Y"] + [f"{m},{x},{y}" for m, (x, y) in family]
    path = write_atomic(Path(cfg.out_dir) / f"lower_bound_k{args.k}_{args.cls}_N{args.N}.csv", "\n".join(lines) + "\n")
    _emit(f"wrote {path}")
    _emit(f"members={len(family)} ratio_to_cuberoot_N={len(family) / args.N ** (1 / 3):.6g}")
    return EXIT_OK


def cmd_sieve(args) -> int:
    cfg = _config(args)
    xs = [int(x) for x in args.x.split(",")]
    rows = ["a,b,x,s_count,pi_x,ratio,partial_product,log_x_pow,normalized_product"]
    for x in xs:
        r = sieve_prime_density(args.a, args.b, x)
        rows.append(f"{r.a},{r.b},{r.x},{r.s_count},{r.pi_x},{r.ratio:.10g},"
                    f"{r.partial_product:.10g},{r.log_x_pow:.10g},{r.normalized_product:.10g}")
    text = "\n".join(rows) + "\n"
    path = write_atomic(Path(cfg.out_dir) / f"sieve_a{args.a}_b{args.b}_x{xs[-1]}.csv", text)
    _emit(f"wrote {path}")
    _emit(text)
    return EXIT_OK


def cmd_omega_sum(args) -> int:
    cfg = _config(args)
    F = field_for(args.q, allow_char_3=True)
    if F.q**args.N > cfg.budget:
        raise BudgetExceeded(f"q^N = {F.q ** args.N} exceeds the budget {cfg.budget}")
    table = omega_table(F, args.N)
    rows = ["N,s_N,bound,ratio"]
    for n in range(args.N + 1):
        s, bound = omega_sum(F, n, cfg.budget, table), omega_sum_bound(F.q, n)
        rows.append(f"{n},{s},{bound},{s / bound:.10g}")
    text = "\n".join(rows) + "\n"
    path = write_atomic(Path(cfg.out_dir) / f"omega_sum_q{F.q}_N{args.N}.csv", text)
    _emit(f"wrote {path}")
    _emit(text)
    return EXIT_OK


def cmd_omega_max(args) -> int:
    cfg = _config(args)
    rows = ["N,omega_max,N_over_logN,ratio"]
    for n in range(2, args.N + 1):
        w, scale = omega_max(args.q, n), n / math.log(n)
        rows.append(f"{n},{w},{scale:.10g},{w / scale:.10g}")
    text = "\n".join(rows) + "\n"
    path = write_atomic(Path(cfg.out_dir) / f"omega_max_q{args.q}_N{args.N}.csv", text)
    _emit(f"wrote {path}")
    _emit(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help=f"output directory (env {OUT_ENV})")
    common.add_argument("--cache", help="verdict cache path (default OUT/verdict_cache.jsonl)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--strict-cache", action="store_true", help="fail on a cache version mismatch")
    common.add_argument("--workers", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="monocubic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="integral basis of Q(cbrt n) or F_q(t)(cbrt f)")
    p.add_argument("--ff", action="store_true", help="function-field input: q=.. f=..")
    p.add_argument("values", nargs="+")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("decide", parents=[common], help="decide monogenicity")
    p.add_argument("--ff", action="store_true", help="function-field input: q=.. g=.. h=..")
    p.add_argument("values", nargs="+")
    p.add_argument("--json", action="store_true")
    p.add_argument("--height", type=int, help="fixed search height")
    p.add_argument("--delta", help="ABC exponent slack, e.g. 1/10")
    p.add_argument("--method", choices=["search", "brute", "congruence"], default="search")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("census-z", parents=[common], help="census of S_k or T_k")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=["S", "T"], default="S")
    p.add_argument("--sign", choices=["+1", "-1"])
    p.add_argument("--checkpoints", help="comma-separated N values")
    p.add_argument("--height", type=int)
    p.add_argument("--delta")
    p.set_defaults(func=cmd_census_z)

    p = sub.add_parser("census-ff", parents=[common], help="census of U_g")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-g", required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--monic-only", action="store_true")
    p.set_defaults(func=cmd_census_ff)

    p = sub.add_parser("lower-bound", parents=[common], help="explicit monogenic family m = kX^3 - c")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=["S", "T"], default="S")
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("sieve-density", parents=[common], help="primes where b/a is a non-cube")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-x", required=True, help="bound, or comma-separated bounds")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("omega-sum", parents=[common], help="sum of 3^omega over monic degree-N polynomials")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=cmd_omega_sum)

    p = sub.add_parser("omega-max", parents=[common], help="largest omega for deg <= N")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=cmd_omega_max)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInput, CacheVersionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
