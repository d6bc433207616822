import json
from fractions import Fraction

import pytest

from monocubic import __version__
from monocubic.cli import Config, VerdictCache, main, write_atomic
from monocubic.errors import CacheVersionError, InvalidInput


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["basis", "10"], "1, a, (1+a+a^2)/3"),
        (["basis", "12"], "1, a, a^2/2"),
        (["basis", "--ff", "q=2", "f=t^2*(t+1)"], "1, a, a^2/t"),
        (["decide", "2", "15"], "MONOGENIC X=2 Y=1"),
        (["decide", "2", "21"], "NOT_MONOGENIC mod=7"),
        (["decide", "--ff", "q=2", "g=t", "h=t^2+t+1"], "NOT_MONOGENIC (complete search)"),
    ],
)
def test_examples(capsys, argv, expected):
    assert run(capsys, *argv, "--no-cache") == (0, expected)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "basis", "8", "--no-cache")[0] == 2
    assert run(capsys, "decide", "2", "4", "--no-cache")[0] == 2
    assert run(capsys, "decide", "--ff", "q=2", "g=t", "--no-cache")[0] == 2
    assert run(capsys, "decide", "2", "69", "--no-cache")[0] == 3
    assert run(capsys, "omega-sum", "-q", "2", "-N", "40", "--out", str(tmp_path))[0] == 4


def test_decide_json(capsys):
    code, out = run(capsys, "decide", "2", "15", "--json", "--no-cache")
    assert json.loads(out) == {"k": 2, "m": 15, "verdict": "MONOGENIC", "X": 2, "Y": 1}


def test_census_z_deterministic_and_cached(capsys, tmp_path, monkeypatch):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "census-z", "-k", "2", "-N", "3000", "--out", str(a))[0] == 0
    monkeypatch.setenv("MONOCUBIC_OUT", str(b))
    assert run(capsys, "census-z", "-k", "2", "-N", "3000", "--workers", "3")[0] == 0
    name = "census_z_k2_S_N3000.csv"
    assert (a / name).read_bytes() == (b / name).read_bytes()
    assert (b / "census_z_k2_S_N3000_density.csv").exists()
    cache = VerdictCache(a / "verdict_cache.jsonl")
    assert cache.entries and all(v["verdict"] != "UNDETERMINED" for v in cache.entries.values())
    # second run served from the cache
    assert run(capsys, "census-z", "-k", "2", "-N", "3000", "--out", str(a))[0] == 0
    assert (a / name).read_bytes() == (b / name).read_bytes()
    lines = (a / "verdict_cache.jsonl").read_text().splitlines()
    assert len(lines) == len(cache.entries)


def test_census_ff_and_reports(capsys, tmp_path):
    out = str(tmp_path)
    assert run(capsys, "census-ff", "-q", "2", "-g", "t", "-N", "6", "--out", out)[0] == 0
    assert (tmp_path / "census_ff_q2_g01_N6.csv").exists()
    assert run(capsys, "census-ff", "-q", "2", "-g", "t", "-N", "6", "--out", out)[0] == 0
    code, text = run(capsys, "omega-sum", "-q", "2", "-N", "12", "--out", out)
    assert code == 0 and "12,116922,372736" in text
    code, text = run(capsys, "sieve-density", "-a", "1", "-b", "2", "-x", "100000", "--out", out)
    ratio = float(text.splitlines()[-1].split(",")[5])
    assert code == 0 and abs(ratio - 1 / 3) < 0.02
    assert run(capsys, "omega-max", "-q", "2", "-N", "50", "--out", out)[0] == 0
    assert run(capsys, "lower-bound", "-k", "2", "-N", "1000", "--out", out)[0] == 0


def test_config_round_trip(tmp_path, capsys):
    cfg = Config(height=100, delta=Fraction(1, 7), extra_moduli=(9, 7), workers=2, seed=3, out_dir="x")
    assert Config.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
    with pytest.raises(InvalidInput):
        Config(workers=0)
    with pytest.raises(InvalidInput):
        Config.from_dict({"bogus": 1})
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"height": 1}))
    assert run(capsys, "decide", "2", "15", "--config", str(path), "--no-cache")[0] == 3


def test_cache_version_mismatch(tmp_path):
    path = tmp_path / "c.jsonl"
    cache = VerdictCache(path)
    cache.put("k", {"verdict": "NOT_MONOGENIC", "modulus": 7})
    cache.put("u", {"verdict": "UNDETERMINED", "height": 3})
    assert VerdictCache(path).entries == {"k": {"verdict": "NOT_MONOGENIC", "modulus": 7}}
    with pytest.raises(CacheVersionError):
        VerdictCache(path, version=__version__ + ".dev", strict=True)
    assert VerdictCache(path, version=__version__ + ".dev").entries == {}
    assert path.read_text() == ""


def test_write_atomic(tmp_path):
    p = write_atomic(tmp_path / "sub" / "f.txt", "hello\n")
    assert p.read_text() == "hello\n" and list(p.parent.iterdir()) == [p]
