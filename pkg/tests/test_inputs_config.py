import pytest

from wahlrank.engine.policy import DEFAULT_PRIMES
from wahlrank.inputs import (
    THREADS_ENV,
    RunConfig,
    load_yaml,
    parse_primes,
    parse_range,
    resolve_threads,
    validate,
    with_overrides,
)


def test_default_config_loads():
    cfg = load_yaml()

    assert cfg.mode == "exact"
    assert cfg.primes == DEFAULT_PRIMES
    assert cfg.d_range == [6, 7, 8]
    assert cfg.k_range == [0, 1]
    assert cfg.domain_method == "chain"
    assert cfg.a_range == [0, 1, 2, 3, 4]
    assert cfg.p1_k_range == [0, 1, 2]
    assert cfg.sweep_bound == 100
    assert cfg.output_format == "json"
    assert cfg.output_path is None
    assert cfg.threads == 1


def test_yaml_overrides_sections(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(
        "arithmetic:\n"
        "  mode: modular-then-exact\n"
        "  primes: [1000003, 1000033]\n"
        "plane:\n"
        "  curves: [\"fermat:6\"]\n"
        "  k: 2\n"
        "  domain: direct\n"
        "output:\n"
        "  format: csv\n"
        "threads: 3\n",
        encoding="utf-8",
    )

    cfg = load_yaml(str(path))

    assert cfg.mode == "modular-then-exact"
    assert cfg.primes == (1000003, 1000033)
    assert cfg.curves == ["fermat:6"]
    assert cfg.k_range == [2]
    assert cfg.d_range == [6, 7, 8]
    assert cfg.domain_method == "direct"
    assert cfg.output_format == "csv"
    assert cfg.threads == 3


def test_empty_yaml_gives_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")

    assert load_yaml(str(path)) == RunConfig()


def test_parse_range():
    assert parse_range("6..8") == [6, 7, 8]
    assert parse_range("3") == [3]
    assert parse_range(4) == [4]
    with pytest.raises(ValueError):
        parse_range("8..6")
    with pytest.raises(ValueError):
        parse_range("a..b")
    with pytest.raises(ValueError):
        parse_range(True)


def test_parse_primes():
    assert parse_primes("1000003, 1000033") == (1000003, 1000033)
    assert parse_primes([1000003]) == (1000003,)
    with pytest.raises(ValueError):
        parse_primes("1000003,big")


@pytest.mark.parametrize(
    "changes, message",
    [
        ({"d_range": [3]}, "d out of range [4,40]: 3"),
        ({"k_range": []}, "k_range must be nonempty"),
        ({"primes": (101,)}, "prime out of range"),
        ({"primes": (1000001,)}, "prime is not prime"),
        ({"mode": "fast"}, "mode must be one of"),
        ({"domain_method": "sideways"}, "domain must be one of"),
        ({"output_format": "xml"}, "output format must be one of"),
        ({"threads": 0}, "threads out of range [1,256]: 0"),
        ({"sweep_bound": 0}, "sweep_bound out of range"),
    ],
)
def test_validate_rejects(changes, message):
    with pytest.raises(ValueError) as info:
        with_overrides(RunConfig(), **changes)

    assert message in str(info.value)


def test_with_overrides_ignores_none():
    cfg = with_overrides(RunConfig(), mode=None, threads=2)

    assert cfg.mode == "exact"
    assert cfg.threads == 2
    validate(cfg)


def test_threads_environment_overrides_config():
    cfg = RunConfig(threads=2)

    assert resolve_threads(cfg, {}) == 2
    assert resolve_threads(cfg, {THREADS_ENV: "6"}) == 6
    assert resolve_threads(cfg, {THREADS_ENV: " "}) == 2
    with pytest.raises(ValueError):
        resolve_threads(cfg, {THREADS_ENV: "0"})
    with pytest.raises(ValueError):
        resolve_threads(cfg, {THREADS_ENV: "many"})
