from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Literal, Optional, Tuple

import yaml
from sympy import isprime

from wahlrank.engine.gaussian import ARITHMETIC_MODES, DOMAIN_METHODS
from wahlrank.engine.linalg import MAX_PRIME
from wahlrank.engine.policy import DEFAULT_PRIMES, MIN_PRIME

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "default_config.yaml")

THREADS_ENV = "WAHLRANK_THREADS"

OutputFormat = Literal["json", "csv", "table"]
OUTPUT_FORMATS = ("json", "csv", "table")


@dataclass
class RunConfig:
    # Command
    command: str = "plane"
    curves: List[str] = field(default_factory=list)

    # Plane sweep
    d_range: List[int] = field(default_factory=lambda: [6, 7, 8])
    k_range: List[int] = field(default_factory=lambda: [0, 1])
    domain_method: str = "chain"

    # Arithmetic
    mode: str = "exact"
    primes: Tuple[int, ...] = DEFAULT_PRIMES

    # Line sweep
    a_range: List[int] = field(default_factory=lambda: list(range(5)))
    b_range: List[int] = field(default_factory=lambda: list(range(5)))
    p1_k_range: List[int] = field(default_factory=lambda: [0, 1, 2])

    # Criteria
    sweep_bound: int = 100

    # Output
    output_format: OutputFormat = "json"
    output_path: Optional[str] = None
    threads: int = 1


def parse_range(text: Any, name: str = "range") -> List[int]:
    """
    "a..b" (inclusive) or a single integer.

    Raises:
        ValueError: malformed or empty range
    """
    if isinstance(text, bool):
        raise ValueError(f"{name} must be an integer or a..b range: {text!r}")
    if isinstance(text, int):
        return [text]
    raw = str(text).strip()
    try:
        if ".." in raw:
            lo, hi = (int(part) for part in raw.split("..", 1))
        else:
            lo = hi = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer or a..b range: {text!r}") from None
    if hi < lo:
        raise ValueError(f"{name} is empty: {text!r}")
    return list(range(lo, hi + 1))


def parse_primes(text: Any) -> Tuple[int, ...]:
    """Comma-separated list, or a YAML list of integers."""
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [p for p in str(text).split(",") if p.strip()]
    try:
        return tuple(int(str(p).strip()) for p in items)
    except ValueError:
        raise ValueError(f"primes must be integers: {text!r}") from None


def load_yaml(path: str = DEFAULT_CONFIG_PATH) -> RunConfig:
    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: configuration must be a mapping")
    ar: Dict[str, Any] = raw.get("arithmetic") or {}
    pl: Dict[str, Any] = raw.get("plane") or {}
    p1: Dict[str, Any] = raw.get("p1") or {}
    cr: Dict[str, Any] = raw.get("criteria") or {}
    out: Dict[str, Any] = raw.get("output") or {}
    base = RunConfig()
    cfg = RunConfig(
        curves=list(pl.get("curves") or []),
        d_range=parse_range(pl["d"], "plane.d") if "d" in pl else base.d_range,
        k_range=parse_range(pl["k"], "plane.k") if "k" in pl else base.k_range,
        domain_method=pl.get("domain", base.domain_method),
        mode=ar.get("mode", base.mode),
        primes=parse_primes(ar["primes"]) if "primes" in ar else base.primes,
        a_range=parse_range(p1["a"], "p1.a") if "a" in p1 else base.a_range,
        b_range=parse_range(p1["b"], "p1.b") if "b" in p1 else base.b_range,
        p1_k_range=parse_range(p1["k"], "p1.k") if "k" in p1 else base.p1_k_range,
        sweep_bound=int(cr.get("sweep_bound", base.sweep_bound)),
        output_format=out.get("format", base.output_format),
        output_path=out.get("path", base.output_path),
        threads=int(raw.get("threads", base.threads)),
    )
    validate(cfg)
    return cfg


def resolve_threads(cfg: RunConfig, environ: Optional[Dict[str, str]] = None) -> int:
    """Worker cap: WAHLRANK_THREADS if set, else the configured value."""
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return cfg.threads
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer: {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} out of range [1,inf): {n}")
    return n


def with_overrides(cfg: RunConfig, **changes: Any) -> RunConfig:
    """Copy of cfg with the non-None changes applied, validated."""
    out = replace(cfg, **{k: v for k, v in changes.items() if v is not None})
    validate(out)
    return out


def validate(c: RunConfig) -> None:
    def rng(name: str, val: int, lo: int, hi: int) -> None:
        if not (lo <= val <= hi):
            raise ValueError(f"{name} out of range [{lo},{hi}]: {val}")

    for name, values in (
        ("d_range", c.d_range),
        ("k_range", c.k_range),
        ("a_range", c.a_range),
        ("b_range", c.b_range),
        ("p1_k_range", c.p1_k_range),
    ):
        if not values:
            raise ValueError(f"{name} must be nonempty")
    for d in c.d_range:
        rng("d", d, 4, 40)
    for k in c.k_range:
        rng("k", k, 0, 40)
    for name, values in (("a", c.a_range), ("b", c.b_range), ("p1 k", c.p1_k_range)):
        for v in values:
            rng(name, v, 0, 60)
    if c.domain_method not in DOMAIN_METHODS:
        raise ValueError(f"domain must be one of: {list(DOMAIN_METHODS)}")
    if c.mode not in ARITHMETIC_MODES:
        raise ValueError(f"mode must be one of: {list(ARITHMETIC_MODES)}")
    if c.mode != "exact" and not c.primes:
        raise ValueError("modular modes need at least one prime")
    for p in c.primes:
        rng("prime", p, MIN_PRIME + 1, MAX_PRIME - 1)
        if not isprime(p):
            raise ValueError(f"prime is not prime: {p}")
    rng("sweep_bound", c.sweep_bound, 1, 10000)
    if c.output_format not in OUTPUT_FORMATS:
        raise ValueError(f"output format must be one of: {list(OUTPUT_FORMATS)}")
    rng("threads", c.threads, 1, 256)
