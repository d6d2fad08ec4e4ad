#!/usr/bin/env python3
"""
Exact scalar helpers and report value formatting.

Every coefficient in the package is a `fractions.Fraction` (always stored in
lowest terms with a positive denominator). This module converts user input to
rationals, clears denominators for the integer elimination kernels, reduces
rationals modulo a prime, and formats report values column by column.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Sequence

from wahlrank.errors import BadPrime

Rat = Fraction


def to_rat(value: Any) -> Fraction:
    """
    Convert an int, Fraction or "p/q" string to a Fraction.

    Args:
        value: integer, Fraction, or text of the form "n" or "n/m"

    Returns:
        The rational in lowest terms.

    Raises:
        ValueError: floats are refused, they are not exact
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not an exact rational: {value!r}")


def rat_text(value: Fraction) -> str:
    """Render a rational as "n" or "n/m"."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def denominator_lcm(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators (1 for an empty input)."""
    out = 1
    for v in values:
        den = v.denominator
        if den != 1:
            out = out * den // math.gcd(out, den)
    return out


def integer_row(values: Sequence[Fraction]) -> List[int]:
    """
    Scale a row of rationals by the lcm of its denominators.

    The result spans the same line as the input, so it can replace the row in
    any rank or kernel computation.
    """
    scale = denominator_lcm(values)
    return [int(v * scale) for v in values]


def primitive_row(values: Sequence[int]) -> List[int]:
    """
    Divide an integer row by the gcd of its entries.

    The first nonzero entry is made positive so that kernel bases are
    reproducible across runs.
    """
    g = math.gcd(*values) if values else 0
    if g == 0:
        return list(values)
    lead = next(v for v in values if v)
    if lead < 0:
        g = -g
    return [v // g for v in values]


def residue(value: Fraction, p: int) -> int:
    """
    Reduce a rational modulo a prime.

    Raises:
        BadPrime: p divides the denominator
    """
    den = value.denominator % p
    if den == 0:
        raise BadPrime(f"prime {p} divides denominator {value.denominator}")
    return (value.numerator % p) * pow(den, -1, p) % p


# Report formatting
def format_bool(value: Any) -> str:
    """JSON-style booleans for CSV and table output."""
    return "true" if value else "false"


def format_int(value: Any) -> Any:
    """Whole numbers stay ints; rationals become "n/m" text."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else rat_text(value)
    return value


FORMAT_RULES: Dict[str, Callable[[Any], Any]] = {
    "d": format_int,
    "k": format_int,
    "genus": format_int,
    "domain_dim": format_int,
    "rank": format_int,
    "codomain_dim": format_int,
    "corank": format_int,
    "predicted_rank": format_int,
    "predicted_corank": format_int,
    "in_theorem_range": format_bool,
    "match": format_bool,
    "surjective": format_bool,
    "agree": format_bool,
}


def format_value(key: str, value: Any) -> Any:
    """
    Format a value for text output according to its column.

    None stays None (an empty cell); unknown columns are returned unchanged.
    """
    if value is None:
        return None
    rule = FORMAT_RULES.get(key)
    if rule is None:
        return value
    return rule(value)


def format_row(row: Dict[str, Any]) -> Dict[str, Any]:
    """Format all values of one report row."""
    return {k: format_value(k, v) for k, v in row.items()}


def format_rows(rows: Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Format every row of a report stream."""
    return [format_row(row) for row in rows]
