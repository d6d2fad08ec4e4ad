from __future__ import annotations

import argparse
import sys
from typing import Any, Iterable, List, Mapping, Optional, Sequence

from wahlrank.engine.curve import fermat_curve
from wahlrank.engine.gaussian import Arithmetic, gamma_rank
from wahlrank.engine.policy import ACCEPTANCE_CASES, DEFAULT_PRIMES, SLOW_DEGREES
from wahlrank.reports import as_rows
from wahlrank.schema import keys


def acceptance_rows(
    include_slow: bool = False, arithmetic: Arithmetic = Arithmetic()
) -> List[dict]:
    """Fermat-curve reports for the acceptance table, in (d, k) order."""
    out = []
    for d, k in sorted(ACCEPTANCE_CASES):
        if d in SLOW_DEGREES and not include_slow:
            continue
        out.append(gamma_rank(fermat_curve(d), k, arithmetic))
    return as_rows(out)


def build_verification_report(rows: Iterable[Mapping[str, Any]]) -> str:
    """Return a readable | table of plane-curve reports with the expected values."""
    rows = list(rows)
    if not rows:
        return "No report rows."

    fields = keys("plane") + ["expected"]
    lines = [" | ".join(fields), " | ".join("---" for _ in fields)]
    for row in rows:
        expected = ACCEPTANCE_CASES.get((row.get("d"), row.get("k")))
        cells = [_format_value(row.get(f)) for f in fields[:-1]]
        cells.append("" if expected is None else f"{expected[0]}/{expected[1]}")
        lines.append(" | ".join(cells))
    return "\n".join(lines)


def _format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Acceptance table for the plane-curve ranks")
    parser.add_argument("--slow", action="store_true", help="include degree-10 cases")
    parser.add_argument("--modular", action="store_true", help="modular-then-exact arithmetic")
    args = parser.parse_args(argv)
    arithmetic = Arithmetic("modular-then-exact", DEFAULT_PRIMES) if args.modular else Arithmetic()
    rows = acceptance_rows(args.slow, arithmetic)
    print(build_verification_report(rows))
    return 0 if all(r["match"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
