#!/usr/bin/env python3
"""
Constant tables: screening primes, acceptance cases and statement tags.

The acceptance table lists the (d, k) pairs whose ranks are checked against
the closed-form plane-curve formula, with the expected rank and corank. The
statement tags name the numeric statement each criteria answer relies on.

"""
from __future__ import annotations

# Primes above 10^6 and below 2^31 for the modular screen
DEFAULT_PRIMES = (1000003, 1000033, 1000037, 1000039)

# Lower bound on user-supplied screening primes
MIN_PRIME = 200000

# (d, k) -> (rank, corank) for Fermat curves x^d + y^d + 1
ACCEPTANCE_CASES = {
    (6, 0): (27, 0),
    (7, 0): (42, 0),
    (8, 0): (60, 0),
    (8, 1): (90, 10),
    (10, 0): (105, 0),
    (10, 1): (160, 15),
    (10, 2): (210, 35),
}

# Degrees whose exact computations take minutes
SLOW_DEGREES = frozenset({10})

# Statement tags carried by criteria answers
STATEMENTS = {
    "plane-formula": "plane-curve-rank",
    "p2-corank": "diagonal-restriction-corank",
    "einlaz": "two-bundle-degree-bound",
    "product": "product-surface-curve",
    "product-surface": "product-surface-canonical-twist",
    "product-bundle": "product-surface-bundle-pair",
    "genus": "product-curve-genus",
    "sweep-min-genus": "product-curve-genus-sweep",
    "enriques": "enriques-phi-positivity",
}

# Closed form quoted for the minimal genus on a product with g1 = 0, g2 = 2,
# together with the degrees it is quoted for. Reported for comparison only.
QUOTED_MIN_GENUS = {
    "coefficients": (6, 17, 13),
    "d1": (3, 3),
    "d2": (2, 3),
}
