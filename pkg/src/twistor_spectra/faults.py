"""Deliberate perturbation hooks.

The verification suites are only trustworthy if a wrong coefficient anywhere
actually flips a verdict.  Formula sites route their constants through
:func:`bump`, which is the identity unless a test has armed an offset with
:func:`inject`.  Production code never arms anything.
"""
from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from typing import Dict, Iterator

_ACTIVE: Dict[str, Fraction] = {}

# Every site that calls bump() registers its name here so tests can sweep
# the whole catalogue.
SITES = (
    "C1", "C2", "C3", "C4", "C5", "C6",
    "D11", "D12", "D21", "D22", "D33",
    "Q1", "Q2",
)


def bump(name: str, value: Fraction) -> Fraction:
    if not _ACTIVE:
        return value
    off = _ACTIVE.get(name)
    return value if off is None else value + off


@contextmanager
def inject(name: str, delta: Fraction = Fraction(1)) -> Iterator[None]:
    """Temporarily add ``delta`` to every value flowing through site ``name``."""
    if name not in SITES:
        raise KeyError(f"unknown perturbation site {name!r}")
    _ACTIVE[name] = Fraction(delta)
    try:
        yield
    finally:
        _ACTIVE.pop(name, None)
