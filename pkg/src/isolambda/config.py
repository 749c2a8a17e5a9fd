"""Calculus-wide switches.

The only switch is the deterministic subsystem, which drops commutativity and
associativity of conjunction (both at the type level and as term rules).  It is
held in a context variable so that caches can be keyed on it and so that
threads or tasks may run with different settings.
"""
from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

_DETERMINISTIC: ContextVar[bool] = ContextVar("isolambda_deterministic", default=False)

DEFAULT_CLASS_CAP = 20_000
DEFAULT_FUEL = 5_000


def is_deterministic() -> bool:
    return _DETERMINISTIC.get()


def mode() -> str:
    """Cache key for everything whose result depends on the active calculus."""
    return "det" if _DETERMINISTIC.get() else "ac"


@contextmanager
def deterministic(enabled: bool = True) -> Iterator[None]:
    """Run the enclosed block in the deterministic subsystem (or leave it)."""
    token = _DETERMINISTIC.set(enabled)
    try:
        yield
    finally:
        _DETERMINISTIC.reset(token)
