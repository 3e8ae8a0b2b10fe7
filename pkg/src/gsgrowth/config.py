"""Global work caps.

Every brute-force walk in the package reads its cap from the active
:class:`Limits`.  ``scaled`` produces a copy with every cap multiplied by the
same factor, which is what the CLI ``--cap`` flag uses.
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Limits:
    enumeration: int = 2**20  # candidate vectors / subspaces in one walk
    degree: int = 24  # Magnus truncation cap N_max
    group_order: int = 4096
    lattice_order: int = 512
    aut_order: int = 128
    aut_count: int = 200_000
    search_work: int = 2_000_000  # closure evaluations in exhaustive searches
    series_work: int = 5_000_000  # monomial products in one Magnus expansion
    module_dim: int = 16

    def scaled(self, factor: float) -> "Limits":
        fields = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            # truncation degree is not a work count; it stays fixed
            fields[f.name] = value if f.name == "degree" else max(1, int(value * factor))
        return Limits(**fields)

    @classmethod
    def from_global_cap(cls, cap: int) -> "Limits":
        return cls().scaled(cap / cls.enumeration)


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def use_limits(new: Limits | None = None, **overrides):
    base = new if new is not None else _current.get()
    if overrides:
        base = dataclasses.replace(base, **overrides)
    token = _current.set(base)
    try:
        yield base
    finally:
        _current.reset(token)
