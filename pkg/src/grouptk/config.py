from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_GUARD_ORDER = "GTK_GUARD_ORDER"


@dataclass(frozen=True)
class Guards:
    """Resource limits. Hitting one raises GuardExceeded."""

    max_order: int = 10**6
    max_degree: int = 10**4
    max_subgroups: int = 10**5
    # largest group whose full subgroup lattice we are willing to enumerate
    max_lattice_order: int = 2000
    # max cohomological degree for resolution computations
    max_cohomology_degree: int = 64

    def with_overrides(self, **kw) -> Guards:
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


def default_guards() -> Guards:
    g = Guards()
    env = os.environ.get(ENV_GUARD_ORDER)
    if env:
        from grouptk.errors import FormatError

        try:
            value = int(env)
        except ValueError:
            raise FormatError(f"{ENV_GUARD_ORDER} must be an integer, got {env!r}") from None
        g = replace(g, max_order=value, max_lattice_order=min(g.max_lattice_order, value))
    return g
