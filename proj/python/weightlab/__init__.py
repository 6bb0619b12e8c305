"""Growth-function weights, maximal operators and pseudo-differential inequalities.

Thin wrapper over the compiled ``_weightlab`` extension. Arrays are numpy,
row-major over the grid (shape (N,) in 1D, (N, N) in 2D).
"""

import json as _json

from ._weightlab import (  # noqa: F401
    Grid,
    NumericalError,
    PreconditionError,
    a1_phi_constant,
    ap_phi_constant,
    apply_pdo,
    bmo_norm,
    commutator,
    cz_decompose,
    llogl_functional,
    luxemburg_llogl,
    maximal,
    orlicz_maximal,
    partition_check,
    phi,
    power_weight,
    set_threads,
    suite_configs,
    suite_names,
    symbol_ids,
    validate_power_weight,
)
from ._weightlab import run_check as _run_check
from ._weightlab import run_suite  # noqa: F401


def run_check(config):
    """Run one check. ``config`` is a dict or a JSON string; returns the report dict."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run_check(config)


def sample(grid, fn):
    """Evaluate ``fn`` on the grid's sample points (vectorised over numpy arrays)."""
    import numpy as np

    x = grid.coords()
    if grid.n == 1:
        return np.asarray(fn(x), dtype=complex)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    return np.asarray(fn(xx, yy), dtype=complex)
