"""Lane selection for the hot kernels.

The per-facet inner loops (image lookup with permutation parity, orientation
propagation over ridge pairs) exist twice: a numba @njit lane and a pure-numpy
fallback.  The environment flag SPHEREMAP_NUMBA picks the lane:

    SPHEREMAP_NUMBA=1   require numba (ImportError if missing)
    SPHEREMAP_NUMBA=0   force the numpy fallback
    unset               numba when importable, numpy otherwise

Both lanes are drop-in equivalent; benchmarks/bench_kernels.py compares them.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_flag = os.environ.get("SPHEREMAP_NUMBA", "").strip()

if _flag == "0":
    _impl = _kernels_numpy
    LANE = "numpy"
elif _flag == "1":
    from . import _kernels_numba as _impl  # noqa: F401

    LANE = "numba"
else:
    try:
        from . import _kernels_numba as _impl  # type: ignore[no-redef]

        LANE = "numba"
    except ImportError:
        _impl = _kernels_numpy
        LANE = "numpy"


def active_lane() -> str:
    return LANE


def facet_image_lookup(src_facets, assignment, tgt_facets_lex):
    return _impl.facet_image_lookup(src_facets, assignment, tgt_facets_lex)


def propagate_signs(m, pair_a, pair_b, rel):
    return _impl.propagate_signs(m, pair_a, pair_b, rel)
