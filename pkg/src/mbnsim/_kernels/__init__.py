"""Hot-path link-budget kernels.

Two interchangeable backends evaluate whole trial batches: a compiled Cython
core (built at install time) and a vectorized numpy fallback. The compiled
backend is preferred when present; set ``MBNSIM_KERNEL=python`` or
``MBNSIM_KERNEL=compiled`` to force one. Both produce the same budgets up to
floating-point summation order.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from .. import channel as _channel
from . import _ref as _fallback

try:
    from . import _core as _compiled
except ImportError:
    _compiled = None


def _select_backend():
    choice = os.environ.get("MBNSIM_KERNEL", "auto").lower()
    if choice in ("", "auto"):
        return _compiled if _compiled is not None else _fallback
    if choice in ("compiled", "cython", "c"):
        if _compiled is None:
            raise ImportError("MBNSIM_KERNEL=compiled but the extension is not built")
        return _compiled
    if choice in ("python", "numpy", "ref"):
        return _fallback
    raise ValueError(f"unrecognized MBNSIM_KERNEL value {choice!r}")


_backend = _select_backend()


def backend_name() -> str:
    """Name of the active backend: ``compiled`` or ``python``."""
    return "compiled" if _backend is _compiled else "python"


def available_backends() -> dict[str, object]:
    backends = {"python": _fallback}
    if _compiled is not None:
        backends["compiled"] = _compiled
    return backends


class BatchBudgets(NamedTuple):
    """Per-candidate budget arrays for a batch of trials.

    ``dist`` is (trials, stations); the remaining arrays are
    (trials, candidates), with candidates enumerated per station in station
    order, RF before THz for hybrids. ``cand_station``/``cand_is_thz``
    describe that layout.
    """

    dist: np.ndarray
    rx: np.ndarray
    interference: np.ndarray
    sinr: np.ndarray
    rate: np.ndarray
    cand_station: np.ndarray
    cand_is_thz: np.ndarray


def candidate_layout(rf_capable, thz_capable) -> tuple[np.ndarray, np.ndarray]:
    """Candidate table for a station capability layout."""
    stations = []
    is_thz = []
    for j in range(len(rf_capable)):
        if rf_capable[j]:
            stations.append(j)
            is_thz.append(False)
        if thz_capable[j]:
            stations.append(j)
            is_thz.append(True)
    return np.asarray(stations, dtype=np.int64), np.asarray(is_thz, dtype=bool)


def kernel_coefficients(params: _channel.ChannelParams) -> tuple[float, ...]:
    """Scalar coefficients consumed by both backends, derived once per batch."""
    return (
        _channel._rf_power_const(params),
        params.pathloss_exp_rf,
        _channel._thz_power_const(params),
        params.k_abs,
        _channel.thermal_noise(params, params.b_rf),
        _channel.thermal_noise(params, params.b_thz),
        params.b_rf,
        params.b_thz,
        params.min_distance,
    )


def link_budget_batch(
    pos_x, pos_y, user_x, user_y, fading, aligned,
    rf_capable, thz_capable, params, backend=None,
) -> BatchBudgets:
    """Evaluate all candidate links for a batch of trials on one backend."""
    cand_station, cand_is_thz = candidate_layout(rf_capable, thz_capable)
    impl = _backend if backend is None else available_backends()[backend]
    dist, rx, interference, sinr, rate = impl.link_budget_batch(
        np.ascontiguousarray(pos_x, dtype=np.float64),
        np.ascontiguousarray(pos_y, dtype=np.float64),
        np.ascontiguousarray(user_x, dtype=np.float64),
        np.ascontiguousarray(user_y, dtype=np.float64),
        np.ascontiguousarray(fading, dtype=np.float64),
        np.ascontiguousarray(aligned, dtype=np.uint8),
        np.ascontiguousarray(rf_capable, dtype=np.uint8),
        np.ascontiguousarray(thz_capable, dtype=np.uint8),
        cand_station,
        np.ascontiguousarray(cand_is_thz, dtype=np.uint8),
        *kernel_coefficients(params),
    )
    return BatchBudgets(dist, rx, interference, sinr, rate, cand_station, cand_is_thz)
