"""Vectorized numpy backend; the contract mirrors the compiled kernel.

Interference uses a hollow (zero-diagonal) mask matmul so each candidate's
own contribution is excluded from an all-nonnegative sum; no subtraction of
near-equal totals, which keeps the result well conditioned even when one
station dominates.
"""

from __future__ import annotations

import numpy as np


def link_budget_batch(
    pos_x, pos_y, user_x, user_y, fading, aligned,
    rf_capable, thz_capable, cand_station, cand_is_thz,
    amp_rf, alpha, amp_thz, k_abs, noise_rf, noise_thz,
    b_rf, b_thz, min_dist,
):
    dx = pos_x - user_x[:, None]
    dy = pos_y - user_y[:, None]
    dist = np.maximum(np.hypot(dx, dy), min_dist)

    rx_rf = amp_rf * dist ** (-alpha) * fading * rf_capable
    rx_thz = amp_thz * np.exp(-k_abs * dist) / (dist * dist) * thz_capable
    rx_thz_aligned = rx_thz * aligned

    n = pos_x.shape[1]
    hollow = 1.0 - np.eye(n)
    interf_rf = rx_rf @ hollow
    interf_thz = rx_thz_aligned @ hollow

    is_thz = cand_is_thz.astype(bool)
    rx = np.where(is_thz, rx_thz[:, cand_station], rx_rf[:, cand_station])
    interference = np.where(
        is_thz, interf_thz[:, cand_station], interf_rf[:, cand_station]
    )
    noise = np.where(is_thz, noise_thz, noise_rf)
    bandwidth = np.where(is_thz, b_thz, b_rf)
    sinr = rx / (interference + noise)
    rate = bandwidth * np.log2(1.0 + sinr)
    return dist, rx, interference, sinr, rate
