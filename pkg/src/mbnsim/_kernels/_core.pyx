# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled link-budget kernel; the contract mirrors ``mbnsim._kernels._ref``.

Per-station received powers are computed once per trial, then interference
for each candidate is an explicit sum over the other stations; co-band-only,
with THz interferers gated by the alignment flags.
"""

from libc.math cimport exp, hypot, log2, pow

import numpy as np


def link_budget_batch(double[:, ::1] pos_x, double[:, ::1] pos_y,
                      double[::1] user_x, double[::1] user_y,
                      double[:, ::1] fading, unsigned char[:, ::1] aligned,
                      unsigned char[::1] rf_capable, unsigned char[::1] thz_capable,
                      long long[::1] cand_station, unsigned char[::1] cand_is_thz,
                      double amp_rf, double alpha, double amp_thz, double k_abs,
                      double noise_rf, double noise_thz,
                      double b_rf, double b_thz, double min_dist):
    cdef Py_ssize_t trials = pos_x.shape[0]
    cdef Py_ssize_t n = pos_x.shape[1]
    cdef Py_ssize_t n_cand = cand_station.shape[0]

    dist_arr = np.empty((trials, n), dtype=np.float64)
    rx_arr = np.empty((trials, n_cand), dtype=np.float64)
    interf_arr = np.empty((trials, n_cand), dtype=np.float64)
    sinr_arr = np.empty((trials, n_cand), dtype=np.float64)
    rate_arr = np.empty((trials, n_cand), dtype=np.float64)
    rf_scratch = np.empty(n, dtype=np.float64)
    thz_scratch = np.empty(n, dtype=np.float64)

    cdef double[:, ::1] dist = dist_arr
    cdef double[:, ::1] rx = rx_arr
    cdef double[:, ::1] interf = interf_arr
    cdef double[:, ::1] sinr = sinr_arr
    cdef double[:, ::1] rate = rate_arr
    cdef double[::1] s_rf = rf_scratch
    cdef double[::1] s_thz = thz_scratch

    cdef Py_ssize_t t, j, c, k
    cdef double d, acc, r, noise, bandwidth, s

    for t in range(trials):
        for j in range(n):
            d = hypot(pos_x[t, j] - user_x[t], pos_y[t, j] - user_y[t])
            if d < min_dist:
                d = min_dist
            dist[t, j] = d
            s_rf[j] = amp_rf * pow(d, -alpha) * fading[t, j] if rf_capable[j] else 0.0
            s_thz[j] = amp_thz * exp(-k_abs * d) / (d * d) if thz_capable[j] else 0.0
        for c in range(n_cand):
            j = <Py_ssize_t> cand_station[c]
            acc = 0.0
            if cand_is_thz[c]:
                for k in range(n):
                    if k != j and aligned[t, k]:
                        acc += s_thz[k]
                r = s_thz[j]
                noise = noise_thz
                bandwidth = b_thz
            else:
                for k in range(n):
                    if k != j:
                        acc += s_rf[k]
                r = s_rf[j]
                noise = noise_rf
                bandwidth = b_rf
            rx[t, c] = r
            interf[t, c] = acc
            s = r / (acc + noise)
            sinr[t, c] = s
            rate[t, c] = bandwidth * log2(1.0 + s)
    return dist_arr, rx_arr, interf_arr, sinr_arr, rate_arr
