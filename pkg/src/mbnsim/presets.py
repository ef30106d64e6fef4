"""Built-in experiment presets.

Each preset is a config fragment merged over the package defaults; user keys
override preset keys. ``custom`` is the empty fragment.
"""

DEFAULT_CONFIG = {
    "preset": "custom",
    "master_seed": 1,
    "trials_per_point": 10_000,
    "out_dir": "results",
    "channel": {
        "f_rf": 2e9,
        "f_thz": 1e12,
        "b_rf": 40e6,
        "b_thz": 10e9,
        "p_tx_rf": 2.0,
        "p_tx_thz": 0.2,
        "g_rf_db": 0.0,
        "g_thz_db": 25.0,
        "k_abs": 0.05,
        "p_align": 0.006,
        "noise_psd": 10.0 ** -20.4,
        "noise_figure_db": 0.0,
        "pathloss_exp_rf": 4.0,
        "min_distance": 1.0,
    },
    "deployment": {
        "architectures": ["SA"],
        "n_bs": 30,
        "num_bs_mode": "per_band",
        "region_radius": 400.0,
    },
    "costs": {
        "capex_rbs": 33_000.0,
        "capex_tbs": 38_000.0,
        "capex_hyb": 48_000.0,
        "opex_rbs": 2_800.0,
        "opex_tbs": 2_700.0,
        "opex_hyb": 3_200.0,
        "include_opex": True,
    },
    "sweep": {
        "variable": "AbsorptionK",
        "values": [0.0033],
        "policies": ["MaxRate"],
    },
}

_N_SWEEP = [5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60]

_FIG4_FRAGMENT = {
    "deployment": {"architectures": ["SA", "Int"]},
    "sweep": {
        "variable": "NumBs",
        "values": [float(n) for n in _N_SWEEP],
        "policies": ["MaxRate"],
        "b_thz_values": [5e9, 10e9],
    },
}

PRESETS = {
    "custom": {},
    "fig2": {
        "deployment": {"architectures": ["SA", "Int"]},
        "sweep": {
            "variable": "AbsorptionK",
            "values": [0.001, 0.0033, 0.01, 0.05, 0.1],
            "policies": ["MaxRate", "MaxSinr", "MaxRsrp", "Biased"],
            "n_bs_values": [10, 60],
        },
    },
    "fig3": {
        "channel": {"p_tx_rf": 3.0},
        "deployment": {"architectures": ["SA", "Int"]},
        "sweep": {
            "variable": "TargetRate",
            "values": [2.5e8, 5e8, 1e9, 2e9, 4e9],
            "policies": ["MaxRate"],
            "b_thz_values": [5e9, 10e9],
        },
        "planner": {
            "confidence": 0.95,
            "n_max": 60,
            "modes": ["IntMBN", "SaEqual", "SaFlexible"],
        },
    },
    "fig4a": _FIG4_FRAGMENT,
    "fig4b": _FIG4_FRAGMENT,
    "fig4c": _FIG4_FRAGMENT,
}

PRESET_SUMMARIES = {
    "custom": "package defaults; override any section freely",
    "fig2": "mean network data rate across absorption coefficients, all association policies",
    "fig3": "required station counts versus target rate for the three planner modes",
    "fig4a": "THz association probability versus station count, both architectures",
    "fig4b": "spectral efficiency and data rate versus station count, both architectures",
    "fig4c": "deployment cost efficiency versus station count, both architectures",
}
