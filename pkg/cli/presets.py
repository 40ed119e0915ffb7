"""
Built-in run configurations, one per reproduction scenario.
"""

from cli.config import RunConfig

PRESETS: dict[str, dict] = {
    "ideal-metal-vacuum": {
        "pressure": {
            "wall": "ideal-metal",
            "gap": "vacuum",
            "a": [1e-7, 1e-6, 1e-5],
            "T": [0.0],
        },
        "rw_profile": {
            "wall": "ideal-metal",
            "gap": "vacuum",
            "a": 1e-6,
            "T": 300.0,
            "z": {"min": 5e-8, "max": 9.5e-7, "points": 19},
        },
        "cutoff_scan": {
            "wall": "ideal-metal",
            "gap": "vacuum",
            "a": 1e-6,
            "T": 300.0,
            "z": 0.0,
            "cutoffs": {"min": 1e8, "max": 1e9, "points": 6, "spacing": "geometric"},
        },
        "near_interface": {
            "wall": "ideal-metal",
            "gap": "vacuum",
            "a": 1e-6,
            "T": 300.0,
            "z": {"min": 1e-10, "max": 1e-8, "points": 5, "spacing": "geometric"},
        },
    },
    "dilute-gap-demo": {
        "pressure": {
            "wall": "dense-wall",
            "gap": "dilute-gap",
            "a": {"min": 1e-7, "max": 1e-5, "points": 5, "spacing": "geometric"},
            "T": [300.0],
        },
        "rw_profile": {
            "wall": "dense-wall",
            "gap": "dilute-gap",
            "a": 1e-6,
            "T": 300.0,
            "z": {"min": 5e-8, "max": 9.5e-7, "points": 19},
        },
        "cutoff_scan": {
            "wall": "dense-wall",
            "gap": "dilute-gap",
            "a": 1e-6,
            "T": 300.0,
            "z": 0.0,
            "cutoffs": {"min": 1e8, "max": 1e9, "points": 6, "spacing": "geometric"},
        },
        "near_interface": {
            "wall": "dense-wall",
            "gap": "dilute-gap",
            "a": 1e-6,
            "T": 300.0,
            "z": {"min": 1e-10, "max": 1e-8, "points": 9, "spacing": "geometric"},
        },
    },
    "gold-vacuum": {
        "pressure": {
            "wall": "gold-drude",
            "gap": "vacuum",
            "a": {"min": 1e-7, "max": 1e-6, "points": 4, "spacing": "geometric"},
            "T": [300.0],
        },
        "rw_profile": {
            "wall": "gold-drude",
            "gap": "vacuum",
            "a": 1e-6,
            "T": 300.0,
            "z": {"min": 5e-8, "max": 9.5e-7, "points": 19},
        },
    },
    "water-condenser": {
        "classical": {
            "eps": 80.0,
            "E": 1e6,
            "rho_mass": 1000.0,
            "g": 9.81,
        },
        "liquid_rise": {
            "eps": 80.0,
            "E": 1e6,
            "rho_mass": 1000.0,
            "g": 9.81,
        },
    },
}


def load_preset(name: str) -> RunConfig:
    try:
        data = PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"Unknown preset '{name}'. Known presets: {known}")
    return RunConfig.model_validate(data)
