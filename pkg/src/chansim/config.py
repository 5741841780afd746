"""Experiment configuration: flat dotted key=value documents.

A config document is plain text, one ``key = value`` pair per line, with
``#`` comments and blank lines ignored.  Grids are comma lists
(``0,0.2,0.4``) or inclusive ranges ``start:step:stop``; non-numeric grid
entries are kept as strings so categorical parameters (precoder,
correlation kind) can be swept too.  Angles are in degrees at this
boundary and converted to radians inside the runner.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

MODELS = (
    "exponential", "uncorrelated", "exponential_shadow",
    "onering_ula", "gaussian_ula", "gaussian_ula_closed", "gaussian_ula_shadowed",
    "onering_upa", "gaussian_upa",
    "iid", "xl",
)

METRICS = ("capacity_ub", "ergodic_capacity", "sinr", "condition_number",
           "svd_spectrum", "corr_coeff", "vr_stats")

# Which metrics make sense for which model family.
_CORRELATION_MODELS = MODELS[:9] + ("iid",)
_METRIC_MODELS = {
    "capacity_ub": _CORRELATION_MODELS,
    "ergodic_capacity": _CORRELATION_MODELS,
    "condition_number": _CORRELATION_MODELS,
    "svd_spectrum": _CORRELATION_MODELS,
    "corr_coeff": _CORRELATION_MODELS,
    "sinr": ("xl",),
    "vr_stats": ("xl",),
}

# Sweepable parameter name -> ExperimentConfig field.
SWEEPABLE = {
    "m": "m", "rho": "rho", "beta": "beta", "sigma_shad": "sigma_shad",
    "theta": "theta_deg", "phi": "phi_deg", "delta": "delta_deg",
    "sigma_phi": "sigma_phi_deg", "theta_el": "theta_el_deg",
    "delta_theta": "delta_theta_deg", "sigma_theta": "sigma_theta_deg",
    "d_h": "d_h", "d_v": "d_v",
    "num_users": "num_users", "vr_antennas": "vr_antennas",
    "correlation": "xl_correlation", "precoder": "precoder",
    "scheme": "xl_scheme", "d1": "d1", "d2": "d2",
}

Grid = tuple


@dataclass(frozen=True)
class SweepSpec:
    """A named parameter with its value grid."""

    param: str
    grid: Grid

    def __post_init__(self):
        if self.param not in SWEEPABLE:
            raise ConfigError(f"unknown sweep parameter '{self.param}'")
        if len(self.grid) == 0:
            raise ConfigError(f"empty grid for sweep parameter '{self.param}'")


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment description.

    ``sweep`` is the primary (row) parameter; ``curves`` are up to three
    secondary parameters whose grids are crossed with the sweep, one
    output row per combination.
    """

    model: str
    metric: str
    sweep: SweepSpec
    curves: tuple = ()
    trials: int = 300
    seed: int = 0
    snr_db: float = 60.0
    workers: int = 1
    # array geometry; m_h = 0 means a linear array
    m: int = 100
    m_h: int = 0
    m_v: int = 0
    d_h: float = 0.5
    d_v: float = 0.5
    # correlation-model parameters (angles in degrees)
    rho: float = 0.5
    beta: float = 1.0
    sigma_shad: float = 0.0
    theta_deg: float = 0.0
    phi_deg: float = 30.0
    delta_deg: float = 10.0
    sigma_phi_deg: float = 10.0
    theta_el_deg: float = 0.0
    delta_theta_deg: float = 15.0
    sigma_theta_deg: float = 15.0
    num_scatterers: int = 1
    svd_index: int = 0
    # XL-MIMO scenario parameters
    xl_scheme: str = "scheme1"
    num_users: int = 10
    clusters_per_user: int = 2
    d1: float = 35.0
    d2: float = 20.0
    xl_correlation: str = "uncorrelated"
    precoder: str = "cb"
    total_power: float = 1.0
    power_convention: str = "amplitude"
    p0: float = 0.05
    p1: float = 0.95
    c: float = 0.05
    r_min: float = 5.0
    r_max: float = 10.0
    vr_antennas: int = 33
    # 1 = draw scenario geometry once per sweep point instead of per trial
    freeze_geometry: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model '{self.model}'")
        if self.metric not in METRICS:
            raise ConfigError(f"unknown metric '{self.metric}'")
        if self.model not in _METRIC_MODELS[self.metric]:
            raise ConfigError(
                f"metric '{self.metric}' is not defined for model '{self.model}'")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if len(self.curves) > 3:
            raise ConfigError("at most 3 curve parameters are supported")
        if self.xl_scheme not in ("scheme1", "scheme2"):
            raise ConfigError(f"unknown cluster scheme '{self.xl_scheme}'")
        if self.xl_correlation not in ("uncorrelated", "exponential", "onering"):
            raise ConfigError(f"unknown XL correlation '{self.xl_correlation}'")
        if self.precoder not in ("cb", "zf"):
            raise ConfigError(f"unknown precoder '{self.precoder}'")
        if self.power_convention not in ("amplitude", "power"):
            raise ConfigError(f"unknown power convention '{self.power_convention}'")


def _parse_scalar(text: str):
    """A grid entry: int if possible, else float, else the bare string."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_grid(text: str) -> Grid:
    """Parse ``a:step:b`` (inclusive) or a comma list into a value tuple."""
    text = text.strip()
    if not text:
        raise ConfigError("empty grid")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range grid must be start:step:stop, got '{text}'")
        try:
            start, step, stop = (float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"non-numeric range grid '{text}'") from None
        if step <= 0 or stop < start:
            raise ConfigError(f"invalid range grid '{text}'")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        vals = start + step * np.arange(n)
        return tuple(float(v) for v in vals)
    return tuple(_parse_scalar(p.strip()) for p in text.split(",") if p.strip())


_INT_KEYS = {"trials", "seed", "workers", "geometry.m", "geometry.m_h",
             "geometry.m_v", "model.num_scatterers", "model.svd_index",
             "xl.users", "xl.clusters_per_user", "xl.vr_antennas",
             "xl.freeze_geometry"}
_STR_KEYS = {"model", "metric", "sweep.param", "curve.param", "curve2.param",
             "curve3.param", "xl.scheme", "xl.correlation", "xl.precoder",
             "power_convention"}
_GRID_KEYS = {"sweep.grid", "curve.grid", "curve2.grid", "curve3.grid"}

# dotted document key -> ExperimentConfig field
_KEY_FIELD = {
    "model": "model", "metric": "metric",
    "trials": "trials", "seed": "seed", "snr_db": "snr_db", "workers": "workers",
    "power_convention": "power_convention",
    "geometry.m": "m", "geometry.m_h": "m_h", "geometry.m_v": "m_v",
    "geometry.d_h": "d_h", "geometry.d_v": "d_v",
    "model.rho": "rho", "model.beta": "beta", "model.sigma_shad": "sigma_shad",
    "model.theta_deg": "theta_deg", "model.phi_deg": "phi_deg",
    "model.delta_deg": "delta_deg", "model.sigma_phi_deg": "sigma_phi_deg",
    "model.theta_el_deg": "theta_el_deg",
    "model.delta_theta_deg": "delta_theta_deg",
    "model.sigma_theta_deg": "sigma_theta_deg",
    "model.num_scatterers": "num_scatterers", "model.svd_index": "svd_index",
    "xl.scheme": "xl_scheme", "xl.users": "num_users",
    "xl.clusters_per_user": "clusters_per_user",
    "xl.d1": "d1", "xl.d2": "d2", "xl.correlation": "xl_correlation",
    "xl.precoder": "precoder", "xl.total_power": "total_power",
    "xl.p0": "p0", "xl.p1": "p1", "xl.c": "c",
    "xl.r_min": "r_min", "xl.r_max": "r_max", "xl.vr_antennas": "vr_antennas",
    "xl.freeze_geometry": "freeze_geometry",
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse a key=value document into a validated ExperimentConfig."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{line}'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in raw:
            raise ConfigError(f"duplicate key '{key}'")
        raw[key] = value

    kwargs = {}
    sweeps: dict[str, dict[str, object]] = {}
    for key, value in raw.items():
        head = key.split(".", 1)[0]
        if head in ("sweep", "curve", "curve2", "curve3"):
            if key not in _GRID_KEYS and key not in _STR_KEYS:
                raise ConfigError(f"unknown key '{key}'")
            slot = sweeps.setdefault(head, {})
            if key.endswith(".grid"):
                slot["grid"] = parse_grid(value)
            else:
                slot["param"] = value
            continue
        if key not in _KEY_FIELD:
            raise ConfigError(f"unknown key '{key}'")
        if key in _INT_KEYS:
            try:
                kwargs[_KEY_FIELD[key]] = int(value)
            except ValueError:
                raise ConfigError(f"key '{key}' expects an integer, got '{value}'") from None
        elif key in _STR_KEYS:
            kwargs[_KEY_FIELD[key]] = value
        else:
            try:
                kwargs[_KEY_FIELD[key]] = float(value)
            except ValueError:
                raise ConfigError(f"key '{key}' expects a number, got '{value}'") from None

    for name in ("model", "metric"):
        if name not in kwargs:
            raise ConfigError(f"missing required key '{name}'")
    if "sweep" not in sweeps:
        raise ConfigError("missing required keys 'sweep.param' and 'sweep.grid'")

    def build_sweep(slot: dict) -> SweepSpec:
        if "param" not in slot or "grid" not in slot:
            raise ConfigError("sweep/curve sections need both .param and .grid")
        return SweepSpec(param=slot["param"], grid=slot["grid"])

    kwargs["sweep"] = build_sweep(sweeps["sweep"])
    curves = []
    for name in ("curve", "curve2", "curve3"):
        if name in sweeps:
            curves.append(build_sweep(sweeps[name]))
    kwargs["curves"] = tuple(curves)
    return ExperimentConfig(**kwargs)


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _format_grid(grid: Grid) -> str:
    return ",".join(_format_value(v) for v in grid)


def config_to_text(cfg: ExperimentConfig) -> str:
    """Serialize a config so that parse_config reads back an equal object."""
    lines = []
    field_key = {f: k for k, f in _KEY_FIELD.items()}
    defaults = {f.name: f.default for f in dataclasses.fields(ExperimentConfig)
                if f.default is not dataclasses.MISSING}
    for fld in dataclasses.fields(ExperimentConfig):
        if fld.name in ("sweep", "curves"):
            continue
        value = getattr(cfg, fld.name)
        key = field_key[fld.name]
        if fld.name in defaults and value == defaults[fld.name] \
                and fld.name not in ("model", "metric"):
            continue
        lines.append(f"{key} = {_format_value(value)}")
    lines.append(f"sweep.param = {cfg.sweep.param}")
    lines.append(f"sweep.grid = {_format_grid(cfg.sweep.grid)}")
    for name, spec in zip(("curve", "curve2", "curve3"), cfg.curves):
        lines.append(f"{name}.param = {spec.param}")
        lines.append(f"{name}.grid = {_format_grid(spec.grid)}")
    return "\n".join(lines) + "\n"


def apply_point(cfg: ExperimentConfig, assignment: dict) -> ExperimentConfig:
    """Return a copy of cfg with sweep/curve parameter values substituted."""
    updates = {}
    for param, value in assignment.items():
        fld = SWEEPABLE[param]
        current = getattr(cfg, fld)
        if isinstance(current, int) and not isinstance(value, str):
            value = int(round(value))
        updates[fld] = value
    return dataclasses.replace(cfg, **updates)
