"""Ready-made experiment configurations for the studied figure families.

Grids follow each figure's parameter table; where a table gives a range
without a step ([20:400] antennas, [0:1] correlation factor) the step
here is a sampling choice, not part of the table.  Deterministic metrics
(capacity upper bound, condition number of a fixed correlation matrix)
use a single trial; anything with shadowing or fading uses 300 trials.
"""

from __future__ import annotations

from .config import ExperimentConfig, SweepSpec
from .errors import ConfigError

_M_GRID = tuple(float(m) for m in range(20, 401, 20))
_M_SQUARES = (16.0, 36.0, 64.0, 100.0, 144.0, 196.0, 256.0, 324.0, 400.0)
_RHO_COARSE = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
_RHO_FINE = tuple(round(0.05 * i, 2) for i in range(21))
_DH_GRID = tuple(0.5 * i for i in range(21))        # 0 .. 10 wavelengths
_SQRT3 = 3.0 ** 0.5


def _sweep(param, grid):
    return SweepSpec(param=param, grid=tuple(grid))


def _build_presets() -> dict:
    p = {}

    # correlation-only capacity studies (deterministic, one trial)
    p["fig5a"] = ExperimentConfig(
        model="exponential", metric="capacity_ub", trials=1,
        sweep=_sweep("m", _M_GRID), curves=(_sweep("rho", _RHO_COARSE),))
    p["fig5b"] = ExperimentConfig(
        model="exponential", metric="capacity_ub", trials=1, m=100,
        sweep=_sweep("rho", _RHO_FINE))

    # shadowed fading models (random, 300 trials)
    p["fig6a"] = ExperimentConfig(
        model="uncorrelated", metric="capacity_ub",
        sweep=_sweep("m", _M_GRID),
        curves=(_sweep("sigma_shad", (0.0, 2.0, 4.0, 6.0)),))
    p["fig7a"] = ExperimentConfig(
        model="exponential_shadow", metric="capacity_ub",
        sigma_shad=4.0, theta_deg=90.0,
        sweep=_sweep("m", _M_GRID), curves=(_sweep("rho", _RHO_COARSE),))
    p["fig7b"] = ExperimentConfig(
        model="exponential_shadow", metric="capacity_ub", m=100, theta_deg=90.0,
        sweep=_sweep("rho", _RHO_FINE),
        curves=(_sweep("sigma_shad", (0.0, 2.0, 4.0, 6.0)),))

    # one-ring ULA condition number
    p["fig9a"] = ExperimentConfig(
        model="onering_ula", metric="condition_number", trials=1,
        m=100, phi_deg=30.0,
        sweep=_sweep("delta", tuple(float(d) for d in range(1, 51))))
    p["fig9b"] = ExperimentConfig(
        model="onering_ula", metric="condition_number", trials=1,
        m=100, phi_deg=30.0,
        sweep=_sweep("delta", (10.0 * _SQRT3, 20.0 * _SQRT3, 30.0 * _SQRT3)))

    # one-ring ULA capacity
    p["fig10a"] = ExperimentConfig(
        model="onering_ula", metric="capacity_ub", trials=1, m=100,
        sweep=_sweep("delta", tuple(float(d) for d in range(0, 46, 5))),
        curves=(_sweep("phi", (0.0, 90.0)),))
    p["fig10b"] = ExperimentConfig(
        model="onering_ula", metric="capacity_ub", trials=1, m=100,
        sweep=_sweep("phi", tuple(float(x) for x in range(0, 361, 5))),
        curves=(_sweep("delta", (10.0, 30.0)),))
    p["fig10c"] = ExperimentConfig(
        model="onering_ula", metric="capacity_ub", trials=1,
        sweep=_sweep("m", _M_GRID),
        curves=(_sweep("phi", (0.0, 90.0)), _sweep("delta", (10.0, 30.0))))
    p["fig10d"] = ExperimentConfig(
        model="onering_ula", metric="capacity_ub", trials=1, m=100, phi_deg=0.0,
        sweep=_sweep("d_h", _DH_GRID),
        curves=(_sweep("delta", (10.0, 30.0)),))

    # Gaussian scattering ULA capacity
    p["fig11a"] = ExperimentConfig(
        model="gaussian_ula", metric="capacity_ub", trials=1, m=100, phi_deg=30.0,
        sweep=_sweep("sigma_phi", (0.0, 5.0, 10.0, 15.0)))
    p["fig11b"] = ExperimentConfig(
        model="gaussian_ula_shadowed", metric="capacity_ub", m=100, phi_deg=30.0,
        sigma_shad=2.0,
        sweep=_sweep("sigma_phi", (0.0, 5.0, 10.0, 15.0)))
    p["fig12a"] = ExperimentConfig(
        model="gaussian_ula_shadowed", metric="capacity_ub", m=100,
        sweep=_sweep("sigma_phi", tuple(float(s) for s in range(0, 16))),
        curves=(_sweep("phi", (0.0, 90.0)), _sweep("sigma_shad", (0.0, 2.0, 4.0))))
    p["fig12b"] = ExperimentConfig(
        model="gaussian_ula_shadowed", metric="capacity_ub", m=100,
        sigma_phi_deg=15.0,
        sweep=_sweep("phi", tuple(float(x) for x in range(0, 361, 5))),
        curves=(_sweep("sigma_shad", (0.0, 2.0, 4.0)),))
    p["fig12c"] = ExperimentConfig(
        model="gaussian_ula_shadowed", metric="capacity_ub", sigma_phi_deg=15.0,
        sweep=_sweep("m", _M_GRID),
        curves=(_sweep("phi", (0.0, 90.0)), _sweep("sigma_shad", (0.0, 2.0, 4.0))))
    p["fig12d"] = ExperimentConfig(
        model="gaussian_ula", metric="capacity_ub", trials=1, m=100, phi_deg=0.0,
        sweep=_sweep("d_h", _DH_GRID),
        curves=(_sweep("sigma_phi", (5.0, 15.0)),))

    # planar-array one-ring capacity
    p["fig13a"] = ExperimentConfig(
        model="onering_upa", metric="capacity_ub", trials=1, m=100,
        delta_deg=10.0, delta_theta_deg=2.0,
        sweep=_sweep("theta_el", tuple(float(t) for t in range(-90, 91, 10))),
        curves=(_sweep("phi", (0.0, 90.0, 180.0, 270.0)),))
    p["fig13b"] = ExperimentConfig(
        model="onering_upa", metric="capacity_ub", trials=1, delta_deg=30.0,
        sweep=_sweep("m", _M_SQUARES),
        curves=(_sweep("phi", (0.0, 90.0)), _sweep("theta_el", (0.0, 90.0)),
                _sweep("delta_theta", (15.0, 30.0))))
    p["fig13c"] = ExperimentConfig(
        model="onering_upa", metric="capacity_ub", trials=1, m=100,
        theta_el_deg=0.0,
        sweep=_sweep("phi", tuple(float(x) for x in range(0, 361, 10))),
        curves=(_sweep("delta", (10.0, 30.0)), _sweep("delta_theta", (2.0, 10.0, 30.0))))
    p["fig13d"] = ExperimentConfig(
        model="onering_upa", metric="capacity_ub", trials=1, m=100,
        phi_deg=0.0, theta_el_deg=0.0,
        sweep=_sweep("d_h", _DH_GRID),
        curves=(_sweep("delta", (10.0, 40.0)), _sweep("delta_theta", (5.0, 20.0))))

    # planar-array Gaussian capacity
    p["fig14a"] = ExperimentConfig(
        model="gaussian_upa", metric="capacity_ub", trials=1, sigma_phi_deg=30.0,
        sweep=_sweep("m", _M_SQUARES),
        curves=(_sweep("phi", (0.0, 90.0)), _sweep("theta_el", (0.0, 90.0)),
                _sweep("sigma_theta", (15.0, 30.0))))
    p["fig14b"] = ExperimentConfig(
        model="gaussian_upa", metric="capacity_ub", trials=1, m=100,
        theta_el_deg=0.0,
        sweep=_sweep("phi", tuple(float(x) for x in range(0, 361, 10))),
        curves=(_sweep("sigma_phi", (10.0, 30.0)), _sweep("sigma_theta", (2.0, 10.0))))
    p["fig14c"] = ExperimentConfig(
        model="gaussian_upa", metric="capacity_ub", trials=1, m=100,
        phi_deg=0.0, theta_el_deg=0.0,
        sweep=_sweep("d_h", _DH_GRID),
        curves=(_sweep("sigma_phi", (5.0, 20.0)), _sweep("sigma_theta", (5.0, 20.0))))

    # channel-vector correlation decay with array size
    p["corrcoef"] = ExperimentConfig(
        model="iid", metric="corr_coeff", trials=1000,
        sweep=_sweep("m", (10.0, 50.0, 100.0)))

    # visibility-region statistics histogram data
    p["vr_hist"] = ExperimentConfig(
        model="xl", metric="vr_stats", trials=10000,
        sweep=_sweep("vr_antennas", (33.0,)))

    # XL-MIMO downlink SINR vs number of users
    _K = (1.0, 5.0, 10.0, 20.0)
    for name, scheme, precoder in (("fig15a", "scheme1", "cb"),
                                   ("fig15b", "scheme1", "zf"),
                                   ("fig15c", "scheme2", "cb"),
                                   ("fig15d", "scheme2", "zf")):
        p[name] = ExperimentConfig(
            model="xl", metric="sinr", trials=300, snr_db=10.0, m=100,
            xl_scheme=scheme, precoder=precoder, clusters_per_user=2,
            sweep=_sweep("num_users", _K),
            curves=(_sweep("correlation", ("uncorrelated", "onering")),))
    return p


_PRESETS = _build_presets()


def preset_names() -> tuple:
    """All preset names, sorted."""
    return tuple(sorted(_PRESETS))


def preset(name: str) -> ExperimentConfig:
    """The configuration registered under ``name``."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset '{name}'") from None
