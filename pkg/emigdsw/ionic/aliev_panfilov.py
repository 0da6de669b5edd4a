"""
    Aliev-Panfilov membrane kinetics and the linear gap junction current
"""
from dataclasses import dataclass

import numpy as np

from emigdsw.conf import DEFAULT_C_M, DEFAULT_V_INIT
from emigdsw.errors import ConfigError, IonicError


@dataclass(frozen=True)
class IonicParams:
    """
        Constants of the reaction term

        Properties:
            k, a, eps0, mu1, mu2 - Aliev-Panfilov constants (dimensionless).
            v_rest, v_amp        - phi = (v - v_rest) / v_amp maps mV to [0, 1].
            i_scale              - Current per unit dimensionless rate. Defaults
                                   to C_m * v_amp so dphi/dt = r in model time.
            kappa_g              - Gap junction conductance.
            time_scale           - Model time units per ms.
    """

    k: float = 8.0
    a: float = 0.15
    eps0: float = 0.002
    mu1: float = 0.2
    mu2: float = 0.3
    v_rest: float = DEFAULT_V_INIT
    v_amp: float = 100.0
    i_scale: float = None
    kappa_g: float = 1.0
    time_scale: float = 1.0

    def __post_init__(self):
        if self.i_scale is None:
            object.__setattr__(self, "i_scale", DEFAULT_C_M * self.v_amp)

        if not self.v_amp > 0:
            raise ConfigError(f"v_amp must be positive, got {self.v_amp}")
        if self.kappa_g < 0:
            raise ConfigError(f"kappa_g must be non-negative, got {self.kappa_g}")
        if not self.time_scale > 0:
            raise ConfigError(f"time_scale must be positive, got {self.time_scale}")

    def normalize(self, v_phys):
        return (np.asarray(v_phys, dtype=float) - self.v_rest) / self.v_amp


def aliev_panfilov_rhs(v_phys, w, params: IonicParams = IonicParams()) -> tuple:
    """
        Evaluate the ionic current and the gating rate

        Args:
            v_phys - Transmembrane jump(s) in mV
            w      - Gating variable(s)
            params - The IonicParams

        Returns:
            (i_ion, dw_dt): outward-positive current and the rate of w per ms
    """
    phi = params.normalize(v_phys)
    w = np.asarray(w, dtype=float)

    denominator = phi + params.mu2
    if np.any(denominator == 0):
        raise IonicError(f"phi = -mu2 = {-params.mu2} makes the gating rate undefined")

    rate = -params.k * phi * (phi - params.a) * (phi - 1.0) - phi * w
    eps = params.eps0 + params.mu1 * w / denominator
    dw_dt = params.time_scale * eps * (-w - params.k * phi * (phi - params.a - 1.0))

    i_ion = -params.i_scale * params.time_scale * rate
    return i_ion, dw_dt


def gap_junction_current(jump, kappa_g: float):
    """
        Linear gap junction current kappa_g * [u]
    """
    return kappa_g * np.asarray(jump, dtype=float)
