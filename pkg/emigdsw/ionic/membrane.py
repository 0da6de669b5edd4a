"""
    Per-station membrane state and its explicit update
"""
from dataclasses import dataclass, field, replace

import numpy as np

from emigdsw.errors import IonicError
from emigdsw.ionic.aliev_panfilov import (IonicParams, aliev_panfilov_rhs,
                                         gap_junction_current)


@dataclass(frozen=True, eq=False)
class MembraneState:
    """
        Jumps and gating values at the interface stations

        Properties:
            v           - Jump u_i - u_j at each station (mV).
            w           - Gating variable, held at 0 on gap junction stations.
            is_membrane - True on membrane stations.
    """

    v: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    is_membrane: np.ndarray = field(repr=False)

    @classmethod
    def from_jumps(cls, jumps, is_membrane, w_init: float = 0.0) -> "MembraneState":
        is_membrane = np.asarray(is_membrane, dtype=bool)
        w = np.where(is_membrane, w_init, 0.0)
        return cls(v=np.asarray(jumps, dtype=float).copy(), w=w, is_membrane=is_membrane)

    @property
    def n_stations(self) -> int:
        return len(self.v)

    def with_jumps(self, jumps) -> "MembraneState":
        return replace(self, v=np.asarray(jumps, dtype=float).copy())


def membrane_step(
    state: MembraneState, tau: float, stim, params: IonicParams = IonicParams()
) -> tuple:
    """
        Advance the gating variable by one forward Euler step and sample the
        reaction term at the previous jumps

        Args:
            state  - The MembraneState holding the previous step's jumps
            tau    - Time step (ms)
            stim   - Applied current per station (only membrane stations are used)
            params - The IonicParams

        Returns:
            (state', f_nodal) where f_nodal = i_ion - stim on membrane stations
            and kappa_g * v on gap junction stations. state'.v is unchanged.
    """
    stim = np.broadcast_to(np.asarray(stim, dtype=float), state.v.shape)
    membrane = state.is_membrane

    f_nodal = gap_junction_current(state.v, params.kappa_g)
    w_next = state.w.copy()

    if np.any(membrane):
        i_ion, dw_dt = aliev_panfilov_rhs(state.v[membrane], state.w[membrane], params)
        f_nodal[membrane] = i_ion - stim[membrane]
        w_next[membrane] = state.w[membrane] + tau * dw_dt

    if not (np.all(np.isfinite(f_nodal)) and np.all(np.isfinite(w_next))):
        raise IonicError("The membrane update produced a non-finite value")

    return replace(state, w=w_next), f_nodal
