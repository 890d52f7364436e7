import numpy as np
from numpy.typing import ArrayLike

from ..shared.errors import DomainError


def lorentzian_chi(detuning_mhz: ArrayLike, gamma_mhz: float):
    """
    Single velocity-class response 1/(i*delta - Gamma) in 1/MHz.

    gamma_mhz is the population linewidth; the amplitude half-width Gamma
    is gamma_mhz/2. Accepts scalars or arrays.
    """
    if not gamma_mhz > 0:
        raise DomainError("gamma_mhz must be > 0", gamma_mhz=gamma_mhz)
    delta = np.asarray(detuning_mhz, dtype=float)
    chi = 1.0 / (1j * delta - 0.5 * gamma_mhz)
    return complex(chi) if chi.ndim == 0 else chi
