"""Physical constants and 85Rb numbers used by the builtin scenarios."""
import math

TWO_PI = 2.0 * math.pi

# Wavelengths of the four fields (nm): lower pump, upper pump, signal, idler.
LOWER_PUMP_NM = 795.0
UPPER_PUMP_NM = 1324.0
SIGNAL_NM = 1367.0
IDLER_NM = 780.0

# 85Rb numbers (MHz).
D2_LINEWIDTH_MHZ = 6.05
D1_LINEWIDTH_MHZ = 5.75
EXCITED_HYPERFINE_SPLITTING_MHZ = 120.6
GROUND_HYPERFINE_SPLITTING_MHZ = 3036.0
UPPER_STATE_LINEWIDTH_MHZ = 1.9

# Most probable 1D speed at 100 C: sqrt(2kT/m) for m = 85 u.
THERMAL_SPEED_MPS = 270.0

# Spin-wave dephasing speed quoted for the on-resonant regime.
MOTIONAL_SPEED_MPS = 6.6


def wavenumber_radpm(wavelength_nm: float) -> float:
    return TWO_PI / (wavelength_nm * 1e-9)


def doppler_shift_mhz_per_mps(wavelength_nm: float) -> float:
    """k v / 2pi expressed in MHz for v = 1 m/s."""
    return 1e3 / wavelength_nm
