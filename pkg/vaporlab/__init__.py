"""
VAPORLAB - Biphoton correlation simulator for warm-vapor four-wave mixing.

Districts:
    shared     Result type, errors, settings, logging
    scheme     grids, level schemes, pump fields, geometry
    response   susceptibilities (Lorentzian, Doppler, driven multilevel)
    filter     filter transmission and its time kernel
    biphoton   pair amplitude, correlation traces, motional effects
    analysis   beat spectra, fits, scans
    scenarios  scenario records, builtins, config files
    storage    CSV/JSON artifacts and run manifests
"""
__version__ = "0.1.0"
