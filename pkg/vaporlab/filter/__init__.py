from .spec import FilterSpec, FilterTransmission, FilterModel
from .transmission import (
    build_transmission,
    time_kernel,
    filter_width_mhz,
    filter_width_from_response,
    half_transmission_width,
    normalized_response,
    transmission_from_response,
    od_for_width,
    compose,
    causal_response,
)

__all__ = [
    "FilterSpec",
    "FilterTransmission",
    "FilterModel",
    "build_transmission",
    "time_kernel",
    "filter_width_mhz",
    "filter_width_from_response",
    "half_transmission_width",
    "normalized_response",
    "transmission_from_response",
    "od_for_width",
    "compose",
    "causal_response",
]
