from errorbound.distance import Nearest, feasible_distance, nearest_feasible
from errorbound.estimate import estimate_error_bound, to_frame, write_csv

__all__ = [
    "Nearest",
    "estimate_error_bound",
    "feasible_distance",
    "nearest_feasible",
    "to_frame",
    "write_csv",
]
