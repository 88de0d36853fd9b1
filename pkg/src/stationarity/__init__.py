from stationarity.mstationary import (
    certificates,
    check_mstationary,
    mstationarity_report,
    verify_certificate,
)

__all__ = ["certificates", "check_mstationary", "mstationarity_report", "verify_certificate"]
