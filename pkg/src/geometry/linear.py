from collections.abc import Sequence

import numpy as np
import scipy.linalg

from core import linalg
from core.linalg import Scalar, is_exact
from core.settings import settings


def rank(vectors: Sequence[Sequence[Scalar]], tol: float | None = None) -> int:
    """Rank of a vector family.

    Exact elimination when every entry is rational; otherwise a column-pivoted
    QR factorization with a threshold relative to the largest diagonal entry.
    """
    if not vectors:
        return 0
    if all(is_exact(v) for v in vectors):
        return linalg.rank(vectors)
    tol = settings.RANK_TOL if tol is None else tol
    matrix = np.array([[float(a) for a in v] for v in vectors], dtype=float).T
    if not matrix.size:
        return 0
    r = scipy.linalg.qr(matrix, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    if not diag.size or diag[0] == 0:
        return 0
    return int(np.sum(diag > tol * diag[0]))
