from fractions import Fraction

import numpy as np


def _float_ratio(p, q):
    return p / q


def ratio_for(ref):
    """``Fraction`` for scalars, plain float division for NumPy arrays."""
    return _float_ratio if isinstance(ref, np.ndarray) else Fraction
