"""Pure-numpy Grover iteration kernel.

Reference implementation of the hot loop; also the fallback used when
the compiled extension is unavailable.
"""

import numpy as np

NAME = "python"


def run_grover(amps: np.ndarray, marked: np.ndarray, steps: int) -> None:
    """Apply ``steps`` Grover iterations to ``amps`` in place.

    One iteration flips the sign of every marked amplitude and then
    reflects all amplitudes about their mean (a_i -> 2*mean - a_i).

    Parameters
    ----------
    amps : complex128 array, modified in place
    marked : intp array of marked basis-state indices
    steps : number of iterations to apply
    """
    for _ in range(steps):
        amps[marked] = -amps[marked]
        amps[:] = 2.0 * np.mean(amps) - amps
