"""Counter-based random streams for reproducible Monte Carlo walks.

Every random number consumed by a walk is a pure function of
(seed, walk_index, step, slot).  Nothing is drawn sequentially, so the
value of walk i never depends on how walks are batched, compressed or
distributed over worker processes.  The mixing function is the SplitMix64
finalizer over 64-bit counters.
"""

from __future__ import annotations

import numpy as np

# Weyl increment (golden-ratio constant) and seed tweak for key derivation.
PHI64 = np.uint64(0x9E3779B97F4A7C15)
SEED_TWEAK = np.uint64(0x5851F42D4C957F2D)

# Fixed number of draw slots reserved per walk step.  Slots 0..5 feed the
# sphere direction, slot 6 the ball-radius uniform, slots 7..12 the ball
# direction; the rest are spare.  Changing this constant changes every
# stream, so it is part of the reproducibility contract.
SLOTS_PER_STEP = 16

_U64 = np.uint64
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TO_U01 = 2.0**-53
_U01_HALF = 2.0**-54


def mix64(x):
    """SplitMix64 output function over uint64 scalars or arrays."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = (x ^ (x >> _S30)) * _M1
        x = (x ^ (x >> _S27)) * _M2
        x = x ^ (x >> _S31)
    return x


def walk_keys(seed: int, indices) -> np.ndarray:
    """Per-walk stream keys for the given walk indices (uint64 array)."""
    idx = np.asarray(indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        base = mix64(_U64(seed & 0xFFFFFFFFFFFFFFFF) ^ SEED_TWEAK)
        return mix64(base + (idx + _U64(1)) * PHI64)


def draw_u01(keys, step: int, slot: int) -> np.ndarray:
    """Uniform draws in the open interval (0, 1) for slot `slot` of step `step`.

    `keys` is a uint64 array of walk keys; the result has the same shape.
    """
    keys = np.asarray(keys, dtype=np.uint64)
    ctr = _U64(step * SLOTS_PER_STEP + slot + 1)
    with np.errstate(over="ignore"):
        h = mix64(keys + ctr * PHI64)
    return (h >> _S11) * _TO_U01 + _U01_HALF


def derive_seed(seed: int, k: int) -> int:
    """Deterministically derive a child seed (planner steps, grid cells)."""
    with np.errstate(over="ignore"):
        h = mix64(_U64(seed & 0xFFFFFFFFFFFFFFFF) + PHI64 * _U64(k + 1) + SEED_TWEAK)
    return int(h)
