"""Hot simulation kernels: numba-compiled by default, pure numpy on demand.

The inner loop advances every tracked coordinate across every hold segment
with the exact exponential step, pinning coordinates to zero at their switch
boundaries.  Set ``L2PURSUIT_NO_NUMBA=1`` to force the pure-numpy path (also
taken automatically when numba is not importable).  Both paths implement the
same arithmetic; ``benchmarks/bench_backends.py`` compares their throughput
and agreement.
"""

import math
import os

import numpy as np

ENV_FLAG = "L2PURSUIT_NO_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(ENV_FLAG, "").strip() in ("", "0")


try:
    if _numba_requested():
        from numba import njit

        HAVE_NUMBA = True
    else:
        HAVE_NUMBA = False
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False


def _simulate_loop(lam, z0, w_active, t_switch, switch_bound_idx, bounds, base_seg, V, store_states):
    """Scalar-loop kernel body, compiled with numba when available.

    Returns per-sample state norms, per-segment control norms for pursuer and
    evader, and (optionally) the full state history.  Segment m spans
    [bounds[m], bounds[m+1]); a coordinate thrusts on the segment iff the
    segment starts strictly before its switch time, and is set to exactly
    zero at the boundary matching its switch time.
    """
    n = lam.size
    n_seg = bounds.size - 1
    z = z0.copy()
    norm_z = np.empty(n_seg + 1)
    seg_u = np.empty(n_seg)
    seg_v = np.empty(n_seg)
    states = np.empty((n_seg + 1 if store_states else 1, n))

    acc = 0.0
    for i in range(n):
        acc += z[i] * z[i]
    norm_z[0] = math.sqrt(acc)
    if store_states:
        for i in range(n):
            states[0, i] = z[i]

    for m in range(n_seg):
        a = bounds[m]
        h = bounds[m + 1] - a
        row = base_seg[m]
        su = 0.0
        sv = 0.0
        for i in range(n):
            vi = V[row, i]
            if a < t_switch[i]:
                w = w_active[i]
            else:
                w = 0.0
            ui = w + vi
            su += ui * ui
            sv += vi * vi
            x = lam[i] * h
            z[i] = math.exp(-x) * z[i] + (w / lam[i]) * (-math.expm1(-x))
            if switch_bound_idx[i] == m + 1:
                z[i] = 0.0
        seg_u[m] = math.sqrt(su)
        seg_v[m] = math.sqrt(sv)
        acc = 0.0
        for i in range(n):
            acc += z[i] * z[i]
        norm_z[m + 1] = math.sqrt(acc)
        if store_states:
            for i in range(n):
                states[m + 1, i] = z[i]
    return norm_z, seg_u, seg_v, states


if HAVE_NUMBA:
    _simulate_njit = njit(cache=True)(_simulate_loop)


def _simulate_numpy(lam, z0, w_active, t_switch, switch_bound_idx, bounds, base_seg, V, store_states):
    """Vectorized fallback with the same contract as ``_simulate_loop``."""
    n = lam.size
    n_seg = bounds.size - 1
    z = z0.copy()
    norm_z = np.empty(n_seg + 1)
    seg_u = np.empty(n_seg)
    seg_v = np.empty(n_seg)
    states = np.empty((n_seg + 1 if store_states else 1, n))

    norm_z[0] = np.sqrt(np.dot(z, z))
    if store_states:
        states[0] = z

    boundary_ids = np.arange(1, n_seg + 1)
    for m in range(n_seg):
        a = bounds[m]
        h = bounds[m + 1] - a
        v = V[base_seg[m]]
        w = np.where(a < t_switch, w_active, 0.0)
        u = w + v
        seg_u[m] = np.sqrt(np.dot(u, u))
        seg_v[m] = np.sqrt(np.dot(v, v))
        x = lam * h
        z = np.exp(-x) * z + (w / lam) * (-np.expm1(-x))
        z[switch_bound_idx == boundary_ids[m]] = 0.0
        norm_z[m + 1] = np.sqrt(np.dot(z, z))
        if store_states:
            states[m + 1] = z
    return norm_z, seg_u, seg_v, states


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def simulate_segments(
    lam, z0, w_active, t_switch, switch_bound_idx, bounds, base_seg, V,
    store_states=False, backend=None,
):
    """Dispatch the segment-stepping kernel to the selected backend."""
    if backend is None:
        backend = default_backend()
    args = (
        np.ascontiguousarray(lam),
        np.ascontiguousarray(z0),
        np.ascontiguousarray(w_active),
        np.ascontiguousarray(t_switch),
        np.ascontiguousarray(switch_bound_idx),
        np.ascontiguousarray(bounds),
        np.ascontiguousarray(base_seg),
        np.ascontiguousarray(V),
        bool(store_states),
    )
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return _simulate_njit(*args)
    if backend == "numpy":
        return _simulate_numpy(*args)
    raise ValueError(f"unknown backend {backend!r}")


def warmup() -> str:
    """Trigger JIT compilation on a tiny problem; returns the active backend."""
    lam = np.array([1.0])
    simulate_segments(
        lam, np.array([1.0]), np.array([-1.0]), np.array([0.5]),
        np.array([1], dtype=np.int64), np.array([0.0, 0.5, 1.0]),
        np.array([0, 0], dtype=np.int64), np.zeros((1, 1)),
    )
    return default_backend()
