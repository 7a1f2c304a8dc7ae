"""Per-pixel iteration kernels (numba, GIL released) and the row-block runner."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

DE_BAILOUT = 1e8
DEEP = 1e30


@njit(cache=True, nogil=True, error_model="numpy")
def _ipow(z, k):
    r = 1.0 + 0.0j
    for _ in range(k):
        r = r * z
    return r


@njit(cache=True, nogil=True, error_model="numpy")
def dynamical_block(xs, ys, n, d, lam, R, max_iter, cycle_pts, cycle_ids, capture, esc, att, dist):
    """Fill esc/att/dist for the rows ys.

    esc: first index with |z_k| > R, or -1.
    att: id of the attracting cycle the orbit was captured by, -1 if none.
    dist: exterior distance estimate |z| log|z| / |dz| for escaping pixels.
    """
    R2 = R * R
    B2 = DE_BAILOUT * DE_BAILOUT
    cap2 = capture * capture
    ncyc = cycle_pts.shape[0]
    for r in range(ys.shape[0]):
        for c in range(xs.shape[0]):
            z = complex(xs[c], ys[r])
            dz = 1.0 + 0.0j
            k = -1
            a = -1
            i = 0
            while True:
                a2 = z.real * z.real + z.imag * z.imag
                if not (a2 < B2):
                    if k < 0:
                        k = i
                    break
                if k < 0:
                    if a2 > R2:
                        k = i
                    elif a2 == 0.0:
                        k = i + 1
                        z = complex(np.inf, 0.0)
                        break
                    elif i >= max_iter:
                        break
                    else:
                        for m in range(ncyc):
                            w = z - cycle_pts[m]
                            if w.real * w.real + w.imag * w.imag < cap2:
                                a = cycle_ids[m]
                                break
                        if a >= 0:
                            break
                zn1 = _ipow(z, n - 1)
                zd = _ipow(z, d)
                dz = dz * (n * zn1 - d * lam / (zd * z))
                z = zn1 * z + lam / zd
                i += 1
            esc[r, c] = k
            att[r, c] = a
            if k >= 0:
                az = abs(z)
                adz = abs(dz)
                if not math.isfinite(az):
                    dist[r, c] = DEEP
                elif adz > 0.0 and math.isfinite(adz):
                    dist[r, c] = az * math.log(az) / adz
                else:
                    dist[r, c] = 0.0
            else:
                dist[r, c] = 0.0


@njit(cache=True, nogil=True, error_model="numpy")
def parameter_block(xs, ys, n, d, max_iter, esc):
    """Escape index of the critical orbit for each lambda = x + iy (-1 if bounded)."""
    m = n + d
    for r in range(ys.shape[0]):
        for c in range(xs.shape[0]):
            lam = complex(xs[c], ys[r])
            alam = abs(lam)
            if alam == 0.0:
                esc[r, c] = -1
                continue
            R = max(2.0, (2.0 + alam) ** (1.0 / (n - 1)))
            R2 = R * R
            rad = (d * alam / n) ** (1.0 / m)
            th = math.atan2(lam.imag, lam.real) / m
            z = complex(rad * math.cos(th), rad * math.sin(th))
            k = -1
            for i in range(max_iter + 1):
                a2 = z.real * z.real + z.imag * z.imag
                if a2 > R2 or not math.isfinite(a2):
                    k = i
                    break
                if a2 == 0.0:
                    k = i + 1
                    break
                zd = _ipow(z, d)
                z = _ipow(z, n) + lam / zd
            esc[r, c] = k


def run_rows(fn, xs, ys, args, outs, workers=1):
    """Call fn(xs, ys_block, *args, *out_blocks) over contiguous row blocks.

    Every block writes into its own row slice of the preallocated outputs, so
    the assembled arrays do not depend on the number of workers.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    workers = max(1, int(workers))
    nblocks = 1 if workers == 1 else min(ys.shape[0], 4 * workers)
    bounds = np.linspace(0, ys.shape[0], nblocks + 1).astype(int)

    def job(b):
        lo, hi = bounds[b], bounds[b + 1]
        fn(xs, ys[lo:hi], *args, *[o[lo:hi] for o in outs])

    if workers == 1:
        job(0)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(job, range(nblocks)))
    return outs
