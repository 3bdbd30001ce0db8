"""Compiled inner loop: per-snapshot SINR for a whole beamwidth grid at once.

Geometry, path loss and blockage do not depend on the beamwidth, so each
snapshot walks the AP list once. Every AP is dropped into the bin of the
narrowest beam whose footprint still contains it; cumulative bin sums then
give the main-lobe power for every beamwidth, and prefix/suffix maxima give
the strongest AP inside and outside each footprint.
"""

import numpy as np
from numba import njit

MIN_DIST = 0
MAX_POWER = 1


@njit(nogil=True, cache=True)
def _better(val_a, arg_a, val_b, arg_b):
    # larger value wins, equal values go to the lower AP index; arg < 0 marks "none"
    if arg_a < 0:
        return False
    if arg_b < 0:
        return True
    return val_a > val_b or (val_a == val_b and arg_a < arg_b)


@njit(nogil=True, cache=True)
def evaluate_snapshots(ap_x, ap_y, ue_x, ue_y, cos_o, sin_o, ap_height2, alpha,
                       free_radius2, cos_half_sector, body_factor,
                       radius2, main_gain, side_gain, scale, noise,
                       bin_table, table_step, sinr_out, blocked_out):
    """Fill ``sinr_out``/``blocked_out`` of shape (snapshots, beams, 2).

    ``radius2`` holds squared footprint radii sorted ascending, ``main_gain``
    the matching main-lobe gains. ``bin_table[q]`` is the first beam whose
    footprint radius reaches ``q * table_step`` (see :func:`make_bin_table`).
    Column 0 is min-distance association, column 1 max received power.
    """
    n_ap = ap_x.size
    n_beams = radius2.size
    widest2 = radius2[n_beams - 1]
    cos2 = cos_half_sector * cos_half_sector
    half_alpha = 0.5 * alpha
    n_table = bin_table.size

    bin_sum = np.empty(n_beams + 1)
    bin_val = np.empty(n_beams + 1)
    bin_arg = np.empty(n_beams + 1, np.int64)
    bin_blk = np.empty(n_beams + 1, np.bool_)
    suf_val = np.empty(n_beams + 2)
    suf_arg = np.empty(n_beams + 2, np.int64)
    suf_blk = np.empty(n_beams + 2, np.bool_)

    for s in range(ue_x.size):
        ux = ue_x[s]
        uy = ue_y[s]
        co = cos_o[s]
        so = sin_o[s]
        bin_sum[:] = 0.0
        bin_val[:] = -1.0
        bin_arg[:] = -1
        bin_blk[:] = False
        total = 0.0
        near_d2 = np.inf
        near_bl = 0.0
        near_bin = 0
        near_blk = False

        for a in range(n_ap):
            dx = ap_x[a] - ux
            dy = ap_y[a] - uy
            d2 = dx * dx + dy * dy
            r2 = d2 + ap_height2
            if alpha == 2.0:
                loss = 1.0 / r2
            else:
                loss = r2 ** (-half_alpha)
            # inside the sector iff cos(angle to body) >= cos(half sector), sector <= pi
            dot = dx * co + dy * so
            blk = (d2 > free_radius2) & (dot >= 0.0) & (dot * dot >= d2 * cos2)
            bl = loss * (body_factor if blk else 1.0)
            total += bl

            if d2 > widest2:
                b = n_beams
            else:
                # one cell of slack absorbs rounding in sqrt and the division
                q = int(np.sqrt(d2) / table_step) - 1
                b = bin_table[max(0, min(q, n_table - 1))]
                while radius2[b] < d2:
                    b += 1
            bin_sum[b] += bl
            if bl > bin_val[b]:
                bin_val[b] = bl
                bin_arg[b] = a
                bin_blk[b] = blk
            if d2 < near_d2:
                near_d2 = d2
                near_bl = bl
                near_bin = b
                near_blk = blk

        suf_val[n_beams + 1] = -1.0
        suf_arg[n_beams + 1] = -1
        suf_blk[n_beams + 1] = False
        for k in range(n_beams, -1, -1):
            if _better(bin_val[k], bin_arg[k], suf_val[k + 1], suf_arg[k + 1]):
                suf_val[k] = bin_val[k]
                suf_arg[k] = bin_arg[k]
                suf_blk[k] = bin_blk[k]
            else:
                suf_val[k] = suf_val[k + 1]
                suf_arg[k] = suf_arg[k + 1]
                suf_blk[k] = suf_blk[k + 1]

        inside = 0.0
        pre_val = -1.0
        pre_arg = -1
        pre_blk = False
        for k in range(n_beams):
            inside += bin_sum[k]
            if _better(bin_val[k], bin_arg[k], pre_val, pre_arg):
                pre_val = bin_val[k]
                pre_arg = bin_arg[k]
                pre_blk = bin_blk[k]
            big = main_gain[k]
            received = scale * (side_gain * total + (big - side_gain) * inside)

            g = big if near_bin <= k else side_gain
            serving = scale * (g * near_bl)
            rest = received - serving
            if rest < 0.0:
                rest = 0.0
            sinr_out[s, k, MIN_DIST] = serving / (noise + rest)
            blocked_out[s, k, MIN_DIST] = near_blk

            in_val = big * pre_val
            out_val = side_gain * suf_val[k + 1]
            if _better(in_val, pre_arg, out_val, suf_arg[k + 1]):
                best = in_val
                best_blk = pre_blk
            else:
                best = out_val
                best_blk = suf_blk[k + 1]
            serving = scale * best
            rest = received - serving
            if rest < 0.0:
                rest = 0.0
            sinr_out[s, k, MAX_POWER] = serving / (noise + rest)
            blocked_out[s, k, MAX_POWER] = best_blk


def make_bin_table(radius, step, limit):
    """Lower-bound beam index per distance cell of width ``step``, up to ``limit``.

    Entry ``q`` is the first beam whose radius is at least ``q * step``;
    any AP at distance >= ``q * step`` belongs to that beam or a wider one.
    """
    radius = np.asarray(radius, dtype=float)
    edges = np.arange(int(limit / step) + 2) * step
    return np.searchsorted(radius, edges, side="left").clip(0, len(radius) - 1).astype(np.int64)
