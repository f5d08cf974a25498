"""Reference implementations written with plain Python scalars.

Nothing here imports the package; these are the independent sides of the
dual-route checks.
"""

import math


def quantile_linear(sorted_values, q):
    """Linear-interpolation quantile (position q * (n - 1))."""
    n = len(sorted_values)
    pos = q * (n - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, n - 1)
    frac = pos - lo
    return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo])


def quantile_init(data, c):
    distinct = sorted(set(float(x) for x in data))
    return [quantile_linear(distinct, (i + 0.5) / c) for i in range(c)]


def memberships_for_point(x, centers, m):
    zero = [i for i, v in enumerate(centers) if x == v]
    if zero:
        return [1.0 / len(zero) if i in zero else 0.0 for i in range(len(centers))]
    out = []
    for vi in centers:
        s = 0.0
        for vk in centers:
            s += (abs(x - vi) / abs(x - vk)) ** (2.0 / (m - 1.0))
        out.append(1.0 / s)
    return out


def fixed_point_fcm(data, centers, m=2.0, tol=1e-12, max_iter=100_000):
    """Iterate the membership and center equations until centers move < tol.

    Returns (centers, memberships, cost).
    """
    data = [float(x) for x in data]
    v = [float(c) for c in centers]
    for _ in range(max_iter):
        u = [memberships_for_point(x, v, m) for x in data]
        new = []
        for i in range(len(v)):
            num = sum((row[i] ** m) * x for row, x in zip(u, data))
            den = sum(row[i] ** m for row in u)
            new.append(num / den if den > 0 else v[i])
        shift = max(abs(a - b) for a, b in zip(new, v))
        v = new
        if shift < tol:
            break
    u = [memberships_for_point(x, v, m) for x in data]
    cost = sum(
        (row[i] ** m) * (x - v[i]) ** 2 for row, x in zip(u, data) for i in range(len(v))
    )
    return v, u, cost


def reflect_index(i, n):
    """Half-sample symmetric reflection: -1 -> 0, n -> n - 1."""
    while i < 0 or i >= n:
        if i < 0:
            i = -i - 1
        if i >= n:
            i = 2 * n - i - 1
    return i


def brute_moving_average(counts, window):
    n = len(counts)
    half = window // 2
    return [
        sum(counts[reflect_index(g + k, n)] for k in range(-half, half + 1)) / window
        for g in range(n)
    ]


def naive_mask(pixels_2d, table):
    """Per-pixel loop applying a 256-entry 0/1 table."""
    return [[255 if table[p] == 1 else 0 for p in row] for row in pixels_2d]
