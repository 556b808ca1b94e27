"""Independent reference implementations used as test oracles.

Each oracle is written from the definition alone, in plain Python loops,
without calling into the package.
"""

import itertools
import math


def brute_distance(a, b):
    # d * d is the correctly rounded square; libm pow behind d ** 2 is not
    total = 0.0
    for x, y in zip(a, b):
        d = float(x) - float(y)
        total += d * d
    return math.sqrt(total)


def brute_hausdorff(A, B):
    """Double loop over all point pairs."""
    def directed(X, Y):
        worst = 0.0
        for x in X:
            best = math.inf
            for y in Y:
                best = min(best, brute_distance(x, y))
            worst = max(worst, best)
        return worst
    return max(directed(A, B), directed(B, A))


def svd_2x2_norm(M):
    """Largest singular value of a 2x2 matrix from the eigenvalues of M^T M."""
    (a, b), (c, d) = M
    p = a * a + c * c
    q = a * b + c * d
    r = b * b + d * d
    return math.sqrt((p + r) / 2 + math.sqrt(((p - r) / 2) ** 2 + q * q))


def cantor_left_endpoints(level):
    """Left endpoints of the level-``level`` Cantor intervals: ternary
    expansions with ``level`` digits in {0, 2}."""
    return sorted(sum(d * 3.0 ** -(j + 1) for j, d in enumerate(digits))
                  for digits in itertools.product((0, 2), repeat=level))


def only_cantor_digits(x, level, tol=1e-12):
    """Whether ``x`` has a ``level``-digit ternary expansion using only 0 and 2."""
    n = round(x * 3 ** level)
    if abs(n - x * 3 ** level) > tol * 3 ** level:
        return False
    for _ in range(level):
        n, r = divmod(n, 3)
        if r == 1:
            return False
    return n == 0


def quadratic_bspline(t):
    """Cardinal quadratic B-spline supported on [0, 3]."""
    if 0 <= t < 1:
        return t * t / 2
    if 1 <= t < 2:
        return (-2 * t * t + 6 * t - 3) / 2
    if 2 <= t < 3:
        return (3 - t) ** 2 / 2
    return 0.0


def quadratic_spline_curve(points, u):
    """``sum_j p_j B(u + 1.5 - j)``: the B-spline curve of ``points`` with
    parameter ``u`` centred so that ``u = j`` sits over ``p_j``."""
    dim = len(points[0])
    out = [0.0] * dim
    for j, p in enumerate(points):
        w = quadratic_bspline(u + 1.5 - j)
        if w:
            for c in range(dim):
                out[c] += w * p[c]
    return out


def refine_by_definition(points, coeffs, first_index=0):
    """``p'_i = sum_j a_{i-2j} p_j`` over the outputs whose nonzero
    coefficients all hit data; returns ``{i: point}``."""
    n = len(points)
    dim = len(points[0])
    a = {first_index + q: c for q, c in enumerate(coeffs) if c != 0}
    out = {}
    lo = 2 * 0 + min(a)
    hi = 2 * (n - 1) + max(a)
    for i in range(lo, hi + 1):
        terms = [(ell, c) for ell, c in a.items() if (i - ell) % 2 == 0]
        js = [(i - ell) // 2 for ell, _ in terms]
        if not terms or min(js) < 0 or max(js) > n - 1:
            continue
        val = [0.0] * dim
        for (ell, c), j in zip(terms, js):
            for d in range(dim):
                val[d] += c * points[j][d]
        out[i] = val
    return out


def binomial_row(k):
    return [math.comb(k, j) for j in range(k + 1)]


def matmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def codes(k):
    return list(itertools.product((1, 2), repeat=k))
