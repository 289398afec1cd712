"""Independent reference implementations used as test oracles.

Plain Python loops over neighbours and strategies, no numpy linear algebra,
written straight from the payoff and update formulas.
"""
import math


def brute_payoff(i, x, W, labels, m):
    """u_i(h) with labelled neighbours grouped by class."""
    u = [0.0] * m
    for j in range(len(W)):
        if j == i or W[i][j] == 0.0:
            continue
        if labels[j] < 0:
            for h in range(m):
                u[h] += W[i][j] * x[j][h]
        else:
            u[labels[j]] += W[i][j]
    return u


def brute_step(x, W, labels):
    m = len(x[0])
    out = []
    for i in range(len(x)):
        if labels[i] >= 0:
            out.append(list(x[i]))
            continue
        u = brute_payoff(i, x, W, labels, m)
        avg = sum(x[i][h] * u[h] for h in range(m))
        if avg == 0.0:
            out.append(list(x[i]))
        else:
            out.append([x[i][h] * u[h] / avg for h in range(m)])
    return out


def two_class_recursion(p0, w_same, w_other, steps):
    """Probability of class 0 for one unlabelled player whose only two
    neighbours are labelled with class 0 (weight w_same) and 1 (w_other)."""
    ps = [p0]
    p = p0
    for _ in range(steps):
        p = w_same * p / (w_same * p + w_other * (1 - p))
        ps.append(p)
    return ps


def l2(a, b):
    return math.sqrt(sum((u - v) ** 2 for ra, rb in zip(a, b) for u, v in zip(ra, rb)))
