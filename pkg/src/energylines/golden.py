import math

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def golden_max(f, a, b, tol=1e-10, max_iter=200):
    """Golden-section search for the maximum of a unimodal f on [a, b].

    Returns (x, f(x)). The endpoints are also compared so that a maximum
    sitting on the boundary of the interval is not missed.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = f(d)
    best = max(((c, fc), (d, fd), (a, f(a)), (b, f(b))), key=lambda t: t[1])
    return best
