import math


def rk45_step(f, t, y, h):
    """One Dormand-Prince 5(4) step; returns (y5, error_estimate)."""
    a = [
        [],
        [1 / 5],
        [3 / 40, 9 / 40],
        [44 / 45, -56 / 15, 32 / 9],
        [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
        [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
        [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
    ]
    b5 = [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0]
    b4 = [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40]
    k = []
    for row in a:
        yi = [y[j] + h * sum(c * k[i][j] for i, c in enumerate(row))
              for j in range(len(y))]
        k.append(f(t, yi))
    y5 = [y[j] + h * sum(c * k[i][j] for i, c in enumerate(b5)) for j in range(len(y))]
    y4 = [y[j] + h * sum(c * k[i][j] for i, c in enumerate(b4)) for j in range(len(y))]
    err = math.sqrt(sum((u - v) ** 2 for u, v in zip(y5, y4)))
    return y5, err


def integrate_rk45(f, y0, t_end, tol=1e-11, h0=1e-3):
    """Adaptive 5th-order integration; test fixture, not a deliverable."""
    t, y, h = 0.0, list(y0), h0
    while t < t_end:
        h = min(h, t_end - t)
        y_new, err = rk45_step(f, t, y, h)
        scale = tol * (1.0 + max(abs(v) for v in y))
        if err <= scale:
            t += h
            y = y_new
        factor = 0.9 * (scale / err) ** 0.2 if err > 0 else 2.0
        h *= min(4.0, max(0.1, factor))
        if h < 1e-14:
            raise RuntimeError("step size underflow")
    return y
