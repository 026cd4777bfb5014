"""Bessel and Hankel functions of real nonnegative order on the positive real axis.

Self-contained evaluation used by the closed-form mode solutions:

* ascending power series for small and moderate arguments,
* Hankel's large-argument asymptotic expansion beyond the switch point,
* Y of non-integer order from J of both signs of the order (reflection),
  with interpolation across the near-integer orders where the reflection
  formula degenerates.

Formulas follow the classical handbook conventions (Abramowitz & Stegun
ch. 9 / DLMF ch. 10).  Only real order and real positive argument are
supported; callers fold negative orders with the standard sign rules.
"""

import math

from .errors import DomainError

# series/asymptotics regime switch; the two branches overlap-tested in [10, 20]
SERIES_ASYMPTOTIC_SWITCH = 12.0

_NEAR_INTEGER_EPS = 1e-6
_ORDER_OFFSET = 1e-4
_MAX_SERIES_TERMS = 600


def _check_inputs(order, x, name):
    if not (math.isfinite(order) and math.isfinite(x)):
        raise DomainError(f"{name}: order and argument must be finite, "
                          f"got order={order!r}, x={x!r}")
    if order < 0.0:
        raise DomainError(f"{name}: order must be >= 0, got {order!r}")


def _reciprocal_gamma(z):
    # 1/Gamma(z); zero at the poles z = 0, -1, -2, ...
    if z > 0.5:
        if z > 171.0:
            return 0.0  # Gamma overflows double precision; reciprocal underflows
        return 1.0 / math.gamma(z)
    n = round(z)
    if z == n and n <= 0:
        return 0.0
    # reflection: 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi
    return math.gamma(1.0 - z) * math.sin(math.pi * z) / math.pi


def _series_j(order, x):
    """Ascending series for J.  Valid for any real order (non-integer if
    negative); cancellation limits use to x <= SERIES_ASYMPTOTIC_SWITCH."""
    half = 0.5 * x
    q = half * half
    term = _reciprocal_gamma(order + 1.0) * half ** order
    total = term
    for m in range(1, _MAX_SERIES_TERMS):
        term *= -q / (m * (order + m))
        total += term
        if abs(term) <= 1e-17 * (abs(total) + 1e-300):
            break
    return total


def _asymptotic_jy(order, x):
    """Hankel's large-argument expansion for (J, Y), truncated adaptively
    at the smallest term.  Valid for any real order when x is beyond the
    switch point."""
    mu = 4.0 * order * order
    p_sum = 1.0
    q_sum = 0.0
    tk = 1.0
    prev = 1.0
    for k in range(1, 40):
        tk *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x)
        if abs(tk) >= prev:
            break  # asymptotic tail started growing; stop at the smallest term
        prev = abs(tk)
        r = k % 4
        if r == 0:
            p_sum += tk
        elif r == 1:
            q_sum += tk
        elif r == 2:
            p_sum -= tk
        else:
            q_sum -= tk
        if abs(tk) < 1e-17:
            break
    chi = x - (0.5 * order + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    cos_chi = math.cos(chi)
    sin_chi = math.sin(chi)
    j = amp * (p_sum * cos_chi - q_sum * sin_chi)
    y = amp * (p_sum * sin_chi + q_sum * cos_chi)
    return j, y


def _bessel_j_signed(order, x):
    # internal: accepts negative non-integer orders (reflection support)
    if x <= SERIES_ASYMPTOTIC_SWITCH:
        return _series_j(order, x)
    return _asymptotic_jy(order, x)[0]


def _bessel_y_reflection(order, x):
    # Y from J of both order signs; degenerates at integer order
    s = math.sin(math.pi * order)
    c = math.cos(math.pi * order)
    return (_series_j(order, x) * c - _series_j(-order, x)) / s


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x), order >= 0, x >= 0."""
    _check_inputs(order, x, "bessel_j")
    if x < 0.0:
        raise DomainError(f"bessel_j: argument must be >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if order == 0.0 else 0.0
    return _bessel_j_signed(order, x)


def bessel_y(order, x):
    """Bessel function of the second kind Y_order(x), order >= 0, x > 0.

    Non-integer order uses the reflection formula; orders within 1e-6 of an
    integer are interpolated between two offset non-integer orders, which
    stays limit-stable where the reflection denominator vanishes.
    """
    _check_inputs(order, x, "bessel_y")
    if x <= 0.0:
        raise DomainError(f"bessel_y: argument must be > 0, got {x!r}")
    if x > SERIES_ASYMPTOTIC_SWITCH:
        return _asymptotic_jy(order, x)[1]
    n = round(order)
    if abs(order - n) >= _NEAR_INTEGER_EPS:
        return _bessel_y_reflection(order, x)
    lo = n - _ORDER_OFFSET
    hi = n + _ORDER_OFFSET
    y_lo = _bessel_y_reflection(lo, x)
    y_hi = _bessel_y_reflection(hi, x)
    w = (order - lo) / (hi - lo)
    return (1.0 - w) * y_lo + w * y_hi


def hankel(kind, order, x):
    """Hankel function H^(kind) = J + i*Y (kind 1) or J - i*Y (kind 2)."""
    if kind not in (1, 2):
        raise DomainError(f"hankel: kind must be 1 or 2, got {kind!r}")
    j = bessel_j(order, x)
    y = bessel_y(order, x)
    return complex(j, y) if kind == 1 else complex(j, -y)
