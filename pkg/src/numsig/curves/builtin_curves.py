"""
Analytic test curves with hand-coded derivatives up to order 5.
"""
import math

from numsig.errors import UnknownCurve, InvalidOption, SingularParametrization
from .curve_model import CurveModel

TWO_PI = 2.0 * math.pi

# sqrt(t) has unbounded derivatives at 0
SQRT_HELIX_T_MIN = 1e-3


def _cos_k(t, k):
    """ k-th derivative of cos at t """
    return math.cos(t + k * math.pi / 2.0)


def _sin_k(t, k):
    return math.sin(t + k * math.pi / 2.0)


def circle(R=1.0):
    if R <= 0.0:
        raise InvalidOption("circle radius must be positive")

    def jet(t, k):
        return (R * _cos_k(t, k), R * _sin_k(t, k))

    return CurveModel("circle", 2, jet, 0.0, TWO_PI, closed=True, period=TWO_PI, params={"R": R})


def ellipse(a=2.0, b=1.0):
    if a <= 0.0 or b <= 0.0:
        raise InvalidOption("ellipse semi-axes must be positive")

    def jet(t, k):
        return (a * _cos_k(t, k), b * _sin_k(t, k))

    return CurveModel("ellipse", 2, jet, 0.0, TWO_PI, closed=True, period=TWO_PI, params={"a": a, "b": b})


def polar_cos(eps=0.1, k=1):
    """ r = 1 + eps cos(k t), by Leibniz on r(t) (cos t, sin t) """
    if k != int(k) or k < 1:
        raise InvalidOption("polar_cos frequency must be a positive integer")
    freq = int(k)

    def r_deriv(t, j):
        if j == 0:
            return 1.0 + eps * math.cos(freq * t)
        return eps * freq ** j * _cos_k(freq * t, j)

    def jet(t, n):
        x = y = 0.0
        for j in range(n + 1):
            r_j = math.comb(n, j) * r_deriv(t, j)
            x += r_j * _cos_k(t, n - j)
            y += r_j * _sin_k(t, n - j)
        return (x, y)

    return CurveModel("polar_cos", 2, jet, 0.0, TWO_PI, closed=True, period=TWO_PI,
                      params={"eps": eps, "k": freq})


def helix(a=1.0, b=1.0):
    if a <= 0.0:
        raise InvalidOption("helix radius must be positive")

    def jet(t, k):
        if k == 0:
            z = b * t
        elif k == 1:
            z = b
        else:
            z = 0.0
        return (a * _cos_k(t, k), a * _sin_k(t, k), z)

    return CurveModel("helix", 3, jet, 0.0, 2.0 * TWO_PI, params={"a": a, "b": b})


def _sqrt_coeff(k):
    # d^k/dt^k t^(1/2) = c_k t^(1/2 - k)
    coeff = 1.0
    for j in range(k):
        coeff *= 0.5 - j
    return coeff


def sqrt_helix():
    """ (cos t, sin t, sqrt t), defined for t >= SQRT_HELIX_T_MIN """

    def jet(t, k):
        if t < SQRT_HELIX_T_MIN:
            raise SingularParametrization("sqrt_helix is singular at t = %g < %g" % (t, SQRT_HELIX_T_MIN))
        return (_cos_k(t, k), _sin_k(t, k), _sqrt_coeff(k) * t ** (0.5 - k))

    return CurveModel("sqrt_helix", 3, jet, 0.5 * math.pi, 1.5 * math.pi)


BUILTIN_CURVES = {
    "circle": circle,
    "ellipse": ellipse,
    "polar_cos": polar_cos,
    "helix": helix,
    "sqrt_helix": sqrt_helix,
}


def builtin_curve(name, **params):
    try:
        factory = BUILTIN_CURVES[name]
    except KeyError:
        raise UnknownCurve("unknown curve '%s', expected one of %s" % (name, ", ".join(sorted(BUILTIN_CURVES))))
    try:
        return factory(**params)
    except TypeError as err:
        raise InvalidOption("bad parameters for curve '%s': %s" % (name, err))