"""
Exact invariants of a CurveModel from its derivatives, used as the
reference the discrete signatures converge to.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from numsig.errors import SingularParametrization, InflectionPoint
from numsig.geom import cross2

SPEED_TOL = 1e-12


@dataclass(frozen=True)
class OracleSample:
    t: float
    kappa: Optional[float] = None
    kappa_s: Optional[float] = None
    tau: Optional[float] = None
    tau_s: Optional[float] = None
    affine_kappa: Optional[float] = None
    affine_kappa_s: Optional[float] = None


def _speed(model, t):
    d1 = model.derivative(t, 1)
    v = float(np.linalg.norm(d1))
    if v <= SPEED_TOL:
        raise SingularParametrization("%s: zero speed at t = %g" % (model.name, t))
    return d1, v


def oracle_euclid2(model, t):
    """ (kappa, kappa_s), kappa signed positive for counterclockwise turning """
    d1, v = _speed(model, t)
    d2 = model.derivative(t, 2)
    d3 = model.derivative(t, 3)
    num = cross2(d1, d2)
    num_t = cross2(d1, d3)
    v_t = float(np.dot(d1, d2)) / v
    kappa = num / v ** 3
    kappa_t = num_t / v ** 3 - 3.0 * num * v_t / v ** 4
    return kappa, kappa_t / v


def _euclid3_general(model, t):
    d1, v = _speed(model, t)
    d2, d3, d4 = (model.derivative(t, k) for k in (2, 3, 4))
    c = np.cross(d1, d2)
    c_t = np.cross(d1, d3)
    cc = float(np.dot(c, c))
    if cc <= SPEED_TOL * v ** 6:
        raise SingularParametrization("%s: vanishing curvature at t = %g" % (model.name, t))
    norm_c = math.sqrt(cc)
    kappa = norm_c / v ** 3
    v_t = float(np.dot(d1, d2)) / v
    kappa_t = float(np.dot(c, c_t)) / (norm_c * v ** 3) - 3.0 * norm_c * v_t / v ** 4
    n = float(np.dot(c, d3))
    n_t = float(np.dot(c_t, d3)) + float(np.dot(c, d4))
    tau = -n / cc
    tau_t = -(n_t * cc - 2.0 * n * float(np.dot(c, c_t))) / cc ** 2
    return OracleSample(t, kappa=kappa, kappa_s=kappa_t / v, tau=tau, tau_s=tau_t / v)


def sqrt_helix_closed_form(t):
    """ (kappa, kappa_s, tau, tau_s) of (cos t, sin t, sqrt t) in closed form """
    q = 16.0 * t ** 3 + 4.0 * t ** 2 + 1.0
    w = 1.0 + 4.0 * t
    kappa = 2.0 * math.sqrt(q) / w ** 1.5
    kappa_s = 8.0 * (8.0 * t ** 2 + 2.0 * t - 3.0) * math.sqrt(t) / (math.sqrt(q) * w ** 3)
    tau = -2.0 * math.sqrt(t) * (3.0 + 4.0 * t ** 2) / q
    tau_s = 2.0 * (64.0 * t ** 5 - 16.0 * t ** 4 + 240.0 * t ** 3 + 16.0 * t ** 2 - 3.0) / (math.sqrt(w) * q ** 2)
    return kappa, kappa_s, tau, tau_s


def oracle_euclid3(model, t, closed_form=True):
    """
    OracleSample with kappa, kappa_s, tau, tau_s. sqrt_helix uses its closed
    forms unless closed_form is False; everything else the general formulas
        kappa = |a' x a''| / |a'|^3,  tau = -(a' x a'' . a''') / |a' x a''|^2
    """
    if model.dimension != 3:
        raise ValueError("oracle_euclid3 needs a space curve")
    if closed_form and model.name == "sqrt_helix" and not model.params:
        model.position(t)  # raises below the sqrt_helix domain
        return OracleSample(t, *sqrt_helix_closed_form(t))
    return _euclid3_general(model, t)


def _affine_dets(model, t):
    d = [model.derivative(t, k) for k in range(1, 6)]
    return {
        "D": cross2(d[0], d[1]),
        "E": cross2(d[0], d[2]),
        "F": cross2(d[1], d[2]),
        "G": cross2(d[0], d[3]),
        "H": cross2(d[1], d[3]),
        "J": cross2(d[0], d[4]),
    }


def oracle_affine2(model, t):
    """
    (affine_kappa, affine_kappa_s) with D = det(a', a''), E = det(a', a'''),
    F = det(a'', a'''), G = det(a', a''''):
        kappa = D^(-5/3) (4F + G) / 3 - (5/9) D^(-8/3) E^2
    differentiated once more and divided by the affine speed D^(1/3).
    """
    _, v = _speed(model, t)
    m = _affine_dets(model, t)
    D, E, F, G = m["D"], m["E"], m["F"], m["G"]
    if abs(D) <= SPEED_TOL * v ** 3:
        raise InflectionPoint("%s: inflection at t = %g" % (model.name, t))
    cb = float(np.cbrt(D))
    M = (4.0 * F + G) / 3.0
    M_t = (4.0 * m["H"] + m["H"] + m["J"]) / 3.0
    kappa = M / cb ** 5 - (5.0 / 9.0) * E * E / cb ** 8
    kappa_t = (-(5.0 / 3.0) * E * M / cb ** 8 + M_t / cb ** 5
               + (40.0 / 27.0) * E ** 3 / cb ** 11 - (10.0 / 9.0) * E * (F + G) / cb ** 8)
    return kappa, kappa_t / cb


def affine_arc_quadrature(model, t0, t1):
    """ Equi-affine arc length from t0 to t1 (negative when t1 < t0). """
    grid = np.linspace(min(t0, t1), max(t0, t1), 33)
    dets = np.array([cross2(model.derivative(t, 1), model.derivative(t, 2)) for t in grid])
    if np.any(np.abs(dets) <= SPEED_TOL) or (np.any(dets > 0) and np.any(dets < 0)):
        raise InflectionPoint("%s: inflection inside [%g, %g]" % (model.name, min(t0, t1), max(t0, t1)))
    value, _ = integrate.quad(lambda t: float(np.cbrt(abs(cross2(model.derivative(t, 1), model.derivative(t, 2))))),
                              t0, t1, epsabs=1e-13, epsrel=1e-12, limit=200)
    return value


def oracle_sample(model, t, affine=False):
    """ Every invariant the model supports at t """
    if model.dimension == 3:
        return oracle_euclid3(model, t)
    kappa, kappa_s = oracle_euclid2(model, t)
    if not affine:
        return OracleSample(t, kappa=kappa, kappa_s=kappa_s)
    affine_kappa, affine_kappa_s = oracle_affine2(model, t)
    return OracleSample(t, kappa=kappa, kappa_s=kappa_s, affine_kappa=affine_kappa, affine_kappa_s=affine_kappa_s)
