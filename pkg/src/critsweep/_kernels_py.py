"""Pure-Python integration kernels.

Reference implementation of the hot loops; `critsweep._kernels` is the
compiled twin with identical semantics (same operation order, so results
agree bit-for-bit).  Selected at import time by `critsweep._backend`.

Mode kernel
-----------
The canonical mode system for one wavenumber k,

    d phi / dt = alpha(t) pi,      d pi / dt = -beta(t) k^2 phi,

is linear with real coefficients, so one step is a real 2x2 matrix acting on
the complex pair (phi, pi).  Steps use a two-level exponential (Magnus) pair:

* propagated solution: exponential of the fourth-order two-point Gauss
  average of the generator plus its leading commutator correction,
* error estimate: difference to the second-order exponential midpoint step.

Every step matrix is the exponential of a traceless matrix and therefore has
unit determinant *exactly*, so the Wronskian phi conj(pi) - conj(phi) pi is
conserved to rounding error regardless of step size.  An embedded
Runge-Kutta pair was measured to violate the drift budget on long sweeps
(see docs/derivation.md); the exponential pair is immune by construction.

Lattice kernel
--------------
Kick-drift-kick leapfrog for the spatially discretized field equation with
time-centered coefficient evaluation and a CFL-bounded step.
"""

import math

import numpy as np

_GAUSS_OFFSET = math.sqrt(3.0) / 6.0
_COMM_COEFF = math.sqrt(3.0) / 12.0
_THETA_CAP = 1.5        # max phase advance per step (exponential-series safety)
_TIME_FRAC_CAP = 0.5    # max step as a fraction of |t| (coefficient timescale)
_SAFETY = 0.9
_GROW_LIMIT = 5.0
_SHRINK_LIMIT = 0.1
_EST_ORDER_EXP = 1.0 / 3.0   # error estimate is third order in the step

MODE_OK = 0
MODE_STEP_UNDERFLOW = 1
MODE_NONFINITE = 2
MODE_MAXSTEPS = 3

LATTICE_OK = 0
LATTICE_NONFINITE = 2
LATTICE_MAXSTEPS = 3
LATTICE_BAD_STEP = 4


def _expm2(d, p, m):
    """Entries of exp([[d, p], [m, -d]]); the result has determinant one."""
    q = d * d + p * m
    aq = abs(q)
    if aq < 1e-6:
        ch = 1.0 + q * (0.5 + q * (1.0 / 24.0 + q / 720.0))
        sh = 1.0 + q * (1.0 / 6.0 + q * (1.0 / 120.0 + q / 5040.0))
    elif q > 0.0:
        r = math.sqrt(q)
        ch = math.cosh(r)
        sh = math.sinh(r) / r
    else:
        r = math.sqrt(-q)
        ch = math.cos(r)
        sh = math.sin(r) / r
    return ch + sh * d, sh * p, sh * m, ch - sh * d


def evolve_mode_powerlaw(k, alpha0, a, beta0, b, t_samples,
                         phi0, pi0, tol, max_steps=2_000_000):
    """Integrate one mode over t_samples (strictly increasing, negative).

    Returns (phi, pi, drift_abs, steps_taken, steps_rejected, status) where
    phi/pi are complex arrays on the sample grid, and drift_abs is the
    largest excursion of Im(phi conj(pi)) from its initial value seen at any
    accepted step.
    """
    t_samples = np.asarray(t_samples, dtype=np.float64)
    n = t_samples.shape[0]
    phis = np.empty(n, dtype=np.complex128)
    pis = np.empty(n, dtype=np.complex128)

    fr = phi0.real
    fi = phi0.imag
    gr = pi0.real
    gi = pi0.imag
    phis[0] = phi0
    pis[0] = pi0

    k2 = k * k
    im0 = fi * gr - fr * gi
    drift = 0.0
    nacc = 0
    nrej = 0
    status = MODE_OK

    t = float(t_samples[0])
    al = alpha0 * (-t) ** a
    be = beta0 * (-t) ** b
    w = k * math.sqrt(al * be)
    h = min(2.0 * math.pi / w, -t) / 50.0

    for j in range(1, n):
        tj = float(t_samples[j])
        while status == MODE_OK:
            remaining = tj - t
            if remaining <= 0.0:
                break
            al = alpha0 * (-t) ** a
            be = beta0 * (-t) ** b
            w = k * math.sqrt(al * be)
            ht = h
            cap = _THETA_CAP / w
            if ht > cap:
                ht = cap
            cap = _TIME_FRAC_CAP * (-t)
            if ht > cap:
                ht = cap
            clamped = False
            if ht >= remaining:
                ht = remaining
                clamped = True
            if ht < 1e-14 * (-t):
                status = MODE_STEP_UNDERFLOW
                break
            if nacc + nrej >= max_steps:
                status = MODE_MAXSTEPS
                break

            t1 = t + (0.5 - _GAUSS_OFFSET) * ht
            t2 = t + (0.5 + _GAUSS_OFFSET) * ht
            tm = t + 0.5 * ht
            a1 = alpha0 * (-t1) ** a
            b1 = beta0 * (-t1) ** b
            a2 = alpha0 * (-t2) ** a
            b2 = beta0 * (-t2) ** b
            am = alpha0 * (-tm) ** a
            bm = beta0 * (-tm) ** b

            p4 = 0.5 * ht * (a1 + a2)
            m4 = -0.5 * ht * k2 * (b1 + b2)
            d4 = _COMM_COEFF * ht * ht * k2 * (a1 * b2 - a2 * b1)
            e00, e01, e10, e11 = _expm2(d4, p4, m4)
            f4r = e00 * fr + e01 * gr
            f4i = e00 * fi + e01 * gi
            g4r = e10 * fr + e11 * gr
            g4i = e10 * fi + e11 * gi

            p2 = ht * am
            m2 = -ht * k2 * bm
            c00, c01, c10, c11 = _expm2(0.0, p2, m2)
            f2r = c00 * fr + c01 * gr
            f2i = c00 * fi + c01 * gi
            g2r = c10 * fr + c11 * gr
            g2i = c10 * fi + c11 * gi

            if not (math.isfinite(f4r) and math.isfinite(f4i)
                    and math.isfinite(g4r) and math.isfinite(g4i)):
                status = MODE_NONFINITE
                break

            # scale the two components into common units via the local
            # impedance sqrt(alpha / (k^2 beta)) before comparing errors
            z = math.sqrt(p4 / (-m4))
            aphi = math.sqrt(f4r * f4r + f4i * f4i)
            api = math.sqrt(g4r * g4r + g4i * g4i)
            sphi = aphi
            if z * api > sphi:
                sphi = z * api
            spi = api
            if aphi / z > spi:
                spi = aphi / z
            dfr = f4r - f2r
            dfi = f4i - f2i
            dgr = g4r - g2r
            dgi = g4i - g2i
            ephi = math.sqrt(dfr * dfr + dfi * dfi)
            epi = math.sqrt(dgr * dgr + dgi * dgi)
            err = 0.0
            if sphi > 0.0:
                err = ephi / (tol * sphi)
            if spi > 0.0 and epi / (tol * spi) > err:
                err = epi / (tol * spi)

            if err <= 1.0:
                t = tj if clamped else t + ht
                fr, fi, gr, gi = f4r, f4i, g4r, g4i
                nacc += 1
                imc = fi * gr - fr * gi
                dev = abs(imc - im0)
                if dev > drift:
                    drift = dev
                if err > 0.0:
                    fac = _SAFETY * err ** (-_EST_ORDER_EXP)
                    if fac > _GROW_LIMIT:
                        fac = _GROW_LIMIT
                else:
                    fac = _GROW_LIMIT
                h = ht * fac
            else:
                nrej += 1
                fac = _SAFETY * err ** (-_EST_ORDER_EXP)
                if fac < _SHRINK_LIMIT:
                    fac = _SHRINK_LIMIT
                h = ht * fac
        if status != MODE_OK:
            break
        phis[j] = complex(fr, fi)
        pis[j] = complex(gr, gi)

    return phis, pis, drift, nacc, nrej, status


def evolve_lattice_powerlaw(phi, pi, alpha0, a, beta0, b, t_start, t_end,
                            dx, dt_max, max_steps=10_000_000):
    """Leapfrog the periodic lattice field from t_start to t_end.

    Returns (phi, pi, steps, status); inputs are not modified.
    """
    phi = np.array(phi, dtype=np.complex128)
    pi = np.array(pi, dtype=np.complex128)
    inv_dx2 = 1.0 / (dx * dx)
    croot = math.sqrt(alpha0 * beta0)
    pw = 0.5 * (a + b)
    t = float(t_start)
    steps = 0
    status = LATTICE_OK
    while t < t_end:
        if steps >= max_steps:
            status = LATTICE_MAXSTEPS
            break
        c_now = croot * (-t) ** pw
        dt = dt_max
        cfl = 0.5 * dx / c_now
        if dt > cfl:
            dt = cfl
        clamped = False
        if dt >= t_end - t:
            dt = t_end - t
            clamped = True
        # speed may grow across the step (a + b < 0): re-check CFL at the end
        for _ in range(3):
            c_end = croot * (-(t + dt)) ** pw
            if c_end <= c_now or dt <= 0.5 * dx / c_end:
                break
            dt = 0.5 * dx / c_end
            clamped = False
        if not (dt > 0.0) or not math.isfinite(dt):
            status = LATTICE_BAD_STEP
            break

        b1 = beta0 * (-(t + 0.25 * dt)) ** b
        am = alpha0 * (-(t + 0.5 * dt)) ** a
        b2 = beta0 * (-(t + 0.75 * dt)) ** b

        lap = np.roll(phi, -1) + np.roll(phi, 1) - 2.0 * phi
        pi += (0.5 * dt * b1 * inv_dx2) * lap
        phi += (dt * am) * pi
        lap = np.roll(phi, -1) + np.roll(phi, 1) - 2.0 * phi
        pi += (0.5 * dt * b2 * inv_dx2) * lap

        t = t_end if clamped else t + dt
        steps += 1
        if not (np.all(np.isfinite(phi.view(np.float64)))
                and np.all(np.isfinite(pi.view(np.float64)))):
            status = LATTICE_NONFINITE
            break
    return phi, pi, steps, status
