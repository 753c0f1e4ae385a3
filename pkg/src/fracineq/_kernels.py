"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The public names (``gk21_panels``, ``defect_extreme``, ``betacf``) are bound
to the numba versions when :data:`fracineq._accel.USE_NUMBA` is true and to
the numpy versions otherwise.  Both flavours are always importable through
:data:`IMPLEMENTATIONS` so tests and the benchmark can compare them.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

# 21-point Gauss-Kronrod rule (QUADPACK qk21); nodes on [0, 1] in decreasing order.
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208067966455,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
# 10-point Gauss weights sit on the odd Kronrod nodes.
_WG10 = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# Full 21-node layout on [-1, 1], ascending.
GK_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_wg_half = np.zeros(10)
_wg_half[1::2] = _WG10
G_WEIGHTS = np.concatenate([_wg_half, [0.0], _wg_half[::-1]])

_EPMACH = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

_BETACF_MAXIT = 500
_BETACF_EPS = 1e-16
_FPMIN = 1e-300


# --- Gauss-Kronrod panel reduction -----------------------------------------

def _gk21_panels_numpy(fx, half_width):
    resk = fx @ GK_WEIGHTS
    resg = fx @ G_WEIGHTS
    mean = 0.5 * resk
    resabs = np.abs(fx) @ GK_WEIGHTS
    resasc = np.abs(fx - mean[:, None]) @ GK_WEIGHTS
    hw = np.abs(half_width)
    result = resk * half_width
    resabs = resabs * hw
    resasc = resasc * hw
    err = np.abs((resk - resg) * half_width)
    scale = (resasc != 0.0) & (err != 0.0)
    ratio = np.where(scale, 200.0 * err / np.where(scale, resasc, 1.0), 0.0)
    err = np.where(scale, resasc * np.minimum(1.0, ratio ** 1.5), err)
    floor = resabs > _UFLOW / (50.0 * _EPMACH)
    err = np.where(floor, np.maximum(50.0 * _EPMACH * resabs, err), err)
    return result, err


@njit
def _gk21_panels_numba(fx, half_width):
    n, m = fx.shape
    result = np.empty(n)
    error = np.empty(n)
    wk = GK_WEIGHTS
    wg = G_WEIGHTS
    for i in range(n):
        resk = 0.0
        resg = 0.0
        resabs = 0.0
        for j in range(m):
            v = fx[i, j]
            resk += wk[j] * v
            resg += wg[j] * v
            resabs += wk[j] * abs(v)
        mean = 0.5 * resk
        resasc = 0.0
        for j in range(m):
            resasc += wk[j] * abs(fx[i, j] - mean)
        h = half_width[i]
        hw = abs(h)
        resabs *= hw
        resasc *= hw
        err = abs((resk - resg) * h)
        if resasc != 0.0 and err != 0.0:
            err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
        if resabs > _UFLOW / (50.0 * _EPMACH):
            err = max(50.0 * _EPMACH * resabs, err)
        result[i] = resk * h
        error[i] = err
    return result, error


# --- convexity defect reduction ---------------------------------------------

def _defect_extreme_numpy(c1, g1, c2, g2, gm, sign, valid):
    t1 = c1 * g1
    t2 = c2 * g2
    defect = sign * (t1 + t2 - gm)
    scaled = defect / (1.0 + np.abs(t1) + np.abs(t2) + np.abs(gm))
    scaled = np.where(valid, scaled, np.inf)
    if scaled.size == 0:
        return np.inf, -1
    k = int(np.argmin(scaled))
    if not np.isfinite(scaled[k]):
        return np.inf, -1
    return float(scaled[k]), k


@njit
def _defect_extreme_numba(c1, g1, c2, g2, gm, sign, valid):
    best = np.inf
    arg = -1
    for i in range(c1.shape[0]):
        if not valid[i]:
            continue
        t1 = c1[i] * g1[i]
        t2 = c2[i] * g2[i]
        d = sign * (t1 + t2 - gm[i]) / (1.0 + abs(t1) + abs(t2) + abs(gm[i]))
        if d < best:
            best = d
            arg = i
    return best, arg


# --- incomplete beta continued fraction -------------------------------------

def _betacf_numpy(a, b, x):
    a, b, x = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float), np.asarray(x, float))
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
    d = 1.0 / d
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for m in range(1, _BETACF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
        d = 1.0 / d
        h = np.where(active, h * d * c, h)
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) >= _BETACF_EPS
        if not active.any():
            break
    return h


@njit
def _betacf_scalar(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            break
    return h


@njit
def _betacf_numba_flat(a, b, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _betacf_scalar(a[i], b[i], x[i])
    return out


def _betacf_numba(a, b, x):
    x = np.array(x, dtype=float)
    shape = np.broadcast_shapes(np.shape(a), np.shape(b), x.shape)
    flat = [np.broadcast_to(np.asarray(v, dtype=float), shape).astype(float).ravel() for v in (a, b, x)]
    return _betacf_numba_flat(*flat).reshape(shape)


IMPLEMENTATIONS = {
    "numpy": {
        "gk21_panels": _gk21_panels_numpy,
        "defect_extreme": _defect_extreme_numpy,
        "betacf": _betacf_numpy,
    },
    "numba": {
        "gk21_panels": _gk21_panels_numba,
        "defect_extreme": _defect_extreme_numba,
        "betacf": _betacf_numba,
    },
}

BACKEND = "numba" if USE_NUMBA else "numpy"
gk21_panels = IMPLEMENTATIONS[BACKEND]["gk21_panels"]
defect_extreme = IMPLEMENTATIONS[BACKEND]["defect_extreme"]
betacf = IMPLEMENTATIONS[BACKEND]["betacf"]
