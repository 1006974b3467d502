# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled tick kernel.

Statement-for-statement mirror of ``_ref.py`` (the reference semantics).
Both call the same libm and keep the same operation order, so trajectories
match the pure-Python twin bit for bit. Edit the two files together.
"""

from libc.math cimport atan2, cos, exp, fabs, isfinite, pow, sin, sqrt

cdef double PI = 3.141592653589793
cdef double TWO_PI = 2.0 * PI
cdef double HALF_PI = 0.5 * PI
cdef double INF = float("inf")

import math

cdef double RADIUS_EXPONENT = math.log(2.0) / math.log(3.0)

STATUS_OK = 0
STATUS_DEGENERATE = 1
STATUS_OVERFLOW = 2

cdef enum:
    C_ALPHA_RATE = 0
    C_BETA = 1
    C_DELTA = 2
    C_GAMMA = 3
    C_K = 4
    C_H = 5
    C_VSX = 6
    C_VSY = 7
    C_VHX = 8
    C_VHY = 9
    C_VMX = 10
    C_VMY = 11
    C_VTX = 12
    C_VTY = 13

cdef enum:
    M_THETA_G = 0
    M_SUM_R = 1
    M_MIN_R = 2
    M_OVERLAP = 3
    M_ESCAPABLE = 4
    M_INSIDE = 5

N_CTRL = 14
N_MET = 6

BACKEND_NAME = "compiled"


def frame_eval(
    double[::1] px, double[::1] py, double ex, double ey,
    double[::1] lam, double[::1] vmax, double[::1] theta,
    bint mode_sp5,
    int[::1] s_prev, int[::1] s_next, unsigned char[:, ::1] omega,
    edge_a_obj, edge_b_obj, poly_order_obj,
    double rc, double rf, double ro, double rb, double bmargin,
    double[::1] r, double[::1] alpha, int[::1] order, double[::1] eps,
    double[:, ::1] ctrl, double[::1] edges, double[::1] metrics,
):
    """Evaluate one frame in place; returns (status, pursuer_index_or_-1)."""
    cdef int n = px.shape[0]
    cdef int i, j, jp, jn, oi, i0, i1, ip, iq, q, which, e, kk, k1, wind, n_e
    cdef double dx, dy, rr, a, ai, gap
    cdef double theta_sum, overlap, escapable, sum_r, min_r
    cdef double rc2, rf2, ro2, rb2, w_m, w_c, u
    cdef double e_next, e_prev, r_prev, r_next, th_prev, th_next
    cdef double de, ade, dlt, gm, bt, h, k, sa, ca, tang, rad
    cdef double vsx, vsy, vhx, vhy, vmx, vmy, vtx, vty
    cdef double gx, gy, ddx, ddy, d2, d, den, g, grad, base, sgx, sgy
    cdef double sx, sy, nrm, scale
    cdef double a0x, a0y, b0x, b0y, cross, lox, hix, loy, hiy
    cdef double inside
    cdef bint on_boundary
    cdef int[::1] edge_a
    cdef int[::1] edge_b
    cdef int[::1] vo

    for i in range(n):
        dx = px[i] - ex
        dy = py[i] - ey
        rr = sqrt(dx * dx + dy * dy)
        if rr == 0.0:
            return STATUS_DEGENERATE, i
        r[i] = rr
        a = atan2(dy, dx)
        if a < 0.0:
            a += TWO_PI
        if a == TWO_PI:  # tiny negative angles round up to the excluded endpoint
            a = 0.0
        alpha[i] = a

    for i in range(n):
        order[i] = i
    for i in range(1, n):
        oi = order[i]
        ai = alpha[oi]
        j = i - 1
        while j >= 0 and (
            alpha[order[j]] > ai or (alpha[order[j]] == ai and order[j] > oi)
        ):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = oi

    if n >= 2:
        for j in range(n):
            i0 = order[j]
            if j + 1 < n:
                i1 = order[j + 1]
                gap = alpha[i1] - alpha[i0]
            else:
                i1 = order[0]
                gap = TWO_PI + alpha[i1] - alpha[i0]
            eps[j] = gap - 0.5 * (theta[i1] + theta[i0])

    theta_sum = 0.0
    for i in range(n):
        theta_sum += theta[i]
    overlap = 0.0
    escapable = 0.0
    if n >= 2:
        for j in range(n):
            if eps[j] <= 0.0:
                overlap += eps[j]
            else:
                escapable += eps[j]
    sum_r = 0.0
    min_r = INF
    for i in range(n):
        sum_r += r[i]
        if r[i] < min_r:
            min_r = r[i]

    rc2 = rc * rc
    rf2 = rf * rf
    ro2 = ro * ro
    rb2 = rb * rb
    w_m = rf2 - rc2
    w_c = ro2 - rb2

    for j in range(n):
        i = order[j]
        if n >= 2:
            jp = j - 1 if j > 0 else n - 1
            jn = j + 1 if j + 1 < n else 0
            e_next = eps[j]
            e_prev = eps[jp]
            ip = order[jp]
            iq = order[jn]
            r_prev = r[ip]
            r_next = r[iq]
            th_prev = theta[ip]
            th_next = theta[iq]
        else:
            e_next = 0.0
            e_prev = 0.0
            r_prev = 0.0
            r_next = 0.0
            th_prev = theta[i]
            th_next = theta[i]

        de = e_next - e_prev
        ade = fabs(de)
        dlt = 2.0 * ade / (2.0 * TWO_PI - th_next + th_prev)
        if dlt > 1.0:
            dlt = 1.0
        gm = sin(PI * pow(r[i] / (r[i] + r_prev + r_next), RADIUS_EXPONENT))
        if gm < 0.0:
            gm = 0.0
        bt = HALF_PI * (1.0 - exp(-dlt * gm))
        h = vmax[i] * cos(bt) / r[i]
        if ade != 0.0 and bt != 0.0:
            k = vmax[i] * sin(bt) / (r[i] * ade)
        else:
            k = 1.0
        sa = sin(alpha[i])
        ca = cos(alpha[i])
        tang = k * r[i] * de
        vsx = -tang * sa
        vsy = tang * ca
        rad = h * r[i]
        vhx = -rad * ca
        vhy = -rad * sa
        vmx = 0.0
        vmy = 0.0
        vtx = vsx + vhx
        vty = vsy + vhy

        if mode_sp5:
            gx = 0.0
            gy = 0.0
            for which in range(2):
                q = s_prev[i] if which == 0 else s_next[i]
                ddx = px[i] - px[q]
                ddy = py[i] - py[q]
                d2 = ddx * ddx + ddy * ddy
                d = sqrt(d2)
                if rc <= d < rf:
                    u = d2 - rc2
                    den = u - w_m
                    g = (u + w_m) / den
                    grad = 4.0 * d * g * (-2.0 * w_m) / (den * den)
                    gx -= grad * ddx / d
                    gy -= grad * ddy / d
            for q in range(n):
                if q == i or omega[i, q] == 0:
                    continue
                ddx = px[i] - px[q]
                ddy = py[i] - py[q]
                d2 = ddx * ddx + ddy * ddy
                d = sqrt(d2)
                if d <= ro:
                    return STATUS_OVERFLOW, i
                if d <= rb:
                    u = d2 - rb2
                    den = u - w_c
                    g = (u + w_c) / den
                    grad = 4.0 * d * g * (-2.0 * w_c) / (den * den)
                    gx -= grad * ddx / d
                    gy -= grad * ddy / d
            if not (isfinite(gx) and isfinite(gy)):
                return STATUS_OVERFLOW, i
            base = sqrt(vtx * vtx + vty * vty) + bmargin
            sgx = 1.0 if gx > 0.0 else (-1.0 if gx < 0.0 else 0.0)
            sgy = 1.0 if gy > 0.0 else (-1.0 if gy < 0.0 else 0.0)
            vmx = base * sgx
            vmy = base * sgy
            sx = vtx + vmx
            sy = vty + vmy
            nrm = sqrt(sx * sx + sy * sy)
            if nrm == 0.0:
                vtx = 0.0
                vty = 0.0
            else:
                scale = vmax[i] / nrm
                vtx = sx * scale
                vty = sy * scale

        ctrl[i, C_ALPHA_RATE] = k * de
        ctrl[i, C_BETA] = bt
        ctrl[i, C_DELTA] = dlt
        ctrl[i, C_GAMMA] = gm
        ctrl[i, C_K] = k
        ctrl[i, C_H] = h
        ctrl[i, C_VSX] = vsx
        ctrl[i, C_VSY] = vsy
        ctrl[i, C_VHX] = vhx
        ctrl[i, C_VHY] = vhy
        ctrl[i, C_VMX] = vmx
        ctrl[i, C_VMY] = vmy
        ctrl[i, C_VTX] = vtx
        ctrl[i, C_VTY] = vty

    if edge_a_obj is not None:
        edge_a = edge_a_obj
        edge_b = edge_b_obj
        n_e = edge_a.shape[0]
        for e in range(n_e):
            i0 = edge_a[e]
            i1 = edge_b[e]
            ddx = px[i0] - px[i1]
            ddy = py[i0] - py[i1]
            edges[e] = sqrt(ddx * ddx + ddy * ddy)
    elif n >= 2:
        for j in range(n):
            i0 = order[j]
            i1 = order[j + 1] if j + 1 < n else order[0]
            ddx = px[i0] - px[i1]
            ddy = py[i0] - py[i1]
            edges[j] = sqrt(ddx * ddx + ddy * ddy)

    inside = 0.0
    if n >= 3:
        if poly_order_obj is not None:
            vo = poly_order_obj
        else:
            vo = order
        wind = 0
        on_boundary = False
        for kk in range(n):
            a0x = px[vo[kk]]
            a0y = py[vo[kk]]
            k1 = kk + 1 if kk + 1 < n else 0
            b0x = px[vo[k1]]
            b0y = py[vo[k1]]
            cross = (b0x - a0x) * (ey - a0y) - (ex - a0x) * (b0y - a0y)
            if cross == 0.0:
                lox = a0x if a0x < b0x else b0x
                hix = a0x if a0x > b0x else b0x
                loy = a0y if a0y < b0y else b0y
                hiy = a0y if a0y > b0y else b0y
                if lox <= ex <= hix and loy <= ey <= hiy:
                    on_boundary = True
                    break
            if a0y <= ey:
                if b0y > ey and cross > 0.0:
                    wind += 1
            elif b0y <= ey and cross < 0.0:
                wind -= 1
        if not on_boundary and wind != 0:
            inside = 1.0

    metrics[M_THETA_G] = theta_sum + overlap
    metrics[M_SUM_R] = sum_r
    metrics[M_MIN_R] = min_r
    metrics[M_OVERLAP] = overlap
    metrics[M_ESCAPABLE] = escapable
    metrics[M_INSIDE] = inside
    return STATUS_OK, -1


def advance(
    double[::1] px, double[::1] py, double ex, double ey,
    double[:, ::1] ctrl, double evx, double evy, double dt, double d_c,
    double[::1] npx, double[::1] npy,
):
    """Euler-advance all agents; detect the earliest capture crossing."""
    cdef int n = px.shape[0]
    cdef int i, best
    cdef double nex, ney, q0x, q0y, q1x, q1y, vx, vy, c, a, b, disc, s
    cdef double best_s, dc2

    nex = ex + evx * dt
    ney = ey + evy * dt
    for i in range(n):
        npx[i] = px[i] + ctrl[i, C_VTX] * dt
        npy[i] = py[i] + ctrl[i, C_VTY] * dt

    best = -1
    best_s = INF
    dc2 = d_c * d_c
    for i in range(n):
        q0x = px[i] - ex
        q0y = py[i] - ey
        q1x = npx[i] - nex
        q1y = npy[i] - ney
        vx = q1x - q0x
        vy = q1y - q0y
        c = q0x * q0x + q0y * q0y - dc2
        if c <= 0.0:
            s = 0.0
        else:
            a = vx * vx + vy * vy
            if a == 0.0:
                continue
            b = q0x * vx + q0y * vy
            disc = b * b - a * c
            if disc < 0.0:
                continue
            s = (-b - sqrt(disc)) / a
            if s < 0.0 or s > 1.0:
                continue
        if s < best_s:
            best = i
            best_s = s
    if best < 0:
        return -1, 1.0
    return best, best_s
