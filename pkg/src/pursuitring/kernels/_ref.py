"""Pure-Python tick kernel.

This is the reference semantics for one simulation tick: evader-centered
polar transform, ring sort, coverage gaps, the pursuit control law (plus the
potential-field correction in constrained mode), frame metrics, and the Euler
advance with crossing-time capture detection.

The compiled kernel in ``_fast.pyx`` mirrors this file statement for
statement; keep the arithmetic (operation order, libm calls, no hypot) in
lockstep so the two backends produce bit-identical trajectories.
"""

import math

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi
RADIUS_EXPONENT = math.log(2.0) / math.log(3.0)

STATUS_OK = 0
STATUS_DEGENERATE = 1
STATUS_OVERFLOW = 2

# control-row layout (per pursuer)
CTRL_ALPHA_RATE = 0
CTRL_BETA = 1
CTRL_DELTA = 2
CTRL_GAMMA = 3
CTRL_K = 4
CTRL_H = 5
CTRL_VSX = 6
CTRL_VSY = 7
CTRL_VHX = 8
CTRL_VHY = 9
CTRL_VMX = 10
CTRL_VMY = 11
CTRL_VTX = 12
CTRL_VTY = 13
N_CTRL = 14

# metrics layout
MET_THETA_G = 0
MET_SUM_R = 1
MET_MIN_R = 2
MET_OVERLAP = 3
MET_ESCAPABLE = 4
MET_INSIDE = 5
N_MET = 6

BACKEND_NAME = "python"


def frame_eval(
    px, py, ex, ey,
    lam, vmax, theta,
    mode_sp5,
    s_prev, s_next, omega,
    edge_a, edge_b, poly_order,
    rc, rf, ro, rb, bmargin,
    r, alpha, order, eps, ctrl, edges, metrics,
):
    """Evaluate one frame in place; returns (status, pursuer_index_or_-1)."""
    n = len(px)

    for i in range(n):
        dx = px[i] - ex
        dy = py[i] - ey
        rr = math.sqrt(dx * dx + dy * dy)
        if rr == 0.0:
            return STATUS_DEGENERATE, i
        r[i] = rr
        a = math.atan2(dy, dx)
        if a < 0.0:
            a += TWO_PI
        if a == TWO_PI:  # tiny negative angles round up to the excluded endpoint
            a = 0.0
        alpha[i] = a

    # insertion sort by (alpha, index)
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
    min_r = math.inf
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
        ade = abs(de)
        dlt = 2.0 * ade / (2.0 * TWO_PI - th_next + th_prev)
        if dlt > 1.0:
            dlt = 1.0
        gm = math.sin(math.pi * math.pow(r[i] / (r[i] + r_prev + r_next), RADIUS_EXPONENT))
        if gm < 0.0:
            gm = 0.0
        bt = HALF_PI * (1.0 - math.exp(-dlt * gm))
        h = vmax[i] * math.cos(bt) / r[i]
        if ade != 0.0 and bt != 0.0:
            k = vmax[i] * math.sin(bt) / (r[i] * ade)
        else:
            k = 1.0
        sa = math.sin(alpha[i])
        ca = math.cos(alpha[i])
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
                d = math.sqrt(d2)
                if rc <= d < rf:
                    u = d2 - rc2
                    den = u - w_m
                    g = (u + w_m) / den
                    grad = 4.0 * d * g * (-2.0 * w_m) / (den * den)
                    gx -= grad * ddx / d
                    gy -= grad * ddy / d
            for q in range(n):
                if q == i or not omega[i, q]:
                    continue
                ddx = px[i] - px[q]
                ddy = py[i] - py[q]
                d2 = ddx * ddx + ddy * ddy
                d = math.sqrt(d2)
                if d <= ro:
                    return STATUS_OVERFLOW, i
                if d <= rb:
                    u = d2 - rb2
                    den = u - w_c
                    g = (u + w_c) / den
                    grad = 4.0 * d * g * (-2.0 * w_c) / (den * den)
                    gx -= grad * ddx / d
                    gy -= grad * ddy / d
            if not (math.isfinite(gx) and math.isfinite(gy)):
                return STATUS_OVERFLOW, i
            base = math.sqrt(vtx * vtx + vty * vty) + bmargin
            sgx = 1.0 if gx > 0.0 else (-1.0 if gx < 0.0 else 0.0)
            sgy = 1.0 if gy > 0.0 else (-1.0 if gy < 0.0 else 0.0)
            vmx = base * sgx
            vmy = base * sgy
            sx = vtx + vmx
            sy = vty + vmy
            nrm = math.sqrt(sx * sx + sy * sy)
            if nrm == 0.0:
                vtx = 0.0
                vty = 0.0
            else:
                scale = vmax[i] / nrm
                vtx = sx * scale
                vty = sy * scale

        ctrl[i, CTRL_ALPHA_RATE] = k * de
        ctrl[i, CTRL_BETA] = bt
        ctrl[i, CTRL_DELTA] = dlt
        ctrl[i, CTRL_GAMMA] = gm
        ctrl[i, CTRL_K] = k
        ctrl[i, CTRL_H] = h
        ctrl[i, CTRL_VSX] = vsx
        ctrl[i, CTRL_VSY] = vsy
        ctrl[i, CTRL_VHX] = vhx
        ctrl[i, CTRL_VHY] = vhy
        ctrl[i, CTRL_VMX] = vmx
        ctrl[i, CTRL_VMY] = vmy
        ctrl[i, CTRL_VTX] = vtx
        ctrl[i, CTRL_VTY] = vty

    if edge_a is not None:
        for e in range(len(edge_a)):
            i0 = edge_a[e]
            i1 = edge_b[e]
            ddx = px[i0] - px[i1]
            ddy = py[i0] - py[i1]
            edges[e] = math.sqrt(ddx * ddx + ddy * ddy)
    elif n >= 2:
        for j in range(n):
            i0 = order[j]
            i1 = order[j + 1] if j + 1 < n else order[0]
            ddx = px[i0] - px[i1]
            ddy = py[i0] - py[i1]
            edges[j] = math.sqrt(ddx * ddx + ddy * ddy)

    inside = 0.0
    if n >= 3:
        vo = poly_order if poly_order is not None else order
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

    metrics[MET_THETA_G] = theta_sum + overlap
    metrics[MET_SUM_R] = sum_r
    metrics[MET_MIN_R] = min_r
    metrics[MET_OVERLAP] = overlap
    metrics[MET_ESCAPABLE] = escapable
    metrics[MET_INSIDE] = inside
    return STATUS_OK, -1


def advance(px, py, ex, ey, ctrl, evx, evy, dt, d_c, npx, npy):
    """Euler-advance all agents; detect the earliest capture crossing.

    Returns (capturing_index, step_fraction): index -1 when no capture. The
    fraction is the earliest s in [0, 1] at which a pursuer-evader relative
    segment touches the capture radius; ties go to the lower index.
    """
    n = len(px)
    nex = ex + evx * dt
    ney = ey + evy * dt
    for i in range(n):
        npx[i] = px[i] + ctrl[i, CTRL_VTX] * dt
        npy[i] = py[i] + ctrl[i, CTRL_VTY] * dt

    best = -1
    best_s = math.inf
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
            s = (-b - math.sqrt(disc)) / a
            if s < 0.0 or s > 1.0:
                continue
        if s < best_s:
            best = i
            best_s = s
    if best < 0:
        return -1, 1.0
    return best, best_s
