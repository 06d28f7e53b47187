"""Jitted numerical core: fused energy/gradient evaluation and the descent loop.

Everything here works on bare (n, 3) float64 arrays. Container kinds are
encoded as integers (0 sphere, 1 cube). Energies are accumulated with Kahan
compensation so comparisons against the 1e-16 success threshold stay
meaningful for a couple hundred spheres. All loops run in a fixed order, so
identical inputs give bitwise-identical outputs.
"""

import numpy as np
from numba import njit

KIND_SPHERE = 0
KIND_CUBE = 1

STATUS_PACKED = 0
STATUS_STALLED = 1
STATUS_ITERATION_LIMIT = 2

# Below this population the uniform grid costs more than the direct loop.
GRID_MIN_SPHERES = 32
# Grid dimension cap; degenerate spreads fall back to the direct loop.
_MAX_CELLS = 262144
# A step scale this small cannot move a coordinate at double precision.
_DT_FLOOR = 1e-60
# inertial-descent constants: initial steering weight, its decay while the
# descent keeps accepting, and how many accepts must accrue before the step
# is allowed to grow
_MIX0 = 0.1
_MIX_DECAY = 0.99
_STREAK_MIN = 5
# Step growth cap, as a multiple of the starting step.  Contact stiffness is
# O(1), so an uncapped step drifts into the oscillation regime where the
# velocity flips against the force every few iterations.
_DT_MAX_FACTOR = 10.0


@njit(cache=True)
def energy_grad_naive(X, r, r0, kind, grad):
    """Total energy and its gradient by the direct O(n^2) pair loop."""
    n = X.shape[0]
    grad[:] = 0.0
    U = 0.0
    comp = 0.0
    two_r = 2.0 * r
    for i in range(n):
        xi = X[i, 0]
        yi = X[i, 1]
        zi = X[i, 2]
        # wall term
        if kind == KIND_SPHERE:
            norm = np.sqrt(xi * xi + yi * yi + zi * zi)
            d = norm + r - r0
            if d > 0.0:
                y = d * d - comp
                s = U + y
                comp = (s - U) - y
                U = s
                if norm > 0.0:
                    f = 2.0 * d / norm
                    grad[i, 0] += f * xi
                    grad[i, 1] += f * yi
                    grad[i, 2] += f * zi
        else:
            for c in range(3):
                v = X[i, c]
                a = v if v >= 0.0 else -v
                d = a + r - r0
                if d > 0.0:
                    y = d * d - comp
                    s = U + y
                    comp = (s - U) - y
                    U = s
                    if v > 0.0:
                        grad[i, c] += 2.0 * d
                    elif v < 0.0:
                        grad[i, c] -= 2.0 * d
        # ordered pair terms; the (i, j) visit owns the whole dU/dX_i
        for j in range(n):
            if j == i:
                continue
            dx = xi - X[j, 0]
            dy = yi - X[j, 1]
            dz = zi - X[j, 2]
            dist = np.sqrt(dx * dx + dy * dy + dz * dz)
            if dist < two_r:
                dd = 0.5 * (two_r - dist)
                y = dd * dd - comp
                s = U + y
                comp = (s - U) - y
                U = s
                if dist > 0.0:
                    f = -(two_r - dist) / dist
                    grad[i, 0] += f * dx
                    grad[i, 1] += f * dy
                    grad[i, 2] += f * dz
    return U


@njit(cache=True)
def energy_grad_grid(X, r, r0, kind, grad):
    """Same contract as energy_grad_naive, with neighbor queries through a
    uniform grid of cell size 2r. Falls back to the direct loop when the
    spread of centers would need an absurd number of cells."""
    n = X.shape[0]
    cell = 2.0 * r
    minx = X[0, 0]
    miny = X[0, 1]
    minz = X[0, 2]
    maxx = minx
    maxy = miny
    maxz = minz
    for i in range(1, n):
        if X[i, 0] < minx:
            minx = X[i, 0]
        elif X[i, 0] > maxx:
            maxx = X[i, 0]
        if X[i, 1] < miny:
            miny = X[i, 1]
        elif X[i, 1] > maxy:
            maxy = X[i, 1]
        if X[i, 2] < minz:
            minz = X[i, 2]
        elif X[i, 2] > maxz:
            maxz = X[i, 2]
    nx = int((maxx - minx) / cell) + 1
    ny = int((maxy - miny) / cell) + 1
    nz = int((maxz - minz) / cell) + 1
    if nx * ny * nz > _MAX_CELLS:
        return energy_grad_naive(X, r, r0, kind, grad)

    head = np.full(nx * ny * nz, -1, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    cix = np.empty(n, dtype=np.int64)
    ciy = np.empty(n, dtype=np.int64)
    ciz = np.empty(n, dtype=np.int64)
    for i in range(n):
        cx = int((X[i, 0] - minx) / cell)
        cy = int((X[i, 1] - miny) / cell)
        cz = int((X[i, 2] - minz) / cell)
        if cx >= nx:
            cx = nx - 1
        if cy >= ny:
            cy = ny - 1
        if cz >= nz:
            cz = nz - 1
        cix[i] = cx
        ciy[i] = cy
        ciz[i] = cz
    # reversed insertion keeps each chain in ascending sphere order
    for i in range(n - 1, -1, -1):
        c = (cix[i] * ny + ciy[i]) * nz + ciz[i]
        nxt[i] = head[c]
        head[c] = i

    grad[:] = 0.0
    U = 0.0
    comp = 0.0
    two_r = 2.0 * r
    for i in range(n):
        xi = X[i, 0]
        yi = X[i, 1]
        zi = X[i, 2]
        if kind == KIND_SPHERE:
            norm = np.sqrt(xi * xi + yi * yi + zi * zi)
            d = norm + r - r0
            if d > 0.0:
                y = d * d - comp
                s = U + y
                comp = (s - U) - y
                U = s
                if norm > 0.0:
                    f = 2.0 * d / norm
                    grad[i, 0] += f * xi
                    grad[i, 1] += f * yi
                    grad[i, 2] += f * zi
        else:
            for c in range(3):
                v = X[i, c]
                a = v if v >= 0.0 else -v
                d = a + r - r0
                if d > 0.0:
                    y = d * d - comp
                    s = U + y
                    comp = (s - U) - y
                    U = s
                    if v > 0.0:
                        grad[i, c] += 2.0 * d
                    elif v < 0.0:
                        grad[i, c] -= 2.0 * d
        for ox in range(-1, 2):
            cx = cix[i] + ox
            if cx < 0 or cx >= nx:
                continue
            for oy in range(-1, 2):
                cy = ciy[i] + oy
                if cy < 0 or cy >= ny:
                    continue
                for oz in range(-1, 2):
                    cz = ciz[i] + oz
                    if cz < 0 or cz >= nz:
                        continue
                    j = head[(cx * ny + cy) * nz + cz]
                    while j != -1:
                        if j != i:
                            dx = xi - X[j, 0]
                            dy = yi - X[j, 1]
                            dz = zi - X[j, 2]
                            dist = np.sqrt(dx * dx + dy * dy + dz * dz)
                            if dist < two_r:
                                dd = 0.5 * (two_r - dist)
                                y = dd * dd - comp
                                s = U + y
                                comp = (s - U) - y
                                U = s
                                if dist > 0.0:
                                    f = -(two_r - dist) / dist
                                    grad[i, 0] += f * dx
                                    grad[i, 1] += f * dy
                                    grad[i, 2] += f * dz
                        j = nxt[j]
    return U


@njit(cache=True)
def energy_grad(X, r, r0, kind, grad, use_grid):
    if use_grid:
        return energy_grad_grid(X, r, r0, kind, grad)
    return energy_grad_naive(X, r, r0, kind, grad)


@njit(cache=True)
def descend(X, r, r0, kind, use_grid, threshold, max_iter, stall_gnorm,
            dt0, shrink, grow):
    """Inertial descent on the overlap energy.

    Velocity accumulates the downhill force and is steered toward it; moving
    against the force, or any trial that fails to lower the energy, zeroes
    the velocity and shrinks the step. The inertia matters: plain steepest
    descent needs millions of iterations on the nearly singular valleys that
    appear when a packing is compressed right at its feasibility limit.

    Mutates/returns a working array (possibly a different buffer than the
    input). Returns (X, energy, iterations, status). One iteration is one
    trial step, accepted or rejected; accepted energies are strictly
    decreasing.
    """
    n = X.shape[0]
    g = np.empty((n, 3))
    gt = np.empty((n, 3))
    Xt = np.empty((n, 3))
    v = np.zeros((n, 3))
    U = energy_grad(X, r, r0, kind, g, use_grid)
    iters = 0
    if U < threshold:
        return X, U, iters, STATUS_PACKED
    dt = dt0
    dt_max = _DT_MAX_FACTOR * dt0
    mix = _MIX0
    streak = 0
    while iters < max_iter:
        gsq = 0.0
        vsq = 0.0
        power = 0.0
        for i in range(n):
            gsq += g[i, 0] * g[i, 0] + g[i, 1] * g[i, 1] + g[i, 2] * g[i, 2]
            vsq += v[i, 0] * v[i, 0] + v[i, 1] * v[i, 1] + v[i, 2] * v[i, 2]
            power -= g[i, 0] * v[i, 0] + g[i, 1] * v[i, 1] + g[i, 2] * v[i, 2]
        gnorm = np.sqrt(gsq)
        if gnorm < stall_gnorm:
            return X, U, iters, STATUS_STALLED
        if power < 0.0:
            # moving against the force: take back the half step that
            # overshot (when that actually lowers the energy), then drop the
            # inertia and shrink the step
            for i in range(n):
                Xt[i, 0] = X[i, 0] - 0.5 * dt * v[i, 0]
                Xt[i, 1] = X[i, 1] - 0.5 * dt * v[i, 1]
                Xt[i, 2] = X[i, 2] - 0.5 * dt * v[i, 2]
            Ut = energy_grad(Xt, r, r0, kind, gt, use_grid)
            iters += 1
            if Ut < U:
                tmp = X
                X = Xt
                Xt = tmp
                tmp = g
                g = gt
                gt = tmp
                U = Ut
                if U < threshold:
                    return X, U, iters, STATUS_PACKED
                gsq = 0.0
                for i in range(n):
                    gsq += (g[i, 0] * g[i, 0] + g[i, 1] * g[i, 1]
                            + g[i, 2] * g[i, 2])
                gnorm = np.sqrt(gsq)
                if gnorm < stall_gnorm:
                    return X, U, iters, STATUS_STALLED
            for i in range(n):
                v[i, 0] = 0.0
                v[i, 1] = 0.0
                v[i, 2] = 0.0
            vsq = 0.0
            dt *= shrink
            mix = _MIX0
            streak = 0
            if dt < _DT_FLOOR:
                return X, U, iters, STATUS_STALLED
        elif streak >= _STREAK_MIN:
            dt *= grow
            if dt > dt_max:
                dt = dt_max
            mix *= _MIX_DECAY
        # steer the velocity toward the force, then kick and move
        steer = mix * np.sqrt(vsq) / gnorm
        for i in range(n):
            v[i, 0] = (1.0 - mix) * v[i, 0] - steer * g[i, 0] - dt * g[i, 0]
            v[i, 1] = (1.0 - mix) * v[i, 1] - steer * g[i, 1] - dt * g[i, 1]
            v[i, 2] = (1.0 - mix) * v[i, 2] - steer * g[i, 2] - dt * g[i, 2]
            Xt[i, 0] = X[i, 0] + dt * v[i, 0]
            Xt[i, 1] = X[i, 1] + dt * v[i, 1]
            Xt[i, 2] = X[i, 2] + dt * v[i, 2]
        Ut = energy_grad(Xt, r, r0, kind, gt, use_grid)
        iters += 1
        if Ut < U:
            tmp = X
            X = Xt
            Xt = tmp
            tmp = g
            g = gt
            gt = tmp
            U = Ut
            streak += 1
            if U < threshold:
                return X, U, iters, STATUS_PACKED
        else:
            # rejected: undo the kick but keep the steered velocity, so
            # progress along a narrow valley survives the overshoot that a
            # too-large step took across its walls
            for i in range(n):
                v[i, 0] += dt * g[i, 0]
                v[i, 1] += dt * g[i, 1]
                v[i, 2] += dt * g[i, 2]
            dt *= shrink
            streak = 0
            if dt < _DT_FLOOR:
                # no representable progress left in this basin
                return X, U, iters, STATUS_STALLED
    return X, U, iters, STATUS_ITERATION_LIMIT
