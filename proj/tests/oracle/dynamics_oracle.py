"""Reference values for the dynamics and integrate tests.

Trajectories come from mpmath's Taylor-series ODE solver at 30 digits or from
scipy's DOP853 at rtol 1e-13; closed forms are evaluated directly.
"""
import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp

mp.mp.dps = 30


def fmt(xs):
    return " ".join(f"{float(v):.17g}" for v in xs)


# charge-monopole: v' = (n/m) x cross v / r^3
def monopole(t, y, n=1, m=1):
    x, v = y[:3], y[3:]
    r3 = (x[0] ** 2 + x[1] ** 2 + x[2] ** 2) ** 1.5
    c = [x[1] * v[2] - x[2] * v[1], x[2] * v[0] - x[0] * v[2], x[0] * v[1] - x[1] * v[0]]
    return [v[0], v[1], v[2]] + [n / m * ci / r3 for ci in c]


print("monopole rhs x=(1,0,0) v=(0,1,0):", fmt(monopole(0, [1, 0, 0, 0, 1, 0])[3:]))
y0 = [mp.mpf(1), 0, 0, 0, mp.mpf(1), mp.mpf("0.3")]
f = mp.odefun(lambda t, y: monopole(t, y), 0, y0)
print("monopole state at t = 1:", fmt(f(1)))
x, v = np.array([1.0, 0, 0]), np.array([0, 1, 0.3])
print("J(0):", fmt(np.cross(x, v) + x / np.linalg.norm(x)))

# spin precession dS/dt = mu B x S, B = (0, 0, B0): rotation about z by mu B0 t
mu, B0, t = 0.8, 1.5, 2.0
S0 = np.array([0.3, -0.2, 0.4])
a = mu * B0 * t
R = np.array([[np.cos(a), -np.sin(a), 0], [np.sin(a), np.cos(a), 0], [0, 0, 1]])
print("spin S(2), mu = 0.8, B0 = 1.5, S0 = (0.3, -0.2, 0.4):", fmt(R @ S0))

# hedgehog: A_i = eps_{a i j} x_j sigma_a / (2 e r^2), listed as sigma components of A_1, A_2, A_3
eps = np.zeros((3, 3, 3))
for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
    eps[i, j, k], eps[i, k, j] = 1, -1
for xs in ([0, 0, 2.0], [0.3, -0.4, 1.2]):
    x = np.array(xs)
    e = 1.5
    A = np.einsum("aij,j->ia", eps, x) / (2 * e * x @ x)
    print(f"hedgehog x = {xs}, e = 1.5, A_i^a rows:", fmt(A.ravel()))

# BMT, weak homogeneous field, lower-index form
#   m du_a/dtau = e F_ab u^b
#   dW_a/dtau = -2c F_ab W^b - (2c + e/m) (u^c F_cb W^b) u_a
eta = np.diag([-1.0, 1, 1, 1])
Bf = np.array([0, 0, 1.0])
F = np.zeros((4, 4))
F[1:, 1:] = np.einsum("ijk,k->ij", eps, Bf)
m, e, ge = 1.0, 1.0, 2.0
c = -e * ge / (4 * m)


def bmt(t, y):
    u_up, W_up = y[4:8], y[8:12]
    u_lo, W_lo = eta @ u_up, eta @ W_up
    du_lo = e / m * F @ u_up
    s = u_up @ F @ W_up
    dW_lo = -2 * c * F @ W_up - (2 * c + e / m) * s * u_lo
    return np.concatenate([u_up, eta @ du_lo, eta @ dW_lo])


rap = 0.5
u = np.array([np.cosh(rap), *(np.sinh(rap) * np.array([0.6, 0.0, 0.8]))])
w = np.array([0.1, 0.3, -0.2])
W = np.array([w @ u[1:] / u[0], *w])
y = np.concatenate([np.zeros(4), u, W])
sol = solve_ivp(bmt, (0, 100), y, method="DOP853", rtol=1e-13, atol=1e-15)
yT = sol.y[:, -1]


def longitudinal(y):
    ws, us = y[9:12], y[5:8]
    return ws @ us / np.linalg.norm(ws) / np.linalg.norm(us)


print("bmt longitudinal at 0 and 100:", fmt([longitudinal(y), longitudinal(yT)]))
print("bmt state at tau = 100 (z, u, W):", fmt(yT))

# RK4 on x'' = -x from (1, 0), t in [0, 10]: Richardson ratio of final positions
def rk4(dt, T=10.0):
    y = np.array([1.0, 0.0])
    f = lambda y: np.array([y[1], -y[0]])
    for _ in range(int(round(T / dt))):
        k1 = f(y); k2 = f(y + dt / 2 * k1); k3 = f(y + dt / 2 * k2); k4 = f(y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y[0]


a, b, cc = rk4(0.1), rk4(0.05), rk4(0.025)
print("oscillator rk4 Richardson ratio (dt = 0.1, 0.05, 0.025):", fmt([(a - b) / (b - cc)]))
a, b, cc = rk4(0.02), rk4(0.01), rk4(0.005)
print("oscillator rk4 Richardson ratio (dt = 0.02, 0.01, 0.005):", fmt([(a - b) / (b - cc)]))
