"""Independent one-step evaluations of the classic-control dynamics."""
import math


def cartpole(x, xd, th, thd, action):
    g, mc, mp, l, tau = 9.8, 1.0, 0.1, 0.5, 0.02
    f = 10.0 if action == 1 else -10.0
    total = mc + mp
    temp = (f + mp * l * thd**2 * math.sin(th)) / total
    thacc = (g * math.sin(th) - math.cos(th) * temp) / (l * (4.0 / 3.0 - mp * math.cos(th) ** 2 / total))
    xacc = temp - mp * l * thacc * math.cos(th) / total
    return x + tau * xd, xd + tau * xacc, th + tau * thd, thd + tau * thacc


def mountaincar(p, v, action):
    v = v + (action - 1) * 0.001 + math.cos(3 * p) * (-0.0025)
    v = min(max(v, -0.07), 0.07)
    p = p + v
    p = min(max(p, -1.2), 0.6)
    if p == -1.2 and v < 0:
        v = 0.0
    return p, v


def acrobot_deriv(s, torque):
    m1 = m2 = 1.0
    l1 = 1.0
    lc1 = lc2 = 0.5
    i1 = i2 = 1.0
    g = 9.8
    t1, t2, d1_, d2_ = s
    d1 = m1 * lc1**2 + m2 * (l1**2 + lc2**2 + 2 * l1 * lc2 * math.cos(t2)) + i1 + i2
    d2 = m2 * (lc2**2 + l1 * lc2 * math.cos(t2)) + i2
    phi2 = m2 * lc2 * g * math.cos(t1 + t2 - math.pi / 2.0)
    phi1 = (-m2 * l1 * lc2 * d2_**2 * math.sin(t2) - 2 * m2 * l1 * lc2 * d2_ * d1_ * math.sin(t2)
            + (m1 * lc1 + m2 * l1) * g * math.cos(t1 - math.pi / 2) + phi2)
    dd2 = (torque + d2 / d1 * phi1 - m2 * l1 * lc2 * d1_**2 * math.sin(t2) - phi2) / (
        m2 * lc2**2 + i2 - d2**2 / d1)
    dd1 = -(d2 * dd2 + phi1) / d1
    return [d1_, d2_, dd1, dd2]


def acrobot(s, action):
    torque = float(action - 1)
    dt = 0.2
    k1 = acrobot_deriv(s, torque)
    k2 = acrobot_deriv([a + dt / 2 * b for a, b in zip(s, k1)], torque)
    k3 = acrobot_deriv([a + dt / 2 * b for a, b in zip(s, k2)], torque)
    k4 = acrobot_deriv([a + dt * b for a, b in zip(s, k3)], torque)
    ns = [a + dt / 6.0 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(s, k1, k2, k3, k4)]

    def wrap(x):
        while x > math.pi:
            x -= 2 * math.pi
        while x < -math.pi:
            x += 2 * math.pi
        return x

    ns[0] = wrap(ns[0])
    ns[1] = wrap(ns[1])
    ns[2] = min(max(ns[2], -4 * math.pi), 4 * math.pi)
    ns[3] = min(max(ns[3], -9 * math.pi), 9 * math.pi)
    return ns


def pendulum(th, thd, u):
    g, m, l, dt = 10.0, 1.0, 1.0, 0.05
    u = min(max(u, -2.0), 2.0)
    norm = ((th + math.pi) % (2 * math.pi)) - math.pi
    cost = norm**2 + 0.1 * thd**2 + 0.001 * u**2
    nthd = thd + (3 * g / (2 * l) * math.sin(th) + 3.0 / (m * l**2) * u) * dt
    nthd = min(max(nthd, -8.0), 8.0)
    nth = th + nthd * dt
    return nth, nthd, -cost


if __name__ == "__main__":
    print("cartpole a1", [repr(v) for v in cartpole(0, 0, 0, 0, 1)])
    print("cartpole a0", [repr(v) for v in cartpole(0, 0, 0, 0, 0)])
    print("cartpole mixed", [repr(v) for v in cartpole(0.1, -0.2, 0.05, 0.3, 1)])
    print("mountaincar a2", [repr(v) for v in mountaincar(-0.5, 0.0, 2)])
    print("mountaincar a1", [repr(v) for v in mountaincar(-0.5, 0.0, 1)])
    print("acrobot a2", [repr(v) for v in acrobot([0.0, 0.0, 0.0, 0.0], 2)])
    print("acrobot a1", [repr(v) for v in acrobot([0.0, 0.0, 0.0, 0.0], 1)])
    print("acrobot a0", [repr(v) for v in acrobot([0.0, 0.0, 0.0, 0.0], 0)])
    print("acrobot mixed", [repr(v) for v in acrobot([0.3, -0.2, 0.5, -1.0], 0)])
    print("pendulum pi/2", [repr(v) for v in pendulum(math.pi / 2, 0.0, 0.0)])
    print("pendulum mixed", [repr(v) for v in pendulum(2.5, -1.5, 1.2)])
