"""Independent reference values for the queueing unit tests.

The PTQ chain is built by enumerating every (departures, arrivals) pair through
Q' = min(max(Q - D, 0) + A, F) instead of the closed-form case split, the steady state
comes from numpy's dense solver, and the departure CDF is also estimated by Monte Carlo.
Run with `python3 tests/oracles/ptq_oracle.py`; the printed numbers are frozen in
tests/unit/test_queueing.cpp.
"""

import numpy as np
from scipy.stats import norm, poisson


def departure_pmf(z, T, L, mean_db, std_db, kmax):
    """P(D = k) for k < kmax, remaining mass lumped at kmax."""
    if z == 0:
        pmf = np.zeros(kmax + 1)
        pmf[0] = 1.0
        return pmf
    ks = np.arange(kmax)
    thresholds = 2.0 ** ((ks + 1) * L / (T * z)) - 1.0
    cdf = norm.cdf((10 * np.log10(thresholds) - mean_db) / std_db)
    pmf = np.diff(np.concatenate([[0.0], cdf]))
    return np.append(pmf, 1.0 - cdf[-1])


def chain(rate, T, z, L, mean_db, std_db, F, kmax=400):
    a = rate * T
    arrivals = poisson.pmf(np.arange(kmax), a)
    departures = departure_pmf(z, T, L, mean_db, std_db, kmax)
    omega = np.zeros((F + 1, F + 1))
    drops = np.zeros(F + 1)
    for q in range(F + 1):
        for d, pd in enumerate(departures):
            if pd == 0.0:
                continue
            rest = max(q - d, 0)
            for k, pa in enumerate(arrivals):
                n = rest + k
                omega[q, min(n, F)] += pd * pa
                drops[q] += pd * pa * max(n - F, 0)
    system = omega.T - np.eye(F + 1)
    system[-1, :] = 1.0
    rhs = np.zeros(F + 1)
    rhs[-1] = 1.0
    alpha = np.linalg.solve(system, rhs)
    G = alpha @ drops
    theta = G / a
    mean_queue = alpha @ np.arange(F + 1)
    latency = mean_queue / (rate * (1 - theta))
    return omega, alpha, G, theta, latency, mean_queue


def report(label, *args):
    _, alpha, G, theta, latency, mean_queue = chain(*args)
    print(f"{label}: theta={theta:.12g} latency={latency:.12g} mean_queue={mean_queue:.12g} "
          f"G={G:.12g} alpha0={alpha[0]:.12g} alphaF={alpha[-1]:.12g}")


if __name__ == "__main__":
    # (rate, T, z, L, mean_db, std_db, F)
    report("semcom tau=0.5 z=1.0MHz", 1125, 1e-3, 1.0e6, 800, 0.0, 4.0, 20)
    report("semcom tau=0.5 z=1.55MHz", 1125, 1e-3, 1.55e6, 800, 0.0, 4.0, 20)
    report("semcom tau=0.5 z=1.8MHz", 1125, 1e-3, 1.8e6, 800, 0.0, 4.0, 20)
    report("bitcom z=1.55MHz", 1000, 1e-3, 1.55e6, 800, 0.0, 4.0, 20)
    report("F=5 mean 3dB std 2dB rate 2000 z=1MHz", 2000, 1e-3, 1.0e6, 800, 3.0, 2.0, 5)

    # Departure CDF at 1.55 MHz: analytic and 1e6-draw Monte Carlo.
    rng = np.random.default_rng(2024)
    gamma = 10 ** (rng.normal(0.0, 4.0, 1_000_000) / 10)
    d = np.floor(1e-3 * 1.55e6 * np.log2(1 + gamma) / 800)
    pmf = departure_pmf(1.55e6, 1e-3, 800, 0.0, 4.0, 10)
    print("departure cdf analytic:", " ".join(f"{c:.12g}" for c in np.cumsum(pmf)[:6]))
    print("departure cdf monte carlo:", " ".join(f"{np.mean(d <= k):.6f}" for k in range(6)))

    # Hand case: F = 1, arrivals and departures uniform on {0, 1}.
    omega = np.zeros((2, 2))
    for q in range(2):
        for dd in range(2):
            for a in range(2):
                omega[q, min(max(q - dd, 0) + a, 1)] += 0.25
    system = omega.T - np.eye(2)
    system[-1, :] = 1
    print("F=1 omega:", omega.tolist(), "alpha:", np.linalg.solve(system, [0, 1]).tolist())

    # Smallest 1 kHz multiple meeting the loss budget 0.01 and the 20 ms latency budget
    # (9.1 ms of which is spent in the coding queue), SemCom tau = 0.5.
    def smallest_khz(ok, lo=100, hi=20000):
        while hi - lo > 1:
            mid = (lo + hi) // 2
            lo, hi = (lo, mid) if ok(mid * 1e3) else (mid, hi)
        return hi * 1e3
    z_loss = smallest_khz(lambda z: chain(1125, 1e-3, z, 800, 0.0, 4.0, 20)[3] <= 0.01)
    z_latency = smallest_khz(lambda z: chain(1125, 1e-3, z, 800, 0.0, 4.0, 20)[4] + 0.0091 <= 0.02)
    print(f"thresholds: loss {z_loss:.0f} Hz latency {z_latency:.0f} Hz")

    # Service-time moments of the coding queue, both second-moment models.
    lam, tau, mm, ms = 1000.0, 0.5, 1250.0, 1000.0
    ei = tau / mm + (1 - tau) / ms
    for name, ei2 in (("mixture", 2 * tau / mm**2 + 2 * (1 - tau) / ms**2),
                      ("weighted-sum", (tau / mm) ** 2 + ((1 - tau) / ms) ** 2 + ei**2)):
        print(f"scq {name}: {lam * ei2 / (2 * (1 - lam * ei)) + ei:.12g}")
