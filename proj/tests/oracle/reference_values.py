#!/usr/bin/env python3
"""Independent reference values for the C++ test suites.

Everything here is recomputed from scratch with mpmath at 60 digits and a
parts-by-parts partition DP; nothing is imported from the C++ library. The
printed values are frozen into tests/*.cpp.
"""
from mpmath import mp, mpf, pi, sqrt, log, exp, sinh

mp.dps = 60


def partitions_dp(limit):
    p = [0] * (limit + 1)
    p[0] = 1
    for part in range(1, limit + 1):
        for total in range(part, limit + 1):
            p[total] += p[total - part]
    return p


P = partitions_dp(6000)
D_CONST = pi**2 / (6 * sqrt(3))
ALPHA = 3 * pi / sqrt(24)


def mu(n):
    return pi / 6 * sqrt(24 * n - 1)


def log_t_tilde(n):
    m = mu(n)
    return log(D_CONST) - 2 * log(m) + log(1 - 1 / m) + m


def t_tilde(n):
    return exp(log_t_tilde(n))


def b1(n):
    return 72 * pi / ((n + 1) * mpf(24 * n + 23) ** 1.5) - 4 * log(mu(n - 1)) / mpf(n - 1) ** 3


def b2(n):
    return (72 * pi / ((n - 1) * mpf(24 * n - 25) ** 1.5) - 4 * log(mu(n + 1)) / mpf(n + 1) ** 3
            + 5 / mpf(n - 1) ** 3)


def envelope(n):
    return 5 / mpf(n - 1) * exp(-pi * sqrt(24 * n - 25) / 18)


def c_lower(n):
    return (2 * (1 + log(D_CONST)) / mpf(n - 1) ** 3
            - 12 * pi / ((n + 1) ** 2 * mpf(24 * n + 23) ** 1.5)
            - 12 * log(mu(n + 1) - 1) / mpf(n - 1) ** 4)


def d_lower(n):
    return b1(n) - 2 * log(n - 1) / mpf(n - 1) ** 3 + 3 / mpf(n - 1) ** 3 - envelope(n)


def f1pp(n):
    s = mpf(24 * n - 1) ** 1.5
    return 72 * pi / (n * s) - 12 * pi / (n**2 * s) + pi / (3 * n**3 * s)


def thm32(n):
    return 3 * pi / (sqrt(24) * mpf(n) ** 2.5 + 3 * pi)


def lehmer_general(n, N):
    m = mu(n)
    return pi**2 * mpf(N) ** (-mpf(2) / 3) / sqrt(3) * ((N / m) ** 3 * sinh(m / N) + mpf(1) / 6 - (N / m) ** 2)


def lehmer_simplified(n):
    m = mu(n)
    return 4 * (1 + 4 / m**3 * exp(m / 2))


def logp(n):
    return log(P[n])


def nth(n):
    return logp(n) / n


def log_r(n):
    return (logp(n) - log(n)) / n


def show(label, value):
    print(f"{label:40s} {mp.nstr(value, 20)}")


show("pi", pi)
show("d", D_CONST)
show("alpha", ALPHA)
show("pi/sqrt24", pi / sqrt(24))
show("mu(1)", mu(1))
show("mu(40)", mu(40))
show("log 42", log(42))
show("f1''(100)", f1pp(100))
show("B1(100)", b1(100))
show("B2(100)", b2(100))
show("env(100)", envelope(100))
show("C(40)", c_lower(40))
show("D(100)", d_lower(100))
show("D(5505)", d_lower(5505))
show("thm32(2)", thm32(2))
show("e^{-mu(100)/3}", exp(-mu(100) / 3))
show("lehmer general(100,2)", lehmer_general(100, 2))
show("lehmer simplified(100)", lehmer_simplified(100))
show("y_tilde(100)", (P[100] - t_tilde(100)) / t_tilde(100))
show("y_tilde(40)", (P[40] - t_tilde(40)) / t_tilde(40))
show("p(200)", P[200])
show("Dlog_r center 61", log_r(62) + log_r(60) - 2 * log_r(61))

# sign-change bracket of D(n)
last_neg = max(n for n in range(100, 5506) if d_lower(n) < 0)
show("last n<=5505 with D(n)<0", last_neg)

# alpha rows (center n+1) and pi24 rows (center n) at desk scale
for n in (1000,):
    a = mpf(n) ** 2.5 * (nth(n + 2) + nth(n) - 2 * nth(n + 1))
    show(f"alpha row n={n}", a)
    q = -mpf(n) ** 1.5 * (logp(n + 1) + logp(n - 1) - 2 * logp(n))
    show(f"pi24 row n={n}", q)

# nth-root log-convexity: which centers fail below 27?
fails = [n for n in range(2, 120) if nth(n + 1) + nth(n - 1) - 2 * nth(n) <= 0]
print("nthroot-log-convex failing centers in [2,120):", fails)
fails = [n for n in range(2, 200) if log_r(n + 1) + log_r(n - 1) - 2 * log_r(n) <= 0]
print("r-log-convex failing centers in [2,200):", fails)
fails = [n for n in range(2, 2096)
         if nth(n + 1) + nth(n - 1) - 2 * nth(n) >= log(1 + 3 * pi / (sqrt(24) * mpf(n) ** 2.5))]
print("ratio-ineq failing centers in [2,2095]:", fails)
fails = [n for n in range(2, 200)
         if P[n - 1] * P[n + 1] * (1 + pi / (sqrt(24) * mpf(n) ** 1.5)) <= P[n] ** 2]
print("dp-conjecture failing centers in [2,200):", fails)
fails = [n for n in range(2, 400) if P[n + 2] * P[n] ** 3 - P[n + 1] ** 3 * P[n - 1] <= 0]
print("delta3 failing centers in [2,400):", fails)
fails = [n for n in range(1, 100) if P[n] ** (n + 1) - P[n + 1] ** n <= 0]
print("nthroot-decreasing failing n in [1,100):", fails)
fails = [n for n in range(2, 200) if -(logp(n + 1) + logp(n - 1) - 2 * logp(n)) >= (
    24 * pi / mpf(24 * (n - 1) - 1) ** 1.5
    + 288 * pi * (-3 + pi * sqrt(24 * (n - 1) - 1))
    / (mpf(24 * (n - 1) - 1) ** 1.5 * (-6 + pi * sqrt(24 * (n - 1) - 1)) ** 2)
    - 864 / mpf(24 * (n + 1) - 1) ** 2 + 2 * exp(-pi / 10 * sqrt(mpf(2 * n) / 3)))]
print("dp-upper failing centers in [2,200):", fails)
