"""Independent high-precision reference values frozen into the C++ tests.

Run with: python3 tests/oracles/oracle_values.py
Uses mpmath only (quadrature and direct series in 50-digit arithmetic).
"""
from mpmath import mp, mpf, quad, gamma, exp, erfc, inf, nsum, sqrt, pi, cosh, e

mp.dps = 50


def gamma_quad(x):
    x = mpf(x)
    return quad(lambda t: t ** (x - 1) * exp(-t), [0, 1, 10, inf])


def ml(mu, nu, z):
    mu, nu, z = mpf(mu), mpf(nu), mpf(z)
    return nsum(lambda k: z ** k / gamma(k * mu + nu), [0, inf])


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 20)}")


half, q34 = mpf(1) / 2, mpf(3) / 4
show("Gamma(0.75) quadrature", gamma_quad(q34))
show("Gamma(0.3) quadrature", gamma_quad(mpf("0.3")))
show("Gamma(5.5) quadrature", gamma_quad(mpf("5.5")))
show("E_{1/2}(4) series", ml(half, 1, 4))
show("e^16 erfc(-4)", exp(16) * erfc(-4))
show("E_{1/2,3/4}(4) series", ml(half, q34, 4))
show("E_{1/2,3/4}(1) series", ml(half, q34, 1))
show("E_{1/2}(1)", ml(half, 1, 1))
show("E_{2,1}(1) vs cosh 1", ml(2, 1, 1) - cosh(1))

# weighted frac integral of h = 1 at t = 1 (mu = 1/2) by quadrature
show("I^{1/2} 1 at t=1 (quad)", quad(lambda s: (1 - s) ** (-half), [0, 1]) / gamma(half))
show("2/sqrt(pi)", 2 / sqrt(pi))

# contraction iterate count for the worked example (L=4, mu=1/2, rho=3/4, dPsi=1)
for j in range(1, 200):
    k = gamma(q34) * mpf(4) ** j / gamma(j * half + q34)
    if k < 1:
        prev = gamma(q34) * mpf(4) ** (j - 1) / gamma((j - 1) * half + q34)
        show(f"contraction j={j} factor", k)
        show(f"contraction j-1 factor", prev)
        break

# HU constant for the worked example and L=1, mu=rho=1
show("hu_constant example", (ml(half, 1, 4) - 1) / 4)
show("8*hu_constant example", 2 * (ml(half, 1, 4) - 1))
show("dist(ytilde, y) example", 2 * ml(half, q34, 4) - 2 / gamma(q34))
show("C_f expression", abs(ml(half, q34, 4) - 2 / gamma(q34)))

# eps-approx bound for the worked example: direct term-by-term evaluation
def dpdn(eps_sum, dya, L, mu, rho, dpsi):
    L, mu, rho, dpsi = mpf(L), mpf(mu), mpf(rho), mpf(dpsi)
    s1 = dpsi ** (mu - rho + 1) / gamma(mu + 1) + nsum(
        lambda k: L ** k / gamma((k + 1) * mu - rho + 1) * dpsi ** ((k + 1) * mu), [1, inf])
    s2 = 1 / gamma(rho) + nsum(lambda k: L ** k / gamma(rho + k * mu) * dpsi ** (k * mu), [1, inf])
    return eps_sum * s1 + abs(dya) * s2

show("dpdn(0, ya 2 vs 3)", dpdn(0, 1, 4, half, q34, 1))
show("dpdn(0, ya 2 vs 2.5)", dpdn(0, mpf(1) / 2, 4, half, q34, 1))
show("dpdn(eps1=8, equal ya)", dpdn(8, 0, 4, half, q34, 1))
show("dpdn L=0.5,mu=.3,rho=.65,dpsi=2,eps=1.5,dya=.25", dpdn(mpf("1.5"), mpf("0.25"), mpf("0.5"), mpf("0.3"), mpf("0.65"), 2))
