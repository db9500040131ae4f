#!/usr/bin/env python3
"""Generate the high-precision oracle constants frozen into the test suite.

Run before touching any test expectations:

    python scripts/gen_oracle_values.py

Every constant printed here is computed with mpmath at 40 significant
digits, independently of the package implementation.  The test files copy
these values verbatim; if this script and a test constant ever disagree,
the test constant is stale.
"""

import mpmath as mp

mp.mp.dps = 40

EPS0 = mp.mpf("8.8541878128e-12")
MU0 = 4 * mp.pi * mp.mpf("1e-7")


def hdr(title):
    print()
    print("# --- %s ---" % title)


def main():
    hdr("Bessel spot values")
    for n in range(1, 4):
        print("J0 zero %d = %s" % (n, mp.nstr(mp.besseljzero(0, n), 20)))
    print("Y0(1.0)   = %s" % mp.nstr(mp.bessely(0, 1), 20))
    print("J0(1.0)   = %s" % mp.nstr(mp.besselj(0, 1), 20))
    h10 = mp.besselj(0, 10) + 1j * mp.bessely(0, 10)
    print("H0_1(10)  = %s" % mp.nstr(h10, 20))
    print("J0(8.0)   = %s" % mp.nstr(mp.besselj(0, 8), 20))

    hdr("Half-max abscissa of J0^2 (J0(x) = 1/sqrt(2))")
    x0 = mp.findroot(lambda x: mp.besselj(0, x) - 1 / mp.sqrt(2), mp.mpf("1.1"))
    print("x_half    = %s" % mp.nstr(x0, 20))

    hdr("Background wavenumber, 20*eps0 / 0.2 S/m / 1 GHz")
    omega = 2 * mp.pi * mp.mpf("1e9")
    k2 = omega ** 2 * MU0 * (20 * EPS0 + 1j * mp.mpf("0.2") / omega)
    k = mp.sqrt(k2)
    print("k         = %s" % mp.nstr(k, 20))
    print("2pi/Re k  = %s" % mp.nstr(2 * mp.pi / mp.re(k), 20))
    k_ll = omega * mp.sqrt(MU0 * 20 * EPS0)
    print("k lossless= %s" % mp.nstr(k_ll, 20))
    print("lambda ll = %s" % mp.nstr(2 * mp.pi / k_ll, 20))

    hdr("Point-model S(1,2), Table-1 small-anomaly scenario")
    # One direct transcription of the scattered-parameter product formula:
    # rho^2 * (i k^2 pi / (4 w mu)) * gamma * Einc(d2,rs) * Einc(d1,rs)
    rho = mp.mpf("0.010")
    gamma = mp.mpf(55 - 20) / 20 + 1j * mp.mpf("1.0") / (omega * mp.mpf("0.2"))
    R = mp.mpf("0.09")
    th1 = 3 * mp.pi / 2
    th2 = 3 * mp.pi / 2 - 2 * mp.pi / 16
    rs = (mp.mpf("0.01"), mp.mpf("0.03"))
    d1 = (R * mp.cos(th1), R * mp.sin(th1))
    d2 = (R * mp.cos(th2), R * mp.sin(th2))

    def einc(d):
        dist = mp.sqrt((d[0] - rs[0]) ** 2 + (d[1] - rs[1]) ** 2)
        arg = k * dist
        h0 = mp.besselj(0, arg) + 1j * mp.bessely(0, arg)
        return -0.25j * h0

    s12 = rho ** 2 * (1j * k ** 2 * mp.pi / (4 * omega * MU0)) * gamma * einc(d2) * einc(d1)
    print("S(1,2)    = %s" % mp.nstr(s12, 20))

    hdr("Plane-wave partial-sum spot value, x=8, angle offset 0.7")
    val = mp.exp(1j * 8 * mp.cos(mp.mpf("0.7"))) - mp.besselj(0, 8)
    print("psi spot  = %s" % mp.nstr(val, 20))

    hdr("Smallness indices, Table 1")
    print("small scn = %s" % mp.nstr(mp.sqrt(mp.mpf(55) / 20) * mp.mpf("0.02"), 12))
    print("ext scn   = %s" % mp.nstr(mp.sqrt(mp.mpf(15) / 20) * mp.mpf("0.10"), 12))


if __name__ == "__main__":
    main()
