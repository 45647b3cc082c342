"""Reference values for the plane integral over the unit disk with f = x^2+y^2.

In polar coordinates the integral is pi * int_0^1 E(i*lam*u) du. For
(1/2, 1) the kernel is exp(z^2) erfc(-z); otherwise the term-wise
integrated series pi * sum (i lam)^k / ((k+1) Gamma(alpha k + beta)).

Writes tests/data/disk_ml.csv: alpha,beta,lambda,re,im
"""
import os
import mpmath as mp


def half_one(lam):
    mp.mp.dps = 40
    g = lambda u: (lambda z: mp.exp(z * z) * mp.erfc(-z))(mp.mpc(0, lam * u))
    pts = mp.linspace(0, 1, 1 + int(lam))
    return mp.pi * mp.quad(g, pts)


def series(alpha, beta, lam):
    alpha, beta = mp.mpf(alpha), mp.mpf(beta)
    rho = lam ** (1 / alpha)
    mp.mp.dps = int(40 + float(rho) / 2.0)
    z = mp.mpc(0, lam)
    s = mp.mpc(0)
    k = 0
    while True:
        t = z ** k * mp.rgamma(alpha * k + beta) / (k + 1)
        s += t
        if k > float(rho) / float(alpha) + 10 and abs(t) < mp.mpf(10) ** (-mp.mp.dps + 5):
            break
        k += 1
    return mp.pi * s


def main():
    rows = []
    for lam in [5, 50, 500]:
        rows.append(("0.5", "1.0", lam, half_one(lam)))
    for alpha, beta in [("0.75", "1.7"), ("0.9", "2.0"), ("0.3", "0.5")]:
        for lam in [3, 8]:
            rows.append((alpha, beta, lam, series(alpha, beta, lam)))
    out = os.path.join(os.path.dirname(__file__), "..", "data", "disk_ml.csv")
    with open(out, "w") as fh:
        fh.write("alpha,beta,lambda,re,im\n")
        for a, b, lam, v in rows:
            fh.write(f"{a},{b},{lam},{mp.nstr(v.real, 20)},{mp.nstr(v.imag, 20)}\n")


if __name__ == "__main__":
    main()
