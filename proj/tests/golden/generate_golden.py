"""Reference |a(t)|^2 for the figure CSVs, evaluated in 40-digit arithmetic.

Independent of the C++ code: phi_n is taken from the explicit binomial sum
(no Laguerre recurrence, no DP table).

    python3 generate_golden.py OUTDIR
"""
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40


def phi_sinusoidal(alpha, n, x):
    return (alpha * x / 2) ** n / mp.factorial(n)


def phi_exp_comb(beta, n, x):
    # b_n^(m) = e^{-beta n} C(n-1, m-1)
    return mp.e ** (-beta * n) * mp.fsum(
        mp.binomial(n - 1, m - 1) * (-x) ** m / mp.factorial(m) for m in range(1, n + 1)
    )


def abs2_series(phi, gamma0, T, eps0, t):
    lam = gamma0 / 2 + 1j * eps0
    a = mp.exp(-lam * t)
    n = 1
    while n * T <= t:
        tau = t - n * T
        a += mp.exp(-lam * tau) * phi(n, gamma0 * tau)
        n += 1
    return abs(a) ** 2


def write(path, phi, gamma0, eps0, t_max, dt_den=500):
    T = mp.mpf(1)
    rows = ["t,abs2_a"]
    for k in range(t_max * dt_den + 1):
        # the C++ grid stores t = k * dt in double precision
        t = mp.mpf(float(k) * (1.0 / dt_den))
        rows.append("%.17g,%.17g" % (float(t), float(abs2_series(phi, gamma0, T, eps0, t))))
    Path(path).write_text("\n".join(rows) + "\n")


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    phases = {"0": 0, "pi_3": mp.pi / 3, "2pi_3": 2 * mp.pi / 3, "pi": mp.pi}
    for gT in (1, 4):
        for label, eT in phases.items():
            # eps0 enters as the double the CLI uses
            eps0 = mp.mpf(float(eT))
            write(out / f"fig2_gT{gT}_eT{label}.csv",
                  lambda n, x: phi_sinusoidal(1, n, x), mp.mpf(gT), eps0, 5)
    write(out / "fig3_b0_gT4.csv", lambda n, x: phi_exp_comb(0, n, x), mp.mpf(4), mp.mpf(0), 10)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent)
