"""Timing comparison of the compiled and pure-numpy quadrature backends.

Runs the same workloads through both backends and prints a small
table: raw momentum-integral kernels across a frequency ladder, and a
full thermal force evaluation.  Values are cross-checked to the
quadrature tolerance while timing, so a silent divergence between the
two implementations shows up here as well.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import time

from casimir import kernels
from casimir.dielectric import AL_OMEGA_P, Plasma
from casimir.lifshitz import QuadratureSpec, ZeroModePolicy, matsubara_force
from casimir.units import C, HBAR, K_B, Scenario

A = 0.5e-6  # m
T = 300.0  # K
R = 100e-6  # m
REL = 1e-10


def eps_plasma(xi: float) -> float:
    return 1.0 + (AL_OMEGA_P / xi) ** 2


def kernel_ladder(n_terms: int = 200) -> float:
    """Sum of momentum integrals over a Matsubara ladder (checksum)."""
    tau = 4.0 * math.pi * A * K_B * T / (HBAR * C)
    total = 0.0
    for n in range(1, n_terms + 1):
        x = tau * n
        xi = x * C / (2.0 * A)
        val, _, status = kernels.integrate(
            kernels.WHICH_PL, x, eps_plasma(xi), kernels.MODE_FINITE,
            x, x + 40.0, REL, 0.0, 400,
        )
        if status != 0:
            raise RuntimeError(f"kernel did not converge at n={n}")
        total += val
    return total


def force_once() -> float:
    sc = Scenario(geometry="pl", a=A, T=T, R=R)
    return matsubara_force(
        sc, Plasma(AL_OMEGA_P), ZeroModePolicy.SCHWINGER_DERAAD_MILTON,
        QuadratureSpec(rel_tol=REL),
    ).value


def timed(fn, repeat: int):
    best = math.inf
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return value, best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    results = {}
    for name in kernels.available_backends():
        kernels.use_backend(name)
        kernel_ladder(5)  # warm up (numba compilation happens here)
        force_once()
        ladder, t_ladder = timed(kernel_ladder, args.repeat)
        force, t_force = timed(force_once, args.repeat)
        results[name] = (ladder, t_ladder, force, t_force)
        print(
            f"{name:>6}: ladder {t_ladder * 1e3:8.2f} ms   "
            f"force {t_force * 1e3:8.2f} ms   F = {force:.12e} N"
        )
    kernels.use_backend(None)

    names = list(results)
    if len(names) == 2:
        (l1, tl1, f1, tf1), (l2, tl2, f2, tf2) = results[names[0]], results[names[1]]
        dev_l = abs(l1 - l2) / abs(l1)
        dev_f = abs(f1 - f2) / abs(f1)
        print(
            f"agreement: ladder {dev_l:.2e}, force {dev_f:.2e} "
            f"(quadrature tolerance {REL:g})"
        )
        print(f"speedup ({names[1]} -> {names[0]}): ladder x{tl2 / tl1:.1f}, force x{tf2 / tf1:.1f}")
        if dev_l > 100 * REL or dev_f > 100 * REL:
            print("WARNING: backends disagree beyond tolerance")
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
