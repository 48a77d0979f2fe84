"""Reverse-inequality constants over a spectral band, end to end.

Everything here is scalar work: the constants depend only on the band
[m, M] and the scalar functions involved, never on the matrices.
"""

import numpy as np

import opmeanlab as ol


BAND = ol.SpectralBand(1.0, 2.0)
WIDE = ol.SpectralBand(0.5, 2.0)


def section(title):
    print()
    print("==", title)


section("Kantorovich and its square root")
k = ol.kantorovich(BAND)
ps = ol.polya_szego_coeff(BAND)
print(f"band [{BAND.m}, {BAND.M}]  K = {k}  sqrt = {ps}")
print(f"identity ps**2 == K: {np.isclose(ps**2, k, rtol=1e-15)}")
print("scale invariance, K(3, 6) =", ol.kantorovich(ol.SpectralBand(3.0, 6.0)))

section("Chord over function, maximized on an interval")
# the maximum of sqrt(t) over its chord on [m/M, M/m] is exactly the
# Polya-Szego coefficient of the band [m, M]
got = ol.chord_ratio_max(np.sqrt, BAND.m / BAND.M, BAND.M / BAND.m)
print(f"max sqrt/chord on [{BAND.m / BAND.M}, {BAND.M / BAND.m}] = {got}")
print("matches polya_szego of [1, 2]:", np.isclose(got, ps, rtol=1e-9))
print("affine functions give 1:", ol.chord_ratio_max(lambda t: 3.0 * t + 1.0, 1.0, 2.0))

section("The multiplicative reverse constant per mean")
for desc in (ol.ARITHMETIC, ol.GEOMETRIC, ol.HARMONIC, ol.weighted_geometric(0.25)):
    alpha = ol.mp_alpha(desc.h, BAND)
    print(f"{desc.name:<26} alpha = {alpha:.12f}")

section("Weighted endpoint constant vs a brute-force oracle")
# closed form for the maximum of t**eps over its chord on [t0, s0]
for eps in (0.25, 0.5, 0.75):
    closed = ol.weighted_kantorovich(WIDE.m, WIDE.M, eps)
    brute = ol.chord_ratio_max(lambda t: t**eps, WIDE.m, WIDE.M)
    print(f"eps = {eps:<5} closed form {closed:.12f}  grid+golden {brute:.12f}"
          f"  agree: {np.isclose(closed, brute, rtol=1e-10)}")

section("Composite constant for a function pair")
mp = ol.mp_gamma(np.sqrt, np.sqrt, lambda t: np.sqrt(t), BAND)
print(f"secant of g on band: mu = {mp.mu_g:.6f}, nu = {mp.nu_g:.6f}")
print(f"alpha = {mp.alpha:.12f}")
print(f"gamma = {mp.gamma:.12f}")

section("Multi-matrix coefficient growth")
print(" n   coefficient")
for n in range(2, 14):
    c = ol.yamazaki_coeff(BAND, n)
    marker = "  <- first >= 2" if c >= 2.0 and ol.yamazaki_coeff(BAND, n - 1) < 2.0 else ""
    print(f"{n:>2}   {c:.9f}{marker}")
print("n = 5 exactly:", ol.yamazaki_coeff(BAND, 5), "(= (9/8)**2)")
