"""Regenerates references.hpp from mpmath at 40 digits.

    python3 tests/oracles/generate_references.py > tests/oracles/references.hpp
"""
from mpmath import mp, mpf, mpc, pi, sqrt, log, exp, euler, catalan, zeta, psi, gamma, loggamma, primezeta, nsum, inf
from sympy import mobius as moebius

mp.dps = 40


def splitmix64(x):
    m = (1 << 64) - 1
    z = (x + 0x9E3779B97F4A7C15) & m
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & m
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & m
    return z ^ (z >> 31)


def synthetic_root(seed, j, p):
    key = splitmix64(splitmix64(splitmix64(seed) ^ j) ^ p)
    u = mpf(key >> 11) / mpf(2) ** 53
    return exp(2j * pi * u)


def dirichlet_l(s, values):
    q = len(values)
    return sum(values[a] * zeta(s, mpf(a) / q) for a in range(1, q) if values[a] != 0) / mpf(q) ** s


def l_at_1(values):
    q = len(values)
    return -sum(values[a] * psi(0, mpf(a) / q) for a in range(1, q) if values[a] != 0) / q


def prime_sum_chi(s, values):
    """sum_p chi(p) p^-s for real s > 1 via log L(ks, chi^k)."""
    total = mpf(0)
    for k in range(1, 200):
        mu = int(moebius(k))
        if mu == 0:
            continue
        vk = [v ** k if v != 0 else 0 for v in values]
        term = mu * log(dirichlet_l(k * s, vk)) / k
        total += term
        if abs(term) < mpf(10) ** -35:
            break
    return total


def c_alpha_chi(alpha, values):
    total = mpf(0)
    for l in range(2, 400):
        vl = [v ** l if v != 0 else 0 for v in values]
        t = prime_sum_chi(l * alpha, vl) / l
        total += t
        if abs(t) < mpf(10) ** -30:
            break
    return total


def cpp(name, x):
    if isinstance(x, mpc):
        return f"inline const std::complex<double> {name}{{{mp.nstr(x.real, 20)}, {mp.nstr(x.imag, 20)}}};"
    return f"inline constexpr double {name} = {mp.nstr(x, 20)};"


out = []
out.append("#pragma once")
out.append("// Generated by generate_references.py (mpmath, 40 digits). Do not edit by hand.")
out.append("#include <complex>")
out.append("#include <cstdint>")
out.append("")
out.append("namespace ref {")
out.append(cpp("kEulerGamma", +euler))
M = euler + sum(int(moebius(k)) * log(zeta(k)) / k for k in range(2, 160))
out.append(cpp("kMertens", M))
out.append(cpp("kCatalan", +catalan))
out.append(cpp("kZeta3", zeta(3)))
out.append(cpp("kPsiQuarter", psi(0, mpf(1) / 4)))
out.append(cpp("kPsiHalf", psi(0, mpf(1) / 2)))
out.append(cpp("kPsiTenth", psi(0, mpf(1) / 10)))
out.append(cpp("kPsiThird", psi(0, mpf(1) / 3)))
out.append(cpp("kHurwitz15_03", zeta(1.5, mpf(3) / 10)))
out.append(cpp("kHurwitz07_05", zeta(0.7, mpf(1) / 2)))
out.append(cpp("kHurwitz35_09", zeta(3.5, mpf(9) / 10)))

chi3 = [0, 1, -1]
out.append(cpp("kL09Chi3", dirichlet_l(mpf(9) / 10, chi3)))
# cubic character mod 7 with chi(3) = e^{2 pi i/3}; 3 generates (Z/7)^*
w = exp(2j * pi / 3)
cub = [0] * 7
x = 1
for k in range(6):
    cub[x] = w ** k
    x = x * 3 % 7
out.append(cpp("kL1Cubic7", l_at_1(cub)))
out.append(cpp("kL2Cubic7", dirichlet_l(2, cub)))

chi4 = [0, 1, 0, -1]
out.append(cpp("kC1Chi4", c_alpha_chi(1, chi4)))
out.append(cpp("kC12Chi4", c_alpha_chi(mpf(12) / 10, chi4)))
out.append(cpp("kC09Chi4", c_alpha_chi(mpf(9) / 10, chi4)))
c0 = nsum(lambda l: primezeta(l) / l, [2, inf])
out.append(cpp("kC1Zeta", c0))
out.append(cpp("kC09Zeta", nsum(lambda l: primezeta(l * mpf(9) / 10) / l, [2, inf])))
out.append(cpp("kC1Cubic7", c_alpha_chi(1, cub)))

for label, z in [("Gamma1p5i", mpc(1, 5)), ("GammaHalf10i", mpc(0.5, 10)), ("GammaNeg25p3i", mpc(-2.5, 3)),
                 ("GammaNeg45p02i", mpc(-4.5, 0.2)), ("Gamma2p50i", mpc(2, 50))]:
    out.append(cpp("k" + label, gamma(z)))
out.append(cpp("kLogGamma37m150i", loggamma(mpc(3.7, -150))))
out.append(cpp("kLogGamma125p200i", loggamma(mpc(1.25, 200))))

out.append("inline constexpr std::uint64_t kSplitmix[] = {" + ", ".join(
    f"{splitmix64(v)}ull" for v in (0, 1, 12345, 2**64 - 1)) + "};")
out.append("inline constexpr std::uint64_t kSplitmixInputs[] = {0ull, 1ull, 12345ull, 18446744073709551615ull};")
# seed 7, m = 2, roots at p = 2, 3, 1000003
for j in (1, 2):
    for p in (2, 3, 1000003):
        out.append(cpp(f"kSynth7_j{j}_p{p}", synthetic_root(7, j, p)))
out.append("}  // namespace ref")
print("\n".join(out))
