"""Independent arbitrary-precision oracles for the frozen test values.

Run with `python3 tests/oracles/compute_oracles.py`. Nothing here shares code
with the C++ implementation; the printed numbers are pasted into the unit and
acceptance tests.
"""
import mpmath as mp

mp.mp.dps = 50

R, L, C = mp.mpf(50), mp.mpf("1e-6"), mp.mpf("1e-12")
a1 = 1 / (L * C)
a2 = R / L


def reactances(f):
    xl = 2 * mp.pi * f * L
    xc = 1 / (2 * mp.pi * f * C)
    return xl, xc, mp.sqrt((xl - xc) ** 2 + R**2)


print("reactances(1e9):", [mp.nstr(v, 17) for v in reactances(mp.mpf("1e9"))])
print("a1, a2:", mp.nstr(a1, 17), mp.nstr(a2, 17))

# Generic polynomial root finder on s^2 + a2 s + a1.
roots = mp.polyroots([1, a2, a1], maxsteps=200, extraprec=200)
print("poles:", [mp.nstr(r, 17) for r in roots])

s = 1j * 2 * mp.pi * mp.mpf("1e8")
expanded = a1 / (s**2 + a2 * s + a1)
s1, s2 = roots
factored = (a1 / (s1 * s2)) / ((1 - s / s1) * (1 - s / s2))
print("G(j2pi1e8) expanded:", mp.nstr(expanded, 17))
print("G(j2pi1e8) factored:", mp.nstr(factored, 17))

# Closed-form underdamped step response.
alpha = a2 / 2
wd = mp.sqrt(a1 - alpha**2)
t = mp.mpf("5e-9")
y = 1 - mp.exp(-alpha * t) * (mp.cos(wd * t) + alpha / wd * mp.sin(wd * t))
print("step(5ns):", mp.nstr(y, 17))

# Loop with default gains.
kpd = mp.mpf(1)
kvco = 2 * mp.pi * mp.mpf("2.5e8")
N = 100


def G(sv):
    return a1 / (sv**2 + a2 * sv + a1)


def Lg(sv):
    return kpd * G(sv) * kvco / sv / N


def absL(f):
    return abs(Lg(1j * 2 * mp.pi * f))


fc = mp.findroot(lambda f: absL(f) - 1, mp.mpf("2.5e6"))
print("crossover Hz:", mp.nstr(fc, 17))


def Hin(sv):
    return kpd * G(sv) * kvco / sv / (1 + Lg(sv))


def Hvco(sv):
    return 1 / (1 + Lg(sv))


for mult in ["0.1", "1", "10", "100"]:
    f = fc * mp.mpf(mult)
    sv = 1j * 2 * mp.pi * f
    print(f"|Hin| at {mult}x fc:", mp.nstr(abs(Hin(sv)), 17), " |Hvco|:", mp.nstr(abs(Hvco(sv)), 17))
f = fc / 100
print("|Hvco| at fc/100:", mp.nstr(abs(Hvco(1j * 2 * mp.pi * f)), 17))

# Dense grid peaking of |Hin|/N.
best = (0, 0)
for k in range(0, 4001):
    f = mp.mpf(10) ** (mp.mpf(2) + mp.mpf(8) * k / 4000)
    m = abs(Hin(1j * 2 * mp.pi * f)) / N
    if m > best[0]:
        best = (m, f)
print("Hin peaking:", mp.nstr(20 * mp.log10(best[0]), 10), "dB at", mp.nstr(best[1], 10), "Hz")

K = kpd * kvco / N
cl = mp.polyroots([1, a2, a1, K * a1], maxsteps=400, extraprec=400)
print("closed-loop poles:", [mp.nstr(r, 12) for r in cl])

dw = 2 * mp.pi * mp.mpf("1e6")
print("static phase err (1 MHz offset):", mp.nstr(dw / (kpd * kvco), 17))
