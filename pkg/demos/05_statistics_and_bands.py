"""Identical particles, occupation statistics and Kronig-Penney bands."""

from qmkit.bands import KPParams, bloch_k, kp_bands
from qmkit.manybody import OccupationModel, antisymmetrize, fill_shells, format_configuration, occupation

print("antisymmetrized (a, b, c):", antisymmetrize(("a", "b", "c")))
print("antisymmetrized (a, a):   zero state =", antisymmetrize(("a", "a")).is_zero)
print("carbon:", format_configuration(fill_shells(6)))

print("\n(E - mu)/kT    FD        MB        BE")
for x in (0.5, 1.0, 2.0, 5.0):
    n = {s: occupation(x, OccupationModel(s, T=1.0, mu=0.0, k_B=1.0)) for s in ("fd", "mb", "be")}
    print(f"{x:8.1f}    {n['fd']:.5f}   {n['mb']:.5f}   {n['be']:.5f}")

p = KPParams(a=1.0, b=0.3, V=10.0)
bs = kp_bands(p, 60.0)
print("\nKronig-Penney bands below E = 60:")
for lo, hi in bs.bands:
    mid = 0.5 * (lo + hi)
    print(f"  [{lo:8.4f}, {hi:8.4f}]   K(mid) c / pi = {bloch_k(mid, p) * p.c / 3.141592653589793:.4f}")
print("gaps:", [(round(lo, 4), round(hi, 4)) for lo, hi in bs.band_gaps])
