"""
Stationary and spiked laws from the Lax pair
============================================

a(x; w), b(x; w) solve a linear system driven by q.  They build F_st and
the spiked family F_k^spiked.
"""
import numpy as np

from twlab.painleve import solve_hastings_mcleod
from twlab import laxdist, twcore

# a wider grid keeps the upper tail of F_st(.; w, -w) for |w| <= 1
sol = solve_hastings_mcleod(laxdist.fst_grid(1.0, -1.0))
x = np.linspace(-4, 4, 9)

# at w = 0 the pair collapses to a = E^2, so F2 a = F1^2
a0 = laxdist.solve_ab(sol, 0.0).eval("a", x)
print("F2 a(.;0) - F1^2:", np.max(np.abs(twcore.cdf_tw(sol, 2, x) * a0 - twcore.cdf_tw(sol, 1, x) ** 2)))

# F_st near w+ + w- = 0 goes through the antisymmetric formula
print("F_st(x; 0.4, -0.4):", np.round(laxdist.cdf_fst(sol, x, 0.4, -0.4), 6))
for w in (0.25, 0.5, 1.0):
    mean, var = laxdist.fst_moments(sol, w, -w, shifted=True)
    print(f"shifted F_st, w = {w}: mean {mean:.1e}, variance {var:.5f}")

# sending w- up recovers the one-parameter spiked law
spiked = laxdist.cdf_spiked(sol, x, [0.3])
for wm in (2.0, 4.0, 6.0):
    print(f"w- = {wm}: max gap to F_1^spiked", np.max(np.abs(laxdist.cdf_fst(sol, x, 0.3, wm) - spiked)))

# coinciding parameters need the closed forms; nearby ones extrapolate to them
eps = 5e-3
rich = (4 * laxdist.cdf_spiked(sol, x, (eps, -eps)) - laxdist.cdf_spiked(sol, x, (2 * eps, -2 * eps))) / 3
print("k = 2 Richardson vs closed form:", np.max(np.abs(rich - laxdist.cdf_spiked_closed(sol, 2, x))))
