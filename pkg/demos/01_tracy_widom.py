"""
Tracy-Widom distributions from Painleve II
==========================================

Solve the Hastings-McLeod equation once, then read off F1, F2, F4.
"""
import numpy as np

from twlab.painleve import solve_hastings_mcleod, airy_ai
from twlab import twcore

# one solve on the default grid [-10, 8] feeds every distribution below
sol = solve_hastings_mcleod()
print("q(0) =", sol.eval("q", 0.0))
print("q(6) - Ai(6) =", sol.eval("q", 6.0) - airy_ai(6.0))

# the three classical laws at a few points
x = np.array([-4.0, -2.0, 0.0, 2.0])
for beta in (1, 2, 4):
    print(f"F{beta}:", np.round(twcore.cdf_tw(sol, beta, x), 6))

# F2 = F^2 and F1 = F E, where F and E come from integrals of q
f, e = twcore.f_factor(sol, x), twcore.e_factor(sol, x)
print("F2 - F^2:", np.max(np.abs(twcore.cdf_tw(sol, 2, x) - f * f)))

# mean and variance by quadrature of the CDF
for beta in (1, 2, 4):
    mean, var = twcore.moments(sol, beta)
    print(f"TW{beta}: mean {mean:.7f}, variance {var:.7f}")
