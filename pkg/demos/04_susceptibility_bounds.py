"""Bounding a dynamical susceptibility without solving the dynamics.

For the driven two-level system, compares the exact chi_xx(t) against the
three ceilings: the constant uncertainty-relation bound, the
temperature-dependent Bogoliubov bound, and the time-linear speed-limit
bound, together with the times where one takes over from another. Ends
with the Kubo response to a step drive and the magnetization bound tensor.
"""

import math

import numpy as np

import flowlimits as fl

h0 = fl.SIGMA_Z
v = a = fl.SIGMA_X
beta = 10.0
grid = np.linspace(0.0, 3.0, 1500)

chi = fl.susceptibility_curve(a, v, h0, beta, grid)
print(f"|chi| peaks at {np.abs(chi.values).max():.6f} (exact: 2 tanh beta = "
      f"{2 * math.tanh(beta):.6f})")

heis = fl.heisenberg_ceiling(a, v, h0, beta)
bog = fl.bogoliubov_ceiling(a, v, h0, beta)           # derived variant
bog_printed = fl.bogoliubov_ceiling(a, v, h0, beta, variant="as_printed")
qsl_slope = fl.qsl_ceiling(v, h0, beta, 1.0)
print(f"ceilings: uncertainty {heis:.3f}, Bogoliubov {bog:.3f}, "
      f"speed-limit {qsl_slope:.1f} t")
print(f"(the inverted-ratio Bogoliubov variant would give {bog_printed:.3f}, "
      f"which |chi| exceeds: kept only for comparison)")

taus = fl.crossover_times(v, a, h0, beta)
print(f"tau_QSL = {fl.tau_qsl(v, h0, beta):.4f}; the linear ceiling meets the "
      f"uncertainty one at tau_H = {taus.tau_h:.4f} "
      f"and the (derived) Bogoliubov one at {taus.tau_b_derived:.4f}")

margin = np.min(np.minimum(heis, fl.qsl_ceiling(v, h0, beta, grid)) - np.abs(chi.values))
print(f"min margin of the valid ceilings over |chi|: {margin:.3e}")

# linear response to a unit step drive, lambda = 0.1
lam = 0.1
response = fl.kubo_response(chi, np.ones_like(grid), lam)
print(f"\nstep response approaches {response[-400:].mean():.4f} "
      f"(static tilt -lambda tanh beta = {-lam * math.tanh(beta):.4f}, plus oscillation)")

# magnetization-style tensor: all three spin components at once
ops = [fl.SIGMA_X / 2, fl.SIGMA_Y / 2, fl.SIGMA_Z / 2]
tensor = fl.bound_tensor(ops, ops, -1.3 * fl.SIGMA_Z, 2.0)
print("\nspin-1/2 bound tensor (uncertainty ceiling):")
print(np.round(tensor.heisenberg, 4))
print("time-linear slopes on the diagonal:", np.round(tensor.qsl_slopes, 4))
