"""Thermal autocorrelation decay of a two-level system, bounded three ways.

Reproduces the reference two-level scenario (a=10, b=c=1, beta=10): the
exact closed forms, the quadratic and linear decay floors under Re C, the
linear ceiling over |Im C|, and the crossover time where the linear floor
takes over from the quadratic one.
"""

import numpy as np

import flowlimits as fl

params = fl.QubitParams(a=10.0, b=1.0, c=1.0, beta=10.0)
spectrum = fl.eigh(fl.qubit_hamiltonian(params))
oe = fl.to_energy_basis(fl.SIGMA_X, spectrum)
rho = fl.gibbs(spectrum, params.beta)

grid = np.linspace(0.0, 1.0, 2000)
curve = fl.autocorr_curve(oe, rho, grid)
vel = fl.velocity_moment(oe, rho)
anchored = fl.anchored_sum(oe, rho, spectrum.ground_energy)
tau_c = fl.autocorr_crossover(vel, anchored)

print(f"C(0) = {curve.c0:.6f}  (sigma_x squares to the identity, so exactly 1)")
print(f"velocity^2 <Odot^2> = {vel}  -> quadratic floor 1 - {vel / 2} t^2")
print(f"anchored sum <O{{H-E0,O}}> = {anchored:.6f} -> linear floor slope "
      f"{fl.alpha_constant() * anchored:.6f}")
print(f"crossover tau_c = {tau_c:.6f}")

# closed forms double as an oracle for the dense pipeline
ref = fl.qubit_reference(params, grid)
print(f"max |Re pipeline - closed form| = {np.abs(curve.values.real - ref.re).max():.2e}")
print(f"max |Im pipeline - closed form| = {np.abs(curve.values.imag - ref.im).max():.2e}")

mt = fl.mt_autocorr_floor(curve.c0, vel, grid)
ml = fl.ml_autocorr_floor(curve.c0, anchored, grid)
ceiling = fl.im_autocorr_ceiling(anchored, grid)
print(f"min margin Re C vs max(floors): "
      f"{np.min(curve.values.real - np.maximum(mt, ml)):.3e}")
print(f"min margin ceiling vs |Im C|  : "
      f"{np.min(ceiling - np.abs(curve.values.imag)):.3e}")

# near t=0 the quadratic floor hugs the curve; after tau_c the linear one does
for ti in (0.02, tau_c, 0.3):
    i = np.searchsorted(grid, ti)
    print(f"t={grid[i]:.4f}: Re C = {curve.values.real[i]:+.5f}, "
          f"mt floor {mt[i]:+.5f}, ml floor {ml[i]:+.5f}")
