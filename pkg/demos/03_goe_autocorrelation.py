"""The same decay bounds in a generic setting: random-matrix H and O at d=200.

Both the Hamiltonian and the initial operator are drawn from the Gaussian
orthogonal ensemble. The crossover between the quadratic and linear regime
survives at large dimension; the linear floor is just no longer tangent to
the curve the way it is for a qubit.
"""

import numpy as np

import flowlimits as fl

spec = fl.GoeSpec(dim=200, sigma=1.0, seed=1)
h, o = fl.sample_goe_pair(spec, seed2=2)
spectrum = fl.eigh(h)
print(f"spectral radius = {max(-spectrum.ground_energy, spectrum.max_energy):.2f} "
      f"(semicircle predicts sigma sqrt(8 d) = {np.sqrt(8 * 200):.1f})")

beta = 1.0
oe = fl.to_energy_basis(o, spectrum)
rho = fl.gibbs(spectrum, beta)
grid = np.linspace(0.0, 0.1, 2000)
curve = fl.autocorr_curve(oe, rho, grid).normalized_copy()

vel = fl.velocity_moment(oe, rho)
anchored = fl.anchored_sum(oe, rho, spectrum.ground_energy)
c0 = fl.autocorr_curve(oe, rho, np.array([0.0])).c0
tau_c = fl.autocorr_crossover(vel, anchored)
print(f"C(0) = {c0:.3f}, crossover tau_c = {tau_c:.5f}")

mt = fl.mt_autocorr_floor(1.0, vel / c0, grid)
ml = fl.ml_autocorr_floor(1.0, anchored / c0, grid)
ceiling = fl.im_autocorr_ceiling(anchored / c0, grid)
re, im = curve.values.real, curve.values.imag
print(f"min margin Re C vs floors: {np.min(re - np.maximum(mt, ml)):.3e}")
print(f"min margin ceiling vs |Im C|: {np.min(ceiling - np.abs(im)):.3e}")

decayed = grid[np.argmax(re < 0.5)]
print(f"normalized Re C falls below 1/2 near t = {decayed:.4f}")
print("floors at that time:", f"mt {np.interp(decayed, grid, mt):.3f},",
      f"ml {np.interp(decayed, grid, ml):.3f}")
