"""How fast can a Heisenberg operator flow move away from itself?

Walks through the core objects on the smallest nontrivial example,
sigma_x evolving under H = sigma_z: the overlap distribution, the two
flow speeds, the linear and quadratic overlap floors, the crossover
between them, and the operator that saturates the maximal speed.
"""

import numpy as np

import flowlimits as fl

# --- the flow: O_t = U^dag sigma_x U with U = exp(-i sigma_z t) ---------------
spectrum = fl.eigh(fl.SIGMA_Z)
oe = fl.to_energy_basis(fl.SIGMA_X, spectrum)
dist = fl.overlap_distribution(oe)
print("gap distribution (delta, weight):", list(zip(dist.deltas, dist.weights)))

# the overlap is the characteristic function of that distribution: cos(2t) here
t = np.linspace(0.0, 1.2, 7)
print("Re<O_0|O_t>:", np.round(fl.char_function(dist, t).real, 6))
print("cos(2t)    :", np.round(np.cos(2 * t), 6))

# --- two speeds, two floors ----------------------------------------------------
v = fl.velocities_from_distribution(dist)
print(f"\nmean |gap| = {v.abs_liouvillian}, mean gap^2 = {v.second_moment}")
print(f"alpha (tangent-line slope) = {v.alpha:.12f}")

for ti in (0.05, 0.3, 0.8):
    re = fl.char_function(dist, ti).real
    print(
        f"t={ti:4.2f}: overlap {re:+.4f} >= "
        f"linear floor {fl.ml_overlap_floor(v, ti):+.4f}, "
        f"quadratic floor {fl.mt_overlap_floor(v, ti):+.4f}"
    )

tau_c = fl.crossover_time(v)
print(f"\ncrossover at tau_c = 2 alpha <|L|>/<L^2> = {tau_c:.6f}")
print("below tau_c the quadratic floor is tighter, above it the linear one")

# --- minimum times to reach a target overlap ----------------------------------
target = 0.0
print(f"\nminimum time to overlap {target}:")
print(f"  linear bound    : {fl.ml_min_time(v, target):.6f}")
print(f"  quadratic bound : {fl.mt_min_time(v, target):.6f}")
print(f"  weaker trig pair: {fl.trig_ml_min_time(v, target):.6f}, "
      f"{fl.trig_mt_min_time(v, target):.6f}")
print(f"  realized (first zero of cos 2t): {np.pi / 4:.6f}")

# --- the fastest operator on a given spectrum ----------------------------------
s3 = fl.eigh(np.diag([0.0, 1.0, 3.0]).astype(complex))
omax = fl.max_speed_operator(s3, 2 ** -0.5, 2 ** -0.5)
vmax = fl.velocities_from_distribution(fl.overlap_distribution(fl.to_energy_basis(omax, s3)))
print(f"\nextremal-pair operator on spectrum (0,1,3): speed {vmax.abs_liouvillian:.1f} "
      f"= full spectral width")
