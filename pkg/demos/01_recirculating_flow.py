"""Recirculating no-slip flow: divergence repair with both backends.

A wall-bounded velocity field built from trigonometric-hyperbolic
characteristic functions is analytically solenoidal, but its sampled
divergence is not zero and peaks at the walls.  Extending it through a
zero-velocity margin, taking the vorticity and re-solving the kinematic
Poisson problem repairs this: to machine accuracy with the periodic
spectral solver, and by about two orders of magnitude with the homogeneous
Dirichlet PSOR solver (whose leftover divergence lives in the discarded
margin).
"""

import numpy as np

from divfree import SolveConfig, case_setup, construct_solenoidal

N = 128


def show(tag, res, method):
    print(f"\n{tag}")
    for stage in ("initial", "embedded", "solved", "extracted"):
        r = res.report(stage, method)
        where = "outer boundary" if r.on_outer_boundary else r.argmax_region
        print(f"  {stage:10s} max|div| = {r.linf:10.3e}   extremum at {r.argmax_index} ({where})")


print(f"flow square [-1,1]^2 embedded in [-1.25,1.25]^2, {N}^2 nodes")

setup = case_setup("cr", N, periodic=True)
res = construct_solenoidal(setup.u_star, setup.mask, setup.givens, SolveConfig("spectral"))
show("periodic boundary conditions (Fourier solve)", res, "spectral")
print(f"  -> solenoidal to {res.report('solved', 'spectral').linf:.1e}: machine accuracy")

setup = case_setup("cr", N, periodic=False)
res = construct_solenoidal(setup.u_star, setup.mask, setup.givens, SolveConfig("fd"))
show("homogeneous Dirichlet boundary conditions (PSOR solve)", res, "fd")
initial = res.report("initial", "fd").linf
extracted = res.report("extracted", "fd").linf
print(f"  -> reduction factor after discarding the margin: {extracted / initial:.2e}")

u = res.u
speed = np.sqrt(sum(c**2 for c in u.components))
print(f"\npeak speed of the repaired field: {speed.max():.4f} (unit-velocity normalization)")
