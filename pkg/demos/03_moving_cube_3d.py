"""Moving cube in a periodic 3D box.

In three dimensions all vorticity components are active and the kinematic
relation becomes three uncoupled Poisson problems.  The spectral route
solves them all per wavenumber; the recovered velocity spectrum is
perpendicular to the wavenumber vector, so the field is divergence-free to
rounding accuracy.
"""

import time

import numpy as np

from divfree import SolveConfig, case_setup, construct_solenoidal

N = 64  # the full-scale run uses 128

setup = case_setup("cube", N, periodic=True)
t0 = time.monotonic()
res = construct_solenoidal(setup.u_star, setup.mask, setup.givens, SolveConfig("spectral"))
elapsed = time.monotonic() - t0

solved = res.report("solved", "spectral")
print(f"cube of half-width 10*pi/128 moving with u_s = (1,0,0), {N}^3 nodes")
print(f"solve time: {elapsed:.2f} s (three uncoupled per-mode inversions)")
print(f"max|div u| (spectral) = {solved.linf:.3e}")
print(f"max|u|               = {solved.field_max:.3f}")

u1 = res.u_extended.components[0]
mid = N // 2
line = u1[:, mid, mid]
print("\ninduced streamwise velocity along the line through the cube center:")
peaks = np.argsort(np.abs(line))[-3:]
for i in sorted(peaks):
    print(f"  x1 = {setup.grid.axis_coords(0)[i]:6.3f}   u1 = {line[i]: .4f}")
print("the cube's motion is induced across the whole periodic box")
