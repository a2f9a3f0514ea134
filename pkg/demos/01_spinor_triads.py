"""
Spinors and orthonormal triads
==============================

A two-component complex spinor carries an oriented orthonormal triad through
quadratic expressions in its components.  This script walks through the map,
its inverse, and the mate operation.
"""

import numpy as np

from liefrenet.spinor_algebra import mate, norm, sigma_bilinear, spinor_to_triad, triad_to_spinor

# The coordinate spinor (1, 0) gives the standard basis.
print(spinor_to_triad([1, 0]))

# A random spinor gives three orthogonal vectors of common length norm(phi).
rng = np.random.default_rng(0)
phi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
a, b, c = spinor_to_triad(phi)
print("norm(phi)       =", norm(phi))
print("|a|, |b|, |c|   =", np.linalg.norm([a, b, c], axis=1))
print("a.b, b.c, c.a   =", a @ b, b @ c, c @ a)
print("det(a, b, c)    =", np.linalg.det([a, b, c]), "(= norm^3, positive)")

# a + ib is the symmetric bilinear phi^t sigma phi; it is isotropic.
w = sigma_bilinear(phi, phi)
print("(a+ib).(a+ib)   =", w @ w)

# The mate squares to minus the identity, so phi and -phi share a triad.
print("mate(mate(phi)) + phi =", mate(mate(phi)) + phi)
print("same triad for -phi:", np.array_equal(spinor_to_triad(-phi), spinor_to_triad(phi)))

# Going back: a unit triad determines its spinor up to sign.
unit = phi / np.sqrt(norm(phi))
rec, minus = triad_to_spinor(spinor_to_triad(unit))
print("recovered phi   =", rec, " original:", unit)
