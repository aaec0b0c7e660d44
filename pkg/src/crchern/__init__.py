"""crchern: exact verification of Chern-class constraints on circle bundles.

The package has three layers:

* :mod:`crchern.cohomology` -- graded-commutative ring arithmetic with
  exact coefficients, Smith normal form, and image/cokernel queries for
  cup product with an Euler class.
* :mod:`crchern.chern` -- Chern-class calculus on top of the ring
  engine: Whitney products, the spherical-CR constraint on Chern
  classes, the named verification checks, and the tractor-curvature
  determinant identity.
* :mod:`crchern.kahler` -- numerical evaluation of Tanaka-Webster /
  Kaehler curvature tensors on products of constant-holomorphic-
  sectional-curvature factors, including Bochner-flatness and the
  divergence identity for the Chern tensor.

The ``crchern`` command line wires the named checks into reproducible
manifests; see the README for usage.
"""

__version__ = "0.1.0"
