"""The spherical-CR constraint on Chern classes, tested modulo a Gysin image.

A spherical CR manifold of dimension ``2n+1`` satisfies

    c_k = binom(n+2, k) / (n+2)^k * c_1^k

in real cohomology for every k.  On the circle bundle of a negative
line bundle L over a base Y, classes pull back from Y and the kernel of
the pullback in each degree is the image of cup product with
e = c_1(L); the constraint on the total space is therefore equivalent
to the statement that each residual

    c_k(TY) - binom(n+2, k) / (n+2)^k * c_1(TY)^k

lies in ``Im(. cup e)``.  That quotient-level test is what
:func:`verify_spherical_on_circle_bundle` performs; the residual itself
is generally nonzero at base level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..cohomology.gysin import MembershipCertificate, image_membership
from ..cohomology.ring import RingElement, RingError, RingPresentation
from .bundles import BundleClass
from .report import CheckReport


@dataclass(frozen=True)
class CircleBundleSetup:
    """Circle bundle data: base ring, Euler class e = c_1(L), base tangent bundle.

    Classes on the total space are represented by base classes modulo
    ``Im(. cup e)``; equality and vanishing upstairs are membership
    questions downstairs.
    """

    base: RingPresentation
    euler: RingElement
    base_tangent: BundleClass

    def __post_init__(self) -> None:
        if self.euler.ring != self.base:
            raise RingError("Euler class does not live in the base ring")
        if not self.euler.is_zero() and self.euler.homogeneous_degree() != 2:
            raise RingError("Euler class must be homogeneous of degree 2")
        if self.base_tangent.ring != self.base:
            raise RingError("base tangent classes do not live in the base ring")


def pullback_nonzero(setup: CircleBundleSetup, beta: RingElement) -> bool:
    """True iff the pullback of ``beta`` to the total space is nonzero.

    By exactness this is the statement that ``beta`` is not in the
    image of cup product with the Euler class in its degree.
    """
    return not image_membership(setup.base, setup.euler, beta).member


def spherical_ratio(n: int, k: int) -> Fraction:
    """The constraint coefficient binom(n+2, k) / (n+2)^k."""
    return Fraction(comb(n + 2, k), (n + 2) ** k)


def spherical_residual(c: BundleClass, n: int, k: int) -> RingElement:
    """``c_k - binom(n+2,k)/(n+2)^k * c_1^k`` as an exact rational class.

    The coefficient is rational, so the bundle must live over Q.  For
    ``k = 1`` the coefficient is 1 and the residual vanishes for every
    bundle.
    """
    if c.ring.coefficients.kind != "Q":
        raise RingError("the spherical constraint is rational; use Q coefficients")
    if not 1 <= k <= n + 1:
        raise RingError(f"k must satisfy 1 <= k <= n+1, got k={k}, n={n}")
    return c.chern(k) - spherical_ratio(n, k) * c.c1() ** k


def verify_spherical_on_circle_bundle(
    setup: CircleBundleSetup, n: int
) -> CheckReport:
    """Check the spherical constraint for all k <= n+1 modulo the Gysin image.

    Every residual must be a member of ``Im(. cup e)`` in its degree.
    Note the top case ``k = n+1`` compares classes that may both die in
    the quotient, so a pass there can be vacuous.
    """
    assertions = []
    witnesses = []
    residuals = []
    for k in range(1, n + 2):
        res = spherical_residual(setup.base_tangent, n, k)
        cert: MembershipCertificate = image_membership(setup.base, setup.euler, res)
        assertions.append((f"residual k={k} in image", cert.member))
        residuals.append({"k": k, "residual": str(res)})
        witnesses.append(
            {
                "k": k,
                "ratio": str(spherical_ratio(n, k)),
                "membership": cert.to_json_dict(),
            }
        )
    return CheckReport.from_assertions(
        check="spherical-constraint-on-circle-bundle",
        params={"n": n, "euler": str(setup.euler)},
        assertions=assertions,
        witnesses=witnesses,
        residuals=residuals,
    )
