"""Cup-product matrices, image membership, and cokernels.

For a circle bundle with Euler class ``e`` the degree-``k`` kernel of
the pullback to the total space equals the image of cup product with
``e`` from degree ``k-2``.  Everything a verification needs about
classes on the total space therefore reduces to exact linear algebra
against that image, carried out here over Z, Q, or Z/m.

Sign convention: the multiplication map is taken literally as
``x -> e * x`` with ``e`` exactly as supplied (no sign is inserted).
Membership and cokernel answers are invariant under replacing ``e`` by
``-e``; certificates record the convention under ``euler_sign``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .ring import (
    ExponentVector,
    RingElement,
    RingError,
    RingPresentation,
)
from .snf import IntegerMatrix, invariant_factors, smith_normal_form

EULER_SIGN_CONVENTION = "cup-with-e-as-given"


@dataclass(frozen=True)
class CupMatrix:
    """Multiplication by a degree-2 class between two degree bases.

    ``matrix`` holds integer entries equal to ``denominator_scale``
    times the exact entries; the scale is 1 unless the class had
    rational coefficients.  Row ``i``/column ``j`` index the enumerated
    bases of degree ``k`` and ``k-2``.
    """

    matrix: IntegerMatrix
    degree: int
    basis_rows: tuple[ExponentVector, ...]
    basis_cols: tuple[ExponentVector, ...]
    denominator_scale: int = 1


def cup_matrix(ring: RingPresentation, e: RingElement, k: int) -> CupMatrix:
    """Matrix of ``x -> e * x`` from ``degree_basis(k-2)`` to ``degree_basis(k)``."""
    if e.ring != ring:
        raise RingError("class does not belong to the given ring")
    if not e.is_zero() and e.homogeneous_degree() != 2:
        raise RingError(f"cup class must be homogeneous of degree 2, got {e}")
    rows = tuple(ring.degree_basis(k))
    cols = tuple(ring.degree_basis(k - 2))
    row_index = {m: i for i, m in enumerate(rows)}

    columns: list[dict[int, Fraction | int]] = []
    denominators = [1]
    for mono in cols:
        image = e * ring.element({mono: 1})
        col: dict[int, Fraction | int] = {}
        for exps, coeff in image.terms.items():
            col[row_index[exps]] = coeff
            if isinstance(coeff, Fraction):
                denominators.append(coeff.denominator)
        columns.append(col)
    scale = lcm(*denominators)

    entries = [[0] * len(cols) for _ in range(len(rows))]
    for j, col in enumerate(columns):
        for i, coeff in col.items():
            scaled = coeff * scale
            entries[i][j] = int(scaled)
    matrix = (
        IntegerMatrix.from_rows(entries)
        if entries
        else IntegerMatrix.zero(0, len(cols))
    )
    return CupMatrix(matrix, k, rows, cols, scale)


@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of an image-membership query, with a checkable witness.

    When ``member`` is true, ``preimage`` satisfies ``e * preimage = target``
    exactly.  Otherwise ``residue`` holds the obstruction read off the
    Smith decomposition of the (denominator-cleared) cup matrix: the
    coordinates of ``U * target`` that fail divisibility by the
    invariant factors or are nonzero beyond the rank.
    """

    member: bool
    degree: int
    preimage: RingElement | None = None
    residue: tuple = ()
    invariant_factors: tuple[int, ...] = ()
    denominator_scale: int = 1
    euler_sign: str = EULER_SIGN_CONVENTION

    def to_json_dict(self) -> dict:
        return {
            "member": self.member,
            "degree": self.degree,
            "preimage": None if self.preimage is None else str(self.preimage),
            "residue": [str(x) for x in self.residue],
            "invariant_factors": list(self.invariant_factors),
            "denominator_scale": self.denominator_scale,
            "euler_sign": self.euler_sign,
        }


def _element_vector(
    ring: RingPresentation, beta: RingElement, basis: tuple[ExponentVector, ...]
) -> list:
    vec = [beta.coefficient(m) for m in basis]
    accounted = sum(1 for m in basis if m in beta.terms)
    if accounted != len(beta.terms):
        raise RingError("element has support outside the expected degree basis")
    return vec


def image_membership(
    ring: RingPresentation, e: RingElement, beta: RingElement
) -> MembershipCertificate:
    """Decide whether ``beta`` lies in the image of cup product with ``e``.

    Over Q this is an exact rational solve; over Z the solve respects
    invariant factors; over Z/m the integer solve is applied to the cup
    matrix augmented with ``m`` times the identity.
    """
    if beta.ring != ring:
        raise RingError("element does not belong to the given ring")
    if not beta.is_homogeneous():
        raise RingError(f"membership target must be homogeneous: {beta}")
    if beta.is_zero():
        return MembershipCertificate(True, 0, preimage=ring.zero())
    k = beta.homogeneous_degree()
    assert k is not None

    cup = cup_matrix(ring, e, k)
    b = _element_vector(ring, beta, cup.basis_rows)

    domain = ring.coefficients
    if domain.kind == "mod":
        return _membership_mod(ring, cup, b, k)

    # Clear target denominators; over Q membership is scale-invariant.
    if domain.kind == "Q":
        b_scale = lcm(*[Fraction(x).denominator for x in b], 1)
    else:
        b_scale = 1
    b_int = [int(x * b_scale) for x in b]

    U, D, V = smith_normal_form(cup.matrix)
    y = U.matvec(b_int)
    diag = D.diagonal()

    residue = []
    solvable = True
    z: list[Fraction] = []
    for i in range(len(y)):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                solvable = False
                residue.append((i, y[i], 0))
        else:
            if domain.kind == "Z" and y[i] % d != 0:
                solvable = False
                residue.append((i, y[i], d))
    if solvable:
        for i in range(D.cols):
            d = diag[i] if i < len(diag) else 0
            if d != 0 and i < len(y):
                z.append(Fraction(y[i], d))
            else:
                z.append(Fraction(0))
        x = [
            sum(V.entries[i][j] * z[j] for j in range(D.cols))
            for i in range(V.rows)
        ]
        # Undo the two clearings: A_int = scale * A, b_int = b_scale * b.
        factor = Fraction(cup.denominator_scale, b_scale)
        coeffs = [xi * factor for xi in x]
        if domain.kind == "Z":
            coeffs = [c.numerator if c.denominator == 1 else c for c in coeffs]
        preimage = ring.element(
            {mono: c for mono, c in zip(cup.basis_cols, coeffs) if c != 0}
        )
        return MembershipCertificate(
            True,
            k,
            preimage=preimage,
            invariant_factors=invariant_factors(D),
            denominator_scale=cup.denominator_scale,
        )
    return MembershipCertificate(
        False,
        k,
        residue=tuple(residue),
        invariant_factors=invariant_factors(D),
        denominator_scale=cup.denominator_scale,
    )


def _membership_mod(
    ring: RingPresentation, cup: CupMatrix, b: list, k: int
) -> MembershipCertificate:
    m = ring.coefficients.modulus
    assert m is not None
    rows = cup.matrix.rows
    cols = cup.matrix.cols
    aug = [
        list(cup.matrix.entries[i]) + [m if j == i else 0 for j in range(rows)]
        for i in range(rows)
    ]
    A = IntegerMatrix.from_rows(aug) if aug else IntegerMatrix.zero(0, cols + rows)
    U, D, V = smith_normal_form(A)
    y = U.matvec([int(x) for x in b])
    diag = D.diagonal()
    residue = []
    solvable = True
    z = []
    for i in range(len(y)):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                solvable = False
                residue.append((i, y[i], 0))
            z.append(0)
        elif y[i] % d != 0:
            solvable = False
            residue.append((i, y[i], d))
        else:
            z.append(y[i] // d)
    if not solvable:
        return MembershipCertificate(
            False, k, residue=tuple(residue), invariant_factors=invariant_factors(D)
        )
    z += [0] * (D.cols - len(z))
    x = [
        sum(V.entries[i][j] * z[j] for j in range(D.cols)) for i in range(V.rows)
    ]
    preimage = ring.element(
        {mono: x[j] % m for j, mono in enumerate(cup.basis_cols) if x[j] % m}
    )
    return MembershipCertificate(
        True, k, preimage=preimage, invariant_factors=invariant_factors(D)
    )


@dataclass(frozen=True)
class CokernelData:
    """Cokernel of cup product with an integral class in a fixed degree.

    The group is ``Z^free_rank (+) sum_i Z/d_i`` over the listed
    invariant factors (units included, so the tuple length equals the
    rank of the cup matrix).  ``generator_classes`` maps each degree-k
    basis monomial to its coordinates: one residue per invariant factor
    followed by ``free_rank`` integers.
    """

    invariant_factors: tuple[int, ...]
    free_rank: int
    basis: tuple[ExponentVector, ...]
    generator_classes: tuple[tuple[int, ...], ...]
    row_transform: IntegerMatrix = field(repr=False)
    euler_sign: str = EULER_SIGN_CONVENTION

    def order(self) -> int | None:
        """Group order, or ``None`` when the cokernel is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def class_of_vector(self, vec: list[int]) -> tuple[int, ...]:
        y = self.row_transform.matvec([int(v) for v in vec])
        torsion = [y[i] % d for i, d in enumerate(self.invariant_factors)]
        free = list(y[len(self.invariant_factors):])
        return tuple(torsion + free)

    def class_of_element(self, beta: RingElement) -> tuple[int, ...]:
        vec = [int(beta.coefficient(m)) for m in self.basis]
        return self.class_of_vector(vec)

    def to_json_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "basis": [list(m) for m in self.basis],
            "generator_classes": [list(c) for c in self.generator_classes],
            "euler_sign": self.euler_sign,
        }


def cokernel(ring: RingPresentation, e: RingElement, k: int) -> CokernelData:
    """Invariant factors and basis classes of ``H^k / Im(. cup e)`` over Z."""
    if ring.coefficients.kind != "Z":
        raise RingError("cokernel computation requires integer coefficients")
    cup = cup_matrix(ring, e, k)
    U, D, _V = smith_normal_form(cup.matrix)
    facs = invariant_factors(D)
    free_rank = cup.matrix.rows - len(facs)

    def class_of(vec: list[int]) -> tuple[int, ...]:
        y = U.matvec(vec)
        torsion = [y[i] % d for i, d in enumerate(facs)]
        return tuple(torsion + list(y[len(facs):]))

    classes = tuple(
        class_of([1 if i == j else 0 for i in range(cup.matrix.rows)])
        for j in range(cup.matrix.rows)
    )
    return CokernelData(
        invariant_factors=facs,
        free_rank=free_rank,
        basis=cup.basis_rows,
        generator_classes=classes,
        row_transform=U,
    )
