"""Pointwise curvature tensors on a Kaehler product patch.

Conventions
-----------
Indices are raised and lowered with the Levi form ``l`` (here: the
Kaehler metric ``g``, which is what the contact form's Levi form pulls
back from on the associated circle bundle).  The curvature is

    R_{a b- c d-} = - d_c d_d- g_{a b-}
                    + g^{r s-} (d_c g_{a s-}) (d_d- g_{r b-}),

with first and second metric derivatives taken by central finite
differences of the closed-form metric (default step ``1e-4``); the
convention is validated by the space-form calibration, under which
positive curvature is the Fubini-Study side.  Contractions:

    Ric_{c d-} = l^{a b-} R_{a b- c d-},     Scal = l^{c d-} Ric_{c d-},
    P = (Ric - Scal/(2(n+1)) l) / (n+2),
    S = R - P l - P l - P l - P l            (four index pairings),
    T_a = grad_a (trace P) / (n+2),
    V_{a b- c} = i grad_c P_{a b-} - i T_c l_{a b-} - 2 i T_a l_{c b-}.

Torsion terms are absent throughout: a circle bundle of a negative line
bundle over a Kaehler base has identically vanishing pseudo-Hermitian
torsion, and its connection coefficients and curvature form pull back
from the base, so every tensor computed here *is* the corresponding
circle-bundle tensor (see :class:`crchern.kahler.scenario.SasakiCorrespondence`).

Third-derivative quantities (``grad P``, ``grad S``) use a larger step
(default ``1e-3``) and correspondingly looser tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .patch import KahlerProductPatch, PatchDomainError, metric_at

METRIC_STEP = 1e-4
THIRD_ORDER_STEP = 1e-3
CONDITION_LIMIT = 1e8


class IllConditionedMetric(RuntimeError):
    pass


def _metric_real(patch: KahlerProductPatch, x: np.ndarray) -> np.ndarray:
    n = patch.total_dim
    return metric_at(patch, x[:n] + 1j * x[n:])


def _real_coords(z: np.ndarray) -> np.ndarray:
    return np.concatenate([np.real(z), np.imag(z)])


def metric_derivatives(
    patch: KahlerProductPatch, z: np.ndarray, step: float = METRIC_STEP
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(g, D1, D2): metric plus first/second real-coordinate derivatives.

    ``D1[a]`` and ``D2[a, b]`` are the central-difference derivatives of
    the full metric matrix with respect to real coordinates; the layout
    is ``x_1..x_n, y_1..y_n``.
    """
    z = np.asarray(z, dtype=complex)
    n = patch.total_dim
    m = 2 * n
    x0 = _real_coords(z)
    g0 = _metric_real(patch, x0)

    plus = []
    minus = []
    for a in range(m):
        e = np.zeros(m)
        e[a] = step
        plus.append(_metric_real(patch, x0 + e))
        minus.append(_metric_real(patch, x0 - e))

    D1 = np.stack([(plus[a] - minus[a]) / (2 * step) for a in range(m)])

    D2 = np.zeros((m, m, n, n), dtype=complex)
    for a in range(m):
        D2[a, a] = (plus[a] - 2 * g0 + minus[a]) / step**2
    for a in range(m):
        ea = np.zeros(m)
        ea[a] = step
        for b in range(a + 1, m):
            eb = np.zeros(m)
            eb[b] = step
            val = (
                _metric_real(patch, x0 + ea + eb)
                - _metric_real(patch, x0 + ea - eb)
                - _metric_real(patch, x0 - ea + eb)
                + _metric_real(patch, x0 - ea - eb)
            ) / (4 * step**2)
            D2[a, b] = val
            D2[b, a] = val
    return g0, D1, D2


def _holomorphic_split(D1: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    hol = 0.5 * (D1[:n] - 1j * D1[n:])
    anti = 0.5 * (D1[:n] + 1j * D1[n:])
    return hol, anti


def levi_inverse(g: np.ndarray) -> np.ndarray:
    """``l^{a b-}`` with the pairing ``l^{a b-} l_{c b-} = delta^a_c``."""
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise IllConditionedMetric(f"metric condition number {cond:.3e}")
    return np.linalg.inv(g).T


def curvature_at(
    patch: KahlerProductPatch, z: np.ndarray, step: float = METRIC_STEP
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Curvature ``R[a,b,c,d]`` plus its Ricci and scalar contractions."""
    g, D1, D2 = metric_derivatives(patch, z, step)
    n = patch.total_dim
    linv = levi_inverse(g)
    hol, anti = _holomorphic_split(D1, n)

    # d_c d_d- g_{a b-} built from the four real second derivatives.
    hmix = 0.25 * (
        D2[:n, :n] + D2[n:, n:] + 1j * (D2[:n, n:] - D2[n:, :n])
    )  # [c, d, a, b]
    term1 = -np.transpose(hmix, (2, 3, 0, 1))
    term2 = np.einsum("rs,cas,drb->abcd", linv, hol, anti)
    R = term1 + term2
    ric = np.einsum("ab,abcd->cd", linv, R)
    scal = float(np.einsum("cd,cd->", linv, ric).real)
    return R, ric, scal


def christoffels(g: np.ndarray, D1: np.ndarray) -> np.ndarray:
    """``Gamma^c_{a b} = l^{c s-} d_a g_{b s-}`` (symmetric in a, b)."""
    n = g.shape[0]
    linv = levi_inverse(g)
    hol, _ = _holomorphic_split(D1, n)
    return np.einsum("cs,abs->cab", linv, hol)


def schouten_at(ric: np.ndarray, scal: float, g: np.ndarray, n: int) -> np.ndarray:
    """``P = (Ric - Scal/(2(n+1)) g) / (n+2)``; its trace is Scal/(2(n+1))."""
    return (ric - scal / (2 * (n + 1)) * g) / (n + 2)


def chern_tensor_at(
    R: np.ndarray, P: np.ndarray, g: np.ndarray, n: int
) -> np.ndarray:
    """Trace-free curvature part; identically zero iff the structure is spherical (n >= 2)."""
    return (
        R
        - np.einsum("ab,cd->abcd", P, g)
        - np.einsum("cb,ad->abcd", P, g)
        - np.einsum("cd,ab->abcd", P, g)
        - np.einsum("ad,cb->abcd", P, g)
    )


def pseudo_einstein_residual_at(
    ric: np.ndarray, scal: float, g: np.ndarray, n: int
) -> np.ndarray:
    """``Ric - (Scal/n) g``; zero iff the contact form is pseudo-Einstein."""
    if n < 2:
        raise ValueError("the pseudo-Einstein condition is defined for n >= 2")
    return ric - (scal / n) * g


@dataclass(frozen=True)
class PointTensors:
    """All pointwise tensors at one sample point.

    ``T1``/``V`` are populated only when third-order quantities were
    requested (they need finite differences of P across the patch).
    """

    point: np.ndarray
    g: np.ndarray
    R: np.ndarray
    Ric: np.ndarray
    Scal: float
    P: np.ndarray
    S: np.ndarray
    gammas: np.ndarray
    T1: np.ndarray | None = None
    V: np.ndarray | None = None


def point_tensors(
    patch: KahlerProductPatch,
    z: np.ndarray,
    step: float = METRIC_STEP,
    third_order: bool = False,
    step3: float = THIRD_ORDER_STEP,
) -> PointTensors:
    z = np.asarray(z, dtype=complex)
    if not patch.contains(z):
        raise PatchDomainError(f"sample point outside patch: {z}")
    n = patch.total_dim
    g, D1, D2 = metric_derivatives(patch, z, step)
    linv = levi_inverse(g)
    hol, anti = _holomorphic_split(D1, n)
    hmix = 0.25 * (D2[:n, :n] + D2[n:, n:] + 1j * (D2[:n, n:] - D2[n:, :n]))
    R = -np.transpose(hmix, (2, 3, 0, 1)) + np.einsum(
        "rs,cas,drb->abcd", linv, hol, anti
    )
    ric = np.einsum("ab,abcd->cd", linv, R)
    scal = float(np.einsum("cd,cd->", linv, ric).real)
    P = schouten_at(ric, scal, g, n)
    S = chern_tensor_at(R, P, g, n)
    gammas = np.einsum("cs,abs->cab", linv, hol)
    T1 = V = None
    if third_order:
        T1, V = v_tensor_at(patch, z, step=step, step3=step3)
    return PointTensors(z, g, R, ric, scal, P, S, gammas, T1, V)


def _stencil_tensors(patch: KahlerProductPatch, x: np.ndarray, step: float):
    n = patch.total_dim
    t = point_tensors(patch, x[:n] + 1j * x[n:], step=step)
    return t.P, t.S, t.Scal


def _third_order_derivatives(
    patch: KahlerProductPatch, z: np.ndarray, step: float, step3: float
):
    """Holomorphic-direction central differences of P, S, and Scal."""
    n = patch.total_dim
    x0 = _real_coords(z)
    dP = np.zeros((2 * n, n, n), dtype=complex)
    dS = np.zeros((2 * n, n, n, n, n), dtype=complex)
    dScal = np.zeros(2 * n)
    for a in range(2 * n):
        e = np.zeros(2 * n)
        e[a] = step3
        Pp, Sp, sp = _stencil_tensors(patch, x0 + e, step)
        Pm, Sm, sm = _stencil_tensors(patch, x0 - e, step)
        dP[a] = (Pp - Pm) / (2 * step3)
        dS[a] = (Sp - Sm) / (2 * step3)
        dScal[a] = (sp - sm) / (2 * step3)
    dP_hol = 0.5 * (dP[:n] - 1j * dP[n:])  # [c, a, b]
    dS_hol = 0.5 * (dS[:n] - 1j * dS[n:])  # [r, a, b, c, d]
    dScal_hol = 0.5 * (dScal[:n] - 1j * dScal[n:])
    return dP_hol, dS_hol, dScal_hol


def _assemble_v(dP_hol, dScal_hol, gammas, P, g, n):
    """``grad_c P_{a b-} = d_c P_{a b-} - Gamma^r_{c a} P_{r b-}``: the
    barred index picks up no connection term under a holomorphic-
    direction derivative.  ``T1_a`` is the gradient of the P-trace
    (a multiple of Scal) over ``n + 2``.
    """
    grad_P = dP_hol - np.einsum("rca,rb->cab", gammas, P)
    T1 = dScal_hol / (2 * (n + 1) * (n + 2))
    V = (
        1j * np.transpose(grad_P, (1, 2, 0))
        - 1j * np.einsum("c,ab->abc", T1, g)
        - 2j * np.einsum("a,cb->abc", T1, g)
    )
    return T1, V


def v_tensor_at(
    patch: KahlerProductPatch,
    z: np.ndarray,
    step: float = METRIC_STEP,
    step3: float = THIRD_ORDER_STEP,
) -> tuple[np.ndarray, np.ndarray]:
    """``(T1, V)`` with the torsion contributions dropped (torsion-free case)."""
    z = np.asarray(z, dtype=complex)
    n = patch.total_dim
    t = point_tensors(patch, z, step=step)
    dP_hol, _dS_hol, dScal_hol = _third_order_derivatives(patch, z, step, step3)
    return _assemble_v(dP_hol, dScal_hol, t.gammas, t.P, t.g, n)


def chern_divergence_residual(
    patch: KahlerProductPatch,
    z: np.ndarray,
    step: float = METRIC_STEP,
    step3: float = THIRD_ORDER_STEP,
) -> dict:
    """Both sides of the divergence identity ``div S = -n i V``.

    ``div S`` is the trace ``l^{r d-} grad_r S_{a b- c d-}`` with the
    covariant corrections on both unbarred slots of S.  Returns the two
    sides and the residual max-norm for reporting.
    """
    z = np.asarray(z, dtype=complex)
    n = patch.total_dim
    t = point_tensors(patch, z, step=step)
    linv = levi_inverse(t.g)
    dP_hol, dS_hol, dScal_hol = _third_order_derivatives(patch, z, step, step3)

    grad_S = (
        dS_hol
        - np.einsum("sra,sbcd->rabcd", t.gammas, t.S)
        - np.einsum("src,absd->rabcd", t.gammas, t.S)
    )
    div_S = np.einsum("rd,rabcd->abc", linv, grad_S)

    _T1, V = _assemble_v(dP_hol, dScal_hol, t.gammas, t.P, t.g, n)
    rhs = -n * 1j * V
    return {
        "div_S": div_S,
        "minus_n_i_V": rhs,
        "residual": float(np.max(np.abs(div_S - rhs))),
        "lhs_max": float(np.max(np.abs(div_S))),
        "rhs_max": float(np.max(np.abs(rhs))),
    }


# -- independent oracles -----------------------------------------------------


def space_form_curvature_oracle(
    patch: KahlerProductPatch, z: np.ndarray
) -> np.ndarray:
    """Closed-form curvature of a product of space forms.

    Per factor, ``R = (hsc/2) (g g + g g)`` on the factor's block with
    the exact analytic metric; all cross-factor components vanish.
    This is the reference the finite-difference pipeline is tested
    against.
    """
    z = np.asarray(z, dtype=complex)
    n = patch.total_dim
    R = np.zeros((n, n, n, n), dtype=complex)
    for f, s, part in zip(patch.factors, patch.slices(), patch.split(z)):
        gb = f.metric(part)
        block = (f.c / 2) * (
            np.einsum("ab,cd->abcd", gb, gb) + np.einsum("ad,cb->abcd", gb, gb)
        )
        R[s, s, s, s] = block
    return R


def symmetry_residuals(R: np.ndarray) -> tuple[float, float]:
    """Max deviation from the two index symmetries of the curvature."""
    first = float(np.max(np.abs(R - np.transpose(R, (2, 1, 0, 3)))))
    second = float(np.max(np.abs(R - np.transpose(R, (0, 3, 2, 1)))))
    return first, second


def first_pair_trace(tensor4: np.ndarray, g: np.ndarray) -> np.ndarray:
    return np.einsum("ab,abcd->cd", levi_inverse(g), tensor4)
