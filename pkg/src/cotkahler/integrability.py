"""Frame brackets, the Nijenhuis tensor of J and the exterior derivative of phi.

Numerical oracles work in the induced chart ``z = (q, p)``: frame fields are
extended off the evaluation point by their defining formulas, Jacobians are
taken by finite differences, and results are mapped back to adapted
components.

Conventions:

    N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]
    d phi(X, Y, Z) = X phi(Y, Z) - Y phi(X, Z) + Z phi(X, Y)
                     - phi([X, Y], Z) + phi([X, Z], Y) - phi([Y, Z], X)

The second (alternating-sum) convention is the one used throughout; no
``1/3`` or ``1/2`` wedge normalisation is applied.
"""
from dataclasses import dataclass

import numpy as np

from . import _fd
from .lifts import frame_index, frame_matrix, point_from_z, structure_blocks_at
from .profiles import coefficients_at
from .spaceform import base_geometry_at


def fd_margin(z):
    # outer Richardson stencil reaches one full step, nested oracles two
    return 4.0 * float(np.max(_fd.steps_for(z)))


def _check_margin(M, pt):
    M.check_in_chart(pt.q, margin=fd_margin(pt.z))


def frame_field(M, z):
    geom = base_geometry_at(M, z[: M.n])
    return frame_matrix(geom, z[M.n:])


def bracket_tensor(U, dU, V, dV):
    """Chart components of ``[U_a, V_b]``; result slots ``[a, b, m]``.

    ``U``/``V`` hold the fields as columns, ``dU[l] = d_l U``.
    """
    return (
        np.einsum("la,lmb->abm", U, dV)
        - np.einsum("lb,lma->abm", V, dU)
    )


def frame_brackets(M, z):
    """Adapted components ``C[a, b, c]`` of ``[E_a, E_b] = C[a, b, c] E_c`` (finite differences)."""
    F = frame_field(M, z)
    dF = _fd.partials(lambda y: frame_field(M, y), z)
    chart = bracket_tensor(F, dF, F, dF)
    return np.einsum("cm,abm->abc", np.linalg.inv(F), chart)


@dataclass(frozen=True)
class BracketResidual:
    vv: float  # max |[d^i, d^j]|
    vh: float  # max |[d^i, delta_j] - Gamma^i_jk d^k|
    hh: float  # max |[delta_i, delta_j] - R^0_kij d^k|

    @property
    def max(self):
        return max(self.vv, self.vh, self.hh)


def bracket_check(M, pt):
    """Compare finite-difference frame brackets with their closed forms."""
    _check_margin(M, pt)
    n = M.n
    C = frame_brackets(M, pt.z)
    geom = base_geometry_at(M, pt.q)
    R0 = np.einsum("h,hkij->kij", pt.p, geom.riemann)

    expect = np.zeros_like(C)
    # [d^i, delta_j] = Gamma^i_jk d^k
    expect[n:, :n, n:] = np.einsum("ijk->ijk", geom.gamma)
    expect[:n, n:, n:] = -np.einsum("jik->ijk", geom.gamma)
    # [delta_i, delta_j] = R^0_kij d^k
    expect[:n, :n, n:] = np.einsum("kij->ijk", R0)
    diff = np.abs(C - expect)
    return BracketResidual(
        vv=float(diff[n:, n:].max()),
        vh=float(max(diff[n:, :n].max(), diff[:n, n:].max())),
        hh=float(diff[:n, :n].max()),
    )


# -- Nijenhuis tensor ------------------------------------------------------------

@dataclass(frozen=True)
class NijenhuisBlock:
    coeff: float
    components: np.ndarray  # [k, i, j]: N(delta_i, delta_j) = components[k, i, j] d^k


def nijenhuis_delta_delta_closed(M, P, pt):
    """``N(delta_i, delta_j) = {(a1 a1' + 2t a1' b1 - a1 b1)(p_i g_jk - p_j g_ik) - R^0_kij} d^k``."""
    d = coefficients_at(P, pt.t)
    geom = base_geometry_at(M, pt.q)
    t, p, g = pt.t, pt.p, geom.g
    coeff = d.a1 * d.a1_p + 2 * t * d.a1_p * d.b1 - d.a1 * d.b1
    R0 = np.einsum("h,hkij->kij", p, geom.riemann)
    comps = coeff * (np.einsum("i,jk->kij", p, g) - np.einsum("j,ik->kij", p, g)) - R0
    return NijenhuisBlock(coeff=float(coeff), components=comps)


def _fields(M, P, z):
    pt = point_from_z(M, z)
    B = structure_blocks_at(M, P, pt)
    F = frame_matrix(B.geom, pt.p)
    return F, F @ B.J_matrix


def nijenhuis_full(M, P, pt):
    """All frame pairs: ``N[a, b, c]`` = adapted component c of ``N(E_a, E_b)``."""
    _check_margin(M, pt)
    z = pt.z
    two_n = z.shape[0]
    F, FJ = _fields(M, P, z)
    d = _fd.partials(lambda y: np.stack(_fields(M, P, y)), z)
    dF, dFJ = d[:, 0], d[:, 1]
    Finv = np.linalg.inv(F)
    Jc = FJ @ Finv  # J as a chart operator at z
    b_jj = bracket_tensor(FJ, dFJ, FJ, dFJ)
    b_jx = bracket_tensor(FJ, dFJ, F, dF)
    b_xj = bracket_tensor(F, dF, FJ, dFJ)
    b_xx = bracket_tensor(F, dF, F, dF)
    chart = (
        b_jj
        - np.einsum("mk,abk->abm", Jc, b_jx)
        - np.einsum("mk,abk->abm", Jc, b_xj)
        - b_xx
    )
    assert chart.shape == (two_n, two_n, two_n)
    return np.einsum("cm,abm->abc", Finv, chart)


def _resolve(X, n):
    if isinstance(X, (int, np.integer)):
        return int(X)
    kind, i = X
    return frame_index(kind, i, n)


def nijenhuis_numeric(M, P, pt, X, Y):
    """Adapted components of ``N(X, Y)`` for frame fields X, Y.

    Frame fields are given as ``('h', i)`` for delta_i, ``('v', i)`` for
    d^i, or a frame position ``0 <= a < 2n``.
    """
    N = nijenhuis_full(M, P, pt)
    return N[_resolve(X, M.n), _resolve(Y, M.n)]


# -- exterior derivative of phi --------------------------------------------------

def _phi_frame(M, P, z):
    pt = point_from_z(M, z)
    B = structure_blocks_at(M, P, pt)
    return B.G_matrix @ B.J_matrix


def dphi_full(M, P, pt):
    """``D[a, b, c] = d phi(E_a, E_b, E_c)`` over all frame triples."""
    _check_margin(M, pt)
    z = pt.z
    F = frame_field(M, z)
    Phi = _phi_frame(M, P, z)
    dPhi = _fd.partials(lambda y: _phi_frame(M, P, y), z)
    E_Phi = np.einsum("ma,mbc->abc", F, dPhi)  # E_a(phi(E_b, E_c))
    C = frame_brackets(M, z)
    phiC = np.einsum("abe,ec->abc", C, Phi)  # phi([E_a, E_b], E_c)
    return (
        E_Phi
        - np.einsum("bac->abc", E_Phi)
        + np.einsum("cab->abc", E_Phi)
        - phiC
        + np.einsum("acb->abc", phiC)
        - np.einsum("bca->abc", phiC)
    )


def dphi_numeric(M, P, pt, X, Y, Z):
    D = dphi_full(M, P, pt)
    n = M.n
    return float(D[_resolve(X, n), _resolve(Y, n), _resolve(Z, n)])
