"""Pointwise lifted structures on the cotangent bundle.

A tangent vector of T*M is stored in the adapted frame as ``(h, v)``:

    X = h^i delta_i + v_i d^i,   delta_i = d/dq^i + Gamma^0_{ih} d/dp_h,  d^i = d/dp_i

with ``Gamma^0_{ih} = p_k Gamma^k_{ih}``.  In that frame

    J delta_i = J1_ij d^j,          J d^i = -J2^ij delta_j
    G = diag(G1, G2),               phi(X, Y) = G(X, JY)

Block slot orders are ``J1[i, j] = J^(1)_ij``, ``J2[i, j] = J_(2)^ij`` and so
on; ``phi[i, j] = phi(d^i, delta_j)``.  Whole-frame matrices use the
ordering ``(delta_1..delta_n, d^1..d^n)``.
"""
from dataclasses import dataclass

import numpy as np

from .profiles import DerivedCoefficients, coefficients_at
from .spaceform import BaseGeometry, base_geometry_at


@dataclass(frozen=True)
class CotangentPoint:
    q: np.ndarray
    p: np.ndarray
    t: float

    @property
    def n(self):
        return self.q.shape[0]

    @property
    def z(self):
        """Induced chart coordinates ``(q, p)``."""
        return np.concatenate([self.q, self.p])


def energy_density(M, q, p=None):
    """``t = 1/2 g^ik(q) p_i p_k``.  Accepts a :class:`CotangentPoint` or ``(q, p)``."""
    if isinstance(q, CotangentPoint):
        q, p = q.q, q.p
    q = M.check_in_chart(q)
    p = np.asarray(p, dtype=float)
    g_inv = np.eye(M.n) * M.conformal_factor(q) ** 2
    return 0.5 * float(p @ g_inv @ p)


def cotangent_point(M, q, p):
    q = np.array(q, dtype=float)
    p = np.array(p, dtype=float)
    if p.shape != (M.n,):
        raise ValueError(f"expected a covector of length {M.n}, got shape {p.shape}")
    return CotangentPoint(q=q, p=p, t=energy_density(M, q, p))


def point_from_z(M, z):
    z = np.asarray(z, dtype=float)
    return cotangent_point(M, z[: M.n], z[M.n:])


@dataclass(frozen=True)
class AdaptedVector:
    h: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))

    @classmethod
    def from_array(cls, x):
        x = np.asarray(x, dtype=float)
        n = x.shape[0] // 2
        return cls(x[:n], x[n:])

    def as_array(self):
        return np.concatenate([self.h, self.v])

    def __add__(self, other):
        return AdaptedVector(self.h + other.h, self.v + other.v)

    def __neg__(self):
        return AdaptedVector(-self.h, -self.v)


@dataclass(frozen=True)
class StructureBlocks:
    J1: np.ndarray
    J2: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    phi: np.ndarray
    g0: np.ndarray
    p: np.ndarray
    coeffs: DerivedCoefficients
    geom: BaseGeometry

    @property
    def n(self):
        return self.g0.shape[0]

    @property
    def J_matrix(self):
        """2n x 2n matrix of J acting on adapted components."""
        n = self.n
        Z = np.zeros((n, n))
        return np.block([[Z, -self.J2], [self.J1, Z]])

    @property
    def G_matrix(self):
        n = self.n
        Z = np.zeros((n, n))
        return np.block([[self.G1, Z], [Z, self.G2]])

    @property
    def phi_matrix(self):
        """``Phi[a, b] = phi(E_a, E_b)`` from the closed-form block."""
        n = self.n
        Z = np.zeros((n, n))
        return np.block([[Z, -self.phi.T], [self.phi, Z]])


def structure_blocks_at(M, P, pt, coeffs=None):
    """Assemble J, G, their inverse blocks and the fundamental 2-form at ``pt``."""
    geom = base_geometry_at(M, pt.q)
    d = coefficients_at(P, pt.t) if coeffs is None else coeffs
    t = pt.t
    g, gi, p = geom.g, geom.g_inv, pt.p
    g0 = gi @ p
    pp = np.outer(p, p)
    g0g0 = np.outer(g0, g0)
    J1 = d.a1 * g + d.b1 * pp
    J2 = d.a2 * gi + d.b2 * g0g0
    G1 = d.c1 * g + d.d1 * pp
    G2 = d.c2 * gi + d.d2 * g0g0
    H1 = gi / d.c1 - d.d1 / (d.c1 * (d.c1 + 2 * t * d.d1)) * g0g0
    H2 = g / d.c2 - d.d2 / (d.c2 * (d.c2 + 2 * t * d.d2)) * pp
    phi = d.lam * np.eye(M.n) + d.mu * np.outer(g0, p)
    return StructureBlocks(J1=J1, J2=J2, G1=G1, G2=G2, H1=H1, H2=H2, phi=phi,
                           g0=g0, p=p.copy(), coeffs=d, geom=geom)


def _check_dims(B, *vectors):
    for X in vectors:
        if X.h.shape != (B.n,) or X.v.shape != (B.n,):
            raise ValueError(
                f"dimension mismatch: blocks have n={B.n}, vector has "
                f"h{X.h.shape} v{X.v.shape}"
            )


def apply_J(B, X):
    _check_dims(B, X)
    return AdaptedVector(-B.J2 @ X.v, B.J1 @ X.h)


def inner_product(B, X, Y):
    _check_dims(B, X, Y)
    return float(X.h @ B.G1 @ Y.h + X.v @ B.G2 @ Y.v)


def phi_value(B, X, Y):
    """``phi(X, Y) = G(X, JY)``."""
    return inner_product(B, X, apply_J(B, Y))


def adapted_frame_in_chart(M, pt):
    """Columns: ``delta_1..delta_n, d^1..d^n`` in the chart basis ``(d/dq, d/dp)``."""
    geom = base_geometry_at(M, pt.q)
    return frame_matrix(geom, pt.p)


def frame_matrix(geom, p):
    n = p.shape[0]
    gamma0 = np.einsum("k,kih->hi", p, geom.gamma)
    F = np.eye(2 * n)
    F[n:, :n] = gamma0
    return F


def frame_index(kind, i, n):
    """Position of ``delta_i`` (kind 'h') or ``d^i`` (kind 'v') in frame ordering."""
    if kind in ("h", "delta"):
        return i
    if kind in ("v", "partial"):
        return n + i
    raise ValueError(f"unknown frame kind {kind!r}")


def basis_vector(kind, i, n):
    x = np.zeros(2 * n)
    x[frame_index(kind, i, n)] = 1.0
    return AdaptedVector.from_array(x)
