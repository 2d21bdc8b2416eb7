"""Constant-curvature base manifolds in a conformally flat chart.

Every sign of the curvature ``c`` is realised by the single chart family

    g_ij(x) = delta_ij / phi(x)**2,   phi(x) = 1 + (c/4)|x|^2,

which is the stereographic sphere for ``c > 0``, Euclidean space for
``c = 0`` and the Poincare ball for ``c < 0``.

Index storage (dense, row-major):

    gamma[k, i, j]      = Gamma^k_{ij}
    riemann[h, k, i, j] = R^h_{kij},  R(d_i, d_j) d_k = R^h_{kij} d_h
"""
from dataclasses import dataclass, field

import numpy as np

from . import _fd
from .exceptions import DomainError


@dataclass(frozen=True)
class SpaceForm:
    """An ``n``-dimensional model of constant sectional curvature ``c``.

    ``chart_radius`` bounds the coordinate ball on which the chart is used.
    When omitted it defaults to ``4/sqrt(c)`` (c > 0), ``4`` (c = 0) or
    ``1/sqrt(|c|)`` (c < 0, half the radius of the Poincare ball).
    """

    n: int
    c: float
    chart_radius: float = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "c", float(self.c))
        r = self.chart_radius
        if r is None:
            if self.c > 0:
                r = 4.0 / np.sqrt(self.c)
            elif self.c == 0:
                r = 4.0
            else:
                r = 1.0 / np.sqrt(-self.c)
        r = float(r)
        if not r > 0:
            raise ValueError(f"chart_radius must be positive, got {r!r}")
        if self.c < 0 and r * r >= 4.0 / abs(self.c):
            raise ValueError(
                f"chart_radius^2 = {r * r!r} must stay below 4/|c| = {4.0 / abs(self.c)!r}"
            )
        object.__setattr__(self, "chart_radius", r)

    def conformal_factor(self, x):
        x = np.asarray(x, dtype=float)
        return 1.0 + 0.25 * self.c * float(x @ x)

    def check_in_chart(self, x, margin=0.0):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"expected a coordinate vector of length {self.n}, got shape {x.shape}")
        norm = float(np.linalg.norm(x))
        if norm + margin >= self.chart_radius:
            raise DomainError(
                f"|x| = {norm:.6g} (+ margin {margin:.3g}) is outside the chart ball "
                f"of radius {self.chart_radius:.6g}"
            )
        if self.conformal_factor(x) <= 0:
            raise DomainError(f"conformal factor is non-positive at |x| = {norm:.6g}")
        return x


@dataclass(frozen=True)
class BaseGeometry:
    g: np.ndarray
    g_inv: np.ndarray
    gamma: np.ndarray
    riemann: np.ndarray
    # metric first derivatives d_m g_ij, slot order [m, i, j]; only kept for
    # the covariant-constancy check
    dg: np.ndarray = field(default=None, repr=False)


def constant_curvature_tensor(c, g):
    """``R^h_{kij} = c (delta^h_i g_kj - delta^h_j g_ki)``."""
    n = g.shape[0]
    eye = np.eye(n)
    return c * (np.einsum("hi,kj->hkij", eye, g) - np.einsum("hj,ki->hkij", eye, g))


def base_geometry_at(M, x):
    """Closed-form metric, inverse, Christoffel symbols and curvature at ``x``."""
    x = M.check_in_chart(x)
    n, c = M.n, M.c
    phi = M.conformal_factor(x)
    eye = np.eye(n)
    g = eye / phi**2
    g_inv = eye * phi**2
    # g = exp(2 sigma) delta with sigma = -log(phi)
    dsigma = -0.5 * c * x / phi
    gamma = (
        np.einsum("ki,j->kij", eye, dsigma)
        + np.einsum("kj,i->kij", eye, dsigma)
        - np.einsum("ij,k->kij", eye, dsigma)
    )
    riemann = constant_curvature_tensor(c, g)
    dg = np.einsum("m,ij->mij", 2.0 * dsigma, g)
    return BaseGeometry(g=g, g_inv=g_inv, gamma=gamma, riemann=riemann, dg=dg)


def christoffel_from_metric(g_inv, dg):
    """Gamma^k_ij = 1/2 g^kl (d_i g_lj + d_j g_li - d_l g_ij); dg slots [m, i, j]."""
    lower = 0.5 * (
        np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg
    )
    return np.einsum("kl,lij->kij", g_inv, lower)


def riemann_from_christoffel(gamma, dgamma):
    """R^h_kij = d_i G^h_jk - d_j G^h_ik + G^h_il G^l_jk - G^h_jl G^l_ik.

    ``dgamma[m, h, j, k] = d_m Gamma^h_{jk}``.
    """
    return (
        np.einsum("ihjk->hkij", dgamma)
        - np.einsum("jhik->hkij", dgamma)
        + np.einsum("hil,ljk->hkij", gamma, gamma)
        - np.einsum("hjl,lik->hkij", gamma, gamma)
    )


def _metric(M, x):
    return np.eye(M.n) / M.conformal_factor(x) ** 2


def _fd_christoffel(M, x):
    g = _metric(M, x)
    dg = _fd.partials(lambda y: _metric(M, y), x)
    return christoffel_from_metric(np.linalg.inv(g), dg)


def base_geometry_fd_oracle(M, x):
    """Same quantities as :func:`base_geometry_at`, by finite differences of g.

    Christoffels come from differences of the metric, the curvature from
    differences of those Christoffels; no closed form is consulted.
    """
    x = np.asarray(x, dtype=float)
    # outer differences reach 2 steps past x, inner ones 2 more
    margin = 4.0 * float(np.max(_fd.steps_for(x)))
    x = M.check_in_chart(x, margin=margin)
    g = _metric(M, x)
    dg = _fd.partials(lambda y: _metric(M, y), x)
    g_inv = np.linalg.inv(g)
    gamma = christoffel_from_metric(g_inv, dg)
    dgamma = _fd.partials(lambda y: _fd_christoffel(M, y), x)
    riemann = riemann_from_christoffel(gamma, dgamma)
    return BaseGeometry(g=g, g_inv=g_inv, gamma=gamma, riemann=riemann, dg=dg)


def covariant_derivative_of_metric(geom):
    """``nabla_k g_ij = d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il``; slots [k, i, j]."""
    return (
        geom.dg
        - np.einsum("lki,lj->kij", geom.gamma, geom.g)
        - np.einsum("lkj,il->kij", geom.gamma, geom.g)
    )
