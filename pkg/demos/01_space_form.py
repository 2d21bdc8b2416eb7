# %% [markdown]
# # Space forms in a conformal chart
#
# One chart family covers the sphere, flat space and hyperbolic space:
# g = delta / phi^2 with phi = 1 + (c/4)|x|^2.

# %%
import numpy as np

from cotkahler.spaceform import SpaceForm, base_geometry_at, base_geometry_fd_oracle, constant_curvature_tensor

for c in (1.0, 0.0, -1.0):
    M = SpaceForm(3, c)
    x = np.array([0.3, -0.2, 0.1])
    G = base_geometry_at(M, x)
    fd = base_geometry_fd_oracle(M, x)
    print(f"c={c:+.0f}  radius={M.chart_radius:.2f}  g11={G.g[0, 0]:.4f}  "
          f"|Gamma - FD| = {np.abs(G.gamma - fd.gamma).max():.1e}  "
          f"|R - c(..)| = {np.abs(fd.riemann - constant_curvature_tensor(c, G.g)).max():.1e}")

# %% [markdown]
# Outside the chart ball the geometry refuses to evaluate.

# %%
from cotkahler.exceptions import DomainError

try:
    base_geometry_at(SpaceForm(2, -1.0), np.array([1.5, 0.0]))
except DomainError as exc:
    print("DomainError:", exc)
