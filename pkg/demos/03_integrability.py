# %% [markdown]
# # Nijenhuis tensor and d(phi)
#
# Both are computed numerically in the chart (q, p) from finite-difference
# brackets of the frame fields and compared with what the closed forms say.

# %%
import numpy as np

from cotkahler import integrability as ig
from cotkahler.lifts import cotangent_point
from cotkahler.profiles import make_case_profile, with_b1_offset, with_mu_offset
from cotkahler.spaceform import SpaceForm

M = SpaceForm(3, 1.0)
P = make_case_profile("case1", c=1.0, B=1.0, k=2.0)
pt = cotangent_point(M, [0.2, -0.1, 0.3], [0.7, 0.4, -0.5])

print("integrable b1:   |N| =", np.abs(ig.nijenhuis_full(M, P, pt)).max())
for off in ("0.1", "0.3*t"):
    Q = with_b1_offset(P, off)
    N = ig.nijenhuis_full(M, Q, pt)
    closed = ig.nijenhuis_delta_delta_closed(M, Q, pt)
    print(f"b1 + {off:6}:  |N| = {np.abs(N).max():.4f}, coefficient {closed.coeff:+.4f}")

# %% [markdown]
# d(phi) is linear in lambda' - mu.

# %%
z = cotangent_point(M, [0, 0, 0], [1.0, 0.0, 0.0])
for off in (0, 1, 2):
    print(off, ig.dphi_numeric(M, with_mu_offset(P, off), z, ("v", 0), ("v", 1), ("h", 1)))
