# %% [markdown]
# # Einstein condition and holomorphic sectional curvature
#
# All three families are Kaehler-Einstein.  Only the first has constant
# holomorphic sectional curvature; for the second, four of the six blocks
# follow the constant-curvature model with constant 4c/k and the mixed ones do not.

# %%
import numpy as np

from cotkahler import curvature as cv
from cotkahler.lifts import cotangent_point
from cotkahler.profiles import custom_profile, make_case_profile
from cotkahler.spaceform import SpaceForm

M = SpaceForm(3, 1.0)
pt = cotangent_point(M, [0.2, -0.1, 0.3], [0.7, 0.4, -0.5])
profiles = {
    "case1": make_case_profile("case1", c=1.0, B=1.0, k=2.0),
    "case2": make_case_profile("case2", c=1.0, B=1.0, k=2.0),
    "lambda=1": custom_profile("B+sqrt(B**2+2*c*t)", "1", c=1.0, B=1.0),
}
for name, P in profiles.items():
    rq, rp = cv.einstein_residual_at(M, P, pt)
    print(f"{name:9} Ef={cv.einstein_factor(P, pt.t, 3):+.4f}  "
          f"residual={max(np.abs(rq).max(), np.abs(rp).max()):.2e}  C_n={cv.cn_at(P, pt.t):+.1e}")

# %% [markdown]
# The lambda = 1 profile is not Einstein although C_n vanishes for it.

# %%
for name in ("case1", "case2"):
    P = profiles[name]
    res = cv.holomorphic_residual_at(M, P, pt, cv.holomorphic_constant(P))
    print(name, {k: f"{v:.1e}" for k, v in res.items()})
