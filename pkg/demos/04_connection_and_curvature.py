# %% [markdown]
# # Connection and curvature
#
# Closed-form Q, P, S and the six curvature blocks, checked against a Koszul
# oracle and against finite differences of that oracle.

# %%
import numpy as np

from cotkahler import curvature as cv
from cotkahler.lifts import cotangent_point
from cotkahler.profiles import make_case_profile
from cotkahler.spaceform import SpaceForm, base_geometry_at

M = SpaceForm(3, 1.0)
P = make_case_profile("case2", c=1.0, B=1.0, k=2.0)
pt = cotangent_point(M, [0.2, -0.1, 0.3], [0.7, 0.4, -0.5])

conn = cv.connection_blocks_at(M, P, pt)
W = cv.connection_coefficients(base_geometry_at(M, pt.q), conn)
print("connection vs Koszul:", np.abs(W - cv.koszul_connection_oracle(M, P, pt)).max())

K = cv.curvature_blocks_at(M, P, pt)
oracle = cv.curvature_koszul_oracle(M, P, pt)
print("curvature vs oracle: ", np.abs(cv.full_curvature(K) - oracle).max())
print("Bianchi:             ", cv.bianchi_residual(cv.full_curvature(K)))
for name, block in K.items():
    print(f"  {name}: max |K| = {np.abs(block).max():.4f}")
