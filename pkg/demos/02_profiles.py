# %% [markdown]
# # Coefficient profiles
#
# Everything in the lifted structure is driven by a1(t) and lambda(t).
# b1 comes from integrability, mu = lambda' from closedness of phi.

# %%
import numpy as np

from cotkahler.profiles import coefficients_at, make_case_profile, validate_profile

P = make_case_profile("case1", c=1.0, B=1.0, k=2.0)
for t in (0.0, 1.0, 4.0):
    d = coefficients_at(P, t)
    print(f"t={t}: a1={d.a1:.6f} b1={d.b1:.6f} lambda={d.lam:.6f} mu={d.mu:.6f} "
          f"c1={d.c1:.6f} d1={d.d1:.6f}")

# %% [markdown]
# Positivity conditions on a grid.  The third family is only defined away
# from the zero section, and for c = k = lambda = 1 it stops being valid at
# t = 2 where a1^2 - 2ct changes sign.

# %%
print(validate_profile(P, np.linspace(0, 10, 21)).ok)
P3 = make_case_profile("case3", c=1.0, k=1.0)
rep = validate_profile(P3, [0.0, 0.5, 1.5, 2.5])
for r in rep.records:
    print(r.t, r.ok, r.error or "")
