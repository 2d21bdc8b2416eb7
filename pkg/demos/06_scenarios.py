# %% [markdown]
# # Scenario runner
#
# The same checks the CLI runs (`cotkahler verify`), driven from Python.

# %%
from cotkahler import harness as hs

cfg = hs.ScenarioConfig("demo", n=2, c=1.0, profile={"case": "case1", "B": 1.0, "k": 2.0},
                        samples=10, seed=1)
report = hs.run_scenario(cfg)
print("\n".join(report.lines()))

# %% [markdown]
# A deliberate violation declared as expected: the suite passes because the
# violation is observed.

# %%
bad = hs.ScenarioConfig("mu-offset", n=2, c=1.0,
                        profile={"case": "case1", "k": 2.0, "mu_offset": "1"},
                        t_range=(0.5, 3.0), samples=5, suites=("kahler",),
                        expect={"kahler": "fail"})
print("\n".join(hs.run_scenario(bad).lines()))
