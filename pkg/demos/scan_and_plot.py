# %% [markdown]
# # Scans to CSV and SVG
#
# Same as `magique scan --model tfim --J both --lambdas 0.4,2 --Ls 5,7,9
# --out tfim.csv --plot tfim.svg`, driven from Python.

# %%
import tempfile
from pathlib import Path

from magique.experiments import ScanSpec, emit_plot, run_scan, scan_values

# %%
work = Path(tempfile.mkdtemp())
spec = ScanSpec(
    model="tfim",
    J=(1, -1),
    lambdas=(0.4, 2.0),
    Ls=(5, 7, 9),
    out=str(work / "tfim.csv"),
    plot=str(work / "tfim.svg"),
    cache_dir=str(work / "cache"),
)
result = run_scan(spec)
print((work / "tfim.csv").read_text())

# %%
scan_values(result, 1, 0.4, "ratio_R")

# %%
# second run is served from the cache
run_scan(spec).cache_hits

# %%
emit_plot(work / "tfim.csv", "L", "ratio_R", work / "ratio.svg", series=["lambda"], title="R(L)")
print(work)
