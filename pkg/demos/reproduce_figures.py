"""Write all figure panels as CSV files into ./figures.

Each panel is a plain table (tau in the first column) that any plotting tool
can read. A coarser grid can be passed on the command line for a quick look,
for instance ``python reproduce_figures.py 51``.
"""
import sys
import time

from mq_spinsim import reproduce_figure

steps = int(sys.argv[1]) if len(sys.argv) > 1 else 201
for which in ("fig1", "fig2", "fig3"):
    start = time.perf_counter()
    panels = reproduce_figure(which, "figures", tau_steps=steps)
    ok = all(p.passed for p in panels.values())
    print(f"{which}: {', '.join(sorted(panels))} in {time.perf_counter() - start:.1f}s, checks passed: {ok}")
