"""
Timing phases across worker counts
==================================

Runs the ``bench`` command on a generated graph and prints the CSV. On a
machine with a single core, extra workers only add scheduling overhead.
"""
# %%
import os
import tempfile
from pathlib import Path

from splitlouvain import write_edgelist
from splitlouvain.cli import main
from splitlouvain.generators import planted_partition

tmp = Path(tempfile.mkdtemp())
g, _ = planted_partition(100_000, 1000, 16, 4, seed=19)
write_edgelist(g, tmp / "planted.el")
print(g, "cores available:", len(os.sched_getaffinity(0)))

# %%
main(["bench", "-i", str(tmp / "planted.el"), "--format", "edgelist",
      "--threads", "1,2,4", "--repeat", "2", "-o", str(tmp / "bench.csv")])
print((tmp / "bench.csv").read_text())
