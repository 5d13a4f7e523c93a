"""Weighted versus uniform enumeration: operation counts and timings.

The weighted alphabet is A..L with weights 1,1,4,4,4,4,7,7,7,7,7,7; the
uniform one has the same twelve symbols at weight 1. Counts are exact and
reproducible; timings are local and only reported.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass

from ._backend import BACKENDS
from .alphabet import PAPER_ALPHABET, UNIFORM12_ALPHABET
from .enumerator import march

BENCH_ALPHABETS = {"weighted": PAPER_ALPHABET, "uniform": UNIFORM12_ALPHABET}

CSV_COLUMNS = ("alphabet", "q", "stored", "unions_attempted", "duplicates_rejected", "elapsed_seconds")

# stand-in for a zero timing on a log axis
TIME_FLOOR = 1e-7


@dataclass(frozen=True)
class BenchRow:
    alphabet_label: str
    q: int
    stored: int
    unions_attempted: int
    duplicates_rejected: int
    elapsed_seconds: float


def _counts(stats):
    return [(s.q, s.stored, s.unions_attempted, s.duplicates_rejected) for s in stats]


def run_bench(
    max_comp: int = 14,
    repetitions: int = 3,
    *,
    workers: int = 1,
    backend: str | None = None,
) -> list[BenchRow]:
    """One row per (alphabet, level); elapsed is the minimum over kept repetitions.

    An extra warm-up march runs first and is discarded.
    """
    if max_comp < 1:
        raise ValueError("max_comp must be >= 1")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    rows = []
    for label, alphabet in BENCH_ALPHABETS.items():
        march(alphabet, max_comp, workers=workers, backend=backend)
        runs = [march(alphabet, max_comp, workers=workers, backend=backend).stats for _ in range(repetitions)]
        reference = _counts(runs[0])
        for other in runs[1:]:
            if _counts(other) != reference:
                raise RuntimeError(f"non-deterministic counts for {label!r}")
        for i, s in enumerate(runs[0]):
            rows.append(
                BenchRow(
                    alphabet_label=label,
                    q=s.q,
                    stored=s.stored,
                    unions_attempted=s.unions_attempted,
                    duplicates_rejected=s.duplicates_rejected,
                    elapsed_seconds=min(r[i].elapsed for r in runs),
                )
            )
    rows.sort(key=lambda r: (r.alphabet_label, r.q))
    return rows


def emit_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sorted(rows, key=lambda r: (r.alphabet_label, r.q)):
        writer.writerow(astuple(row))
    return buf.getvalue()


_PLOT_TEMPLATE = '''\
"""Time per complexity level, weighted versus uniform alphabet (log scale)."""
import csv
import io
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

FLOOR = {floor!r}  # zero timings are drawn at this floor
DATA = """\\
{data}"""

series = {{}}
for row in csv.DictReader(io.StringIO(DATA)):
    q = int(row["q"])
    elapsed = max(float(row["elapsed_seconds"]), FLOOR)
    series.setdefault(row["alphabet"], []).append((q, elapsed))

fig, ax = plt.subplots(figsize=(6, 4))
for label, points in sorted(series.items()):
    points.sort()
    ax.plot([p[0] for p in points], [p[1] for p in points], marker="o", label=label)
ax.set_yscale("log")
ax.set_xlabel("complexity q")
ax.set_ylabel("elapsed_seconds")
ax.set_title("Time per level: weighted vs uniform")
ax.legend()
fig.tight_layout()
out = sys.argv[1] if len(sys.argv) > 1 else "bench.png"
fig.savefig(out, dpi=120)
print(out)
'''


def emit_plot_script(rows) -> str:
    """A standalone matplotlib script with the CSV data embedded.

    Run it as ``python script.py [out.png]``.
    """
    return _PLOT_TEMPLATE.format(floor=TIME_FLOOR, data=emit_csv(rows))


def compare_backends(max_comp: int = 14, repetitions: int = 3) -> list[dict]:
    """Total march time per (alphabet, kernel backend); best of *repetitions*."""
    results = []
    for label, alphabet in BENCH_ALPHABETS.items():
        for backend in sorted(BACKENDS):
            march(alphabet, max_comp, backend=backend)
            best = float("inf")
            attempted = None
            for _ in range(repetitions):
                start = time.perf_counter()
                res = march(alphabet, max_comp, backend=backend)
                best = min(best, time.perf_counter() - start)
                attempted = sum(s.unions_attempted for s in res.stats)
            results.append(
                {"alphabet": label, "backend": backend, "seconds": best, "unions_attempted": attempted}
            )
    return results

