#!/usr/bin/env python3
"""Time the compiled squeeze kernel against the pure-Python fallback.

Usage: python benchmarks/bench_backends.py [max_comp] [repetitions]
"""
import sys

from compactsearch.bench import compare_backends


def main():
    max_comp = int(sys.argv[1]) if len(sys.argv) > 1 else 14
    reps = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    results = compare_backends(max_comp, reps)
    print(f"{'alphabet':<10} {'backend':<8} {'seconds':>10} {'unions':>10} {'speedup':>8}")
    by_alphabet = {}
    for r in results:
        by_alphabet.setdefault(r["alphabet"], {})[r["backend"]] = r
    for label, rows in by_alphabet.items():
        base = rows["python"]["seconds"]
        for backend, r in sorted(rows.items()):
            print(f"{label:<10} {backend:<8} {r['seconds']:>10.5f} {r['unions_attempted']:>10} "
                  f"{base / r['seconds']:>7.1f}x")


if __name__ == "__main__":
    main()
