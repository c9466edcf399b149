"""The full bounded classification on Q_4 ... Q_8.

Every normalized candidate with twists in [-T, T] is generated (implicitly)
and pruned; survivors are compared against the known list of monads.
"""
import time

from quadmonad import SearchConfig, classify

for rank in (2, 3):
    for n in range(4, 9):
        t0 = time.perf_counter()
        res = classify(SearchConfig(n, rank, twist_bound=5))
        dt = time.perf_counter() - t0
        print(f"Q_{n}, rank {rank}: {res.rejected_count:>9} candidates rejected in {dt:.2f}s")
        for s in res.survivors:
            extra = f"   a in {list(s.a_values)}" if s.parametric else ""
            print(f"    {s.matched or '?':<5} {s.describe()}{extra}")
        top = sorted(res.rejections_by_condition.items(), key=lambda kv: -kv[1])[:3]
        print("    main filters:", ", ".join(f"{k} ({v})" for k, v in top))

print("\nWithout spinor bundles nothing survives:")
print(" ", [len(classify(SearchConfig(n, r, 5, spinors_enabled=False)).survivors) for n in range(4, 9) for r in (2, 3)])
