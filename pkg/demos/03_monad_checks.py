"""Running the necessary conditions on hand-written monads.

A monad 0 -> A -> B -> C -> 0 is written as three bundle expressions.  Each
check returns pass, fail or unknown with a reason.
"""
import itertools

from quadmonad import MonadCandidate, check_theorem_conditions, kernel_top_chern_test, run_all_checks


def show(m):
    rep = run_all_checks(m)
    print(m)
    for name, verdict in rep.verdicts.items():
        if verdict != "pass":
            print(f"    {name}: {verdict} ({rep.reasons[name]['text']})")
    print("    ->", "rejected" if rep.fatal else "not excluded")


show(MonadCandidate.parse(4, "O", "S'(1) + S''(1) + O(3)", "O(1)"))
show(MonadCandidate.parse(4, "O", "O(1) + O(1) + O(2)", "O(3)"))
show(MonadCandidate.parse(4, "O", "S'(1) + S'(1) + S''(1)", "O(1)"))
show(MonadCandidate.parse(4, "O", "S'(2) + S''(2) + O(3)", "O(2)"))

# The per-degree Betti comparison pins the twist of C.
print("\n(b, c, d) in [-2,2]^3 passing the graded check:")
for b, c, d in itertools.product(range(-2, 3), repeat=3):
    m = MonadCandidate.parse(4, "O", f"O(7) + S'({1 + b}) + S''({1 + c})", f"O({d})")
    if check_theorem_conditions(m).verdicts["cond1_betti0j"] == "pass":
        print(f"  b={b:>2} c={c:>2} d={d:>2}   2+b+c={2 + b + c:>2}  2d={2 * d:>2}")

print("\nTop Chern class of the kernel for A = O, B = O(1)+S'(1+b)+S''(1+b), C = O(1+b):")
for b in range(-2, 4):
    m = MonadCandidate.parse(4, "O", f"O(1) + S'({1 + b}) + S''({1 + b})", f"O({1 + b})")
    r = kernel_top_chern_test(m)
    print(f"  b = {b:>2}: {r.reasons['kernel_top_chern']['text']}")
