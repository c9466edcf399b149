"""Rebuild the data rows of src/quadmonad/data/tensor_facts.txt from the oracles.

Prints the rows; with --check, exits 1 if they differ from the shipped file.
"""
import argparse
import sys

from quadmonad.facts import parse_facts, tensor_facts
from quadmonad.oracles import derive_tensor_rows


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    rows = derive_tensor_rows()
    text = "\n".join(f"{n}  {pair:<7} {i:>2} {deg:>3} {dim:>2}" for n, pair, i, deg, dim in rows)
    if args.check:
        same = parse_facts(text) == tensor_facts()
        print("in sync" if same else "MISMATCH")
        return 0 if same else 1
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
