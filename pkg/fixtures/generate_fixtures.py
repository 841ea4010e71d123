"""Regenerate the checked-in CSV fixtures.

Deterministic (fixed seed), so reruns reproduce the committed files byte for
byte.  t1 carries a 4-dimensional vector column; t3 mirrors t1's scalar
columns so suites that must run without the vector extension have an
equivalent table to query.
"""
import csv
import random
from pathlib import Path

HERE = Path(__file__).parent
SEED = 20260819

GEMS = ["amber", "beryl", "coral", "garnet", "jasper",
        "opal", "peridot", "tiger's eye", "topaz", "zircon"]


def generate() -> None:
    rng = random.Random(SEED)

    with open(HERE / "t1.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["c:int", "a:int", "v:vector"])
        for i in range(100):
            vec = [round(rng.uniform(0.0, 10.0), 3) for _ in range(4)]
            w.writerow([i % 10, i, "[" + ", ".join(repr(x) for x in vec) + "]"])

    with open(HERE / "t2.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["c:int", "b:int", "s:str"])
        for i in range(50):
            w.writerow([i % 10, i, GEMS[i % len(GEMS)]])

    with open(HERE / "t3.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["c:int", "a:int"])
        for i in range(100):
            w.writerow([i % 10, i])


if __name__ == "__main__":
    generate()
    print("wrote", ", ".join(p.name for p in sorted(HERE.glob("*.csv"))))
