"""Independent reference for the fixture symbol files.

Aligns the two fixture markets on the union of their dates, fills gaps by
linear interpolation on the union-calendar position, trims dates without a
neighbor on both sides, and quantizes percent changes with exact rational
arithmetic (0 below -0.8%, 2 above +0.8%, else 1).
"""

import csv
import pathlib
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "data" / "fixtures"
OUT = pathlib.Path(__file__).resolve().parent / "stocks"
THRESHOLD = Fraction(8, 1000)


def load(path):
    with open(path) as f:
        return {row["date"]: Fraction(row["adj_close"]) for row in csv.DictReader(f)}


def fill(series, dates):
    known = [i for i, d in enumerate(dates) if d in series]
    out = []
    for i, d in enumerate(dates):
        if d in series:
            out.append(series[d])
            continue
        left = [k for k in known if k < i]
        right = [k for k in known if k > i]
        if not left or not right:
            out.append(None)
            continue
        l, r = left[-1], right[0]
        pl, pr = series[dates[l]], series[dates[r]]
        out.append(pl + (pr - pl) * Fraction(i - l, r - l))
    return out


def quantize(prices):
    out = []
    for prev, cur in zip(prices, prices[1:]):
        r = (cur - prev) / prev
        out.append(0 if r < -THRESHOLD else 2 if r > THRESHOLD else 1)
    return out


def main():
    a = load(FIXTURES / "market_a.csv")
    b = load(FIXTURES / "market_b.csv")
    dates = sorted(set(a) | set(b))
    fa, fb = fill(a, dates), fill(b, dates)
    keep = [i for i in range(len(dates)) if fa[i] is not None and fb[i] is not None]
    dates = [dates[i] for i in keep]
    OUT.mkdir(parents=True, exist_ok=True)
    for name, filled in (("a", fa), ("b", fb)):
        symbols = quantize([filled[i] for i in keep])
        with open(OUT / f"symbols_{name}.csv", "w", newline="\n") as f:
            f.write("date,symbol\n")
            for d, s in zip(dates[1:], symbols):
                f.write(f"{d},{s}\n")


if __name__ == "__main__":
    main()
