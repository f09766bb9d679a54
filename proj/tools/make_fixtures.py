"""Writes the synthetic two-market price fixtures under data/fixtures/."""

import datetime as dt
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"

SHARED_HOLIDAYS = {dt.date(2009, 1, 1)}
A_HOLIDAYS = {dt.date(2009, 1, 19), dt.date(2009, 2, 16)}
B_HOLIDAYS = {dt.date(2009, 1, 26), dt.date(2009, 1, 27), dt.date(2009, 1, 28)}


def trading_days(start, end, closed):
    d = start
    while d <= end:
        if d.weekday() < 5 and d not in closed:
            yield d
        d += dt.timedelta(days=1)


def walk(rng, days, start, scale):
    price = start
    rows = []
    for d in days:
        rows.append((d, price))
        price = round(price * (1.0 + rng.gauss(0.0, scale)), 2)
    return rows


def write(path, rows):
    with open(path, "w", newline="\n") as f:
        f.write("date,open,adj_close\n")
        for d, p in rows:
            f.write(f"{d.isoformat()},{p:.2f},{p:.2f}\n")


def main():
    rng = random.Random(20090101)
    a_days = list(trading_days(dt.date(2009, 1, 2), dt.date(2009, 2, 18), SHARED_HOLIDAYS | A_HOLIDAYS))
    b_days = list(trading_days(dt.date(2009, 1, 5), dt.date(2009, 2, 20), SHARED_HOLIDAYS | B_HOLIDAYS))
    a = walk(rng, a_days, 9034.69, 0.015)
    b = walk(rng, b_days, 15042.81, 0.018)
    # One exact +0.8% move to exercise the tie rule.
    a[4] = (a[4][0], 9000.00)
    a[5] = (a[5][0], 9072.00)
    OUT.mkdir(parents=True, exist_ok=True)
    write(OUT / "market_a.csv", a)
    # Second market written newest-first, as some exports are.
    write(OUT / "market_b.csv", list(reversed(b)))


if __name__ == "__main__":
    main()
