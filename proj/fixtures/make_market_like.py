"""AR(1)-plus-noise daily "closes" on business days from 2001-09-28.

Synthetic; not market data. Closes are rounded to cents, so some adjacent
days tie, as in real daily closes.
"""
import csv
import datetime
import sys

import numpy as np

rng = np.random.default_rng(20010928)
n = int(sys.argv[2]) if len(sys.argv) > 2 else 1200
phi, level = 0.97, 1500.0
y = 0.0
day = datetime.date(2001, 9, 28)
with open(sys.argv[1], "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["date", "close"])
    for _ in range(n):
        y = phi * y + rng.normal(0.0, 1.0)
        close = level + 15.0 * y + rng.normal(0.0, 2.0)
        w.writerow([day.isoformat(), f"{close:.2f}"])
        day += datetime.timedelta(days=1)
        while day.weekday() >= 5:
            day += datetime.timedelta(days=1)
