"""Published satisfaction percentages used as the reproduction target.

Columns: POP (EV), POP (GM), POIP (EV), POIP (GM), POP Th1, POIP Th2.
Theorem columns are EV-based; None where no value was published.
"""

from .simulator import CIBucket

COLUMNS = ("pop_ev", "pop_gm", "poip_ev", "poip_gm", "th1", "th2")

TABLES = {
    CIBucket.BELOW_010: {
        3: (91.02, 91.02, 96.60, 96.60, 58.25, 7.60),
        4: (90.44, 90.59, 95.79, 95.79, 40.39, 3.50),
        5: (89.70, 89.88, 95.80, 95.82, 32.90, 2.53),
        6: (89.91, 90.01, 95.80, 95.82, 29.41, 2.25),
        7: (89.66, 89.74, 95.83, 95.85, 27.10, 2.12),
        8: (89.57, 89.64, 95.98, 96.00, 26.45, None),
        9: (89.62, 89.70, 96.03, 96.05, 25.28, None),
    },
    CIBucket.AT_OR_ABOVE_010: {
        3: (87.33, 87.33, 96.00, 96.00, 45.83, 5.29),
        4: (85.88, 86.29, 94.01, 94.03, 21.30, 0.53),
        5: (83.64, 84.21, 93.63, 93.69, 9.72, 0.05),
        6: (82.70, 83.06, 93.56, 93.64, 5.45, 0.01),
        7: (82.01, 82.55, 93.43, 93.50, 3.27, 0.00),
        8: (81.71, 82.18, 93.48, 93.55, 2.22, None),
        9: (81.37, 81.83, 93.40, 93.46, 1.52, None),
    },
}


def published(bucket: CIBucket, n: int) -> dict:
    return dict(zip(COLUMNS, TABLES[bucket][n]))
