"""Explicit 7x7 generators of compact G2 (C) and split G2(2) (Q).

Entries are (row, column, value) with 1-based indices; rows/columns i = 1..7
correspond to the imaginary units e_i.  Matrices 8..14 carry an extra
overall factor 1/sqrt(3).
"""

C_ENTRIES = {
    1: [(4, 7, -1), (5, 6, -1), (6, 5, 1), (7, 4, 1)],
    2: [(4, 6, 1), (5, 7, -1), (6, 4, -1), (7, 5, 1)],
    3: [(4, 5, -1), (5, 4, 1), (6, 7, -1), (7, 6, 1)],
    4: [(2, 7, 1), (3, 6, 1), (6, 3, -1), (7, 2, -1)],
    5: [(2, 6, -1), (3, 7, 1), (6, 2, 1), (7, 3, -1)],
    6: [(2, 5, 1), (3, 4, -1), (4, 3, 1), (5, 2, -1)],
    7: [(2, 4, -1), (3, 5, -1), (4, 2, 1), (5, 3, 1)],
    8: [(2, 3, -2), (3, 2, 2), (4, 5, 1), (5, 4, -1), (6, 7, -1), (7, 6, 1)],
    9: [(1, 2, -2), (2, 1, 2), (4, 7, 1), (5, 6, -1), (6, 5, 1), (7, 4, -1)],
    10: [(1, 3, -2), (3, 1, 2), (4, 6, -1), (5, 7, -1), (6, 4, 1), (7, 5, 1)],
    11: [(1, 4, -2), (2, 7, -1), (3, 6, 1), (4, 1, 2), (6, 3, -1), (7, 2, 1)],
    12: [(1, 5, -2), (2, 6, 1), (3, 7, 1), (5, 1, 2), (6, 2, -1), (7, 3, -1)],
    13: [(1, 6, -2), (2, 5, -1), (3, 4, -1), (4, 3, 1), (5, 2, 1), (6, 1, 2)],
    14: [(1, 7, -2), (2, 4, 1), (3, 5, -1), (4, 2, -1), (5, 3, 1), (7, 1, 2)],
}

Q_ENTRIES = {
    1: [(4, 7, -1), (5, 6, -1), (6, 5, 1), (7, 4, 1)],
    2: [(4, 6, 1), (5, 7, -1), (6, 4, -1), (7, 5, 1)],
    3: [(4, 5, -1), (5, 4, 1), (6, 7, -1), (7, 6, 1)],
    4: [(2, 7, 1), (3, 6, 1), (6, 3, 1), (7, 2, 1)],
    5: [(2, 6, -1), (3, 7, 1), (6, 2, -1), (7, 3, 1)],
    6: [(2, 5, 1), (3, 4, -1), (4, 3, -1), (5, 2, 1)],
    7: [(2, 4, -1), (3, 5, -1), (4, 2, -1), (5, 3, -1)],
    8: [(2, 3, -2), (3, 2, 2), (4, 5, 1), (5, 4, -1), (6, 7, -1), (7, 6, 1)],
    9: [(1, 2, -2), (2, 1, 2), (4, 7, 1), (5, 6, -1), (6, 5, 1), (7, 4, -1)],
    10: [(1, 3, -2), (3, 1, 2), (4, 6, -1), (5, 7, -1), (6, 4, 1), (7, 5, 1)],
    11: [(1, 4, -2), (2, 7, -1), (3, 6, 1), (4, 1, -2), (6, 3, 1), (7, 2, -1)],
    12: [(1, 5, -2), (2, 6, 1), (3, 7, 1), (5, 1, -2), (6, 2, 1), (7, 3, 1)],
    13: [(1, 6, -2), (2, 5, -1), (3, 4, -1), (4, 3, -1), (5, 2, -1), (6, 1, -2)],
    14: [(1, 7, -2), (2, 4, 1), (3, 5, -1), (4, 2, 1), (5, 3, -1), (7, 1, -2)],
}

SCALED_FROM = 8  # matrices with index >= 8 are multiplied by 1/sqrt(3)

# Z2 x Z2 stabilizer of the Cartan pair (C5, C11) inside SO(4)
SIGMA_DIAG = (1, -1, -1, 1, 1, -1, -1)
ETA_ENTRIES = [(1, 1, -1), (2, 3, 1), (3, 2, 1), (4, 4, -1), (5, 5, 1), (6, 7, -1), (7, 6, -1)]
