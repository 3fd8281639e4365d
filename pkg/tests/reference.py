"""Reference values transcribed from published tables (polynomials, matrices, coordinates)."""

# degree-6 polynomials with Perron root below the root of X^3 - X^2 - 1
GENUS3_SMALL = [
    ((1, 1, -1, -3, -1, 1, 1), 1.32472),
    ((1, 0, -1, -1, -1, 0, 1), 1.40127),
]

# degree-6 polynomials with Perron root below 1.72208, P_1 .. P_9
GENUS2_ANALYSIS = [
    ((1, 1, -1, -3, -1, 1, 1), 1.32472),
    ((1, 0, -1, -1, -1, 0, 1), 1.40127),
    ((1, -1, 1, -3, 1, -1, 1), 1.46557),
    ((1, -1, 0, -1, 0, -1, 1), 1.50614),
    ((1, -1, -1, 1, -1, -1, 1), 1.55603),
    ((1, -2, 3, -5, 3, -2, 1), 1.56769),
    ((1, 0, -1, -2, -1, 0, 1), 1.58235),
    ((1, -2, 2, -3, 2, -2, 1), 1.63557),
    ((1, -1, 1, -4, 1, -1, 1), 1.67114),
]

# Lefschetz numbers L(f), L(f^2), L(f^3) listed for P_1 .. P_9 (positive root)
GENUS2_LEFSCHETZ = {
    1: {1: 3}, 3: {2: 3}, 6: {2: 4}, 9: {2: 3},
    2: {1: 2, 3: -1}, 4: {1: 1, 3: -2}, 5: {1: 1, 3: 1}, 7: {1: 2, 3: -4},
}

CUBIC_PAIR = ((1, 0, -1, -1), (1, 1, 0, -1))  # X^3 - X - 1, X^3 + X^2 - 1

GENUS4_SMALL_FACTORED = [
    ((1, 0, 0, -1, -1, -1, 0, 0, 1), 1.28064, None),
    (None, 1.32472, (1, -2, 1)),
    (None, 1.32472, (1, 2, 1)),
    (None, 1.32472, (1, -1, 1)),
    (None, 1.32472, (1, 1, 1)),
    (None, 1.32472, (1, 0, 1)),
]

LEHMER = (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
LEHMER_ROOT = 1.17628

LOWER_TABLE = {
    6: ((1, 0, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 1), 1.17628),
    7: ((1, 1, 0, 0, 0, -1, -1, -1, -1, -1, 0, 0, 0, 1, 1), 1.11548),
    8: ((1, 0, 0, 0, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 0, 0, 1), 1.12876),
}

# decomposition of L(phi^n), n = 1..15
TABLE_P2_NEG_2222 = {
    "L": [2, 0, 5, -4, 7, -3, 16, -12, 23, -25, 46, -55, 80, -112, 160],
    "L(2^3)": [0, 0, 3, 0, 0, 3, 0, 0, 3, 0, 0, -9, 0, 0, 3],
    "L(2^1)": [1, 1, 1, -3, 1, 1, 1, -3, 1, 1, 1, -3, 1, 1, 1],
    "L_ro": [1, -1, 1, -1, 6, -7, 15, -9, 19, -26, 45, -43, 79, -113, 156],
}
TABLE_P1_NEG_2_10 = {
    "L": [2, 2, 5, -2, 7, -1, 9, -2, 14, -13, 13, -17, 28, -33, 40],
    "L(10^1)": [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, -11, 1, 1, 1],
    "L(2^1)": [1, 1, 1, -3, 1, 1, 1, -3, 1, 1, 1, -3, 1, 1, 1],
    "L_ro": [0, 0, 3, 0, 5, -3, 7, 0, 12, -15, 11, -3, 26, -35, 38],
}

GENUS4_PERM = (5, 3, 9, 8, 6, 2, 7, 1, 4)
GENUS4_PATH = (0, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 0)
GENUS4_R = [
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 1, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 1],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 1, 1, 0],
    [1, 1, 0, 1, 0, 0, 1, 0, 0],
]
GENUS3_PERM = (6, 3, 8, 2, 7, 4, 10, 9, 5, 1)
GENUS3_PATH = (1, 1, 1, 0, 0, 1, 0, 1, 0, 0)
GENUS3_R = [
    [1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
]

# Q(alpha), alpha < -1 the root of X^8 + X^5 - X^4 + X^3 + 1 near -1.28;
# vectors hold power-basis coordinates (1, alpha, .., alpha^7)
ALPHA_MINPOLY = (1, 0, 0, 1, -1, 1, 0, 0, 1)
ALPHA_INTERVAL = ("-13/10", "-5/4")
LAMBDA = [
    (0, 1, -2, 1, -1, 0, 1, -1),
    (0, -1, 1, 0, 1, 0, -1, 0),
    (-1, 0, -1, 0, 0, -1, 0, 0),
    (-1, 2, -1, 1, 0, -1, 1, 0),
    (1, -1, 1, 0, 0, 1, 0, 0),
    (-1, 1, -1, 1, -1, -1, 0, -1),
    (1, -2, 2, -2, 1, 1, -1, 1),
    (0, 0, 1, -1, 1, 0, 0, 1),
    (1, 0, 0, 0, 0, 0, 0, 0),
]
TAU = [
    (-1, 0, 0, 0, 0, -1, 0, 0),
    (0, 0, -1, 1, 0, 1, 0, -1),
    (0, 0, -1, 0, -1, 0, 0, -1),
    (0, 1, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, -1, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, -1, 0),
    (0, 1, 0, 0, 0, 0, 0, 0),
    (-1, 0, 0, 0, 0, 0, 0, 0),
]

# polygon vertices p_1 .. p_18 as (x, y)
P_VERTICES = [
    ((0, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0, 0, 0)),
    ((0, 1, -2, 1, -1, 0, 1, -1), (-1, 0, 0, 0, 0, -1, 0, 0)),
    ((0, 0, -1, 1, 0, 0, 0, -1), (-1, 0, -1, 1, 0, 0, 0, -1)),
    ((-1, 0, -2, 1, 0, -1, 0, -1), (-1, 0, -2, 1, -1, 0, 0, -2)),
    ((-2, 2, -3, 2, 0, -2, 1, -1), (-1, 1, -2, 1, -1, 0, 1, -2)),
    ((-1, 1, -2, 2, 0, -1, 1, -1), (-1, 1, -2, 2, -1, 0, 1, -2)),
    ((-2, 2, -3, 3, -1, -2, 1, -2), (-1, 1, -3, 2, -1, 0, 2, -2)),
    ((-1, 0, -1, 1, 0, -1, 0, -1), (-1, 1, -3, 2, -1, 0, 1, -2)),
    ((-1, 0, 0, 0, 1, -1, 0, 0), (-1, 2, -3, 2, -1, 0, 1, -2)),
    ((0, 0, 0, 0, 1, -1, 0, 0), (-2, 2, -3, 2, -1, 0, 1, -2)),
    ((1, -2, 1, -1, 1, 0, -1, 0), (-2, 1, -3, 2, -1, 0, 0, -2)),
    ((1, -3, 3, -2, 2, 0, -2, 1), (-1, 1, -3, 2, -1, 1, 0, -2)),
    ((0, -1, 1, 0, 1, -1, -1, 0), (-1, 1, -3, 2, -1, 1, 1, -2)),
    ((0, 0, 0, 0, 0, -1, 0, 0), (-1, 1, -2, 1, -1, 0, 1, -1)),
    ((1, -1, 1, -1, 1, 0, 0, 1), (-1, 1, -1, 1, -1, 0, 0, -1)),
    ((1, -1, 0, 0, 0, 0, 0, 0), (-1, 0, -1, 1, -1, 0, 0, -1)),
    ((0, -1, 0, 0, 0, 0, 0, 0), (0, 0, -1, 1, -1, 0, 0, -1)),
    ((1, -1, 1, 0, 0, 1, 0, 0), (0, 0, 0, 1, 0, 0, 0, 0)),
]

# their images q_i = A p_i, A = diag(1/alpha, alpha)
Q_VERTICES = [
    ((0, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0, 0, 0)),
    ((1, -2, 1, -1, 0, 1, -1, 0), (0, -1, 0, 0, 0, 0, -1, 0)),
    ((0, -1, 1, 0, 0, 0, -1, 0), (1, -1, 0, 0, 0, 1, 0, 0)),
    ((0, -2, 2, -1, 0, 0, -1, 1), (2, -1, 0, 0, -1, 1, 0, 0)),
    ((2, -3, 4, -2, 0, 1, -1, 2), (2, -1, 1, 0, -1, 1, 0, 1)),
    ((1, -2, 3, -1, 0, 1, -1, 1), (2, -1, 1, 0, 0, 1, 0, 1)),
    ((2, -3, 5, -3, 0, 1, -2, 2), (2, -1, 1, -1, 0, 1, 0, 2)),
    ((0, -1, 2, -1, 0, 0, -1, 1), (2, -1, 1, -1, 0, 1, 0, 1)),
    ((0, 0, 1, 0, 0, 0, 0, 1), (2, -1, 2, -1, 0, 1, 0, 1)),
    ((0, 0, 0, 1, -1, 0, 0, 0), (2, -2, 2, -1, 0, 1, 0, 1)),
    ((-2, 1, -2, 2, -1, -1, 0, -1), (2, -2, 1, -1, 0, 1, 0, 0)),
    ((-3, 3, -3, 3, -1, -2, 1, -1), (2, -1, 1, -1, 0, 1, 1, 0)),
    ((-1, 1, 0, 1, -1, -1, 0, 0), (2, -1, 1, -1, 0, 1, 1, 1)),
    ((0, 0, 0, 0, -1, 0, 0, 0), (1, -1, 1, -1, 0, 0, 0, 1)),
    ((-1, 1, -2, 2, -1, 0, 1, -1), (1, -1, 1, 0, 0, 0, 0, 0)),
    ((-1, 0, -1, 1, -1, 0, 0, -1), (1, -1, 0, 0, 0, 0, 0, 0)),
    ((-1, 0, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0)),
    ((-1, 1, -1, 1, 0, 0, 0, -1), (0, 0, 0, 0, 1, 0, 0, 0)),
]

# pieces of the cut-and-paste: (q, p) pairs related by one translation.
# Rows 1 and 2 carry one index correction each; the uncorrected rows follow.
PIECES = [
    [(8, 1), (14, 2), (3, 3), (4, 17), (6, 18)],
    [(18, 3), (1, 16), (17, 17)],
    [(6, 3), (4, 4), (5, 16)],
    [(11, 4), (12, 5), (13, 14), (9, 15), (10, 16)],
    [(8, 5), (6, 6), (7, 14)],
    [(15, 6), (16, 8), (17, 9), (1, 10), (2, 11), (3, 13), (14, 14)],
    [(9, 6), (13, 7), (8, 8)],
    [(14, 11), (8, 12), (13, 13)],
]
PIECES_AS_PRINTED_ROWS_1_2 = [
    [(8, 1), (14, 2), (3, 3), (4, 18)],
    [(18, 3), (1, 16), (17, 2)],
]

GENUS2_WORDS = [
    ("a1^2.c1.b2.A2.b1", [[1, -3, 0, 1], [1, -2, 0, 1], [0, 2, 2, -1], [0, 1, 1, 0]], (1, -1, -1, -1, 1)),
    ("a1^2.B2.C1.A2.b1", [[1, -1, 1, -1], [1, 0, 1, -1], [0, -1, -1, 2], [0, 0, -1, 1]], (1, -1, 3, -1, 1)),
]
GENUS3_WORD = "a1.a1.b1.c1.a2.b2.c2.c2.A3.B3"
GENUS4_WORD = "a1.b1.c1.a2.b2.c2.b3.c3.b4"
