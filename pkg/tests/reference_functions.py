"""Scalar pure-Python versions of the benchmark formulas.

Written independently of the vectorized package code (plain loops, the
``math`` module, constants retyped) so the two can be cross-checked.
"""

import math

FOX = [-32, -16, 0, 16, 32]
FOX_A = [[FOX[k % 5] for k in range(25)], [FOX[k // 5] for k in range(25)]]

KOW_A = [0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
KOW_B = [4, 2, 1, 0.5, 0.25, 1 / 6, 0.125, 0.1, 1 / 12, 1 / 14, 0.0625]

H3_A = [[3, 10, 30], [0.1, 10, 35], [3, 10, 30], [0.1, 10, 35]]
H3_P = [[0.3689, 0.117, 0.2673], [0.4699, 0.4387, 0.747], [0.1091, 0.8732, 0.5547], [0.0381, 0.5743, 0.8828]]
H6_A = [
    [10, 3, 17, 3.5, 1.7, 8],
    [0.05, 10, 17, 0.1, 8, 14],
    [3, 3.5, 1.7, 10, 17, 8],
    [17, 8, 0.05, 10, 0.1, 14],
]
H6_P = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.665],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
]
H_C = [1, 1.2, 3, 3.2]

SH_A = [
    [4, 4, 4, 4], [1, 1, 1, 1], [8, 8, 8, 8], [6, 6, 6, 6], [3, 7, 3, 7],
    [2, 9, 2, 9], [5, 5, 3, 3], [8, 1, 8, 1], [6, 2, 6, 2], [7, 3.6, 7, 3.6],
]
SH_C = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5]


def f1(x):
    return sum(v * v for v in x)


def f2(x):
    return sum(abs(v) for v in x) + math.prod(abs(v) for v in x)


def f3(x):
    total = 0.0
    for i in range(len(x)):
        total += sum(x[: i + 1]) ** 2
    return total


def f4(x):
    return max(abs(v) for v in x)


def f5(x):
    return sum(100 * (x[i + 1] - x[i] ** 2) ** 2 + (x[i] - 1) ** 2 for i in range(len(x) - 1))


def f6(x):
    return sum(math.floor(v + 0.5) ** 2 for v in x)


def f7(x):
    # noise-free part only
    return sum((i + 1) * v**4 for i, v in enumerate(x))


def f8(x):
    return -sum(v * math.sin(math.sqrt(abs(v))) for v in x)


def f9(x):
    return sum(v * v - 10 * math.cos(2 * math.pi * v) + 10 for v in x)


def f10(x):
    n = len(x)
    return (
        -20 * math.exp(-0.2 * math.sqrt(sum(v * v for v in x) / n))
        - math.exp(sum(math.cos(2 * math.pi * v) for v in x) / n)
        + 20
        + math.e
    )


def f11(x):
    s = sum(v * v for v in x) / 4000
    p = 1.0
    for i, v in enumerate(x):
        p *= math.cos(v / math.sqrt(i + 1))
    return s - p + 1


def _u(v, a, k, m):
    if v > a:
        return k * (v - a) ** m
    if v < -a:
        return k * (-v - a) ** m
    return 0.0


def f12(x):
    n = len(x)
    y = [1 + (v + 1) / 4 for v in x]
    s = 10 * math.sin(math.pi * y[0]) ** 2
    for i in range(n - 1):
        s += (y[i] - 1) ** 2 * (1 + 10 * math.sin(math.pi * y[i + 1]) ** 2)
    s += (y[-1] - 1) ** 2
    return math.pi / n * s + sum(_u(v, 10, 100, 4) for v in x)


def f13(x):
    n = len(x)
    s = math.sin(3 * math.pi * x[0]) ** 2
    for i in range(n - 1):
        s += (x[i] - 1) ** 2 * (1 + math.sin(3 * math.pi * x[i + 1]) ** 2)
    s += (x[-1] - 1) ** 2 * (1 + math.sin(2 * math.pi * x[-1]) ** 2)
    return 0.1 * s + sum(_u(v, 5, 100, 4) for v in x)


def f14(x):
    inner = 0.0
    for j in range(25):
        inner += 1 / (j + 1 + (x[0] - FOX_A[0][j]) ** 6 + (x[1] - FOX_A[1][j]) ** 6)
    return 1 / (1 / 500 + inner)


def f15(x):
    total = 0.0
    for a, b in zip(KOW_A, KOW_B):
        total += (a - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3])) ** 2
    return total


def f16(x):
    a, b = x
    return 4 * a**2 - 2.1 * a**4 + a**6 / 3 + a * b - 4 * b**2 + 4 * b**4


def f17(x):
    a, b = x
    return (b - 5.1 / (4 * math.pi**2) * a**2 + 5 / math.pi * a - 6) ** 2 + 10 * (1 - 1 / (8 * math.pi)) * math.cos(a) + 10


def f18(x):
    a, b = x
    p = 1 + (a + b + 1) ** 2 * (19 - 14 * a + 3 * a**2 - 14 * b + 6 * a * b + 3 * b**2)
    q = 30 + (2 * a - 3 * b) ** 2 * (18 - 32 * a + 12 * a**2 + 48 * b - 36 * a * b + 27 * b**2)
    return p * q


def _hartman(x, A, P):
    total = 0.0
    for i in range(4):
        inner = sum(A[i][k] * (x[k] - P[i][k]) ** 2 for k in range(len(x)))
        total += H_C[i] * math.exp(-inner)
    return -total


def f19(x):
    return _hartman(x, H3_A, H3_P)


def f20(x):
    return _hartman(x, H6_A, H6_P)


def _shekel(x, m):
    total = 0.0
    for i in range(m):
        total += 1 / (sum((x[k] - SH_A[i][k]) ** 2 for k in range(4)) + SH_C[i])
    return -total


def f21(x):
    return _shekel(x, 5)


def f22(x):
    return _shekel(x, 7)


def f23(x):
    return _shekel(x, 10)


MINIMIZATION = {f"F{k}": globals()[f"f{k}"] for k in range(1, 24)}

# Published minimizers of the standard suite, used to check optima.
MINIMIZERS = {
    "F8": [420.9687462275036] * 30,
    "F14": [-31.97833, -31.97833],
    "F15": [0.192833, 0.190836, 0.123117, 0.135766],
    "F16": [0.08984201368301331, -0.7126564032704135],
    "F17": [math.pi, 2.275],
    "F18": [0.0, -1.0],
    "F19": [0.114614, 0.555649, 0.852547],
    "F20": [0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573],
    "F21": [4.00003715, 4.00013327, 3.99994921, 4.00013327],
    "F22": [4.00057291, 4.00068936, 3.99948971, 4.00068936],
    "F23": [4.00074671, 4.00059326, 3.99966290, 4.00059326],
}
