"""Shared randomized builders for the test suite (engine-aware)."""

from wsscheck.lefschetz import DualTriple
from wsscheck.ratlin import RatMatrix, image, intersect, inverse, kernel


def jordan_matrix(sizes):
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for s in sizes:
        for t in range(s - 1):
            rows[off + t][off + t + 1] = 1
        off += s
    return RatMatrix.from_rows(rows, cols=n) if n else RatMatrix.zeros(0, 0)


def random_matrix(rows, cols, rng, lo=-2, hi=2):
    return RatMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def random_invertible(n, rng, lo=-2, hi=2):
    upper = [[0] * n for _ in range(n)]
    lower = [[0] * n for _ in range(n)]
    for i in range(n):
        upper[i][i] = lower[i][i] = 1
        for j in range(i + 1, n):
            upper[i][j] = rng.randint(lo, hi)
            lower[j][i] = rng.randint(lo, hi)
    return RatMatrix.from_rows(upper, cols=n) @ RatMatrix.from_rows(lower, cols=n)


def random_symmetric_nondegenerate(n, rng):
    diag = [[rng.choice((1, -1, 2, -2)) if i == j else 0 for j in range(n)]
            for i in range(n)]
    d = RatMatrix.from_rows(diag, cols=n) if n else RatMatrix.zeros(0, 0)
    t = random_invertible(n, rng) if n else RatMatrix.zeros(0, 0)
    return t.transpose() @ d @ t


def random_dual_triple(rng, max_dim=8):
    """A complex f, g with g o f = 0, Im f inside Im g*, symmetric pairing.

    Built in a normal form and scrambled by a random congruence.  The kernel
    of g contains `a` isotropic directions paired hyperbolically with
    directions g sees, so Ker g ∩ Im g* has dimension exactly a; f covers a
    random subspace of it, deliberately deficient half the time, making both
    verdicts of the duality criterion occur.
    """
    a = rng.randint(0, max_dim // 4)              # isotropic kernel directions
    b = rng.randint(0, (max_dim - 2 * a) // 2)    # anisotropic kernel directions
    c = rng.randint(0, max_dim - 2 * a - b)       # directions surviving g
    if 2 * a + b + c == 0:
        c = 1
    n2 = 2 * a + b + c
    prows = [[0] * n2 for _ in range(n2)]
    for i in range(a):  # hyperbolic pairs (e_i, f_i)
        prows[i][a + i] = prows[a + i][i] = 1
    for j in range(b):
        prows[2 * a + j][2 * a + j] = rng.choice((1, -1, 2))
    for j in range(c):
        prows[2 * a + b + j][2 * a + b + j] = rng.choice((1, -1, 2))
    p = RatMatrix.from_rows(prows, cols=n2)
    grows = []
    for i in range(a):  # kill everything except the f- and v-coordinates
        row = [0] * n2
        row[a + i] = 1
        grows.append(row)
    for j in range(c):
        row = [0] * n2
        row[2 * a + b + j] = 1
        grows.append(row)
    g = RatMatrix.from_rows(grows, cols=n2) if grows else RatMatrix.zeros(0, n2)
    if a and rng.random() < 0.5:
        n1 = rng.randint(0, a - 1)  # cannot cover the isotropic block
    else:
        n1 = rng.randint(0, max_dim)
    coeffs = random_matrix(a, n1, rng)
    frows = [[0] * n1 for _ in range(n2)]
    for i in range(a):
        frows[i] = coeffs.row_list(i)
    f = RatMatrix.from_rows(frows, cols=n1)
    t = random_invertible(n2, rng)
    return DualTriple.build(
        inverse(t) @ f, g @ t, t.transpose() @ p @ t
    )
