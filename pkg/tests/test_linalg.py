import random
from fractions import Fraction as F

from mgt.linalg import green_numden, laplacian_int, solve_spd
from mgt import families


def fraction_solve(matrix, rhs):
    """Plain Gaussian elimination over Fractions, as an oracle."""
    n = len(matrix)
    a = [[F(matrix[i][j]) for j in range(n)] + [F(rhs[i])] for i in range(n)]
    for k in range(n):
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(k, n + 1):
                a[i][j] -= f * a[k][j]
    x = [F(0)] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n]
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def random_spd(rng, n):
    b = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
    return [
        [sum(b[k][i] * b[k][j] for k in range(n)) + (n if i == j else 0) for j in range(n)]
        for i in range(n)
    ]


def test_solve_spd_matches_fraction_elimination():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 7)
        m = random_spd(rng, n)
        rhs = [rng.randint(-9, 9) for _ in range(n)]
        (got,) = solve_spd(m, [rhs])
        assert got == fraction_solve(m, rhs)


def test_green_symmetric_with_zero_ground():
    rng = random.Random(8)
    for _ in range(20):
        g = families.random_connected(rng, 6, 9)
        num, den = green_numden(g.vcount, g.edges)
        assert den > 0
        for i in range(g.vcount):
            assert num[0][i] == num[i][0] == 0
            for j in range(g.vcount):
                assert num[i][j] == num[j][i]


def test_laplacian_row_sums():
    g = families.complete(4)
    m, scale, index = laplacian_int(g.vcount, g.edges)
    # reduced row sums equal the conductance into the ground vertex
    ground_conductance = sum(
        scale * e.length.denominator // e.length.numerator
        for e in g.edges
        if 0 in (e.a, e.b) and e.a != e.b
    )
    total = sum(sum(row) for row in m)
    assert total == ground_conductance
