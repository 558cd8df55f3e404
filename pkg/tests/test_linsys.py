import numpy as np
import pytest

from bsburgers.linsys import (
    CollocationRows,
    CondensationRecord,
    SingularSystemError,
    TridiagonalSystem,
    condense_and_solve,
    thomas_solve,
)


def dense(system):
    n = len(system.diag)
    a = np.diag(np.asarray(system.diag, dtype=float))
    a[np.arange(1, n), np.arange(n - 1)] = system.sub
    a[np.arange(n - 1), np.arange(1, n)] = system.sup
    return a


def random_dominant(rng, n):
    sub = rng.uniform(-1, 1, n - 1)
    sup = rng.uniform(-1, 1, n - 1)
    off = np.zeros(n)
    off[1:] += np.abs(sub)
    off[:-1] += np.abs(sup)
    sign = rng.choice([-1.0, 1.0], n)
    diag = sign * (off + 0.1 + rng.uniform(0, 2, n))
    return TridiagonalSystem(sub, diag, sup, rng.normal(size=n))


def test_identity():
    r = np.array([1.5, -2.0, 3.0])
    sys_ = TridiagonalSystem(np.zeros(2), np.ones(3), np.zeros(2), r)
    np.testing.assert_array_equal(thomas_solve(sys_), r)


@pytest.mark.parametrize(
    "sub,diag,sup,rhs,expected",
    [
        ([1], [2, 2], [1], [3, 3], [1, 1]),
        ([1, 1], [4, 4, 4], [1, 1], [5, 6, 5], [1, 1, 1]),
        ([1, 1], [4, 4, 4], [1, 1], [6, 6, 6], [9 / 7, 6 / 7, 9 / 7]),
    ],
)
def test_small_systems(sub, diag, sup, rhs, expected):
    z = thomas_solve(TridiagonalSystem(np.array(sub), np.array(diag), np.array(sup), np.array(rhs)))
    np.testing.assert_allclose(z, expected, rtol=1e-15)


def test_input_unmodified():
    rng = np.random.default_rng(0)
    s = random_dominant(rng, 10)
    copies = [np.array(v, copy=True) for v in (s.sub, s.diag, s.sup, s.rhs)]
    thomas_solve(s)
    for before, after in zip(copies, (s.sub, s.diag, s.sup, s.rhs)):
        np.testing.assert_array_equal(before, after)


def test_random_dominant_residuals():
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        s = random_dominant(rng, int(rng.integers(1, 40)))
        z = thomas_solve(s)
        scale = max(1.0, np.max(np.abs(s.rhs)))
        assert np.max(np.abs(s.matvec(z) - s.rhs)) <= 1e-12 * scale


def test_agrees_with_dense_elimination():
    rng = np.random.default_rng(99)
    for _ in range(50):
        s = random_dominant(rng, 8)
        np.testing.assert_allclose(thomas_solve(s), np.linalg.solve(dense(s), s.rhs), atol=1e-10)


def test_zero_pivot_names_row():
    s = TridiagonalSystem(np.array([1.0]), np.array([1.0, 1.0]), np.array([1.0]), np.ones(2))
    with pytest.raises(SingularSystemError) as info:
        thomas_solve(s)
    assert info.value.row == 1
    assert "row 1" in str(info.value)


def test_inconsistent_lengths_rejected():
    with pytest.raises(ValueError):
        TridiagonalSystem(np.ones(3), np.ones(3), np.ones(2), np.ones(3))


def _full_matrix(rows, record):
    m1 = len(rows.diag)
    a = np.zeros((m1 + 2, m1 + 2))
    b = np.zeros(m1 + 2)
    a[0, :3] = record.left
    b[0] = record.left_value
    for i in range(m1):
        a[i + 1, i : i + 3] = rows.lower[i], rows.diag[i], rows.upper[i]
        b[i + 1] = rows.rhs[i]
    a[-1, -3:] = record.right
    b[-1] = record.right_value
    return a, b


def test_condense_constant():
    # Value rows (1, 4, 1) at the ends would repeat rows 0 and m, so close
    # the system with zero-slope rows instead.
    m = 10
    ones = np.ones(m + 1)
    rows = CollocationRows(ones, 4 * ones, ones, 6 * ones)
    rec = CondensationRecord((-30.0, 0.0, 30.0), 0.0, (-30.0, 0.0, 30.0), 0.0)
    np.testing.assert_allclose(condense_and_solve(rows, rec), np.ones(m + 3), rtol=1e-14)


def test_condense_derivative_rows_linear_ramp():
    m = 20
    h = 1.0 / m
    x = np.arange(m + 1) * h
    ones = np.ones(m + 1)
    rows = CollocationRows(ones, 4 * ones, ones, x)
    k = 3 / h
    rec = CondensationRecord((-k, 0.0, k), 1.0, (-k, 0.0, k), 1.0)
    sigma = condense_and_solve(rows, rec)
    np.testing.assert_allclose(sigma, np.arange(-1, m + 2) * h / 6, atol=1e-14)


def test_condense_zero():
    m = 5
    z = np.zeros(m + 1)
    rows = CollocationRows(z + 1, z + 4, z + 1, z)
    rec = CondensationRecord((-1.0, 0.0, 1.0), 0.0, (-1.0, 0.0, 1.0), 0.0)
    np.testing.assert_array_equal(condense_and_solve(rows, rec), np.zeros(m + 3))


def test_condense_matches_full_system():
    rng = np.random.default_rng(5)
    m = 12
    lower = rng.uniform(-1, 1, m + 1)
    upper = rng.uniform(-1, 1, m + 1)
    diag = 6 + rng.uniform(0, 1, m + 1)
    rows = CollocationRows(lower, diag, upper, rng.normal(size=m + 1))
    rec = CondensationRecord((1.0, 4.0, 1.0), 0.3, (1.0, 4.0, 1.0), -0.7)
    sigma = condense_and_solve(rows, rec)
    a, b = _full_matrix(rows, rec)
    np.testing.assert_allclose(a @ sigma, b, atol=1e-12)
    np.testing.assert_allclose(sigma, np.linalg.solve(a, b), atol=1e-12)


def test_duplicated_boundary_row_is_singular():
    m = 6
    ones = np.ones(m + 1)
    rows = CollocationRows(ones, 4 * ones, ones, 6 * ones)
    rec = CondensationRecord((1.0, 4.0, 1.0), 6.0, (1.0, 4.0, 1.0), 6.0)
    with pytest.raises(SingularSystemError):
        condense_and_solve(rows, rec)


def test_record_requires_ghost_coefficient():
    with pytest.raises(ValueError):
        CondensationRecord((0.0, 4.0, 1.0), 0.0, (1.0, 4.0, 1.0), 0.0)
