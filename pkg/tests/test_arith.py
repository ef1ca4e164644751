import io
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcdsum.arith import (
    ArithTable,
    dirichlet_convolve,
    divisors,
    dump_csv,
    gcd_spower,
    mobius_of,
    parse_function_id,
    pointwise,
    prefix_sums,
    sieve,
    table_from_values,
    weighted_partial_sum,
)


def brute_gcd_spower(j, k, s):
    return max(d ** s for d in range(1, k + 1) if k % d == 0 and j % d ** s == 0)


def brute_jordan(n, s):
    return sum(d ** s * mobius_of(n // d) for d in divisors(n))


def brute_dedekind(n, s):
    return sum(d ** s * abs(mobius_of(n // d)) for d in divisors(n))


class TestSieve:
    def test_examples(self, ctx):
        assert list(sieve("mobius", 6, ctx).values) == [1, -1, -1, 0, -1, 1]
        assert list(sieve("jordan_phi(2)", 6, ctx).values) == [1, 3, 8, 12, 24, 24]
        assert list(sieve("dedekind_psi_gen(2)", 6, ctx).values) == [1, 5, 10, 20, 26, 50]
        assert sum(sieve("tau", 16, ctx).values) == 50

    def test_value_at_one(self, ctx):
        for name, p in (("mobius", None), ("tau", None), ("jordan_phi", 3), ("sigma_a", Fraction(-1, 2)),
                        ("dedekind_psi_gen", Fraction(3, 2)), ("abs_mobius", None), ("id_a", 2)):
            assert sieve(name, 5, ctx, p)[1] == 1

    def test_mangoldt(self, ctx):
        t = sieve("mangoldt", 30, ctx)
        assert t[1] == 0 and t[6] == 0 and t[12] == 0
        assert abs(t[8] - ctx.mp.log(2)) <= ctx.eps
        assert abs(t[27] - ctx.mp.log(3)) <= ctx.eps
        assert t.tags[7] == (2, 3) and t.tags[26] == (3, 3)
        # 1 * Lambda = log
        logs = dirichlet_convolve(sieve("one", 30, ctx), t)
        assert all(abs(logs[n] - ctx.mp.log(n)) <= ctx.identity_tol for n in range(1, 31))

    def test_kinds(self, ctx):
        assert sieve("jordan_phi", 10, ctx, 2).value_kind == "exact-integer"
        assert sieve("jordan_phi", 10, ctx, Fraction(3, 2)).value_kind == "real"
        assert sieve("mangoldt", 10, ctx).value_kind == "real"

    def test_real_exponent_matches_brute(self, ctx):
        t = sieve("jordan_phi", 60, ctx, Fraction(3, 2))
        mp = ctx.mp
        for n in (1, 2, 12, 30, 60):
            ref = mp.fsum(mp.power(d, mp.mpf(3) / 2) * mobius_of(n // d) for d in divisors(n))
            assert abs(t[n] - ref) <= ctx.identity_tol * (1 + abs(ref))

    def test_errors(self, ctx):
        with pytest.raises(ValueError):
            sieve("mobius", 0, ctx)
        with pytest.raises(ValueError):
            sieve("jordan_phi", 5, ctx, 0)
        with pytest.raises(ValueError):
            sieve("jordan_phi", 5, ctx, -1)
        with pytest.raises(ValueError):
            sieve("nope", 5, ctx)
        with pytest.raises(ValueError):
            sieve("sigma_a", 5, ctx)

    def test_parse_function_id(self):
        assert parse_function_id("jordan_phi(2)") == ("jordan_phi", 2)
        assert parse_function_id("mobius") == ("mobius", None)
        assert parse_function_id("sigma_a(-1/2)") == ("sigma_a", Fraction(-1, 2))
        with pytest.raises(ValueError):
            parse_function_id("mobius(2)")

    @given(st.integers(1, 400), st.integers(1, 3))
    def test_jordan_and_dedekind(self, n, s):
        assert sieve("jordan_phi", n, None, s)[n] == brute_jordan(n, s)
        assert sieve("dedekind_psi_gen", n, None, s)[n] == brute_dedekind(n, s)

    def test_immutable(self, ctx):
        t = sieve("tau", 5, ctx)
        with pytest.raises(Exception):
            t.N = 3
        with pytest.raises(IndexError):
            t[0]
        with pytest.raises(IndexError):
            t[6]


class TestConvolution:
    def test_mobius_inversion(self):
        N = 10 ** 4
        eps = dirichlet_convolve(sieve("mobius", N), sieve("one", N))
        assert eps.values == (1,) + (0,) * (N - 1)

    def test_examples(self, ctx):
        assert dirichlet_convolve(sieve("id_a", 6, ctx, 2), sieve("mobius", 6, ctx))[6] == 24
        assert dirichlet_convolve(sieve("one", 50, ctx), sieve("one", 50, ctx)).values == sieve("tau", 50, ctx).values

    def test_jordan_divisor_sum(self):
        N = 10 ** 4
        one = sieve("one", N)
        for s in (1, 2, 3):
            t = dirichlet_convolve(sieve("jordan_phi", N, None, s), one)
            assert all(t[n] == n ** s for n in range(1, N + 1))

    def test_length_mismatch(self, ctx):
        with pytest.raises(ValueError):
            dirichlet_convolve(sieve("one", 5, ctx), sieve("one", 6, ctx))

    def test_phi_phi_factorization(self):
        # (phi_s*phi_s)(n)/n^s = ((mu*mu)/id_s * tau)(n), exact in rationals
        N, s = 1000, 2
        phi = sieve("jordan_phi", N, None, s)
        mu = sieve("mobius", N)
        lhs = dirichlet_convolve(phi, phi)
        mumu = dirichlet_convolve(mu, mu)
        scaled = table_from_values("mumu/id_s", [Fraction(mumu[d], d ** s) for d in range(1, N + 1)])
        rhs = dirichlet_convolve(scaled, sieve("tau", N))
        assert all(Fraction(lhs[n], n ** s) == rhs[n] for n in range(1, N + 1))

    def test_psi_phi_factorization(self):
        N, s = 1000, 2
        phi = sieve("jordan_phi", N, None, s)
        psi = sieve("dedekind_psi_gen", N, None, s)
        mix = dirichlet_convolve(sieve("mobius", N), sieve("abs_mobius", N))
        scaled = table_from_values("mix/id_s", [Fraction(mix[d], d ** s) for d in range(1, N + 1)])
        rhs = dirichlet_convolve(scaled, sieve("tau", N))
        lhs = dirichlet_convolve(psi, phi)
        assert all(Fraction(lhs[n], n ** s) == rhs[n] for n in range(1, N + 1))

    def test_phi_hyperbola(self, ctx):
        # sum_{n<=x} phi_s(n)/n^s = sum_{d<=x} mu(d)/d^s floor(x/d)
        N, s = 10 ** 4, 2
        phi = sieve("jordan_phi", N, ctx, s)
        mu = sieve("mobius", N, ctx)
        mp = ctx.mp
        lhs = prefix_sums([Fraction(phi[n], n ** s) for n in range(1, N + 1)])
        for x in (1, 2, 10, 99, 1000, 4567, N):
            rhs = sum(Fraction(mu[d] * (x // d), d ** s) for d in range(1, x + 1) if mu[d])
            assert lhs[x] == rhs
        # and at working precision
        assert abs(weighted_partial_sum(phi, N, s, ctx) - ctx.real(lhs[N])) <= ctx.identity_tol * mp.mpf(N)

    small_tables = st.lists(st.integers(-5, 5), min_size=1, max_size=64)

    @given(small_tables, small_tables, small_tables)
    def test_algebra(self, a, b, c):
        n = min(len(a), len(b), len(c))
        f, g, h = (table_from_values(name, v[:n]) for name, v in (("f", a), ("g", b), ("h", c)))
        assert dirichlet_convolve(f, g).values == dirichlet_convolve(g, f).values
        assert (dirichlet_convolve(dirichlet_convolve(f, g), h).values
                == dirichlet_convolve(f, dirichlet_convolve(g, h)).values)

    @given(st.lists(st.integers(-9, 9), min_size=512, max_size=512))
    def test_associative_at_512(self, a):
        f = table_from_values("f", a)
        g = sieve("mobius", 512)
        h = sieve("tau", 512)
        assert (dirichlet_convolve(dirichlet_convolve(f, g), h).values
                == dirichlet_convolve(f, dirichlet_convolve(g, h)).values)

    def test_real_tables(self, ctx):
        f = sieve("sigma_a", 40, ctx, Fraction(-1, 2))
        g = sieve("mobius", 40, ctx)
        back = dirichlet_convolve(f, g)  # sigma_a * mu = id_a
        ida = sieve("id_a", 40, ctx, Fraction(-1, 2))
        assert all(abs(back[n] - ida[n]) <= ctx.identity_tol for n in range(1, 41))


class TestGcdSpower:
    def test_examples(self):
        assert gcd_spower(8, 2, 2) == 4
        assert all(gcd_spower(j, 1, s) == 1 for j in (1, 7, 64) for s in (1, 2, 3))
        assert gcd_spower(5, 6, 1) == 1

    @given(st.integers(1, 5000), st.integers(1, 120), st.integers(1, 4))
    def test_matches_definition(self, j, k, s):
        v = gcd_spower(j, k, s)
        assert v == brute_gcd_spower(j, k, s)
        root = round(v ** (1 / s))
        assert root ** s == v and j % v == 0 and k % root == 0

    @given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 4))
    def test_s1_is_gcd(self, j, k):
        assert gcd_spower(j, k, 1) == math.gcd(j, k)

    def test_errors(self):
        with pytest.raises(ValueError):
            gcd_spower(0, 3, 2)


class TestPartialSums:
    def test_examples(self, ctx):
        assert weighted_partial_sum(sieve("one", 5, ctx), 3, 0, ctx) == 3
        assert weighted_partial_sum(sieve("jordan_phi", 5, ctx, 2), 2, 2, ctx) == ctx.real(Fraction(7, 4))
        v = weighted_partial_sum(sieve("mobius", 5, ctx), 4, 2, ctx)
        assert abs(v - ctx.real(Fraction(23, 36))) <= ctx.eps

    def test_non_integer_x_and_weight(self, ctx):
        t = sieve("one", 10, ctx)
        v = weighted_partial_sum(t, Fraction(7, 2), Fraction(1, 2), ctx)
        ref = sum(ctx.mp.power(n, -ctx.mp.mpf(0.5)) for n in (1, 2, 3))
        assert abs(v - ref) <= ctx.identity_tol

    def test_short_table(self, ctx):
        with pytest.raises(ValueError):
            weighted_partial_sum(sieve("one", 5, ctx), 6, 0, ctx)

    def test_prefix_sums(self):
        assert prefix_sums([1, 2, 3]) == [0, 1, 3, 6]
        assert prefix_sums([Fraction(1, 2)] * 2) == [0, Fraction(1, 2), 1]


class TestTables:
    def test_truncate_and_kinds(self, ctx):
        t = table_from_values("r", [Fraction(1, 2), 2, 3])
        assert t.value_kind == "exact-rational" and t.exact
        assert t.truncate(2).values == (Fraction(1, 2), 2)
        with pytest.raises(ValueError):
            t.truncate(5)
        with pytest.raises(ValueError):
            ArithTable("bad", 3, (1, 2), "exact-integer")

    def test_pointwise(self, ctx):
        t = pointwise(sieve("one", 4, ctx), lambda n: n * n)
        assert t.values == (1, 4, 9, 16)

    def test_dump_csv(self, ctx):
        text = dump_csv(sieve("mobius", 3, ctx))
        assert text == "n,value\n1,1\n2,-1\n3,-1\n"
        buf = io.StringIO()
        dump_csv(sieve("mangoldt", 2, ctx), buf)
        line = buf.getvalue().splitlines()[2]
        assert line.startswith("2,0.6931471805599453094172321214581765680755")
