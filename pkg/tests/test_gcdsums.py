import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcdsum.analytic import bernoulli_number, log_gamma
from gcdsum.arith import sieve
from gcdsum.gcdsums import (
    DIRECT_CAP,
    ResourceCapError,
    SweepParams,
    A_lhs,
    A_terms,
    H_lhs,
    M_lhs,
    anderson_apostol,
    anderson_apostol_spower,
    cohen_ramanujan,
    family_tables,
    kappa,
    kappa_values,
    nu,
    nu_values,
    pillai,
    pillai_direct,
    power_sum,
    ramanujan_exponential,
)

N = 200
FAMILY_PARAMS = [
    SweepParams(s=2, family="phi_s"),
    SweepParams(s=2, family="psi_s"),
    SweepParams(s=2, family="phi_sa", a=Fraction(-1, 2)),
    SweepParams(s=2, family="psi_sa", a=Fraction(-1, 2)),
]


@pytest.fixture(scope="module")
def t(ctx):
    return {
        "id": sieve("id_a", N, ctx, 1),
        "id2": sieve("id_a", N, ctx, 2),
        "mu": sieve("mobius", N, ctx),
        "one": sieve("one", N, ctx),
        "eps": sieve("unit", N, ctx),
        "tau": sieve("tau", N, ctx),
    }


def close(a, b, tol):
    return abs(a - b) <= tol * (1 + abs(b))


class TestPerK:
    def test_anderson_apostol_examples(self, t):
        assert anderson_apostol(3, 3, t["id"], t["mu"]) == 2
        assert anderson_apostol(2, 4, t["id"], t["mu"]) == -2
        assert anderson_apostol(7, 1, t["tau"], t["id2"]) == 1

    def test_spower_examples(self, t):
        assert anderson_apostol_spower(4, 2, 2, t["id2"], t["mu"]) == 3
        assert anderson_apostol_spower(1, 2, 2, t["id2"], t["mu"]) == -1

    def test_spower_s1_reduces(self, t):
        rng = random.Random(7)
        names = list(t)
        for _ in range(50):
            j, k = rng.randint(1, 500), rng.randint(1, N)
            f, g = t[rng.choice(names)], t[rng.choice(names)]
            assert anderson_apostol_spower(j, k, 1, f, g) == anderson_apostol(j, k, f, g)

    def test_cohen_examples(self, t):
        assert cohen_ramanujan(4, 2, 2) == 3
        assert all(cohen_ramanujan(1, k, s) == t["mu"][k] for k in range(1, 51) for s in (1, 2, 3))
        for k in range(1, 31):
            for j in range(1, 31):
                assert cohen_ramanujan(j, k, 1) == anderson_apostol(j, k, t["id"], t["mu"])

    def test_cohen_matches_spower_form(self, t):
        for s in (1, 2):
            for k in range(1, 51):
                if k ** s > 10 ** 4:
                    break
                ids = sieve("id_a", k, None, s)
                mu = t["mu"].truncate(k)
                for j in range(1, k ** s + 1):
                    v = cohen_ramanujan(j, k, s)
                    assert isinstance(v, int)
                    assert v == anderson_apostol_spower(j, k, s, ids, mu)

    def test_ramanujan_exponential(self, ctx, t):
        rng = random.Random(3)
        for k in range(1, 201):
            for j in {1, k, rng.randint(1, k), rng.randint(1, k)}:
                exp = ramanujan_exponential(j, k, ctx)
                assert abs(exp - anderson_apostol(j, k, t["id"], t["mu"])) <= ctx.identity_tol * k

    def test_pillai(self, t):
        assert pillai(4) == 8 and pillai(6) == 15
        assert all(pillai(n, t["one"]) == n for n in range(1, 101))
        for n in range(1, 101):
            assert pillai(n) == pillai_direct(n)
            assert pillai(n, t["tau"]) == pillai_direct(n, t["tau"])

    def test_short_tables(self, t):
        short = t["id"].truncate(5)
        with pytest.raises(ValueError):
            anderson_apostol(1, 6, short, t["mu"])
        with pytest.raises(ValueError):
            pillai(6, short)
        with pytest.raises(ValueError):
            kappa(6, 2, short, t["one"])


class TestKappaNu:
    def test_kappa_at_one(self, ctx, t):
        for s in (1, 2, 3):
            assert kappa(1, s, t["tau"], t["mu"], ctx) == 0

    def test_kappa_direct_vs_closed(self, ctx, t):
        assert close(kappa(2, 2, t["id2"], t["mu"], ctx, "direct"),
                     kappa(2, 2, t["id2"], t["mu"], ctx), ctx.identity_tol)
        for k in (3, 6, 12, 30):
            for f, g in (("id2", "mu"), ("tau", "one"), ("mu", "id")):
                d = kappa(k, 2, t[f], t[g], ctx, "direct")
                c = kappa(k, 2, t[f], t[g], ctx)
                assert close(d, c, ctx.identity_tol)

    def test_kappa_gauss_form(self, ctx, t):
        # f = eps, g = 1 makes every coefficient 1, so the inner sum is a Gauss product
        mp = ctx.mp
        l2 = ctx.log_sqrt_2pi
        for s in (1, 2):
            for k in range(1, 25):
                ks = k ** s
                ref = (1 - mp.mpf(1) / ks) * l2 - mp.mpf(s) / (2 * ks) * mp.log(k)
                assert close(kappa(k, s, t["eps"], t["one"], ctx), ref, ctx.identity_tol)
                if k <= 6:
                    direct = mp.fsum(log_gamma(Fraction(j, ks), ctx) for j in range(1, ks + 1)) / ks
                    assert close(direct, ref, ctx.identity_tol)

    def test_nu_examples(self, ctx, t):
        for m in (1, 2, 4):
            assert nu(1, 2, m, t["id2"], t["mu"], ctx) == ctx.real(bernoulli_number(m))
        assert close(nu(2, 2, 2, t["id2"], t["mu"], ctx, "direct"),
                     nu(2, 2, 2, t["id2"], t["mu"], ctx), ctx.identity_tol)
        assert nu(10, 2, 3, t["tau"], t["one"], ctx) == 0

    @given(st.integers(1, 40), st.integers(1, 6), st.sampled_from(["id2", "tau", "mu", "id"]),
           st.sampled_from(["mu", "one", "tau"]))
    def test_nu_direct_vs_closed(self, k, m, f, g):
        from gcdsum.analytic import PrecisionContext
        ctx = PrecisionContext(40)
        tabs = {"id2": sieve("id_a", 40, ctx, 2), "id": sieve("id_a", 40, ctx, 1),
                "tau": sieve("tau", 40, ctx), "mu": sieve("mobius", 40, ctx), "one": sieve("one", 40, ctx)}
        d = nu(k, 2, m, tabs[f], tabs[g], ctx, "direct")
        c = nu(k, 2, m, tabs[f], tabs[g], ctx)
        assert close(d, c, ctx.identity_tol)

    def test_nu_sum_chain(self, ctx):
        # sum_{k<=x} nu_1(k; f*mu, 1) = -1/2 sum_{n<=x} f(n)/n^s
        for p in FAMILY_PARAMS:
            ft = family_tables(p, 100, ctx)
            vals = nu_values(100, p.s, 1, ft.F, ctx)
            ref = -ctx.mp.fsum(ctx.real(ft.f[n]) / ctx.mp.mpf(n) ** p.s for n in range(1, 101)) / 2
            assert close(ctx.mp.fsum(vals), ref, ctx.identity_tol)

    @pytest.mark.parametrize("p", FAMILY_PARAMS, ids=lambda p: p.family)
    def test_kappa_sum_is_A(self, ctx, p):
        ft = family_tables(p, 100, ctx)
        kv = kappa_values(100, p.s, ft.F, ctx)
        one = sieve("one", 100, ctx)
        for k in (1, 2, 12, 60, 97):
            assert close(kv[k - 1], kappa(k, p.s, ft.F, one, ctx), ctx.identity_tol)
        partial = ctx.mp.zero
        for x in range(1, 101):
            partial += kv[x - 1]
            if x in (1, 2, 10, 37, 100):
                assert close(partial, A_lhs(x, p, ctx=ctx), ctx.identity_tol)

    @pytest.mark.parametrize("p", FAMILY_PARAMS, ids=lambda p: p.family)
    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_nu_sum_is_H(self, ctx, p, m):
        ft = family_tables(p, 100, ctx)
        nv = nu_values(100, p.s, m, ft.F, ctx)
        q = p.with_(m=m)
        for x in (1, 5, 50, 100):
            assert close(ctx.mp.fsum(nv[:x]), H_lhs(x, q, ctx=ctx), ctx.identity_tol)


class TestSummatory:
    def test_A_at_one(self, ctx):
        for p in FAMILY_PARAMS + [SweepParams(s=3, family="one")]:
            assert A_lhs(1, p, ctx=ctx) == 0

    def test_A_example(self, ctx):
        mp = ctx.mp
        p = SweepParams(s=2, family="phi_s")
        ref = mp.log((2 * mp.pi) ** mp.mpf(1.5) / 2) / 4
        assert close(A_lhs(2, p, ctx=ctx), ref, ctx.identity_tol)
        assert close(A_lhs(2, p, "direct", ctx=ctx), ref, ctx.identity_tol)
        frozen = mp.mpf("0.51591710476351822898093927193966908787717307163827")
        assert abs(A_lhs(2, p, ctx=ctx) - frozen) <= ctx.identity_tol

    def test_A_constant_family(self, ctx):
        mp = ctx.mp
        p = SweepParams(s=2, family="one")
        l2 = ctx.log_sqrt_2pi
        terms = A_terms(50, p, ctx=ctx)
        for k in range(1, 51):
            ref = (1 - mp.mpf(k) ** -2) * l2 - mp.log(k) / k ** 2
            assert close(terms[k - 1], ref, ctx.identity_tol)

    @pytest.mark.parametrize("p", FAMILY_PARAMS, ids=lambda p: p.family)
    def test_A_modes_agree(self, ctx, p):
        for x in (3, 17, 40):
            assert close(A_lhs(x, p, ctx=ctx), A_lhs(x, p, "direct", ctx=ctx), ctx.identity_tol)

    def test_H_examples(self, ctx):
        p = SweepParams(s=2, family="phi_s")
        assert close(H_lhs(2, p, ctx=ctx), ctx.real(Fraction(-7, 8)), ctx.eps)
        assert close(H_lhs(2, p.with_(m=2), ctx=ctx), ctx.real(Fraction(25, 96)), ctx.eps)
        for q in FAMILY_PARAMS:
            assert H_lhs(37, q.with_(m=3), ctx=ctx) == 0
            assert H_lhs(11, q.with_(m=5), "direct", ctx=ctx) == 0

    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_H_modes_agree(self, ctx, m):
        for p in FAMILY_PARAMS:
            q = p.with_(m=m)
            assert close(H_lhs(30, q, ctx=ctx), H_lhs(30, q, "direct", ctx=ctx), ctx.identity_tol)

    def test_M_examples(self, ctx):
        for r in (1, 2, 5):
            for s in (1, 2, 3):
                assert M_lhs(1, SweepParams(s=s, r=r, family="one"), ctx=ctx) == 1
        p = SweepParams(s=2, r=1, family="phi_s")
        assert close(M_lhs(2, p, ctx=ctx), M_lhs(2, p, "direct", ctx=ctx), ctx.identity_tol)

    def test_M_quadratic_constant_family(self, ctx):
        # sum_{j<=n} j^2 = n^3/3 + n^2/2 + n/6 with n = k^s
        p = SweepParams(s=2, r=2, family="one")
        for x in range(1, 21):
            ref = (Fraction(x, 3) + sum(Fraction(1, 2 * k ** 2) for k in range(1, x + 1))
                   + sum(Fraction(1, 6 * k ** 4) for k in range(1, x + 1)))
            assert close(M_lhs(x, p, ctx=ctx), ctx.real(ref), x * ctx.eps)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_M_modes_agree(self, ctx, r):
        for p in FAMILY_PARAMS:
            q = p.with_(r=r)
            assert close(M_lhs(25, q, ctx=ctx), M_lhs(25, q, "direct", ctx=ctx), ctx.identity_tol)

    def test_custom_family(self, ctx):
        f = sieve("tau", 30, ctx)
        p = SweepParams(s=2, family="custom", custom=f)
        assert p.family_label() == "tau"
        assert close(A_lhs(20, p, ctx=ctx), A_lhs(20, p, "direct", ctx=ctx), ctx.identity_tol)

    def test_workers_do_not_change_values(self, ctx):
        p = SweepParams(s=2, family="psi_s")
        assert A_terms(120, p, ctx=ctx, workers=1) == A_terms(120, p, ctx=ctx, workers=4)

    @given(st.integers(0, 12), st.integers(0, 300))
    def test_power_sum(self, p, n):
        assert power_sum(p, n) == sum(i ** p for i in range(n))


class TestParamsAndCaps:
    def test_param_validation(self):
        with pytest.raises(ValueError):
            SweepParams(family="phi_sa")
        with pytest.raises(ValueError):
            SweepParams(family="phi_sa", a=Fraction(-3, 2))
        with pytest.raises(ValueError):
            SweepParams(family="psi_sa", a=0)
        with pytest.raises(ValueError):
            SweepParams(s=0)
        with pytest.raises(ValueError):
            SweepParams(x_grid=(1, 5, 5))
        with pytest.raises(ValueError):
            SweepParams(family="chi")
        assert SweepParams(family="phi_sa", a=-0.25).a == Fraction(-1, 4)

    def test_direct_cap(self, ctx):
        p = SweepParams(s=3, family="one")
        with pytest.raises(ResourceCapError):
            A_lhs(200, p, "direct", ctx=ctx, cap=10 ** 6)
        with pytest.raises(ResourceCapError):
            M_lhs(250, p, "direct", ctx=ctx)
        assert sum(k ** 3 for k in range(1, 251)) > DIRECT_CAP

    def test_per_k_cap(self, ctx, t):
        one = sieve("one", 200, ctx)
        with pytest.raises(ResourceCapError):
            kappa(200, 3, one, one, ctx, "direct")
        with pytest.raises(ResourceCapError):
            nu(200, 3, 2, one, one, ctx, "direct")

    def test_unknown_mode(self, ctx):
        with pytest.raises(ValueError):
            A_lhs(3, SweepParams(), "fast", ctx=ctx)
