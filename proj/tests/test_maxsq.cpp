#include <doctest.h>

#include <cmath>

#include "mellincalc/maxsq.hpp"
#include "oracles.hpp"

using namespace mellincalc;

namespace {

double max_abs_diff(const Signal& a, const Signal& b) {
    double w = 0.0;
    for (size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
    return w;
}

}  // namespace

TEST_CASE("maximal function: identity and heat sanity") {
    auto m = build_cycle_laplacian(8);
    Signal f = random_signal(m, 31, 0);
    auto mr = maximal_function(m, builtin_catalog("one"), f, TGrid{});
    for (size_t x = 0; x < f.size(); ++x)
        CHECK(mr.values[x].real() == doctest::Approx(std::abs(f[x])).epsilon(1e-12));
    CHECK(mr.stable);

    Signal e0(m.basis[2].begin(), m.basis[2].end());
    auto mh = maximal_function(m, builtin_catalog("heat"), e0, TGrid{});
    for (size_t x = 0; x < e0.size(); ++x)
        CHECK(mh.values[x].real() == doctest::Approx(std::abs(e0[x])).epsilon(1e-3).scale(1.0));
}

TEST_CASE("maximal function matches a much finer t-grid") {
    auto m = build_cycle_laplacian(16);
    Signal f = random_signal(m, 7, 1);
    auto phi = builtin_catalog("bochner_riesz", {4.0});
    auto coarse = maximal_function(m, phi, f, TGrid{});
    auto fine = maximal_function(m, phi, f, TGrid{-40, 40, 80});
    double scale = 0.0;
    for (auto& v : fine.values) scale = std::max(scale, v.real());
    CHECK(max_abs_diff(coarse.values, fine.values) / scale < 1e-3);
}

TEST_CASE("discrete maximal function") {
    auto m = build_cycle_laplacian(8);
    Signal f = random_signal(m, 99, 2);
    auto md = maximal_discrete(m, builtin_catalog("one"), f, -40, 40);
    for (size_t x = 0; x < f.size(); ++x)
        CHECK(md[x].real() == doctest::Approx(std::abs(f[x])).epsilon(1e-12));

    auto phi = builtin_catalog("heat");
    auto cont = maximal_function(m, phi, f, TGrid{});
    auto disc = maximal_discrete(m, phi, f, -40, 40);
    double scale = 0.0;
    for (auto& v : cont.values) scale = std::max(scale, v.real());
    for (size_t x = 0; x < f.size(); ++x) {
        CHECK(disc[x].real() <= cont.values[x].real() + 1e-12 * scale);  // subset sup
        CHECK(cont.values[x].real() - disc[x].real() <= 0.02 * scale);   // Q=8 gap
    }
    CHECK_THROWS(maximal_discrete(m, phi, f, 3, 2));
}

TEST_CASE("square function: zero, eigenvector value, isometry") {
    auto m = build_cycle_laplacian(16);
    Signal f = random_signal(m, 5, 3);
    auto z = square_function(m, builtin_catalog("zero"), f, TGrid{});
    for (auto& v : z) CHECK(std::abs(v) == 0.0);

    CHECK_THROWS(square_function(m, builtin_catalog("heat"), f, TGrid{}));

    // int (t lam)^2 e^{-2 t lam} dt/t = 1/4, so S maps e_i to |e_i| / 2
    auto sheat = builtin_catalog("sheat");
    Signal e1(m.basis[1].begin(), m.basis[1].end());
    auto se = square_function(m, sheat, e1, TGrid{});
    for (size_t x = 0; x < e1.size(); ++x)
        CHECK(se[x].real() == doctest::Approx(0.5 * std::abs(e1[x])).epsilon(1e-6).scale(0.1));

    // L2 isometry with c^2 = int |psi|^2 ds/s for the compactly supported psi
    auto psi = builtin_catalog("br_psi", {4.0});
    double c2 = oracles::quad<double>([](double s) { return s * std::pow(1.0 - s, 8.0); }, 0.0, 1.0);
    double c = std::sqrt(c2);
    for (int k = 0; k < 5; ++k) {
        Signal g = random_signal(m, 50, k);
        double r = lp_norm(m, square_function(m, psi, g, TGrid{}), 2.0) / lp_norm(m, g, 2.0);
        CHECK(r == doctest::Approx(c).epsilon(1e-3));
    }
}

TEST_CASE("discrete square function") {
    auto m = build_cycle_laplacian(8);
    Signal f = random_signal(m, 21, 0);
    auto z = square_function_discrete(m, builtin_catalog("zero"), f, -10, 10);
    for (auto& v : z) CHECK(std::abs(v) == 0.0);

    auto phi = builtin_catalog("heat");
    auto one_k = square_function_discrete(m, phi, f, 3, 3);
    auto direct = spectral_apply(m, scale_argument(phi, std::exp2(-3.0)), f);
    for (size_t x = 0; x < f.size(); ++x)
        CHECK(one_k[x].real() == doctest::Approx(std::abs(direct[x])).epsilon(1e-12));

    // support in [1, 4] touches at most 3 dyadic scales per eigenvalue
    auto win = scale_argument(builtin_catalog("bump"), 0.5);  // support [1, 4]
    int nonzero_scales = 0;
    double lam = m.eigenvalues[2];
    for (int k = -40; k <= 40; ++k)
        if (std::abs(win.eval(std::exp2(-k) * lam)) > 0.0) ++nonzero_scales;
    CHECK(nonzero_scales <= 3);
    auto sd = square_function_discrete(m, win, f, -40, 40);
    // term-by-term spectral oracle
    auto c = coefficients(m, f);
    std::vector<double> acc(m.npoints, 0.0);
    for (int k = -40; k <= 40; ++k) {
        for (int x = 0; x < m.npoints; ++x) {
            cplx v = 0.0;
            for (int i = 0; i < m.dim; ++i)
                v += win.eval(std::exp2(-k) * m.eigenvalues[i]) * c[i] * m.basis[i][x];
            acc[x] += std::norm(v);
        }
    }
    for (int x = 0; x < m.npoints; ++x)
        CHECK(sd[x].real() == doctest::Approx(std::sqrt(acc[x])).epsilon(1e-12));
}

TEST_CASE("mellin form of the square function") {
    auto m8 = build_cycle_laplacian(8);
    LogGrid sg{1e-8, 1e8, 1024};
    UGrid ug{64.0, 1.0 / 64};

    auto zero = mellin_transform(builtin_catalog("zero"), sg, ug);
    Signal f = random_signal(m8, 13, 2);
    auto sz = square_function_mellin(m8, f, zero);
    for (auto& v : sz) CHECK(std::abs(v) == 0.0);

    auto sheat = builtin_catalog("sheat");
    auto Ms = mellin_transform(sheat, sg, ug);
    Signal e2(m8.basis[2].begin(), m8.basis[2].end());
    auto sm = square_function_mellin(m8, e2, Ms);
    for (size_t x = 0; x < e2.size(); ++x)
        CHECK(sm[x].real() == doctest::Approx(0.5 * std::abs(e2[x])).epsilon(1e-3).scale(0.1));

    auto psi = builtin_catalog("br_psi", {4.0});
    auto Mp = mellin_transform(psi, sg, ug);
    auto direct = square_function(m8, psi, f, TGrid{});
    auto viamel = square_function_mellin(m8, f, Mp);
    double scale = 0.0;
    for (auto& v : direct) scale = std::max(scale, v.real());
    CHECK(max_abs_diff(direct, viamel) / scale < 1e-2);
}

TEST_CASE("cowling reconstruction") {
    auto m = build_cycle_laplacian(8);
    LogGrid sg{1e-8, 1e8, 1024};
    UGrid ug{512.0, 1.0 / 64};

    // heat: both sides vanish identically
    auto Ah = a_phi(builtin_catalog("heat"), sg, ug);
    Signal f = random_signal(m, 17, 0);
    auto rh = cowling_reconstruct(m, builtin_catalog("heat"), f, 1.0, Ah);
    CHECK(rh.lhs_scale == 0.0);
    CHECK(rh.max_rel_residual < 1e-12);

    // constant: lhs = (1 - e^{-t lam}) f on eigenvectors
    auto one = builtin_catalog("one");
    auto A1 = a_phi(one, sg, ug);
    Signal e0(m.basis[0].begin(), m.basis[0].end());
    auto r1 = cowling_reconstruct(m, one, e0, 1.0, A1);
    double lam = m.eigenvalues[0];
    for (size_t x = 0; x < e0.size(); ++x) {
        double expect = (1.0 - std::exp(-lam)) * e0[x].real();
        CHECK(r1.lhs[x].real() == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
        CHECK(std::abs(r1.rhs[x] - r1.lhs[x]) < 1e-2);
    }
    CHECK(r1.max_rel_residual < 1e-2);

    // compact-support family at several scales, plus decrease under doubling
    auto br = builtin_catalog("bochner_riesz", {6.0});
    auto Ab = a_phi(br, sg, ug);
    double worst = 0.0;
    for (double t : {0.1, 1.0, 10.0})
        worst = std::max(worst, cowling_reconstruct(m, br, f, t, Ab).max_rel_residual);
    CHECK(worst < 1e-2);

    UGrid ug2{1024.0, 1.0 / 64};
    auto A1b = a_phi(one, sg, ug2);
    double w1 = 0.0, w2 = 0.0;
    for (double t : {0.1, 1.0, 10.0}) {
        w1 = std::max(w1, cowling_reconstruct(m, one, f, t, A1).max_rel_residual);
        w2 = std::max(w2, cowling_reconstruct(m, one, f, t, A1b).max_rel_residual);
    }
    CHECK(w1 < 1e-2);
    CHECK(w2 < w1);  // truncation error shrinks with the u-window
}

TEST_CASE("maximal function dilation covariance in the operator") {
    // scaling every eigenvalue by c leaves sup_t |phi(tL)f| unchanged
    auto m = build_cycle_laplacian(8);
    auto scaled = m;
    for (auto& lam : scaled.eigenvalues) lam *= 2.0;
    Signal f = random_signal(m, 3, 1);
    auto phi = builtin_catalog("bochner_riesz", {4.0});
    auto a = maximal_function(m, phi, f, TGrid{});
    auto b = maximal_function(scaled, phi, f, TGrid{});
    double scale = 0.0;
    for (auto& v : a.values) scale = std::max(scale, v.real());
    CHECK(max_abs_diff(a.values, b.values) / scale < 1e-9);
}

TEST_CASE("bound ratio experiments") {
    auto m = build_cycle_laplacian(16);
    RatioConfig rc;
    rc.n_signals = 40;
    rc.seed = 777;
    rc.p = 2.0;

    // M_one f = |f| makes every raw ratio exactly 1
    rc.kind = RatioKind::Max;
    rc.norm_divisor = 1.0;
    auto ex = bound_ratio_experiment(m, builtin_catalog("one"), rc);
    CHECK(ex.report.get("statistic") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ex.report.pass);
    for (double r : ex.per_signal) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));

    // sheat square ratio is the isometry constant 1/2 at p = 2
    rc.kind = RatioKind::Square;
    auto sq = bound_ratio_experiment(m, builtin_catalog("sheat"), rc);
    CHECK(sq.report.get("statistic") == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(sq.report.get("stability") < 0.01);

    rc.kind = RatioKind::SquareLower;
    auto lo = bound_ratio_experiment(m, builtin_catalog("sheat"), rc);
    CHECK(lo.report.get("statistic") == doctest::Approx(2.0).epsilon(1e-3));

    // psi identically zero on the spectrum: every signal is excluded
    rc.kind = RatioKind::SquareLower;
    auto z = bound_ratio_experiment(m, builtin_catalog("zero"), rc);
    CHECK(z.report.get("statistic") == 0.0);
    CHECK(z.report.get("excluded") == doctest::Approx(80.0));
    CHECK(z.report.pass);

    // homogeneity of the underlying functionals
    Signal f = random_signal(m, 8, 0);
    Signal cf = f;
    for (auto& v : cf) v *= 3.0;
    auto ma = maximal_function(m, builtin_catalog("heat"), f, TGrid{});
    auto mb = maximal_function(m, builtin_catalog("heat"), cf, TGrid{});
    for (size_t x = 0; x < f.size(); ++x)
        CHECK(mb.values[x].real() == doctest::Approx(3.0 * ma.values[x].real()).epsilon(1e-12));
}
