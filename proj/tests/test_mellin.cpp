#include <doctest.h>

#include <cmath>

#include "mellincalc/mellin.hpp"
#include "oracles.hpp"

using namespace mellincalc;

namespace {

// small grids keep the unit suite fast; acceptance runs the full-size ones
LogGrid sgrid_small() { return LogGrid{1e-8, 1e8, 256}; }
UGrid ugrid_small() { return UGrid{64.0, 1.0 / 64}; }

MultiplierSpec log_window() {
    // smooth window ~ indicator of [1, e] in log s; transition width eps
    // symmetric in x = log s, so the ds/s mass is exactly 1
    const double eps = 0.125;
    auto w = [eps](double s) -> cplx {
        if (s <= 0.0) return 0.0;
        double x = std::log(s);
        if (x < -eps || x > 1.0 + eps) return 0.0;
        if (x < eps) return smooth_transition((x + eps) / (2 * eps));
        if (x > 1.0 - eps) return smooth_transition((1.0 + eps - x) / (2 * eps));
        return 1.0;
    };
    return from_function("logwin", w, 2, std::exp(1.0 + eps), 0.0);
}

}  // namespace

TEST_CASE("transform of zero is zero; bad inputs rejected") {
    auto M = mellin_transform(builtin_catalog("zero"), sgrid_small(), ugrid_small());
    for (auto v : M.val) CHECK(std::abs(v) == 0.0);
    CHECK_THROWS(mellin_transform(builtin_catalog("heat"), sgrid_small(), ugrid_small()));
    // u_max beyond the lattice fold must be refused
    CHECK_THROWS(mellin_transform(builtin_catalog("sheat"), LogGrid{1e-8, 1e8, 64},
                                  UGrid{512.0, 1.0 / 16}));
}

TEST_CASE("transform of s e^{-s} matches the gamma function") {
    auto M = mellin_transform(builtin_catalog("sheat"), sgrid_small(), ugrid_small());
    int z = M.grid.index_of_zero();
    CHECK(M.val[z].real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(M.val[z].imag()) < 1e-12);
    // |Gamma(1-iu)|^2 = pi u / sinh(pi u)
    for (double u : {0.5, 1.0, 2.0, 5.0}) {
        double expect = M_PI * u / std::sinh(M_PI * u);
        CHECK(std::norm(M.value_nearest(u)) == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK(!M.tail_warning);
}

TEST_CASE("log window integrates to one at u = 0") {
    auto M = mellin_transform(log_window(), sgrid_small(), ugrid_small());
    CHECK(M.val[M.grid.index_of_zero()].real() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("conjugate symmetry for real sources") {
    auto M = mellin_transform(builtin_catalog("br_psi", {4.0}), sgrid_small(), ugrid_small());
    int z = M.grid.index_of_zero();
    for (int k : {1, 7, 100, 4000}) {
        CHECK(M.val[z + k].real() == M.val[z - k].real());
        CHECK(M.val[z + k].imag() == -M.val[z - k].imag());
    }
}

TEST_CASE("dilation covariance: M(m(c.))(u) = c^{iu} M(m)(u)") {
    auto m = builtin_catalog("sheat");
    auto M = mellin_transform(m, sgrid_small(), ugrid_small());
    for (double c : {0.5, 2.0}) {
        auto Mc = mellin_transform(scale_argument(m, c), sgrid_small(), ugrid_small());
        for (double u : {0.5, 1.0, 3.0}) {
            int i = M.grid.nearest(u);
            cplx phase = std::exp(cplx(0.0, u * std::log(c)));
            CHECK(std::abs(Mc.val[i] - phase * M.val[i]) < 1e-9);
        }
    }
}

TEST_CASE("inversion round trips") {
    auto zero = mellin_transform(builtin_catalog("zero"), sgrid_small(), ugrid_small());
    for (auto v : mellin_inverse(zero, LogGrid{0.1, 10.0, 64})) CHECK(std::abs(v) == 0.0);

    auto sheat = builtin_catalog("sheat");
    auto M = mellin_transform(sheat, sgrid_small(), ugrid_small());
    LogGrid mid{0.1, 10.0, 256};
    auto rec = mellin_inverse(M, mid);
    double worst = 0.0;
    for (int i = 0; i < mid.size(); ++i) {
        double s = mid.node(i);
        double ref = s * std::exp(-s);
        worst = std::max(worst, std::abs(rec[i] - ref) / ref);
    }
    CHECK(worst < 1e-3);

    auto psi = builtin_catalog("br_psi", {4.0});
    auto Mp = mellin_transform(psi, sgrid_small(), ugrid_small());
    LogGrid inner{0.1, 1.0, 256};
    auto rp = mellin_inverse(Mp, inner);
    worst = 0.0;
    for (int i = 0; i < inner.size(); ++i) {
        double s = inner.node(i);
        if (s > 0.9) break;
        double ref = s * std::pow(1.0 - s, 4.0);
        worst = std::max(worst, std::abs(rp[i] - ref) / ref);
    }
    CHECK(worst < 1e-2);
}

TEST_CASE("plancherel identity") {
    UGrid ug{128.0, 1.0 / 64};
    auto r = plancherel_residual(builtin_catalog("sheat"), sgrid_small(), ug);
    CHECK(r.lhs == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(r.residual < 1e-4);

    auto z = plancherel_residual(builtin_catalog("zero"), sgrid_small(), ug);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);

    auto b = plancherel_residual(builtin_catalog("br_psi", {4.0}), sgrid_small(), ug);
    double lhs_oracle =
        oracles::quad<double>([](double s) { return s * std::pow(1.0 - s, 8.0); }, 0.0, 1.0);
    CHECK(lhs_oracle == doctest::Approx(1.0 / 90.0).epsilon(1e-10));
    CHECK(b.lhs == doctest::Approx(lhs_oracle).epsilon(1e-6));
    CHECK(b.residual < 1e-4);
}

TEST_CASE("a_phi: heat compensates to zero") {
    auto A = a_phi(builtin_catalog("heat"), sgrid_small(), ugrid_small());
    for (auto v : A.val) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("a_phi of the constant: truncated integral against a split oracle") {
    LogGrid sg = sgrid_small();
    auto A = a_phi(builtin_catalog("one"), sg, ugrid_small());
    CHECK(A.tail_warning);  // 1 - e^{-s} is not ds/s integrable at infinity
    // same truncation, evaluated as two independent adaptive quadratures
    double head = oracles::quad<double>(
        [](double s) { return s <= 0.0 ? 1.0 : (1.0 - std::exp(-s)) / s; }, sg.s_min, 1.0);
    double tail = oracles::quad<double>(
        [](double s) { return (1.0 - std::exp(-s)) / s; }, 1.0, sg.s_max);
    double got = A.val[A.grid.index_of_zero()].real();
    CHECK(got == doctest::Approx(head + tail).epsilon(1e-4));
}

TEST_CASE("a_phi of a Bochner-Riesz multiplier at u = 0") {
    auto A = a_phi(builtin_catalog("bochner_riesz", {4.0}), sgrid_small(), ugrid_small());
    double oracle = oracles::quad<double>(
                        [](double s) {
                            double phi = s < 1.0 ? std::pow(1.0 - s, 4.0) : 0.0;
                            return s == 0.0 ? -3.0 : (phi - std::exp(-s)) / s;
                        },
                        0.0, 1.0) +
                    oracles::quad<double>([](double s) { return -std::exp(-s) / s; }, 1.0, 750.0);
    CHECK(oracle == doctest::Approx(-1.5061176688).epsilon(1e-8));
    CHECK(A.val[A.grid.index_of_zero()].real() == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("integration by parts representation matches the direct transform") {
    // A(u) = I4 / prod_{r=0..3} (iu - r), I4 = int s^{-iu+3} g^{(4)}(s) ds
    const double u = 100.0;
    LogGrid sg{1e-8, 1e8, 1024};
    UGrid ug{128.0, 1.0 / 64};
    auto phi = builtin_catalog("bochner_riesz", {6.0});
    auto A = a_phi(phi, sg, ug);
    cplx direct = A.value_nearest(u);

    auto g4 = [&phi](double s) -> cplx {
        return phi.deriv(4, s) - std::exp(-s);  // 4th derivative of the compensated phi
    };
    // integrate in x = log s so the e^{-iux} oscillation has uniform period
    cplx i4 = oracles::uniform_simpson<cplx>(
        [&](double x) -> cplx {
            double s = std::exp(x);
            return std::exp(cplx(0.0, -u * x)) * s * s * s * s * g4(s);
        },
        -23.0, 6.62, 1 << 20);
    cplx den = 1.0;
    for (int r = 0; r < 4; ++r) den *= (cplx(0.0, u) - (double)r);
    CHECK(std::abs(i4 / den - direct) / std::abs(direct) < 1e-3);
}

TEST_CASE("decay report basics") {
    auto A = a_phi(builtin_catalog("heat"), LogGrid{1e-8, 1e8, 1024}, UGrid{1024.0, 1.0 / 16});
    auto rep = decay_report(A, 4, 1.0);
    CHECK(rep.sup_g == 0.0);
    CHECK(rep.pass);

    // fit window shorter than two decades is refused
    auto M = mellin_transform(builtin_catalog("sheat"), sgrid_small(), ugrid_small());
    CHECK_THROWS(decay_report(M, 4, 1.0));
}

TEST_CASE("decay slopes for the compactly supported psi family") {
    // coarse du is enough for envelope slopes
    LogGrid sg{1e-8, 1e8, 1536};
    UGrid ug{2048.0, 1.0 / 16};
    MellinOptions opt;
    opt.derivatives = true;
    auto M = mellin_transform(builtin_catalog("br_psi", {6.0}), sg, ug, opt);
    int alpha = 2;
    auto r0 = decay_report(M, alpha + 2, 1.0);
    auto r1 = decay_report_on(M.du, M.grid, alpha + 2, 1.0);
    auto r2 = decay_report_on(M.d2u, M.grid, alpha + 2, 1.0);
    CHECK(r0.slope <= -4.5);  // observed ~ -5.8
    CHECK(r1.slope <= -4.5);  // observed ~ -5.5
    CHECK(r2.slope <= -4.0);  // observed ~ -4.9
    CHECK(r0.pass);
    CHECK(r1.pass);
    CHECK(r2.pass);
}
