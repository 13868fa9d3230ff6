// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria follow the verification plan for the Mellin multiplier
// toolkit at alpha = 2; tolerances are fixed here, not tuned at runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mellincalc/config.hpp"
#include "mellincalc/decomposition.hpp"
#include "mellincalc/maxsq.hpp"
#include "mellincalc/mellin.hpp"
#include "mellincalc/operator_model.hpp"
#include "mellincalc/suites.hpp"

using namespace mellincalc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion(int n, const std::string& label, const std::function<bool(std::string&)>& fn) {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    std::printf("%s criterion %2d: %s (%s; %.2f s)\n", ok ? "PASS" : "FAIL", n, label.c_str(),
                detail.c_str(), dt);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

constexpr int kAlpha = 2;

struct Shared {
    LogGrid sg2048{1e-8, 1e8, ppd_for(2048.0)};
    LogGrid sg4096{1e-8, 1e8, ppd_for(4096.0)};
    LogGrid sg_small{1e-8, 1e8, 1024};
    UGrid u2048{2048.0, 1.0 / 64};
    UGrid u4096{4096.0, 1.0 / 64};
    UGrid u128{128.0, 1.0 / 64};

    std::optional<MellinSamples> a_br6;  // A_phi(bochner_riesz:6) at U=2048
    std::optional<MellinSamples> m_psi6; // M(br_psi:6) at U=128 for block work

    const MellinSamples& a_br6_full() {
        if (!a_br6) a_br6 = a_phi(builtin_catalog("bochner_riesz", {6.0}), sg2048, u2048);
        return *a_br6;
    }
    const MellinSamples& m_psi6_blocks() {
        if (!m_psi6) m_psi6 = mellin_transform(builtin_catalog("br_psi", {6.0}), sg_small, u128);
        return *m_psi6;
    }
} shared;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------

bool c1_plancherel(std::string& detail) {
    auto t0 = Clock::now();
    auto r = plancherel_residual(builtin_catalog("sheat"), shared.sg_small, shared.u128);
    double dt = seconds_since(t0);
    detail = "lhs=" + fmt(r.lhs) + " rhs=" + fmt(r.rhs) + " t=" + fmt(dt) + "s";
    return std::abs(r.lhs - 0.25) < 1e-4 && std::abs(r.rhs - 0.25) < 1e-4 && dt < 1.0;
}

bool c2_roundtrip(std::string& detail) {
    auto t0 = Clock::now();
    UGrid ug{256.0, 1.0 / 64};
    auto Ms = mellin_transform(builtin_catalog("sheat"), shared.sg_small, ug);
    LogGrid win{0.1, 10.0, 256};
    auto rec = mellin_inverse(Ms, win);
    double worst_s = 0.0;
    for (int i = 0; i < win.size(); ++i) {
        double s = win.node(i);
        double ref = s * std::exp(-s);
        worst_s = std::max(worst_s, std::abs(rec[i] - ref) / ref);
    }
    auto Mp = mellin_transform(builtin_catalog("br_psi", {(double)kAlpha + 2}), shared.sg_small, ug);
    LogGrid win2{0.1, 1.0, 512};
    auto rec2 = mellin_inverse(Mp, win2);
    double worst_b = 0.0;
    for (int i = 0; i < win2.size(); ++i) {
        double s = win2.node(i);
        if (s > 0.9) break;
        double ref = s * std::pow(1.0 - s, (double)kAlpha + 2);
        worst_b = std::max(worst_b, std::abs(rec2[i] - ref) / ref);
    }
    double dt = seconds_since(t0);
    detail = "sheat=" + fmt(worst_s) + " br_psi=" + fmt(worst_b) + " t=" + fmt(dt) + "s";
    return worst_s < 1e-3 && worst_b < 1e-2 && dt < 5.0;
}

bool c3_isometry(std::string& detail) {
    auto model = build_cycle_laplacian(16);
    TGrid tg;
    double worst_total = 0.0;
    for (int which = 0; which < 2; ++which) {
        auto psi = which == 0 ? builtin_catalog("sheat")
                              : builtin_catalog("br_psi", {(double)kAlpha + 2});
        double c;
        if (which == 0)
            c = 0.5;
        else {
            double c2 = 0.0;  // quadrature of |psi|^2 ds/s on a fine lattice
            LogGrid qg{1e-8, 1.0, 4096};
            for (int i = 0; i < qg.size(); ++i) c2 += std::norm(psi.eval(qg.node(i))) * qg.dx();
            c = std::sqrt(c2);
        }
        for (int k = 0; k < 20; ++k) {
            Signal f = random_signal(model, 314159, k);
            double r = lp_norm(model, square_function(model, psi, f, tg), 2.0) /
                       lp_norm(model, f, 2.0);
            worst_total = std::max(worst_total, std::abs(r - c) / c);
        }
    }
    detail = "max rel dev=" + fmt(worst_total);
    return worst_total < 1e-3;
}

bool c4_mellin_form(std::string& detail) {
    auto model = build_cycle_laplacian(8);
    UGrid ug{64.0, 1.0 / 64};
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        auto psi = which == 0 ? builtin_catalog("sheat")
                              : builtin_catalog("br_psi", {(double)kAlpha + 2});
        auto M = mellin_transform(psi, shared.sg_small, ug);
        Signal f = random_signal(model, 2718, which);
        auto direct = square_function(model, psi, f, TGrid{});
        auto viamel = square_function_mellin(model, f, M);
        double scale = 0.0;
        for (auto& v : direct) scale = std::max(scale, v.real());
        for (size_t x = 0; x < f.size(); ++x)
            worst = std::max(worst, std::abs(direct[x] - viamel[x]) / scale);
    }
    detail = "max rel discrepancy=" + fmt(worst);
    return worst < 1e-2;
}

bool c5_cowling(std::string& detail) {
    auto model = build_cycle_laplacian(8);
    Signal f = random_signal(model, 161803, 0);
    auto phi_one = builtin_catalog("one");
    auto phi_br = builtin_catalog("bochner_riesz", {(double)kAlpha + 4});

    auto worst_of = [&](const MultiplierSpec& phi, const MellinSamples& A) {
        double worst = 0.0;
        for (double t : {0.1, 1.0, 10.0})
            worst = std::max(worst, cowling_reconstruct(model, phi, f, t, A).max_rel_residual);
        return worst;
    };
    double w1 = std::max(worst_of(phi_one, a_phi(phi_one, shared.sg2048, shared.u2048)),
                         worst_of(phi_br, shared.a_br6_full()));
    double w2 = std::max(worst_of(phi_one, a_phi(phi_one, shared.sg4096, shared.u4096)),
                         worst_of(phi_br, a_phi(phi_br, shared.sg4096, shared.u4096)));
    detail = "residual@2048=" + fmt(w1) + " @4096=" + fmt(w2);
    return w1 < 1e-2 && w2 < w1;
}

bool c6_aphi_decay(std::string& detail) {
    auto t0 = Clock::now();
    auto phi = builtin_catalog("bochner_riesz", {(double)kAlpha + 4});
    auto A = a_phi(phi, shared.sg2048, shared.u2048);
    auto rep = decay_report(A, kAlpha + 2, 1.0, 10.0, 1000.0);
    // refinement of the u-grid must leave the weighted sup in place
    UGrid fine{2048.0, 1.0 / 128};
    auto A2 = a_phi(phi, shared.sg2048, fine);
    auto rep2 = decay_report(A2, kAlpha + 2, 1.0, 10.0, 1000.0);
    double sup_shift = std::abs(rep.sup_g - rep2.sup_g) / rep.sup_g;
    double dt = seconds_since(t0);
    detail = "slope=" + fmt(rep.slope) + " sup_shift=" + fmt(sup_shift) + " t=" + fmt(dt) + "s";
    return rep.slope <= -(double)(kAlpha + 2) + 0.25 && sup_shift < 0.05 && dt < 30.0;
}

bool c7_mellin_decay(std::string& detail) {
    MellinOptions opt;
    opt.derivatives = true;
    UGrid ug{2048.0, 1.0 / 16};  // envelope slopes need window, not du density
    auto M = mellin_transform(builtin_catalog("br_psi", {(double)kAlpha + 4}),
                              LogGrid{1e-8, 1e8, ppd_for(2048.0)}, ug, opt);
    auto r0 = decay_report(M, kAlpha + 2, 1.0, 10.0, 1000.0);
    auto r1 = decay_report_on(M.du, M.grid, kAlpha + 2, 1.0, 10.0, 1000.0);
    auto r2 = decay_report_on(M.d2u, M.grid, kAlpha + 2, 1.0, 10.0, 1000.0);
    detail = "slopes=" + fmt(r0.slope) + "," + fmt(r1.slope) + "," + fmt(r2.slope);
    double need = -(double)(kAlpha + 2) + 0.25;
    return r0.slope <= need && r1.slope <= need && r2.slope <= need;
}

bool c8_partition(std::string& detail) {
    auto part = build_partition();
    std::mt19937_64 gen(8);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double u = ((double)(gen() >> 11) / 9007199254740992.0 - 0.5) * 240.0;
        double sum = 0.0;
        int k0 = (int)std::floor(u / M_PI);
        for (int k = k0 - 2; k <= k0 + 2; ++k) sum += part.h_k(k, u);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    double outside = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        double u = M_PI + i * 0.01;
        outside = std::max(outside, std::abs(part.h(u)) + std::abs(part.h(-u)));
    }
    detail = "sum defect=" + fmt(worst) + " outside=" + fmt(outside);
    return worst < 1e-12 && outside == 0.0;
}

bool c9_parseval(std::string& detail) {
    auto part = build_partition();
    auto M = mellin_transform(builtin_catalog("sheat"), shared.sg_small, UGrid{64.0, 1.0 / 64});
    double worst = 0.0;
    for (int k : {0, 1, 4})
        for (double lam : {0.1, 1.0, 10.0}) {
            auto r = parseval_block_check(M, part, k, lam, 64);
            worst = std::max(worst, r.get("residual_two_pi"));
        }
    detail = "max residual=" + fmt(worst);
    return worst < 1e-4;
}

bool c10_claim(std::string& detail) {
    auto t0 = Clock::now();
    auto part = build_partition();
    auto res = claim_decay_check(shared.m_psi6_blocks(), part, kAlpha, 32, 64, 271828);
    double dt = seconds_since(t0);
    double rho = res.report.get("spearman_rho");
    double stab = res.report.get("stability");
    double ratio = res.report.get("ratio_to_min_small_k");
    detail = "ratio=" + fmt(ratio) + " rho=" + fmt(rho) + " stab=" + fmt(stab) + " t=" +
             fmt(dt) + "s";
    return res.report.pass && std::isfinite(ratio) && rho <= 0.5 && stab < 0.10 && dt < 300.0;
}

bool c11_cjk_tail(std::string& detail) {
    auto part = build_partition();
    const auto& M = shared.m_psi6_blocks();
    double constant = 0.0;
    bool finite = true;
    for (int k : {1, 4, 8})
        for (double y : {2.0, 4.0, 8.0}) {
            double v = std::abs(cjk_derivative(M, part, 0, k, 0, y)) * (1.0 + k * k) * y * y;
            finite = finite && std::isfinite(v);
            constant = std::max(constant, v);
        }
    detail = "recorded constant=" + fmt(constant);
    return finite && constant > 0.0;
}

bool c12_maximal(std::string& detail) {
    auto m8 = build_cycle_laplacian(8);
    Signal f = random_signal(m8, 577215, 0);
    auto mid = maximal_function(m8, builtin_catalog("one"), f, TGrid{});
    double worst_id = 0.0;
    for (size_t x = 0; x < f.size(); ++x)
        worst_id = std::max(worst_id, std::abs(mid.values[x].real() - std::abs(f[x])));

    Signal e0(m8.basis[0].begin(), m8.basis[0].end());
    auto mh = maximal_function(m8, builtin_catalog("heat"), e0, TGrid{});
    double worst_h = 0.0;
    for (size_t x = 0; x < e0.size(); ++x)
        worst_h = std::max(worst_h, std::abs(mh.values[x].real() - std::abs(e0[x])));

    auto m64 = build_cycle_laplacian(64);
    RatioConfig rc;
    rc.n_signals = 100;
    rc.seed = 42424242;
    rc.p = 4.0;
    rc.kind = RatioKind::Max;
    auto norms = smoothness_norms(builtin_catalog("bochner_riesz", {(double)kAlpha + 2}), kAlpha);
    rc.norm_divisor = norms.n_value;
    auto ex = bound_ratio_experiment(m64, builtin_catalog("bochner_riesz", {(double)kAlpha + 2}), rc);
    double stat = ex.report.get("statistic");
    double stab = ex.report.get("stability");
    detail = "id_err=" + fmt(worst_id) + " heat_err=" + fmt(worst_h) + " stat=" + fmt(stat) +
             " stab=" + fmt(stab);
    return worst_id < 1e-12 && worst_h < 1e-3 && std::isfinite(stat) && stab < 0.10;
}

bool c13_determinism(std::string& detail) {
    auto t0 = Clock::now();
    RunConfig cfg = parse_config(
        "alpha=2, multiplier=br_psi:6, model=cycle:16, p_values=[2,4], seed=20240501, "
        "ensemble=100, k_half=8, rademacher=64");
    cfg.output_dir = "acc_out_a";
    run_suite(cfg, "all");
    double one_run = seconds_since(t0);
    cfg.output_dir = "acc_out_b";
    run_suite(cfg, "all");
    bool identical = true;
    std::string first_diff;
    for (const auto& entry : std::filesystem::directory_iterator("acc_out_a")) {
        auto name = entry.path().filename().string();
        auto read = [](const std::string& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream os;
            os << in.rdbuf();
            return os.str();
        };
        if (read("acc_out_a/" + name) != read("acc_out_b/" + name)) {
            identical = false;
            if (first_diff.empty()) first_diff = name;
        }
    }
    std::filesystem::remove_all("acc_out_a");
    std::filesystem::remove_all("acc_out_b");
    detail = "one run=" + fmt(one_run) + "s" +
             (identical ? std::string(" byte-identical") : " differs: " + first_diff);
    return identical && one_run < 600.0;
}

}  // namespace

int main() {
    std::printf("acceptance suite (alpha = %d)\n", kAlpha);
    criterion(1, "Mellin Plancherel for s e^{-s}", c1_plancherel);
    criterion(2, "Mellin inversion round trips", c2_roundtrip);
    criterion(3, "L2 isometry of the square function", c3_isometry);
    criterion(4, "square function equals its Mellin form", c4_mellin_form);
    criterion(5, "imaginary-power reconstruction converges", c5_cowling);
    criterion(6, "decay of the compensated coefficient integral", c6_aphi_decay);
    criterion(7, "decay of the transform and its u-derivatives", c7_mellin_decay);
    criterion(8, "partition of unity", c8_partition);
    criterion(9, "Parseval block identity", c9_parseval);
    criterion(10, "quadratic block decay of the sign-sum norms", c10_claim);
    criterion(11, "block tail bound constant", c11_cjk_tail);
    criterion(12, "maximal function sanity and p=4 ratio stability", c12_maximal);
    criterion(13, "suite determinism and runtime", c13_determinism);
    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
