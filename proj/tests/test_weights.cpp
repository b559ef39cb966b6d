#include "fraccal/approx.hpp"
#include "fraccal/error.hpp"
#include "fraccal/specfun.hpp"
#include "fraccal/weights.hpp"
#include "property.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace fraccal;
using mp50 = boost::multiprecision::cpp_dec_float_50;

namespace {

const double kAlphas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

// 50-digit evaluation of the L1 second difference
double sigma_oracle(double alpha, long k) {
    const mp50 b = mp50(1) - mp50(alpha);
    const mp50 kk = k;
    const mp50 d = pow(kk - 1, b) - 2 * pow(kk, b) + pow(kk + 1, b);
    return static_cast<double>(d / boost::math::tgamma(b + 1));
}

// least-squares slope of log|r| against log k
double log_slope(const std::vector<double>& k, const std::vector<double>& r) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double x = std::log(k[i]), y = std::log(std::abs(r[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_SUITE("weights") {

TEST_CASE("scheme metadata") {
    for (auto kind : kAllSchemes) {
        CAPTURE(scheme_name(kind));
        CHECK(parse_scheme_kind(scheme_name(kind)) == kind);
        const auto w = build_scheme(kind, FractionalOrder(0.4), 10, 10);
        CHECK(w.coeffs.size() == 11);
        const bool shifted = kind == SchemeKind::GL || kind == SchemeKind::GL_TRUNC ||
                             kind == SchemeKind::SHIFT_2MA || kind == SchemeKind::SHIFT_2 ||
                             kind == SchemeKind::GL_LAST2 || kind == SchemeKind::GL_LAST2_TRUNC;
        CHECK(w.shift == (shifted ? 0.2 : 0.0));
        const bool zero_ic = kind == SchemeKind::GL || kind == SchemeKind::GL_TRUNC ||
                             kind == SchemeKind::SHIFT_2MA || kind == SchemeKind::SHIFT_2;
        CHECK(w.requires_zero_ic == zero_ic);
    }
    CHECK_FALSE(parse_scheme_kind("l2"));
    CHECK(build_scheme(SchemeKind::L1, FractionalOrder(0.3), 5, 5).order == doctest::Approx(1.7));
    CHECK(build_scheme(SchemeKind::SHIFT_2, FractionalOrder(0.3), 5, 5).order == 2.0);
}

TEST_CASE("tail policy threshold") {
    CHECK(TailPolicy{}.threshold(100) == 20);
    CHECK(TailPolicy{}.threshold(101) == 21);
    CHECK(TailPolicy{}.threshold(3) == 1);
    CHECK(TailPolicy{0.5}.threshold(10) == 10);
    CHECK_THROWS_AS(TailPolicy{0.0}.threshold(10), DomainError);
}

TEST_CASE("gl weights: recurrence values") {
    const auto w = gl_weights(FractionalOrder(0.5), 3);
    REQUIRE(w.size() == 4);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == -0.5);
    CHECK(w[2] == -0.125);
    CHECK(w[3] == -0.0625);
    CHECK(std::abs(gl_weights(FractionalOrder(0.3), 50)[50] + 0.001435059372051552190) < 1e-17);
}

TEST_CASE("gl weights: gamma-ratio agreement up to k = 200") {
    for (double a : kAlphas) {
        const auto w = gl_weights(FractionalOrder(a), 200);
        for (long k = 1; k <= 200; ++k) {
            const double ratio = boost::math::tgamma_delta_ratio(k - a, 1.0 + a) / boost::math::tgamma(-a);
            CAPTURE(a);
            CAPTURE(k);
            CHECK(std::abs(w[k] - ratio) <= 1e-11 * std::abs(ratio));
            CHECK(std::abs(w[k] - std::pow(-1.0, k) * binom_real(a, k)) <= 1e-13 * std::abs(ratio));
        }
    }
}

TEST_CASE("tail expansions") {
    const FractionalOrder a(0.5);
    for (std::size_t k : {1u, 7u, 100u})
        CHECK(tail_expansion(TailFamily::GLM, a, k, 1) == doctest::Approx(tail_expansion(TailFamily::GL2, a, k)).epsilon(1e-15));
    CHECK_THROWS_AS(tail_expansion(TailFamily::GLM, a, 5, 4), UnsupportedError);
    CHECK_THROWS_AS(tail_expansion(TailFamily::GL2, a, 0), SizeError);

    // Theorem-style bound: C fitted on k in [20, 50] covers k = 100
    const auto w = gl_weights(a, 100);
    double C = 0.0;
    for (std::size_t k = 20; k <= 50; ++k)
        C = std::max(C, std::abs(w[k] - tail_expansion(TailFamily::GL2, a, k)) * std::pow(k, 3.5));
    CHECK(std::abs(w[100] - tail_expansion(TailFamily::GL2, a, 100)) <= C / std::pow(100.0, 3.5));

    // more terms, smaller residual
    const double r1 = std::abs(w[100] - tail_expansion(TailFamily::GLM, a, 100, 1));
    const double r2 = std::abs(w[100] - tail_expansion(TailFamily::GLM, a, 100, 2));
    const double r3 = std::abs(w[100] - tail_expansion(TailFamily::GLM, a, 100, 3));
    CHECK(r2 < r1 / 50);
    CHECK(r3 < r2 / 50);
}

TEST_CASE("l1 tail: derived coefficient gives order k^{-(5+alpha)}, printed does not") {
    const FractionalOrder a(0.5);
    std::vector<double> ks, derived, printed;
    for (long k = 50; k <= 500; k += 10) {
        const double s = sigma_oracle(a, k);
        ks.push_back(k);
        derived.push_back(s - tail_expansion(TailFamily::L1TAIL, a, k));
        printed.push_back(s - tail_expansion(TailFamily::L1TAIL, a, k, 1, L1TailCoefficient::Printed));
    }
    CHECK(log_slope(ks, derived) == doctest::Approx(-5.5).epsilon(0.03));
    CHECK(log_slope(ks, printed) == doctest::Approx(-3.5).epsilon(0.03));
}

TEST_CASE("l1 weights: values and telescoping sum") {
    const auto s = l1_weights(FractionalOrder(0.5), 2);
    CHECK(std::abs(s[0] - 1.1283791670955126) < 1e-15);
    CHECK(std::abs(s[1] - (std::sqrt(2.0) - 2.0) / std::tgamma(1.5)) < 1e-15);
    CHECK(std::abs(sum(l1_weights(FractionalOrder(0.3), 10))) < 1e-13);
    CHECK_THROWS_AS(l1_weights(FractionalOrder(0.3), 0), SizeError);
}

TEST_CASE("l1 weights: 50-digit oracle for interior and last weights") {
    for (double a : {0.1, 0.5, 0.9}) {
        for (long k : {1L, 2L, 7L, 8L, 9L, 20L, 100L, 500L, 2000L}) {
            const double ref = sigma_oracle(a, k);
            CAPTURE(a);
            CAPTURE(k);
            CHECK(std::abs(l1_interior_weight(FractionalOrder(a), k) - ref) <= 1e-13 * std::abs(ref));
            const mp50 b = mp50(1) - mp50(a);
            const double last = static_cast<double>((pow(mp50(k - 1), b) - pow(mp50(k), b)) /
                                                    boost::math::tgamma(b + 1));
            CHECK(std::abs(l1_last_weight(FractionalOrder(a), k) - last) <= 1e-13 * std::abs(last));
        }
    }
}

TEST_CASE("l1_mod weights: head correction only") {
    const FractionalOrder a(0.5);
    const auto s = l1_weights(a, 12);
    const auto d = l1_mod_weights(a, 12);
    for (std::size_t k = 3; k <= 12; ++k)
        CHECK(d[k] == s[k]);
    CHECK(std::abs(sum(d)) < 1e-13);
    CHECK(std::abs((d[0] + d[1] + d[2]) - (s[0] + s[1] + s[2])) < 1e-14);
    CHECK(std::abs(d[0] - 1.362953652486090261) < 1e-14);
    CHECK_THROWS_AS(l1_mod_weights(a, 1), SizeError);
    // n = 2 is the smallest vector holding all three corrected entries
    CHECK(l1_mod_weights(a, 2).size() == 3);
}

TEST_CASE("shifted heads: frozen 40-digit values at alpha = 0.5") {
    const auto t = shifted_head_weights(ShiftedHead::W_TILDE, FractionalOrder(0.5));
    const auto h = shifted_head_weights(ShiftedHead::W_HAT, FractionalOrder(0.5));
    REQUIRE(t.size() == 2);
    REQUIRE(h.size() == 3);
    CHECK(std::abs(t[0] - 1.014454289280903346) < 1e-13);
    CHECK(std::abs(t[1] + 0.5234871847592750052) < 1e-13);
    CHECK(std::abs(h[0] - 0.9756937014399240727) < 1e-13);
    CHECK(std::abs(h[1] + 0.4459660090773164587) < 1e-13);
    CHECK(std::abs(h[2] + 0.1571965773351545995) < 1e-13);
}

TEST_CASE("shifted heads: independent regrouping through tail-sum constants") {
    // c_j collect the zeta sums of the GL2 tail; head = boundary terms minus tails.
    prop::for_all(21, 60, [](prop::Gen& g) {
        const double a = g.uniform(0.05, 0.95);
        CAPTURE(a);
        const double ga = boost::math::tgamma(-a);
        const double q = a * (a + 1.0) / 2.0;
        auto Z = [](double s) { return boost::math::zeta(s); };
        const double c1 = (Z(a + 1) + q * Z(a + 2)) / ga;
        const double c2 = (Z(a) + q * Z(a + 1)) / ga;
        const double c3 = 0.5 * (Z(a - 1) + q * Z(a)) / ga;
        const double g1 = tail_expansion(TailFamily::GL2, FractionalOrder(a), 1);
        const double g2 = tail_expansion(TailFamily::GL2, FractionalOrder(a), 2);
        const auto t = shifted_head_weights(ShiftedHead::W_TILDE, FractionalOrder(a));
        const auto h = shifted_head_weights(ShiftedHead::W_HAT, FractionalOrder(a));
        const double tol = 1e-12 * (1.0 + std::abs(c1) + std::abs(c2) + std::abs(c3));
        CHECK(std::abs(t[0] - (c2 - c1)) < tol);
        CHECK(std::abs(t[1] - (g1 - c2)) < tol);
        CHECK(std::abs(h[0] - (-c1 + 1.5 * c2 - c3)) < tol);
        CHECK(std::abs(h[1] - (g1 - 2.0 * c2 + 2.0 * c3)) < tol);
        CHECK(std::abs(h[2] - (g2 + 0.5 * c2 - c3)) < tol);
    });
}

TEST_CASE("shifted schemes: head then GL2 tail") {
    const FractionalOrder a(0.3);
    const auto t = build_scheme(SchemeKind::SHIFT_2MA, a, 12, 12);
    const auto h = build_scheme(SchemeKind::SHIFT_2, a, 12, 12);
    for (std::size_t k = 2; k < 12; ++k)
        CHECK(t.coeffs[k] == tail_expansion(TailFamily::GL2, a, k));
    for (std::size_t k = 3; k < 12; ++k)
        CHECK(h.coeffs[k] == tail_expansion(TailFamily::GL2, a, k));
    CHECK(t.coeffs[12] == 0.0);
    CHECK(h.coeffs[12] == 0.0);
    CHECK(build_scheme(SchemeKind::SHIFT_2, a, 2, 10).coeffs[2] ==
          shifted_head_weights(ShiftedHead::W_HAT, a)[2]);
    CHECK_THROWS_AS(build_scheme(SchemeKind::SHIFT_2, a, 1, 10), SizeError);
}

TEST_CASE("gamma_last_two: frozen values and structure") {
    const FractionalOrder a(0.4);
    const auto g = gamma_last_two(a, 12);
    CHECK(std::abs(g.penultimate + 0.01017046757785824264) < 1e-14);
    CHECK(std::abs(g.last + 0.2539834887741417574) < 1e-14);

    const auto w = build_scheme(SchemeKind::GL_LAST2, a, 12, 12);
    const auto gl = gl_weights(a, 12);
    for (std::size_t k = 0; k <= 10; ++k)
        CHECK(w.coeffs[k] == gl[k]);
    CHECK(std::abs(sum(w.coeffs)) < 1e-12);
    CHECK_THROWS_AS(gamma_last_two(a, 1), SizeError);
}

TEST_CASE("gamma_last_two: exact on linear functions") {
    const FractionalOrder a(0.5);
    const double h = 0.1;
    const auto w = build_scheme(SchemeKind::GL_LAST2, a, 10, 10);
    const auto f = sample([](double x) { return x; }, h, 10);
    const auto r = apply_scheme(w, f, 10);
    CHECK(std::abs(r.value - std::pow(1.0 - 0.025, 0.5) / std::tgamma(1.5)) < 1e-12);
    CHECK(r.eval_point == doctest::Approx(0.975).epsilon(1e-15));
}

TEST_CASE("gamma_last_two_asym") {
    const FractionalOrder a(0.5);
    const auto g = gamma_last_two_asym(a, 100);
    CHECK(std::abs(g.penultimate - 25.5 / (24.0 * std::tgamma(-0.5) * 1000.0)) < 1e-17);
    CHECK(g.last < 0.0);
    std::vector<double> ns, r1, r2;
    for (std::size_t n = 50; n <= 500; n += 10) {
        const auto e = gamma_last_two(a, n);
        const auto s = gamma_last_two_asym(a, n);
        ns.push_back(static_cast<double>(n));
        r1.push_back(e.penultimate - s.penultimate);
        r2.push_back(e.last - s.last);
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CHECK(std::abs(r1[i]) * std::pow(ns[i], 2.5) < 1.0);
        CHECK(std::abs(r2[i]) * std::pow(ns[i], 2.5) < 1.0);
    }
    CHECK(log_slope(ns, r1) == doctest::Approx(-2.5).epsilon(0.06));
    CHECK(log_slope(ns, r2) == doctest::Approx(-2.5).epsilon(0.06));
}

TEST_CASE("partial sums: identities") {
    {
        const auto p = gl_partial_sums(FractionalOrder(0.7), 40);
        CHECK(std::abs(p.w0_direct - p.w0_closed) < 1e-12);
    }
    {
        const double a = 0.2;
        const std::size_t N = 30;
        const auto w = gl_weights(FractionalOrder(a), N);
        double moment = 0.0;
        for (std::size_t k = 1; k < N; ++k)
            moment += static_cast<double>(k) * w[k];
        const double closed = -a * std::pow(-1.0, N - 2) * binom_real(a - 2.0, N - 2);
        CHECK(std::abs(moment - closed) < 1e-12);
    }
    const auto p = gl_partial_sums(FractionalOrder(0.5), 2000);
    CHECK(std::abs(p.w1 - 1.971566866895222023e-7) < 1e-6 * 1.97e-7);
    const double limit = (0.5 - 2.0) / (24.0 * std::tgamma(-0.5));
    CHECK(std::abs(p.w1 * std::pow(2000.0, 1.5) / limit - 1.0) < 0.05);
    CHECK_THROWS_AS(gl_partial_sums(FractionalOrder(0.5), 1), SizeError);
}

TEST_CASE("partial sums: W1 recovered from the gamma pair") {
    for (double a : kAlphas) {
        for (std::size_t N = 2; N <= 200; N += 7) {
            const FractionalOrder al(a);
            const auto p = gl_partial_sums(al, N);
            const auto w = gl_weights(al, N);
            const auto g = gamma_last_two(al, N);
            const double n = static_cast<double>(N);
            const double rebuilt = n * p.w0_direct - (n - 1) * w[N - 1] + (n - 1) * g.penultimate + n * g.last;
            CAPTURE(a);
            CAPTURE(N);
            CHECK(std::abs(rebuilt - p.w1) < 1e-11);
            CHECK(std::abs(g.penultimate + g.last + p.w0_direct - w[N - 1]) < 1e-12);
        }
    }
}

TEST_CASE("zero-sum schemes for n up to 200") {
    for (double a : kAlphas) {
        for (std::size_t n = 3; n <= 200; ++n) {
            for (auto kind : {SchemeKind::L1, SchemeKind::L1_MOD, SchemeKind::GL_LAST2}) {
                const auto w = build_scheme(kind, FractionalOrder(a), n, 200);
                CAPTURE(a);
                CAPTURE(n);
                CHECK(std::abs(sum(w.coeffs)) < 1e-12);
            }
        }
    }
}

TEST_CASE("truncated GL layout") {
    const FractionalOrder a(0.5);
    const auto w = build_scheme(SchemeKind::GL_TRUNC, a, 100, 100);
    const auto gl = gl_weights(a, 100);
    for (std::size_t k = 0; k <= 20; ++k)
        CHECK(w.coeffs[k] == gl[k]);
    for (std::size_t k = 21; k < 100; ++k)
        CHECK(w.coeffs[k] == tail_expansion(TailFamily::GL2, a, k));
    CHECK(w.coeffs[100] == 0.0);
}

TEST_CASE("truncated kinds equal their parents below the threshold") {
    const std::pair<SchemeKind, SchemeKind> pairs[] = {
        {SchemeKind::GL_TRUNC, SchemeKind::GL},
        {SchemeKind::L1_TRUNC, SchemeKind::L1},
        {SchemeKind::L1_MOD_TRUNC, SchemeKind::L1_MOD},
        {SchemeKind::GL_LAST2_TRUNC, SchemeKind::GL_LAST2}};
    for (double a : {0.2, 0.5, 0.9}) {
        for (auto [trunc, parent] : pairs) {
            for (std::size_t n = min_step(trunc); n <= 20; ++n) {
                CAPTURE(scheme_name(trunc));
                CAPTURE(n);
                CHECK(build_scheme(trunc, FractionalOrder(a), n, 100).coeffs ==
                      build_scheme(parent, FractionalOrder(a), n, 100).coeffs);
            }
        }
    }
}

TEST_CASE("truncated L1: tail and last-weight branches") {
    const FractionalOrder a(0.5);
    const std::size_t N = 100, T = 20;
    for (auto c : {L1TailCoefficient::Derived, L1TailCoefficient::Printed}) {
        const auto w = build_scheme(SchemeKind::L1_TRUNC, a, 60, N, {5.0, c});
        const auto s = l1_weights(a, 60);
        for (std::size_t k = 0; k <= T; ++k)
            CHECK(w.coeffs[k] == s[k]);
        for (std::size_t k = T + 1; k < 60; ++k)
            CHECK(w.coeffs[k] == tail_expansion(TailFamily::L1TAIL, a, k, 1, c));
        const double n = 60.0;
        const double last = -1.0 / (std::tgamma(0.5) * std::pow(n, 0.5)) +
                            1.0 / (2.0 * std::tgamma(-0.5) * std::pow(n, 1.5)) -
                            1.0 / (6.0 * std::tgamma(-1.5) * std::pow(n, 2.5));
        CHECK(w.coeffs[60] == doctest::Approx(last).epsilon(1e-14));
        CHECK(std::abs(w.coeffs[60] - s[60]) < 1e-6);
    }
    CHECK(build_scheme(SchemeKind::L1_TRUNC, a, 20, N).coeffs[20] == l1_weights(a, 20)[20]);
}

TEST_CASE("truncated L1_MOD carries the head correction") {
    const FractionalOrder a(0.7);
    const auto t = build_scheme(SchemeKind::L1_TRUNC, a, 50, 100);
    const auto m = build_scheme(SchemeKind::L1_MOD_TRUNC, a, 50, 100);
    const double c = zeta_real(a - 1.0) / gamma_real(2.0 - a);
    CHECK(m.coeffs[0] == doctest::Approx(t.coeffs[0] - c).epsilon(1e-15));
    CHECK(m.coeffs[1] == doctest::Approx(t.coeffs[1] + 2.0 * c).epsilon(1e-15));
    CHECK(m.coeffs[2] == doctest::Approx(t.coeffs[2] - c).epsilon(1e-15));
    for (std::size_t k = 3; k <= 50; ++k)
        CHECK(m.coeffs[k] == t.coeffs[k]);
}

TEST_CASE("truncated gamma scheme switches once n-1 passes the threshold") {
    const FractionalOrder a(0.5);
    const std::size_t N = 100, T = 20;
    const auto at = build_scheme(SchemeKind::GL_LAST2_TRUNC, a, T + 1, N);
    CHECK(at.coeffs == build_scheme(SchemeKind::GL_LAST2, a, T + 1, N).coeffs);
    const auto past = build_scheme(SchemeKind::GL_LAST2_TRUNC, a, T + 2, N);
    const auto asym = gamma_last_two_asym(a, T + 2);
    CHECK(past.coeffs[T + 1] == asym.penultimate);
    CHECK(past.coeffs[T + 2] == asym.last);
    const auto far = build_scheme(SchemeKind::GL_LAST2_TRUNC, a, 80, N);
    const auto gl = gl_weights(a, 80);
    for (std::size_t k = 0; k <= T; ++k)
        CHECK(far.coeffs[k] == gl[k]);
    for (std::size_t k = T + 1; k <= 78; ++k)
        CHECK(far.coeffs[k] == tail_expansion(TailFamily::GL2, a, k));
}

TEST_CASE("GL truncation residual scales like (p/N)^{2+alpha}") {
    for (double a : {0.2, 0.5, 0.9}) {
        std::vector<double> c;
        for (std::size_t N : {100u, 200u, 400u}) {
            const auto w = build_scheme(SchemeKind::GL_TRUNC, FractionalOrder(a), N, N);
            const auto gl = gl_weights(FractionalOrder(a), N);
            double r = 0.0;
            for (std::size_t k = 21; k < N; ++k)
                r += std::abs(w.coeffs[k] - gl[k]);
            c.push_back(r / std::pow(5.0 / N, 2.0 + a));
        }
        CAPTURE(a);
        const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
        CHECK(*hi / *lo < 1.5);
    }
}

TEST_CASE("build_scheme rejects bad sizes") {
    const FractionalOrder a(0.5);
    CHECK_THROWS_AS(build_scheme(SchemeKind::L1, a, 11, 10), SizeError);
    CHECK_THROWS_AS(build_scheme(SchemeKind::L1, a, 0, 10), SizeError);
    CHECK_THROWS_AS(build_scheme(SchemeKind::L1_MOD, a, 1, 10), SizeError);
    CHECK_THROWS_AS(build_scheme(SchemeKind::GL_LAST2, a, 1, 10), SizeError);
}

TEST_CASE("weights csv round-trips at 17 digits") {
    const auto w = build_scheme(SchemeKind::GL_LAST2, FractionalOrder(0.37), 9, 9);
    std::ostringstream os;
    write_weights_csv(os, w);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,coeff");
    std::size_t k = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        CHECK(std::stoul(line.substr(0, comma)) == k);
        CHECK(std::stod(line.substr(comma + 1)) == w.coeffs[k]);
        ++k;
    }
    CHECK(k == 10);
}

}
