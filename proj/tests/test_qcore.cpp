#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qlattice/qcore.hpp"

using namespace qlattice;

TEST_CASE("q_pochhammer empty product and zero factor") {
    CHECK(q_pochhammer(0.37, 0.5, 0) == 1.0);
    CHECK(q_pochhammer(1.0, 0.5, 1) == 0.0);
    CHECK(q_pochhammer(1.0, 0.7, 5) == 0.0);
}

TEST_CASE("q_pochhammer infinite product golden value") {
    // (q;q)_inf at q = 1/2, frozen from a 30-digit independent evaluation
    CHECK(q_pochhammer_inf(0.5, 0.5) ==
          doctest::Approx(0.28878809508660242128).epsilon(1e-15));
    // brute-force oracle: multiply factors until |a q^k| < 1e-18
    double brute = 1.0, aq = 0.5;
    while (std::abs(aq) >= 1e-18) {
        brute *= 1.0 - aq;
        aq *= 0.5;
    }
    CHECK(q_pochhammer_inf(0.5, 0.5) == doctest::Approx(brute).epsilon(1e-15));
}

TEST_CASE("q_pochhammer splitting identity (a;q)_{n+m} = (a;q)_n (aq^n;q)_m") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> da(-2.0, 2.0);
    std::uniform_real_distribution<double> dq(0.1, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = da(rng), q = dq(rng);
        for (int n : {0, 1, 3, 7, 20})
            for (int m : {0, 2, 5, 20}) {
                const double lhs = q_pochhammer(a, q, n + m);
                const double rhs = q_pochhammer(a, q, n) *
                                   q_pochhammer(a * std::pow(q, n), q, m);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
    }
}

TEST_CASE("log q-Pochhammer matches the direct product") {
    const auto [lg, sign] = log_q_pochhammer_inf(-3.0, 0.5);
    CHECK(sign == 1);
    CHECK(std::exp(lg) ==
          doctest::Approx(q_pochhammer_inf(-3.0, 0.5)).epsilon(1e-13));
    const auto [lg2, sign2] = log_q_pochhammer_inf(5.0, 0.5);
    // (5; 0.5)_inf = (1-5)(1-2.5)(1-1.25)(...) : three negative factors
    CHECK(sign2 == -1);
    CHECK(sign2 * std::exp(lg2) ==
          doctest::Approx(q_pochhammer_inf(5.0, 0.5)).epsilon(1e-13));
}

TEST_CASE("negative q-power detection") {
    CHECK(negative_q_power(std::pow(0.5, -7), 0.5).value() == 7);
    CHECK(negative_q_power(1.0, 0.5).value() == 0);
    CHECK(!negative_q_power(0.3, 0.5));
    CHECK(!negative_q_power(1.37, 0.5));
}

TEST_CASE("phi_rs: terminating series with n = 0 is 1") {
    const auto r = phi_rs({1.0, 0.7}, {0.3}, 0.5, 0.9);
    CHECK(r.value == 1.0);
    CHECK(r.terms_used == 1);
    CHECK(r.tail_bound == 0.0);
}

TEST_CASE("phi_rs: 2phi1 hand-expanded golden value") {
    // 2phi1(q^-1, q^-1; bq; q; -c^-1 q^2) at q=1/2, b=1/2, c=1
    // = 1 + c^-1 (q-1)/(1-bq) = 1/3 exactly
    const double q = 0.5;
    const auto r = phi_rs({std::pow(q, -1), std::pow(q, -1)}, {0.5 * q}, q,
                          -std::pow(q, 2));
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.terms_used == 2);
}

TEST_CASE("phi_rs: 2phi0 parity value P_n(-i) = (-i)^n") {
    // i^-n 2phi0(q^-n, i eta; -; q; -q^n) at eta = -i gives (-i)^n
    const double q = 0.5;
    const std::complex<double> I(0.0, 1.0);
    for (int n : {1, 2, 3, 4, 5}) {
        const auto r = phi_rs({std::pow(q, -n), I * (-I)}, {}, q,
                              std::complex<double>(-std::pow(q, n)));
        const std::complex<double> value = std::pow(-I, n) * r.value;
        const std::complex<double> expect = std::pow(-I, n);
        CHECK(std::abs(value - expect) < 1e-13);
    }
}

TEST_CASE("phi_rs: reverse summation agrees (polynomial evaluation)") {
    // terminating series re-summed in reverse order changes the result by
    // < 1e-12 relative
    const double q = 0.55;
    const int n = 9;
    std::vector<double> terms;
    double term = 1.0, qk = 1.0;
    const double qmn = std::pow(q, -n);
    terms.push_back(term);
    for (int k = 0; k < n; ++k) {
        term *= (1.0 - qmn * qk) * (1.0 - 0.4 * qk) /
                ((1.0 - q * qk) * (1.0 - 0.2 * qk)) * 0.8;
        terms.push_back(term);
        qk *= q;
    }
    double fwd = 0.0, rev = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) fwd += terms[i];
    for (std::size_t i = terms.size(); i-- > 0;) rev += terms[i];
    const auto r = phi_rs({qmn, 0.4}, {0.2}, q, 0.8);
    CHECK(r.value == doctest::Approx(fwd).epsilon(1e-12));
    CHECK(fwd == doctest::Approx(rev).epsilon(1e-12));
}

TEST_CASE("phi_rs: pole in lower parameter") {
    // (b;q)_k vanishes at k=2 for b = q^-1
    CHECK_THROWS_AS(phi_rs({std::pow(0.5, -5), 0.3}, {2.0}, 0.5, 0.4),
                    PoleInLowerParameter);
}

TEST_CASE("jackson integral: constants and monomials") {
    const double q = 0.5;
    auto one = [](double) { return 1.0; };
    CHECK(jackson_integral(one, 0.0, 1.0, q, 1e-14).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    auto lin = [](double y) { return y; };
    CHECK(jackson_integral(lin, 0.0, 1.0, q, 1e-14).value ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // int_0^beta y^m d_q y = (1-q) beta^{m+1} / (1-q^{m+1})
    for (int m = 0; m <= 8; ++m) {
        const double beta = 0.8;
        auto f = [m](double y) { return std::pow(y, m); };
        const double expect =
            (1.0 - q) * std::pow(beta, m + 1) / (1.0 - std::pow(q, m + 1));
        CHECK(jackson_integral(f, 0.0, beta, q, 1e-14).value ==
              doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("jackson integral is linear") {
    const double q = 0.6;
    auto f = [](double y) { return std::cos(y); };
    auto g = [](double y) { return y * y - 0.3; };
    auto combo = [&](double y) { return 2.5 * f(y) - 1.25 * g(y); };
    const double lhs = jackson_integral(combo, -0.4, 0.9, q, 1e-14).value;
    const double rhs = 2.5 * jackson_integral(f, -0.4, 0.9, q, 1e-14).value -
                       1.25 * jackson_integral(g, -0.4, 0.9, q, 1e-14).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("kahan accumulator compensates") {
    KahanSum<double> s;
    s.add(1.0);
    for (int i = 0; i < 10; ++i) s.add(1e-17);
    CHECK(s.value() == doctest::Approx(1.0 + 1e-16).epsilon(1e-18));
}
