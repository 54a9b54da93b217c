#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qlattice/closure.hpp"

using namespace qlattice;

namespace {

ParameterSet params(double q, std::map<std::string, double> lam) {
    ParameterSet p;
    p.q = q;
    p.lambda = std::move(lam);
    return p;
}

const ParameterSet kBqj = params(0.5, {{"a", 0.5}, {"b", 0.5}, {"c", -0.5}});
const ParameterSet kBql = params(0.5, {{"a", 0.5}, {"b", -0.5}});
const ParameterSet kAsc = params(0.5, {{"a", -0.5}});
const ParameterSet kQm = params(0.5, {{"b", 0.5}, {"c", 2.0}});
const ParameterSet kQc = params(0.5, {{"a", 1.0}});
const ParameterSet kDqh2 = params(0.5, {{"c", 1.0}});
const ParameterSet kQl = params(0.5, {{"a", 0.5}, {"c", 1.0}});
const ParameterSet kDqh1 = params(0.5, {});

ParameterSet point_for(FamilyId id) {
    switch (id) {
        case FamilyId::qMeixner: return kQm;
        case FamilyId::qCharlier: return kQc;
        case FamilyId::bigQJacobi: return kBqj;
        case FamilyId::bigQLaguerre: return kBql;
        case FamilyId::AlSalamCarlitzI: return kAsc;
        case FamilyId::discreteQHermiteI: return kDqh1;
        case FamilyId::discreteQHermiteII: return kDqh2;
        case FamilyId::qLaguerre: return kQl;
        default: throw UnsupportedFamily("no closure point");
    }
}

const FamilyId kClosureFamilies[] = {
    FamilyId::bigQJacobi,   FamilyId::bigQLaguerre,
    FamilyId::AlSalamCarlitzI, FamilyId::discreteQHermiteI,
    FamilyId::qMeixner,     FamilyId::qCharlier,
    FamilyId::discreteQHermiteII, FamilyId::qLaguerre,
};

const FamilyId kDualFamilies[] = {
    FamilyId::bigQJacobi,
    FamilyId::bigQLaguerre,
    FamilyId::AlSalamCarlitzI,
    FamilyId::discreteQHermiteI,
};

} // namespace

TEST_CASE("coefficient identities r0(2) = r1(1), r0(1) = 2 r1(0)") {
    for (FamilyId id : kClosureFamilies) {
        const auto cd = closure_data(id, point_for(id));
        CHECK(cd.r0[2] == doctest::Approx(cd.r1[1]).epsilon(1e-15));
        CHECK(cd.r0[1] == doctest::Approx(2.0 * cd.r1[0]).epsilon(1e-15));
    }
    for (FamilyId id : kDualFamilies) {
        const auto cd = closure_data_dual(id, point_for(id));
        CHECK(cd.r0[2] == doctest::Approx(cd.r1[1]).epsilon(1e-15));
        CHECK(cd.r0[1] == doctest::Approx(2.0 * cd.r1[0]).epsilon(1e-15));
    }
    // spot values
    const auto dqh2 = closure_data(FamilyId::discreteQHermiteII, kDqh2);
    CHECK(dqh2.rm1[0] == 0.0);
    CHECK(dqh2.rm1[1] == 0.0);
    CHECK(dqh2.rm1[2] == 0.0);
    const auto asc = closure_data(FamilyId::AlSalamCarlitzI, kAsc);
    const double s = 0.5 + 2.0 - 2.0; // (q^(1/2)-q^(-1/2))^2 at q=1/2
    const double a = -0.5;
    for (double z : {0.3, 1.7, -0.4})
        CHECK(asc.Rm1(z) ==
              doctest::Approx(-s * (z + 1.0) * (z - a)).epsilon(1e-13));
}

TEST_CASE("lattice identity eta(x+2) - (2 + r1^(1)) eta(x+1) + eta(x) = rm1^(2)") {
    for (FamilyId id : kClosureFamilies) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        const auto cd = closure_data(id, p);
        for (int s = 0; s < fam.sectors; ++s) {
            const Sector sec = static_cast<Sector>(s);
            auto etac = [&](int x) {
                return cd.aff_scale * fam.eta(sec, x, p) + cd.aff_shift;
            };
            for (int x = 0; x <= 30; ++x)
                CHECK(etac(x + 2) - (2.0 + cd.r1[1]) * etac(x + 1) + etac(x) ==
                      doctest::Approx(cd.rm1[2]).epsilon(1e-11));
        }
    }
    // dual coordinate E(n)
    for (FamilyId id : kDualFamilies) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        const auto cd = closure_data_dual(id, p);
        for (int n = 0; n <= 30; ++n) {
            const double lhs = fam.energy(n + 2, p) -
                               (2.0 + cd.r1[1]) * fam.energy(n + 1, p) +
                               fam.energy(n, p);
            CHECK(lhs == doctest::Approx(cd.rm1[2]).epsilon(1e-11));
        }
    }
}

TEST_CASE("alpha_pm: sum and product recover R1 and R0") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> uz(0.0, 3.0);
    for (FamilyId id : kClosureFamilies) {
        const auto cd = closure_data(id, point_for(id));
        for (int t = 0; t < 30; ++t) {
            const double z = uz(rng);
            if (cd.R1(z) * cd.R1(z) + 4.0 * cd.R0(z) < 0.0) continue;
            const auto [ap, am] = alpha_pm(cd, z);
            CHECK(ap + am == doctest::Approx(cd.R1(z)).epsilon(1e-12));
            CHECK(-ap * am == doctest::Approx(cd.R0(z)).epsilon(1e-11));
        }
    }
    // off the admissible set the discriminant goes negative (bqJ)
    const auto cd = closure_data(FamilyId::bigQJacobi, kBqj);
    const double z0 = -(1.0 + 0.25 * 0.5); // root of R1: disc = -4s(1+q)^2 ab
    CHECK_THROWS_AS(alpha_pm(cd, z0), NegativeDiscriminant);
}

TEST_CASE("alpha_pm reproduces spectral differences on every spectrum") {
    for (FamilyId id : kClosureFamilies) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        const auto cd = closure_data(id, p);
        for (int n = 0; n <= 10; ++n) {
            const auto [ap, am] = alpha_pm(cd, fam.energy(n, p));
            const double up = fam.energy(n + 1, p) - fam.energy(n, p);
            CHECK(ap == doctest::Approx(up).epsilon(1e-10));
            if (n > 0) {
                const double dn = fam.energy(n - 1, p) - fam.energy(n, p);
                CHECK(am == doctest::Approx(dn).epsilon(1e-10));
            }
        }
        // R-1/R0 at E(n) equals the recurrence shift A_n + C_n (0 for dqH II)
        for (int n = 0; n <= 8; ++n) {
            const double z = fam.energy(n, p);
            const double shift =
                fam.lhs == RecurrenceLhs::eta_no_diag ? 0.0
                                                      : fam.An(n, p) + fam.Cn(n, p);
            CHECK(cd.Rm1(z) / cd.R0(z) ==
                  doctest::Approx(shift).epsilon(1e-9));
        }
    }
    // supplementary sector: order reversed on E'(n)
    for (FamilyId id : {FamilyId::qMeixner, FamilyId::qCharlier}) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        const auto cd = closure_data(id, p);
        for (int n = 1; n <= 8; ++n) {
            const double z = fam.supplement.Eprime(n, p);
            const auto [ap, am] = alpha_pm(cd, z);
            CHECK(ap == doctest::Approx(fam.supplement.Eprime(n - 1, p) - z)
                            .epsilon(1e-10));
            CHECK(am == doctest::Approx(fam.supplement.Eprime(n + 1, p) - z)
                            .epsilon(1e-10));
            CHECK(cd.Rm1(z) / cd.R0(z) ==
                  doctest::Approx(fam.supplement.An(n, p) +
                                  fam.supplement.Cn(n, p))
                      .epsilon(1e-9));
        }
    }
    // dual spectra: ordinary forward, supplementary reversed
    for (FamilyId id : kDualFamilies) {
        const auto& fam = family(id);
        const auto& d = dual_descriptor(id);
        const auto p = point_for(id);
        const auto cd = closure_data_dual(id, p);
        for (int x = 1; x <= 8; ++x) {
            const double zd = d.Ed(Sector::plus, x, p);
            const auto [ap, am] = alpha_pm(cd, zd);
            CHECK(ap == doctest::Approx(d.Ed(Sector::plus, x + 1, p) - zd)
                            .epsilon(1e-9));
            CHECK(am == doctest::Approx(d.Ed(Sector::plus, x - 1, p) - zd)
                            .epsilon(1e-9));
            CHECK(cd.Rm1(zd) / cd.R0(zd) ==
                  doctest::Approx(-fam.B(Sector::plus, x, p) -
                                  fam.D(Sector::plus, x, p))
                      .epsilon(1e-9));
            const double zp = d.Edp(Sector::plus, x, p);
            const auto [app, amp] = alpha_pm(cd, zp);
            CHECK(app == doctest::Approx(d.Edp(Sector::plus, x - 1, p) - zp)
                             .epsilon(1e-9));
            CHECK(amp == doctest::Approx(d.Edp(Sector::plus, x + 1, p) - zp)
                             .epsilon(1e-9));
            CHECK(cd.Rm1(zp) / cd.R0(zp) ==
                  doctest::Approx(-fam.B(Sector::minus, x, p) -
                                  fam.D(Sector::minus, x, p))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("discriminant closed forms on random spectral-range points") {
    std::mt19937 rng(89);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (FamilyId id : kClosureFamilies) {
        if (id == FamilyId::bigQJacobi) continue; // spectrum-pinned form below
        const auto& fam = family(id);
        const auto p = point_for(id);
        const auto cd = closure_data(id, p);
        const double zmax = fam.energy(12, p);
        for (int t = 0; t < 100; ++t) {
            const double z = u(rng) * zmax;
            const double disc =
                std::sqrt(cd.R1(z) * cd.R1(z) + 4.0 * cd.R0(z));
            CHECK(std::abs(disc - closed_sqrt_disc(id, false, z, p)) < 1e-12 *
                      std::max(1.0, disc));
        }
    }
    for (FamilyId id : kDualFamilies) {
        const auto& d = dual_descriptor(id);
        const auto p = point_for(id);
        const auto cd = closure_data_dual(id, p);
        for (int t = 0; t < 100; ++t) {
            const double hi = d.Edp(Sector::plus, 0, p);
            const double z = u(rng) * hi;
            const double disc =
                std::sqrt(cd.R1(z) * cd.R1(z) + 4.0 * cd.R0(z));
            CHECK(std::abs(disc - closed_sqrt_disc(id, true, z, p)) < 1e-12 *
                      std::max(1.0, disc));
        }
    }
    // bqJ: complete square on the spectrum only
    const auto cd = closure_data(FamilyId::bigQJacobi, kBqj);
    const auto& bqj = family(FamilyId::bigQJacobi);
    for (int n = 0; n <= 40; ++n) {
        const double z = bqj.energy(n, kBqj);
        const double disc = std::sqrt(cd.R1(z) * cd.R1(z) + 4.0 * cd.R0(z));
        CHECK(disc == doctest::Approx(closed_sqrt_disc(
                          FamilyId::bigQJacobi, false, z, kBqj))
                          .epsilon(1e-12));
    }
}

TEST_CASE("double commutator identity on the truncated operators (N=40)") {
    for (FamilyId id : kClosureFamilies) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        for (int s = 0; s < fam.sectors; ++s)
            CHECK(check_closure_matrix(fam, static_cast<Sector>(s), p, 40) <
                  1e-9);
    }
    for (FamilyId id : kDualFamilies)
        CHECK(check_closure_matrix_dual(id, point_for(id), 40) < 1e-9);
    // the dqH II residual is identical for both sectors
    const auto& dqh2 = family(FamilyId::discreteQHermiteII);
    CHECK(check_closure_matrix(dqh2, Sector::plus, kDqh2, 40) ==
          doctest::Approx(check_closure_matrix(dqh2, Sector::minus, kDqh2, 40))
              .epsilon(1e-12));
}

TEST_CASE("affine covariance of the closure relation") {
    // eta -> u eta + v with R-1 -> u R-1 - v R0 leaves the identity intact
    const auto& fam = family(FamilyId::bigQLaguerre);
    const auto p = kBql;
    auto base = closure_data(FamilyId::bigQLaguerre, p);
    const double u = -1.7, v = 0.35;
    ClosureData mod = base;
    mod.aff_scale = u * base.aff_scale;
    mod.aff_shift = u * base.aff_shift + v;
    for (int i = 0; i < 3; ++i)
        mod.rm1[i] = u * base.rm1[i] - v * base.r0[i];
    const int N = 30;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N + 1, N + 1);
    Eigen::VectorXd eta(N + 1);
    for (int x = 0; x <= N; ++x) {
        const double B = fam.B(Sector::plus, x, p), D = fam.D(Sector::plus, x, p);
        H(x, x) = B + D;
        if (x < N) H(x, x + 1) = -B;
        if (x > 0) H(x, x - 1) = -D;
        eta[x] = mod.aff_scale * fam.eta(Sector::plus, x, p) + mod.aff_shift;
    }
    CHECK(closure_matrix_residual(H, eta, mod) < 1e-9);
}

TEST_CASE("ladder actions: ground-state annihilation and neighbour maps") {
    // bounded Hamiltonians run at N = 200
    for (FamilyId id : {FamilyId::qMeixner, FamilyId::qCharlier}) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        CHECK(ladder_action(fam, Sector::plus, p, LadderSign::lower, 0, 200) <
              1e-9);
        for (int n = 0; n <= 4; ++n) {
            CHECK(ladder_action(fam, Sector::plus, p, LadderSign::raise, n, 200) <
                  1e-7);
            if (n >= 1)
                CHECK(ladder_action(fam, Sector::plus, p, LadderSign::lower, n,
                                    200) < 1e-7);
        }
        // supplementary sector with the reversed order
        for (int n = 0; n <= 3; ++n) {
            CHECK(ladder_action_supplement(fam, p, LadderSign::raise, n, 200) <
                  1e-7);
            CHECK(ladder_action_supplement(fam, p, LadderSign::lower, n, 200) <
                  1e-7);
        }
    }
    // dual big q-Jacobi family (bounded dual Hamiltonians)
    for (FamilyId id : kDualFamilies) {
        const auto p = point_for(id);
        for (int x = 0; x <= 3; ++x) {
            CHECK(ladder_action_dual(id, p, true, LadderSign::raise, x, 200) <
                  1e-7);
            CHECK(ladder_action_dual(id, p, true, LadderSign::lower, x, 200) <
                  1e-7);
            CHECK(ladder_action_dual(id, p, false, LadderSign::raise, x, 200) <
                  1e-7);
            CHECK(ladder_action_dual(id, p, false, LadderSign::lower, x, 200) <
                  1e-7);
        }
    }
    // q^{-2x} potentials: the rows lose significance past x ~ 45; run the
    // q-exponential families on short truncations
    for (FamilyId id : {FamilyId::bigQJacobi, FamilyId::bigQLaguerre,
                        FamilyId::AlSalamCarlitzI, FamilyId::discreteQHermiteII,
                        FamilyId::qLaguerre}) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        for (int s = 0; s < fam.sectors; ++s)
            for (int n = 0; n <= 3; ++n) {
                CHECK(ladder_action(fam, static_cast<Sector>(s), p,
                                    LadderSign::raise, n, 40) < 1e-7);
                CHECK(ladder_action(fam, static_cast<Sector>(s), p,
                                    LadderSign::lower, n, 40) < 1e-7);
            }
    }
}

TEST_CASE("ladder residual decreases with the truncation size") {
    for (FamilyId id : {FamilyId::qMeixner, FamilyId::qCharlier}) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        for (int n = 0; n <= 2; ++n) {
            const double r100 =
                ladder_action(fam, Sector::plus, p, LadderSign::raise, n, 100);
            const double r200 =
                ladder_action(fam, Sector::plus, p, LadderSign::raise, n, 200);
            CHECK(r200 < 0.5 * std::max(r100, 1e-12));
        }
    }
}

TEST_CASE("R0 singular at the truncated accumulation point raises") {
    const auto& qm = family(FamilyId::qMeixner);
    // E(25) is within 1e-12 of the accumulation point 1
    CHECK_THROWS_AS(ladder_action(qm, Sector::plus, kQm, LadderSign::raise, 25,
                                  60),
                    SingularRZero);
}

TEST_CASE("Heisenberg picture: t = 0 reduction and phase factors") {
    const std::vector<double> ts = {0.0, 0.3, 1.0, 4.0};
    for (FamilyId id : {FamilyId::qMeixner, FamilyId::qCharlier}) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        for (int n = 0; n <= 3; ++n)
            CHECK(heisenberg_coefficient_check(fam, Sector::plus, p, n, ts,
                                               150) < 1e-9);
    }
    for (FamilyId id : {FamilyId::bigQJacobi, FamilyId::bigQLaguerre,
                        FamilyId::discreteQHermiteII, FamilyId::qLaguerre}) {
        const auto& fam = family(id);
        const auto p = point_for(id);
        for (int n = 0; n <= 3; ++n)
            CHECK(heisenberg_coefficient_check(fam, Sector::plus, p, n, ts, 40) <
                  1e-9);
    }
    // dqH II: R-1/R0 = 0 matches B_n = 0
    const auto cd = closure_data(FamilyId::discreteQHermiteII, kDqh2);
    CHECK(cd.Rm1(family(FamilyId::discreteQHermiteII).energy(2, kDqh2)) == 0.0);
}
