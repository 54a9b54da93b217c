#include "qlattice/closure.hpp"

#include <cmath>
#include <complex>

namespace qlattice {
namespace {

double qpow(double q, double e) { return std::pow(q, e); }
double sconst(double q) { return q + 1.0 / q - 2.0; } // (q^1/2 - q^-1/2)^2

} // namespace

ClosureData closure_data(FamilyId id, const ParameterSet& p) {
    const double q = p.q;
    const double s = sconst(q);
    ClosureData cd;
    switch (id) {
        case FamilyId::bigQJacobi: {
            const double a = p.get("a"), b = p.get("b"), c = p.get("c");
            cd.aff_scale = -1.0;
            cd.aff_shift = 1.0;
            cd.r1 = {s * (1.0 + a * b * q), s};
            cd.r0 = {s * ((1.0 + a * b * q) * (1.0 + a * b * q) -
                          (1.0 + q) * (1.0 + q) * a * b),
                     2.0 * s * (1.0 + a * b * q), s};
            cd.rm1 = {-s * (1.0 - a * b) * (1.0 - a * q) * (1.0 - c * q),
                      -s * (2.0 - (a + c - a * b + a * c) * q), -s};
            return cd;
        }
        case FamilyId::bigQLaguerre: {
            const double a = p.get("a"), b = p.get("b");
            cd.aff_scale = -1.0;
            cd.aff_shift = 1.0;
            cd.r1 = {s, s};
            cd.r0 = {s, 2.0 * s, s};
            cd.rm1 = {-s * (1.0 - a * q) * (1.0 - b * q),
                      -s * (2.0 - (a + b + a * b) * q), -s};
            return cd;
        }
        case FamilyId::AlSalamCarlitzI:
        case FamilyId::discreteQHermiteI: {
            const double a =
                id == FamilyId::discreteQHermiteI ? -1.0 : p.get("a");
            cd.aff_scale = -1.0;
            cd.aff_shift = 1.0;
            cd.r1 = {s, s};
            cd.r0 = {s, 2.0 * s, s};
            // -s (z+1)(z-a)
            cd.rm1 = {s * a, -s * (1.0 - a), -s};
            return cd;
        }
        case FamilyId::qMeixner: {
            const double b = p.get("b"), c = p.get("c");
            cd.r1 = {-s, s};
            cd.r0 = {s, -2.0 * s, s};
            cd.rm1 = {s * (b * c - c / q), -s * (1.0 + b * c + c), s};
            return cd;
        }
        case FamilyId::qCharlier: {
            const double a = p.get("a");
            cd.r1 = {-s, s};
            cd.r0 = {s, -2.0 * s, s};
            cd.rm1 = {-s * a / q, -s * (1.0 + a), s};
            return cd;
        }
        case FamilyId::discreteQHermiteII: {
            cd.r1 = {-s, s};
            cd.r0 = {s, -2.0 * s, s};
            cd.rm1 = {0.0, 0.0, 0.0};
            return cd;
        }
        case FamilyId::qLaguerre: {
            const double a = p.get("a");
            cd.aff_shift = 1.0;
            cd.r1 = {-s, s};
            cd.r0 = {s, -2.0 * s, s};
            cd.rm1 = {-s / (a * q), -s * (1.0 / a - 1.0), -s};
            return cd;
        }
        default:
            throw UnsupportedFamily("no closure data for this family");
    }
}

ClosureData closure_data_dual(FamilyId id, const ParameterSet& p) {
    const double q = p.q;
    const double s = sconst(q);
    ClosureData cd;
    switch (id) {
        case FamilyId::bigQJacobi: {
            const double a = p.get("a"), b = p.get("b"), c = p.get("c");
            cd.r1 = {-s * a * q, s};
            cd.r0 = {s * a * a * q * q, -2.0 * s * a * q, s};
            cd.rm1 = {s * a * c * q * (1.0 - a * q) * (1.0 - a * b / c * q),
                      s * a * q * (b + c + c / a - 1.0 - 2.0 * a * b * q),
                      s * (1.0 + a * b * q)};
            return cd;
        }
        case FamilyId::bigQLaguerre: {
            const double a = p.get("a"), b = p.get("b");
            cd.r1 = {-s * a * q, s};
            cd.r0 = {s * a * a * q * q, -2.0 * s * a * q, s};
            cd.rm1 = {s * a * b * q * (1.0 - a * q),
                      s * a * q * (b + b / a - 1.0), s};
            return cd;
        }
        case FamilyId::AlSalamCarlitzI:
        case FamilyId::discreteQHermiteI: {
            const double a =
                id == FamilyId::discreteQHermiteI ? -1.0 : p.get("a");
            cd.r1 = {-s, s};
            cd.r0 = {s, -2.0 * s, s};
            cd.rm1 = {s * a / q, s * (a - 1.0), s};
            return cd;
        }
        default:
            throw UnsupportedFamily("no dual closure data for this family");
    }
}

std::pair<double, double> alpha_pm(const ClosureData& cd, double z) {
    const double disc = cd.R1(z) * cd.R1(z) + 4.0 * cd.R0(z);
    if (disc < -1e-12 * std::max(1.0, std::abs(cd.R0(z))))
        throw NegativeDiscriminant("alpha_pm: R1^2 + 4 R0 < 0");
    const double sd = std::sqrt(std::max(disc, 0.0));
    return {0.5 * (cd.R1(z) + sd), 0.5 * (cd.R1(z) - sd)};
}

double closed_sqrt_disc(FamilyId id, bool dual, double z,
                        const ParameterSet& p) {
    const double q = p.q;
    const double pref = 1.0 / q - q;
    if (dual) {
        switch (id) {
            case FamilyId::bigQJacobi:
            case FamilyId::bigQLaguerre:
                return pref * std::abs(p.get("a") * q - z);
            case FamilyId::AlSalamCarlitzI:
            case FamilyId::discreteQHermiteI:
                return pref * std::abs(1.0 - z);
            default:
                throw UnsupportedFamily("no closed discriminant form");
        }
    }
    switch (id) {
        case FamilyId::bigQLaguerre:
        case FamilyId::AlSalamCarlitzI:
        case FamilyId::discreteQHermiteI:
            return pref * std::abs(1.0 + z);
        case FamilyId::qMeixner:
        case FamilyId::qCharlier:
        case FamilyId::discreteQHermiteII:
        case FamilyId::qLaguerre:
            return pref * std::abs(1.0 - z);
        case FamilyId::bigQJacobi: {
            // complete square only on the spectrum z = E(n):
            // sqrt(...) = s (q^-n + a b q^{n+1}); recover q^-n from z
            const double a = p.get("a"), b = p.get("b");
            const double s = sconst(q);
            // z = (u - 1)(1 - a b q / u) with u = q^-n
            const double B = z + 1.0 + a * b * q;
            const double u = 0.5 * (B + std::sqrt(B * B - 4.0 * a * b * q));
            return s * (u + a * b * q / u);
        }
        default:
            throw UnsupportedFamily("no closed discriminant form");
    }
}

double closure_matrix_residual(const Eigen::MatrixXd& H,
                               const Eigen::VectorXd& eta,
                               const ClosureData& cd) {
    const int n = static_cast<int>(H.rows());
    if (n < 7) throw InvalidParameter("closure residual: need N >= 6");
    const Eigen::MatrixXd Habs = H.cwiseAbs();
    const Eigen::VectorXd etaabs = eta.cwiseAbs();

    // M = [H, eta] entrywise: M_ij = H_ij (eta_j - eta_i); exact products,
    // no subtractive assembly
    Eigen::MatrixXd M(n, n), Mabs(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            M(i, j) = H(i, j) * (eta[j] - eta[i]);
            Mabs(i, j) = std::abs(M(i, j));
        }
    // K = [H, M]_ij = sum_z H_iz H_zj (eta_i + eta_j - 2 eta_z)
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd Kabs = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) {
            double v = 0.0, va = 0.0;
            for (int z = std::max({0, i - 1, j - 1});
                 z <= std::min({n - 1, i + 1, j + 1}); ++z) {
                const double t =
                    H(i, z) * H(z, j) * (eta[i] + eta[j] - 2.0 * eta[z]);
                v += t;
                va += std::abs(t);
            }
            K(i, j) = v;
            Kabs(i, j) = va;
        }

    const Eigen::MatrixXd H2 = H * H;
    const Eigen::MatrixXd H2abs = Habs * Habs;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

    auto poly = [&](const std::array<double, 3>& c,
                    const Eigen::MatrixXd& A, const Eigen::MatrixXd& A2) {
        return Eigen::MatrixXd(c[2] * A2 + c[1] * A + c[0] * I);
    };
    const Eigen::MatrixXd R0H = poly(cd.r0, H, H2);
    const Eigen::MatrixXd R0Habs =
        std::abs(cd.r0[2]) * H2abs + std::abs(cd.r0[1]) * Habs +
        std::abs(cd.r0[0]) * I;
    const Eigen::MatrixXd R1H = cd.r1[1] * H + cd.r1[0] * I;
    const Eigen::MatrixXd R1Habs =
        std::abs(cd.r1[1]) * Habs + std::abs(cd.r1[0]) * I;
    const Eigen::MatrixXd Rm1H = poly(cd.rm1, H, H2);
    const Eigen::MatrixXd Rm1Habs =
        std::abs(cd.rm1[2]) * H2abs + std::abs(cd.rm1[1]) * Habs +
        std::abs(cd.rm1[0]) * I;

    const Eigen::MatrixXd rhs =
        eta.asDiagonal() * R0H + M * R1H + Rm1H;
    const Eigen::MatrixXd rhsabs =
        etaabs.asDiagonal() * R0Habs + Mabs * R1Habs + Rm1Habs;

    double worst = 0.0;
    for (int i = 2; i <= n - 3; ++i)
        for (int j = 2; j <= n - 3; ++j) {
            const double scale =
                std::max(1.0, Kabs(i, j) + rhsabs(i, j));
            worst = std::max(worst, std::abs(K(i, j) - rhs(i, j)) / scale);
        }
    return worst;
}

double check_closure_matrix(const FamilyDescriptor& fam, Sector s,
                            const ParameterSet& p, int N) {
    fam.validate(p);
    if (N < 6) throw InvalidParameter("check_closure_matrix: N >= 6");
    const ClosureData cd = closure_data(fam.id, p);
    const int n = N + 1;
    // similarity-transformed Hamiltonian: diag B+D, super -B, sub -D
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd eta(n);
    const int x0 = fam.lattice == Lattice::full ? -(N / 2) : 0;
    for (int i = 0; i < n; ++i) {
        const int x = x0 + i;
        const double B = fam.B(s, x, p), D = fam.D(s, x, p);
        H(i, i) = B + D;
        if (i + 1 < n) H(i, i + 1) = -B;
        if (i > 0) H(i, i - 1) = -D;
        eta[i] = cd.aff_scale * fam.eta(s, x, p) + cd.aff_shift;
    }
    return closure_matrix_residual(H, eta, cd);
}

double check_closure_matrix_dual(FamilyId id, const ParameterSet& p, int N) {
    const FamilyDescriptor& fam = family(id);
    fam.validate(p);
    const DualDescriptor& d = dual_descriptor(id);
    const ClosureData cd = closure_data_dual(id, p);
    const Eigen::MatrixXd H = dual_hamiltonian(d, Sector::plus, p, N);
    Eigen::VectorXd eta(N + 1);
    for (int m = 0; m <= N; ++m) eta[m] = fam.energy(m, p);
    return closure_matrix_residual(H, eta, cd);
}

namespace {

struct LadderParts {
    Eigen::VectorXd commutator; // [H, eta] phi
    Eigen::VectorXd eta_phi;
    Eigen::VectorXd phi;
};

// [H, eta] phi computed entrywise from H_ij (eta_j - eta_i); avoids the
// catastrophic H(eta phi) - eta(H phi) assembly for q^{-2x} potentials.
LadderParts apply_parts(const Eigen::MatrixXd& H, const Eigen::VectorXd& eta,
                        const Eigen::VectorXd& phi) {
    const int n = static_cast<int>(phi.size());
    LadderParts out;
    out.commutator = Eigen::VectorXd::Zero(n);
    out.eta_phi.resize(n);
    out.phi = phi;
    for (int i = 0; i < n; ++i) {
        out.eta_phi[i] = eta[i] * phi[i];
        for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
            out.commutator[i] += H(i, j) * (eta[j] - eta[i]) * phi[j];
    }
    return out;
}

double ladder_residual(const Eigen::MatrixXd& H, const Eigen::VectorXd& eta,
                       const ClosureData& cd, double z,
                       const Eigen::VectorXd& phi,
                       const Eigen::VectorXd& target, LadderSign sign) {
    const double r0z = cd.R0(z);
    if (std::abs(r0z) < 1e-12 * std::max(1.0, std::abs(cd.Rm1(z))))
        throw SingularRZero("ladder: R0 vanishes at this eigenvalue");
    const auto [ap, am] = alpha_pm(cd, z);
    const double rz = cd.Rm1(z) / r0z;
    const LadderParts parts = apply_parts(H, eta, phi);
    const double s = sign == LadderSign::raise ? 1.0 : -1.0;
    const double alpha_opp = sign == LadderSign::raise ? am : ap;
    const Eigen::VectorXd w =
        s * (parts.commutator - alpha_opp * (parts.eta_phi + rz * parts.phi)) /
        (ap - am);
    const int n = static_cast<int>(phi.size());
    // norm reference: the target, or the state itself when the target is
    // the zero vector (ground-state annihilation)
    const double norm = std::max(target.cwiseAbs().maxCoeff(),
                                 phi.cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (int i = 0; i <= n - 4; ++i)
        worst = std::max(worst, std::abs(w[i] - target[i]));
    return worst / std::max(norm, 1e-300);
}

} // namespace

double ladder_action(const FamilyDescriptor& fam, Sector s,
                     const ParameterSet& p, LadderSign sign, int n, int N) {
    fam.validate(p);
    if (n < 0) throw InvalidParameter("ladder_action: n must be >= 0");
    const ClosureData cd = closure_data(fam.id, p);
    // full-lattice windows keep the exploding positive side short: the
    // q^{-2x} rows lose all significance past x ~ 25 in doubles
    const int x0 = fam.lattice == Lattice::full ? std::min(25, N / 2) - N : 0;
    const int sz = N + 1;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(sz, sz);
    Eigen::VectorXd eta(sz);
    auto phi_vec = [&](int m) {
        Eigen::VectorXd v(sz);
        for (int i = 0; i < sz; ++i) {
            const int x = x0 + i;
            v[i] = std::sqrt(fam.phi0_sq(s, x, p)) *
                   eval_lattice_value(fam, s, m, x, p);
        }
        return v;
    };
    for (int i = 0; i < sz; ++i) {
        const int x = x0 + i;
        H(i, i) = fam.B(s, x, p) + fam.D(s, x, p);
        if (i + 1 < sz) {
            const double off =
                -std::sqrt(fam.B(s, x, p) * fam.D(s, x + 1, p));
            H(i, i + 1) = off;
            H(i + 1, i) = off;
        }
        eta[i] = cd.aff_scale * fam.eta(s, x, p) + cd.aff_shift;
    }
    const double z = fam.energy(n, p);
    Eigen::VectorXd target;
    if (sign == LadderSign::raise)
        target = fam.An(n, p) * phi_vec(n + 1);
    else
        target = n == 0 ? Eigen::VectorXd(Eigen::VectorXd::Zero(sz))
                        : Eigen::VectorXd(fam.Cn(n, p) * phi_vec(n - 1));
    return ladder_residual(H, eta, cd, z, phi_vec(n), target, sign);
}

double ladder_action_supplement(const FamilyDescriptor& fam,
                                const ParameterSet& p, LadderSign sign, int n,
                                int N) {
    fam.validate(p);
    if (!fam.supplement.available)
        throw UnsupportedFamily("no supplementary sector");
    const ClosureData cd = closure_data(fam.id, p);
    const int sz = N + 1;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(sz, sz);
    Eigen::VectorXd eta(sz);
    for (int x = 0; x < sz; ++x) {
        H(x, x) = fam.B(Sector::plus, x, p) + fam.D(Sector::plus, x, p);
        if (x + 1 < sz) {
            const double off = -std::sqrt(fam.B(Sector::plus, x, p) *
                                          fam.D(Sector::plus, x + 1, p));
            H(x, x + 1) = off;
            H(x + 1, x) = off;
        }
        eta[x] = fam.eta(Sector::plus, x, p);
    }
    auto phim = [&](int m) {
        Eigen::VectorXd v(sz);
        for (int x = 0; x < sz; ++x)
            v[x] = fam.supplement.phi0_signed(x, p) * fam.supplement.eval(m, x, p);
        return v;
    };
    const double z = fam.supplement.Eprime(n, p);
    // reversed order on the supplementary spectrum
    Eigen::VectorXd target;
    if (sign == LadderSign::raise)
        target = n == 0 ? Eigen::VectorXd(Eigen::VectorXd::Zero(sz))
                        : Eigen::VectorXd(fam.supplement.Cn(n, p) * phim(n - 1));
    else
        target = fam.supplement.An(n, p) * phim(n + 1);
    return ladder_residual(H, eta, cd, z, phim(n), target, sign);
}

double ladder_action_dual(FamilyId id, const ParameterSet& p, bool ordinary,
                          LadderSign sign, int x, int N) {
    const FamilyDescriptor& fam = family(id);
    fam.validate(p);
    const DualDescriptor& d = dual_descriptor(id);
    const ClosureData cd = closure_data_dual(id, p);
    const Eigen::MatrixXd H = dual_hamiltonian(d, Sector::plus, p, N);
    Eigen::VectorXd eta(N + 1);
    for (int m = 0; m <= N; ++m) eta[m] = fam.energy(m, p);
    const Sector vs = ordinary ? Sector::plus : Sector::minus;
    auto phid = [&](int xx) {
        Eigen::VectorXd v(N + 1);
        for (int m = 0; m <= N; ++m)
            v[m] = d.phi0d(vs, m, p) * d.evalQ(vs, xx, m, p);
        return v;
    };
    const double z = ordinary ? d.Ed(Sector::plus, x, p)
                              : d.Edp(Sector::plus, x, p);
    Eigen::VectorXd target;
    if (ordinary) {
        if (sign == LadderSign::raise)
            target = -fam.B(Sector::plus, x, p) * phid(x + 1);
        else
            target = x == 0 ? Eigen::VectorXd(Eigen::VectorXd::Zero(N + 1))
                            : Eigen::VectorXd(-fam.D(Sector::plus, x, p) *
                                              phid(x - 1));
    } else {
        if (sign == LadderSign::raise)
            target = x == 0 ? Eigen::VectorXd(Eigen::VectorXd::Zero(N + 1))
                            : Eigen::VectorXd(-fam.D(Sector::minus, x, p) *
                                              phid(x - 1));
        else
            target = -fam.B(Sector::minus, x, p) * phid(x + 1);
    }
    return ladder_residual(H, eta, cd, z, phid(x), target, sign);
}

double heisenberg_coefficient_check(const FamilyDescriptor& fam, Sector s,
                                    const ParameterSet& p, int n,
                                    const std::vector<double>& t_samples,
                                    int N) {
    fam.validate(p);
    const ClosureData cd = closure_data(fam.id, p);
    const double z = fam.energy(n, p);
    const double r0z = cd.R0(z);
    if (std::abs(r0z) < 1e-12 * std::max(1.0, std::abs(cd.Rm1(z))))
        throw SingularRZero("heisenberg check: R0 vanishes at this eigenvalue");
    const auto [ap, am] = alpha_pm(cd, z);
    const double rz = cd.Rm1(z) / r0z;

    // t = 0: the decomposition reduces to the three term recurrence with
    // the A_n + C_n shift equal to R-1/R0
    const double shift_target =
        fam.lhs == RecurrenceLhs::eta_no_diag ? 0.0
                                              : fam.An(n, p) + fam.Cn(n, p);
    double worst =
        std::abs(rz - shift_target) / std::max(1.0, std::abs(rz));

    const int x0 = fam.lattice == Lattice::full ? std::min(25, N / 2) - N : 0;
    const int sz = N + 1;
    auto phi_vec = [&](int m) {
        Eigen::VectorXd v(sz);
        for (int i = 0; i < sz; ++i) {
            const int x = x0 + i;
            v[i] = std::sqrt(fam.phi0_sq(s, x, p)) *
                   eval_lattice_value(fam, s, m, x, p);
        }
        return v;
    };
    Eigen::VectorXd eta(sz);
    for (int i = 0; i < sz; ++i)
        eta[i] = cd.aff_scale * fam.eta(s, x0 + i, p) + cd.aff_shift;
    const Eigen::VectorXd phi = phi_vec(n);
    const Eigen::VectorXd up = phi_vec(n + 1);
    const Eigen::VectorXd dn =
        n == 0 ? Eigen::VectorXd(Eigen::VectorXd::Zero(sz)) : phi_vec(n - 1);
    // eta phi_n = A_n phi_{n+1} + C_n phi_{n-1} - (R-1/R0)(E(n)) phi_n
    Eigen::VectorXd lhs(sz), rhs(sz);
    for (int i = 0; i < sz; ++i) {
        lhs[i] = eta[i] * phi[i];
        rhs[i] = fam.An(n, p) * up[i] +
                 (n == 0 ? 0.0 : fam.Cn(n, p) * dn[i]) - rz * phi[i];
    }
    double vres = 0.0;
    for (int i = 0; i <= sz - 4; ++i)
        vres = std::max(vres, std::abs(lhs[i] - rhs[i]));
    worst = std::max(worst, vres / std::max(1e-300,
                                            lhs.cwiseAbs().maxCoeff()));

    // phases: alpha_pm(E(n)) must reproduce E(n+-1) - E(n)
    const std::complex<double> I(0.0, 1.0);
    for (double t : t_samples) {
        const double dup = fam.energy(n + 1, p) - z;
        const double ddn = n == 0 ? 0.0 : fam.energy(n - 1, p) - z;
        worst = std::max(worst, std::abs(std::exp(I * ap * t) -
                                         std::exp(I * dup * t)));
        if (n > 0)
            worst = std::max(worst, std::abs(std::exp(I * am * t) -
                                             std::exp(I * ddn * t)));
    }
    return worst;
}

} // namespace qlattice
