#include "qlattice/duality.hpp"

#include <cmath>

#include "qlattice/qcore.hpp"

namespace qlattice {
namespace {

using std::pow;

double qpow(double q, double e) { return std::pow(q, e); }

double phi0d_product(const DualDescriptor& d, Sector s, int n,
                     const ParameterSet& p) {
    double v = 1.0;
    for (int m = 0; m < n; ++m)
        v *= std::sqrt(d.And(s, m, p) / d.Cnd(s, m + 1, p));
    return (s == Sector::minus && n % 2 != 0) ? -v : v;
}

// signed dual ground state from the telescoping product of the dual
// coefficients; equals alpha_n d_n / d_0 but stays in range where d_n^2
// alone would overflow
void attach_phi0d(DualDescriptor& d) {
    const auto And = d.And;
    const auto Cnd = d.Cnd;
    d.phi0d = [And, Cnd](Sector s, int n, const ParameterSet& p) {
        double v = 1.0;
        for (int m = 0; m < n; ++m)
            v *= std::sqrt(And(s, m, p) / Cnd(s, m + 1, p));
        return (s == Sector::minus && n % 2 != 0) ? -v : v;
    };
}

DualDescriptor make_dual_bqj() {
    DualDescriptor d;
    d.base = FamilyId::bigQJacobi;
    d.evalQ = [](Sector s, int x, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double s2 = a * b * qpow(q, n + 1);
        if (s == Sector::plus)
            return terminating_phi32_nx(n, x, s2, a * q, a * b / c * q, q,
                            a / c * qpow(q, x + 1));
        return terminating_phi32_nx(n, x, s2, b * q, c * q, q, c / a * qpow(q, x + 1));
    };
    d.alpha_n = [](Sector s, int n, const ParameterSet& p) {
        return family(FamilyId::bigQJacobi).alpha_n(s, n, p);
    };
    d.And = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double den = (1.0 - a * b * qpow(q, 2 * n + 1)) *
                           (1.0 - a * b * qpow(q, 2 * n + 2));
        if (s == Sector::plus)
            return c * qpow(q, n + 1) * (1.0 - a * qpow(q, n + 1)) *
                   (1.0 - a * b * qpow(q, n + 1)) *
                   (1.0 - a * b / c * qpow(q, n + 1)) / den;
        return -a * qpow(q, n + 1) * (1.0 - b * qpow(q, n + 1)) *
               (1.0 - a * b * qpow(q, n + 1)) * (1.0 - c * qpow(q, n + 1)) /
               den;
    };
    d.Cnd = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double den = (1.0 - a * b * qpow(q, 2 * n)) *
                           (1.0 - a * b * qpow(q, 2 * n + 1));
        if (s == Sector::plus)
            return -a * q * (1.0 - qpow(q, n)) * (1.0 - b * qpow(q, n)) *
                   (1.0 - c * qpow(q, n)) / den;
        return c * q * (1.0 - qpow(q, n)) * (1.0 - a * qpow(q, n)) *
               (1.0 - a * b / c * qpow(q, n)) / den;
    };
    d.Ed = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q;
        const double lead = s == Sector::plus ? p.get("a") : -p.get("c");
        return lead * q * (1.0 - qpow(q, x));
    };
    d.Edp = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        if (s == Sector::plus) return q * (a - c * qpow(q, x));
        return q * (-c + a * qpow(q, x));
    };
    attach_phi0d(d);
    return d;
}

DualDescriptor make_dual_bql() {
    DualDescriptor d;
    d.base = FamilyId::bigQLaguerre;
    d.evalQ = [](Sector s, int x, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        if (s == Sector::plus)
            return terminating_phi32_nx(n, x, 0.0, a * q, 0.0, q, a / b * qpow(q, x + 1));
        return terminating_phi32_nx(n, x, 0.0, b * q, 0.0, q, b / a * qpow(q, x + 1));
    };
    d.alpha_n = [](Sector s, int n, const ParameterSet& p) {
        return family(FamilyId::bigQLaguerre).alpha_n(s, n, p);
    };
    d.And = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        if (s == Sector::plus)
            return b * qpow(q, n + 1) * (1.0 - a * qpow(q, n + 1));
        return -a * qpow(q, n + 1) * (1.0 - b * qpow(q, n + 1));
    };
    d.Cnd = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        if (s == Sector::plus)
            return -a * q * (1.0 - qpow(q, n)) * (1.0 - b * qpow(q, n));
        return b * q * (1.0 - qpow(q, n)) * (1.0 - a * qpow(q, n));
    };
    d.Ed = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q;
        const double lead = s == Sector::plus ? p.get("a") : -p.get("b");
        return lead * q * (1.0 - qpow(q, x));
    };
    d.Edp = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        if (s == Sector::plus) return q * (a - b * qpow(q, x));
        return q * (-b + a * qpow(q, x));
    };
    attach_phi0d(d);
    return d;
}

DualDescriptor make_dual_asc1() {
    DualDescriptor d;
    d.base = FamilyId::AlSalamCarlitzI;
    d.evalQ = [](Sector s, int x, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double z = (s == Sector::plus ? 1.0 / a : a) * qpow(q, x + 1);
        return terminating_phi32_nx(n, x, 0.0, 0.0, 0.0, q, z);
    };
    d.alpha_n = [](Sector s, int n, const ParameterSet& p) {
        return family(FamilyId::AlSalamCarlitzI).alpha_n(s, n, p);
    };
    d.And = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        return s == Sector::plus ? a * qpow(q, n) : -qpow(q, n);
    };
    d.Cnd = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        return s == Sector::plus ? -(1.0 - qpow(q, n)) : a * (1.0 - qpow(q, n));
    };
    d.Ed = [](Sector s, int x, const ParameterSet& p) {
        const double v = 1.0 - qpow(p.q, x);
        return s == Sector::plus ? v : -p.get("a") * v;
    };
    d.Edp = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        return s == Sector::plus ? 1.0 - a * qpow(q, x) : -a + qpow(q, x);
    };
    attach_phi0d(d);
    return d;
}

DualDescriptor make_dual_dqh1() {
    DualDescriptor base = make_dual_asc1();
    auto pin = [](const ParameterSet& p) {
        ParameterSet r = p;
        r.lambda["a"] = -1.0;
        return r;
    };
    DualDescriptor d;
    d.base = FamilyId::discreteQHermiteI;
    d.evalQ = [base, pin](Sector s, int x, int n, const ParameterSet& p) {
        return base.evalQ(s, x, n, pin(p));
    };
    d.alpha_n = [base, pin](Sector s, int n, const ParameterSet& p) {
        return base.alpha_n(s, n, pin(p));
    };
    d.And = [base, pin](Sector s, int n, const ParameterSet& p) {
        return base.And(s, n, pin(p));
    };
    d.Cnd = [base, pin](Sector s, int n, const ParameterSet& p) {
        return base.Cnd(s, n, pin(p));
    };
    d.Ed = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.Ed(s, x, pin(p));
    };
    d.Edp = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.Edp(s, x, pin(p));
    };
    attach_phi0d(d);
    return d;
}

} // namespace

const DualDescriptor& dual_descriptor(FamilyId id) {
    static const DualDescriptor bqj = make_dual_bqj();
    static const DualDescriptor bql = make_dual_bql();
    static const DualDescriptor asc1 = make_dual_asc1();
    static const DualDescriptor dqh1 = make_dual_dqh1();
    switch (id) {
        case FamilyId::bigQJacobi: return bqj;
        case FamilyId::bigQLaguerre: return bql;
        case FamilyId::AlSalamCarlitzI: return asc1;
        case FamilyId::discreteQHermiteI: return dqh1;
        default:
            throw UnsupportedFamily("no dual descriptor for this family");
    }
}

double eval_dual(const DualDescriptor& d, Sector s, int x, int n,
                 const ParameterSet& p) {
    family(d.base).validate(p);
    if (x < 0 || n < 0)
        throw InvalidParameter("eval_dual: need x, n >= 0");
    return d.evalQ(s, x, n, p);
}

Eigen::MatrixXd dual_hamiltonian(const DualDescriptor& d, Sector s,
                                 const ParameterSet& p, int N) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N + 1, N + 1);
    const double off_sign = (s == Sector::plus) ? -1.0 : 1.0;
    for (int n = 0; n <= N; ++n) {
        h(n, n) = -(d.And(s, n, p) + d.Cnd(s, n, p));
        if (n < N) {
            const double v =
                off_sign * std::sqrt(d.And(s, n, p) * d.Cnd(s, n + 1, p));
            h(n, n + 1) = v;
            h(n + 1, n) = v;
        }
    }
    return h;
}

namespace {

// Pairwise (n, n+1) compensated accumulation of a term sequence with
// Gaussian tail; returns once `needed` consecutive pairs stay below the
// absolute threshold.
AlternatingSum sum_alternating(const std::function<double(int)>& term,
                               double threshold, int min_terms,
                               int cap = 600) {
    AlternatingSum out;
    KahanSum<accum_t> acc;
    int small = 0;
    for (int n = 0; n < cap; n += 2) {
        const double t0 = term(n);
        const double t1 = term(n + 1);
        acc.add(static_cast<double>(static_cast<accum_t>(t0) +
                                    static_cast<accum_t>(t1)));
        out.terms = n + 2;
        const double mag = std::abs(static_cast<double>(acc.value()));
        out.max_partial = std::max(out.max_partial, mag);
        if (std::max(std::abs(t0), std::abs(t1)) < threshold && n >= min_terms) {
            if (++small >= 3) {
                out.value = static_cast<double>(acc.value());
                return out;
            }
        } else {
            small = 0;
        }
    }
    throw NonConvergent("alternating sum: tail did not fall below threshold");
}

} // namespace

AlternatingSum dual_orthogonality_sum(const DualDescriptor& d, Sector e,
                                      Sector ep, int x, int y,
                                      const ParameterSet& p, double tol) {
    family(d.base).validate(p);
    if (!(tol > 0.0)) throw InvalidParameter("dual_orthogonality_sum: tol <= 0");
    auto term = [&](int n) {
        const double w = phi0d_product(d, e, n, p) * phi0d_product(d, ep, n, p);
        if (w == 0.0) return 0.0; // underflowed weight; Q would overflow
        return w * d.evalQ(e, x, n, p) * d.evalQ(ep, y, n, p);
    };
    return sum_alternating(term, tol * 1e-3, 2 * (x + y) + 8);
}

AlternatingSum bqj_cross_moment(const ParameterSet& p, int k) {
    const FamilyDescriptor& fam = family(FamilyId::bigQJacobi);
    fam.validate(p);
    const double q = p.q, a = p.get("a"), b = p.get("b");
    auto term = [&](int n) {
        // (-1)^n q^{n(n-1)/2} / (q;q)_n (1-abq^{2n+1})/(1-abq^{n+1}) (abq^2;q)_n
        double f = 1.0;
        for (int m = 0; m < n; ++m)
            f *= -qpow(q, m) * (1.0 - a * b * qpow(q, m + 2)) /
                 (1.0 - qpow(q, m + 1));
        f *= (1.0 - a * b * qpow(q, 2 * n + 1)) / (1.0 - a * b * qpow(q, n + 1));
        return f * pow(fam.energy(n, p), k);
    };
    return sum_alternating(term, 1e-300, 4 * k + 10);
}

AlternatingSum alternating_qpow_sum(double q, int k) {
    if (!(q > 0 && q < 1)) throw InvalidParameter("need 0<q<1");
    auto term = [&](int n) {
        double f = 1.0;
        for (int m = 0; m < n; ++m)
            f *= -qpow(q, m - k) / (1.0 - qpow(q, m + 1));
        return f;
    };
    return sum_alternating(term, 1e-300, 4 * k + 10);
}

double naive_dual_qmeixner_failure(const ParameterSet& p, int x, int y,
                                   double tol) {
    const FamilyDescriptor& qm = family(FamilyId::qMeixner);
    qm.validate(p);
    const double bA = 1.0 - 1.0 / (p.get("c") * (1.0 - p.get("b") * p.q));
    if (!(bA > 0.0))
        throw InvalidParameter(
            "naive_dual_qmeixner_failure: demonstration needs A = "
            "1 - c^-1 (1-bq)^-1 > 0");
    KahanSum<accum_t> s;
    double last = 1.0;
    for (int n = 0; n < kIterationCap; ++n) {
        const double t = qm.norm_sq(n, p) * eval_series(qm, Sector::plus, n, x, p) *
                         eval_series(qm, Sector::plus, n, y, p);
        s.add(t);
        last = std::abs(t);
        if (n > 8 && last / (1.0 - p.q) < tol)
            return static_cast<double>(s.value());
    }
    throw NonConvergent("naive_dual_qmeixner_failure: sum did not converge");
}

double naive_dual_qmeixner_bound(const ParameterSet& p, double tol) {
    const FamilyDescriptor& qm = family(FamilyId::qMeixner);
    qm.validate(p);
    const double bA = 1.0 - 1.0 / (p.get("c") * (1.0 - p.get("b") * p.q));
    KahanSum<accum_t> s;
    for (int n = 0; n < kIterationCap; ++n) {
        const double qn = std::pow(p.q, n);
        const double t = qm.norm_sq(n, p) * (bA * (1.0 - qn) + qn);
        s.add(t);
        if (n > 8 && std::abs(t) / (1.0 - p.q) < tol)
            return static_cast<double>(s.value());
    }
    throw NonConvergent("naive_dual_qmeixner_bound: sum did not converge");
}

double corrected_dual_qmeixner_sum(const ParameterSet& p, int x, int y,
                                   double tol) {
    const FamilyDescriptor& sys = dual_qmeixner_system();
    sys.validate(p);
    KahanSum<accum_t> s;
    for (Sector sec : {Sector::plus, Sector::minus}) {
        for (int k = 0; k < kIterationCap; ++k) {
            const double w = sys.phi0_sq(sec, k, p);
            const double t = w * sys.eval_eta(x, sys.eta(sec, k, p), p) *
                             sys.eval_eta(y, sys.eta(sec, k, p), p);
            s.add(t);
            if (k > 8 && std::abs(w) / (1.0 - p.q) < tol) break;
            if (k + 1 == kIterationCap)
                throw NonConvergent("corrected_dual_qmeixner_sum: no tail");
        }
    }
    return static_cast<double>(s.value());
}

std::pair<double, double> qm_complete_set(const FamilyDescriptor& fam,
                                          const ParameterSet& p, int n, int x) {
    fam.validate(p);
    if (!fam.supplement.available)
        throw UnsupportedFamily("family has no completeness supplement");
    // the Gaussian weights underflow long before the polynomials
    // overflow; a zero weight wins
    const double w = std::sqrt(fam.phi0_sq(Sector::plus, x, p));
    const double phi =
        w == 0.0 ? 0.0 : w * fam.eval_eta(n, fam.eta(Sector::plus, x, p), p);
    const double wm = fam.supplement.phi0_signed(x, p);
    const double phim = wm == 0.0 ? 0.0 : wm * fam.supplement.eval(n, x, p);
    return {phi, phim};
}

double completeness_sum(const FamilyDescriptor& fam, const ParameterSet& p,
                        int x, int y, double tol, bool with_supplement,
                        Sector e, Sector ep) {
    fam.validate(p);
    if (fam.sectors == 2) {
        // Jackson families: phihat_n^(e)(x) = d0 phi0^(e)(x) phi0^{d(e)}(n)
        // Q_x^(e)(n); route the n-sum through the dual representation,
        // which stays in range where d_n^2 alone would overflow.
        const DualDescriptor& d = dual_descriptor(fam.id);
        const double d0sq = fam.norm_sq(0, p);
        const auto s = dual_orthogonality_sum(d, e, ep, x, y, p, tol);
        return d0sq * std::sqrt(fam.phi0_sq(e, x, p) * fam.phi0_sq(ep, y, p)) *
               s.value;
    }
    KahanSum<accum_t> acc;
    const double w0x = std::sqrt(fam.phi0_sq(Sector::plus, x, p));
    const double w0y = std::sqrt(fam.phi0_sq(Sector::plus, y, p));
    for (int n = 0; n < kIterationCap; ++n) {
        const double dn = fam.norm_sq(n, p);
        double t = dn * w0x * w0y * fam.eval_eta(n, fam.eta(Sector::plus, x, p), p) *
                   fam.eval_eta(n, fam.eta(Sector::plus, y, p), p);
        if (with_supplement && fam.supplement.available)
            t += fam.supplement.norm_sq(n, p) *
                 fam.supplement.phi0_signed(x, p) *
                 fam.supplement.phi0_signed(y, p) * fam.supplement.eval(n, x, p) *
                 fam.supplement.eval(n, y, p);
        acc.add(t);
        if (n > x + y + 8 && std::abs(dn) / (1.0 - p.q) < tol * 1e-2)
            return static_cast<double>(acc.value());
    }
    throw NonConvergent("completeness_sum: no tail");
}

int dual_sign_changes(const DualDescriptor& d, Sector s, int x,
                      const ParameterSet& p, int n_max) {
    int changes = 0;
    double prev = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double v = phi0d_product(d, s, n, p) * d.evalQ(s, x, n, p);
        if (v == 0.0) continue;
        if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++changes;
        prev = v;
    }
    return changes;
}

} // namespace qlattice
