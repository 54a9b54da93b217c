#include "qlattice/families.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qlattice/qcore.hpp"

namespace qlattice {
namespace {

using std::pow;

double qpow(double q, double e) { return std::pow(q, e); }

// q^{k(k-1)/2}
double qtri(double q, int k) { return std::pow(q, 0.5 * k * (k - 1.0)); }

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidParameter(msg);
}

// ---- q-Meixner -----------------------------------------------------------

double qm_eval(int n, double eta, double q, double b, double c) {
    // 2phi1(q^-n, q^-x; bq; q; -q^{n+1}/c) written in u = q^{-x} = 1 + eta
    const double u = 1.0 + eta;
    const double qmn = qpow(q, -n);
    const double z = -qpow(q, n + 1) / c;
    KahanSum<accum_t> s;
    double term = 1.0, qk = 1.0;
    s.add(term);
    for (int k = 0; k < n; ++k) {
        term *= (1.0 - qmn * qk) * (1.0 - u * qk) /
                ((1.0 - q * qk) * (1.0 - b * q * qk)) * z;
        s.add(term);
        qk *= q;
    }
    return static_cast<double>(s.value());
}

FamilyDescriptor make_qmeixner() {
    FamilyDescriptor f;
    f.id = FamilyId::qMeixner;
    f.name = "qm";
    f.sectors = 1;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"b", "c"};
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        const double q = p.q, b = p.get("b"), c = p.get("c");
        require(q > 0 && q < 1, "qm: need 0<q<1");
        require(c > 0, "qm: need c>0");
        require((b > 0 && b < 1.0 / q) || (-b > 0 && -b < 1.0 / (c * q)),
                "qm: need 0<b<q^-1 or 0<-b<c^-1 q^-1");
    };
    f.B = [](Sector, int x, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return c * qpow(q, x) * (1.0 - b * qpow(q, x + 1));
    };
    f.D = [](Sector, int x, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return (1.0 - qpow(q, x)) * (1.0 + b * c * qpow(q, x));
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return qpow(p.q, -x) - 1.0;
    };
    f.energy = [](int n, const ParameterSet& p) { return 1.0 - qpow(p.q, n); };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        return qm_eval(n, eta, p.q, p.get("b"), p.get("c"));
    };
    f.phi0_sq = [](Sector, int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return pow(c, x) * qtri(q, x) * q_pochhammer(b * q, q, x) /
               (q_pochhammer(q, q, x) * q_pochhammer(-b * c * q, q, x));
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double d0 = q_pochhammer_inf(-b * c * q, q) /
                          q_pochhammer_inf(-c, q);
        return qpow(q, n) * q_pochhammer(b * q, q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(-q / c, q, n)) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return -c * qpow(q, -2 * n - 1) * (1.0 - b * qpow(q, n + 1));
    };
    f.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, c = p.get("c");
        return -qpow(q, -2 * n) * (1.0 - qpow(q, n)) * (qpow(q, n) + c);
    };
    f.lhs = RecurrenceLhs::eta;
    f.has_recurrence = true;
    f.alpha_n = [](Sector, int, const ParameterSet&) { return 1.0; };

    f.shift.available = true;
    f.shift.universal = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        r.lambda["b"] = p.get("b") * p.q;
        r.lambda["c"] = p.get("c") / p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return p.q; };
    f.shift.varphi = [](Sector, int x, const ParameterSet& p) {
        return qpow(p.q, -x);
    };
    f.shift.varphi_bar = f.shift.varphi;
    f.shift.B0 = [](const ParameterSet& p) {
        return p.get("c") * (1.0 - p.get("b") * p.q);
    };

    f.supplement.available = true;
    f.supplement.B = [](int x, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return qpow(q, x) / c * (1.0 + b * c * qpow(q, x + 1));
    };
    f.supplement.D = [](int x, const ParameterSet& p) {
        const double q = p.q, b = p.get("b");
        return (1.0 - qpow(q, x)) * (1.0 - b * qpow(q, x));
    };
    f.supplement.eval = [](int n, int x, const ParameterSet& p) {
        // 2phi1(q^-n, q^-x; -bcq; q; -cq^{n+1})
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double u = qpow(q, -x), qmn = qpow(q, -n);
        const double z = -c * qpow(q, n + 1);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (1.0 - u * qk) /
                    ((1.0 - q * qk) * (1.0 + b * c * q * qk)) * z;
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    f.supplement.phi0_signed = [](int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double sq = pow(c, -x) * qtri(q, x) *
                          q_pochhammer(-b * c * q, q, x) /
                          (q_pochhammer(q, q, x) * q_pochhammer(b * q, q, x));
        return (x % 2 == 0 ? 1.0 : -1.0) * std::sqrt(sq);
    };
    f.supplement.Eprime = [](int n, const ParameterSet& p) {
        return 1.0 + p.get("c") * qpow(p.q, n);
    };
    f.supplement.An = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return -qpow(q, -2 * n - 1) / c * (1.0 + b * c * qpow(q, n + 1));
    };
    f.supplement.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, c = p.get("c");
        return -qpow(q, -2 * n) * (1.0 - qpow(q, n)) * (qpow(q, n) + 1.0 / c);
    };
    f.supplement.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double d0 = q_pochhammer_inf(b * q, q) /
                          q_pochhammer_inf(-1.0 / c, q);
        return qpow(q, n) * q_pochhammer(-b * c * q, q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(-c * q, q, n)) * d0;
    };
    return f;
}

// ---- q-Charlier ----------------------------------------------------------

FamilyDescriptor make_qcharlier() {
    FamilyDescriptor f;
    f.id = FamilyId::qCharlier;
    f.name = "qc";
    f.sectors = 1;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a"};
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        require(p.q > 0 && p.q < 1, "qc: need 0<q<1");
        require(p.get("a") > 0, "qc: need a>0");
    };
    f.B = [](Sector, int x, const ParameterSet& p) {
        return p.get("a") * qpow(p.q, x);
    };
    f.D = [](Sector, int x, const ParameterSet& p) {
        return 1.0 - qpow(p.q, x);
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return qpow(p.q, -x) - 1.0;
    };
    f.energy = [](int n, const ParameterSet& p) { return 1.0 - qpow(p.q, n); };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        // 2phi1(q^-n, q^-x; 0; q; -q^{n+1}/a)
        const double q = p.q, a = p.get("a");
        const double u = 1.0 + eta, qmn = qpow(q, -n);
        const double z = -qpow(q, n + 1) / a;
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (1.0 - u * qk) / (1.0 - q * qk) * z;
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    f.phi0_sq = [](Sector, int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, a = p.get("a");
        return pow(a, x) * qtri(q, x) / q_pochhammer(q, q, x);
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double d0 = 1.0 / q_pochhammer_inf(-a, q);
        return qpow(q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(-q / a, q, n)) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        return -p.get("a") * qpow(p.q, -2 * n - 1);
    };
    f.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        return -qpow(q, -2 * n) * (1.0 - qpow(q, n)) * (qpow(q, n) + a);
    };
    f.lhs = RecurrenceLhs::eta;
    f.has_recurrence = true;
    f.alpha_n = [](Sector, int, const ParameterSet&) { return 1.0; };

    f.shift.available = true;
    f.shift.universal = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        r.lambda["a"] = p.get("a") / p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return p.q; };
    f.shift.varphi = [](Sector, int x, const ParameterSet& p) {
        return qpow(p.q, -x);
    };
    f.shift.varphi_bar = f.shift.varphi;
    f.shift.B0 = [](const ParameterSet& p) { return p.get("a"); };

    f.supplement.available = true;
    f.supplement.B = [](int x, const ParameterSet& p) {
        return qpow(p.q, x) / p.get("a");
    };
    f.supplement.D = [](int x, const ParameterSet& p) {
        return 1.0 - qpow(p.q, x);
    };
    f.supplement.eval = [](int n, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double u = qpow(q, -x), qmn = qpow(q, -n);
        const double z = -a * qpow(q, n + 1);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (1.0 - u * qk) / (1.0 - q * qk) * z;
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    f.supplement.phi0_signed = [](int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, a = p.get("a");
        const double sq = pow(a, -x) * qtri(q, x) / q_pochhammer(q, q, x);
        return (x % 2 == 0 ? 1.0 : -1.0) * std::sqrt(sq);
    };
    f.supplement.Eprime = [](int n, const ParameterSet& p) {
        return 1.0 + p.get("a") * qpow(p.q, n);
    };
    f.supplement.An = [](int n, const ParameterSet& p) {
        return -qpow(p.q, -2 * n - 1) / p.get("a");
    };
    f.supplement.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        return -qpow(q, -2 * n) * (1.0 - qpow(q, n)) * (qpow(q, n) + 1.0 / a);
    };
    f.supplement.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double d0 = 1.0 / q_pochhammer_inf(-1.0 / a, q);
        return qpow(q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(-a * q, q, n)) * d0;
    };
    return f;
}

// ---- big q-Jacobi ---------------------------------------------------------

double bqj_eval(int n, double eta, double q, double a, double b, double c) {
    // 3phi2(q^-n, abq^{n+1}, eta; aq, cq; q; q)
    const double qmn = qpow(q, -n), abq = a * b * qpow(q, n + 1);
    KahanSum<accum_t> s;
    double term = 1.0, qk = 1.0;
    s.add(term);
    for (int k = 0; k < n; ++k) {
        term *= (1.0 - qmn * qk) * (1.0 - abq * qk) * (1.0 - eta * qk) /
                ((1.0 - q * qk) * (1.0 - a * q * qk) * (1.0 - c * q * qk)) * q;
        s.add(term);
        qk *= q;
    }
    return static_cast<double>(s.value());
}

FamilyDescriptor make_big_qjacobi() {
    FamilyDescriptor f;
    f.id = FamilyId::bigQJacobi;
    f.name = "bqj";
    f.sectors = 2;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a", "b", "c"};
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        require(q > 0 && q < 1, "bqj: need 0<q<1");
        require(a > 0 && a < 1.0 / q, "bqj: need 0<a<q^-1");
        require(b > 0 && b < 1.0 / q, "bqj: need 0<b<q^-1");
        require(c < 0, "bqj: need c<0");
    };
    f.eta = [](Sector s, int x, const ParameterSet& p) {
        const double lead = s == Sector::plus ? p.get("a") : p.get("c");
        return lead * qpow(p.q, x + 1);
    };
    f.Bj = [](Sector, double eta, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        return a * q * (1.0 - eta) * (b * eta - c) / (eta * eta);
    };
    f.Dj = [](Sector, double eta, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        return (a * q - eta) * (eta - c * q) / (eta * eta);
    };
    f.B = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        if (s == Sector::plus)
            return -c / a * qpow(q, -2 * x - 1) * (1.0 - a * qpow(q, x + 1)) *
                   (1.0 - a * b / c * qpow(q, x + 1));
        return -a / c * qpow(q, -2 * x - 1) * (1.0 - c * qpow(q, x + 1)) *
               (1.0 - b * qpow(q, x + 1));
    };
    f.D = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        const double r = s == Sector::plus ? c / a : a / c;
        return qpow(q, -2 * x) * (1.0 - qpow(q, x)) * (qpow(q, x) - r);
    };
    f.energy = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        return (qpow(q, -n) - 1.0) * (1.0 - a * b * qpow(q, n + 1));
    };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        return bqj_eval(n, eta, p.q, p.get("a"), p.get("b"), p.get("c"));
    };
    f.phi0_sq = [](Sector s, int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double eta = (s == Sector::plus ? a : c) * qpow(q, x + 1);
        return sector_sign(s) * eta * q_pochhammer_inf(eta / a, q) *
               q_pochhammer_inf(eta / c, q) /
               (q_pochhammer_inf(eta, q) * q_pochhammer_inf(b / c * eta, q));
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double d0 =
            q_pochhammer_inf(a * q, q) * q_pochhammer_inf(b * q, q) *
            q_pochhammer_inf(c * q, q) * q_pochhammer_inf(a * b / c * q, q) /
            (a * q * q_pochhammer_inf(q, q) * q_pochhammer_inf(a * b * q * q, q) *
             q_pochhammer_inf(a / c * q, q) * q_pochhammer_inf(c / a, q));
        return pow(-a * c * q * q, -n) / qtri(q, n) *
               (1.0 - a * b * qpow(q, 2 * n + 1)) /
               (1.0 - a * b * qpow(q, n + 1)) * q_pochhammer(a * q, q, n) *
               q_pochhammer(a * b * q * q, q, n) * q_pochhammer(c * q, q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(b * q, q, n) *
                q_pochhammer(a * b / c * q, q, n)) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        return -(1.0 - a * qpow(q, n + 1)) * (1.0 - a * b * qpow(q, n + 1)) *
               (1.0 - c * qpow(q, n + 1)) /
               ((1.0 - a * b * qpow(q, 2 * n + 1)) *
                (1.0 - a * b * qpow(q, 2 * n + 2)));
    };
    f.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        return a * c * qpow(q, n + 1) * (1.0 - qpow(q, n)) *
               (1.0 - a * b / c * qpow(q, n)) * (1.0 - b * qpow(q, n)) /
               ((1.0 - a * b * qpow(q, 2 * n)) *
                (1.0 - a * b * qpow(q, 2 * n + 1)));
    };
    f.lhs = RecurrenceLhs::one_minus_eta;
    f.has_recurrence = true;
    f.alpha_n = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double tri = qpow(q, 0.5 * n * (n + 1.0));
        if (s == Sector::plus)
            return pow(-c, n) * tri * q_pochhammer(a * b / c * q, q, n) /
                   q_pochhammer(c * q, q, n);
        return pow(-a, n) * tri * q_pochhammer(b * q, q, n) /
               q_pochhammer(a * q, q, n);
    };
    f.shift.available = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        for (const char* k : {"a", "b", "c"}) r.lambda[k] = p.get(k) * p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return 1.0 / p.q; };
    f.shift.varphi = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        const double eta = (s == Sector::plus ? a : c) * qpow(q, x + 1);
        return q * eta / ((1.0 - a * q) * (1.0 - c * q));
    };
    f.shift.varphi_bar = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        const double eta = (s == Sector::plus ? a : c) * qpow(q, x + 1);
        return eta * (1.0 - a * q) * (1.0 - c * q) / (-a * c * q);
    };
    f.bj_scale0_fn = [](const ParameterSet& p) {
        return -p.get("a") * p.get("c") * p.q;
    };
    // lattice route: P_n(eta(x)) = alpha_n Q_x(n) with the dual 3phi2,
    // whose terms stay on the scale of the value
    f.eval_lattice = [alpha = f.alpha_n](Sector s, int n, int x,
                                         const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b"), c = p.get("c");
        const double s2 = a * b * std::pow(q, n + 1);
        const double Q =
            s == Sector::plus
                ? terminating_phi32_nx(n, x, s2, a * q, a * b / c * q, q,
                                       a / c * std::pow(q, x + 1))
                : terminating_phi32_nx(n, x, s2, b * q, c * q, q,
                                       c / a * std::pow(q, x + 1));
        return alpha(s, n, p) * Q;
    };
    return f;
}

// ---- big q-Laguerre --------------------------------------------------------

double bql_eval(int n, double eta, double q, double a, double b) {
    // 3phi2(q^-n, 0, eta; aq, bq; q; q)
    const double qmn = qpow(q, -n);
    KahanSum<accum_t> s;
    double term = 1.0, qk = 1.0;
    s.add(term);
    for (int k = 0; k < n; ++k) {
        term *= (1.0 - qmn * qk) * (1.0 - eta * qk) /
                ((1.0 - q * qk) * (1.0 - a * q * qk) * (1.0 - b * q * qk)) * q;
        s.add(term);
        qk *= q;
    }
    return static_cast<double>(s.value());
}

FamilyDescriptor make_big_qlaguerre() {
    FamilyDescriptor f;
    f.id = FamilyId::bigQLaguerre;
    f.name = "bql";
    f.sectors = 2;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a", "b"};
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        const double q = p.q, a = p.get("a"), b = p.get("b");
        require(q > 0 && q < 1, "bql: need 0<q<1");
        require(a > 0 && a < 1.0 / q, "bql: need 0<a<q^-1");
        require(b < 0, "bql: need b<0");
    };
    f.eta = [](Sector s, int x, const ParameterSet& p) {
        return (s == Sector::plus ? p.get("a") : p.get("b")) * qpow(p.q, x + 1);
    };
    f.Bj = [](Sector, double eta, const ParameterSet& p) {
        return -p.get("a") * p.get("b") * p.q * (1.0 - eta) / (eta * eta);
    };
    f.Dj = [](Sector, double eta, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        return (a * q - eta) * (eta - b * q) / (eta * eta);
    };
    f.B = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        if (s == Sector::plus)
            return -b / a * qpow(q, -2 * x - 1) * (1.0 - a * qpow(q, x + 1));
        return -a / b * qpow(q, -2 * x - 1) * (1.0 - b * qpow(q, x + 1));
    };
    f.D = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double r = s == Sector::plus ? b / a : a / b;
        return qpow(q, -2 * x) * (1.0 - qpow(q, x)) * (qpow(q, x) - r);
    };
    f.energy = [](int n, const ParameterSet& p) { return qpow(p.q, -n) - 1.0; };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        return bql_eval(n, eta, p.q, p.get("a"), p.get("b"));
    };
    f.phi0_sq = [](Sector s, int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double eta = (s == Sector::plus ? a : b) * qpow(q, x + 1);
        return sector_sign(s) * eta * q_pochhammer_inf(eta / a, q) *
               q_pochhammer_inf(eta / b, q) / q_pochhammer_inf(eta, q);
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double d0 =
            q_pochhammer_inf(a * q, q) * q_pochhammer_inf(b * q, q) /
            (a * q * q_pochhammer_inf(q, q) * q_pochhammer_inf(a / b * q, q) *
             q_pochhammer_inf(b / a, q));
        return pow(-a * b * q * q, -n) / qtri(q, n) *
               q_pochhammer(a * q, q, n) * q_pochhammer(b * q, q, n) /
               q_pochhammer(q, q, n) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        return -(1.0 - a * qpow(q, n + 1)) * (1.0 - b * qpow(q, n + 1));
    };
    f.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        return a * b * qpow(q, n + 1) * (1.0 - qpow(q, n));
    };
    f.lhs = RecurrenceLhs::one_minus_eta;
    f.has_recurrence = true;
    f.alpha_n = [](Sector s, int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double tri = qpow(q, 0.5 * n * (n + 1.0));
        if (s == Sector::plus)
            return pow(-b, n) * tri / q_pochhammer(b * q, q, n);
        return pow(-a, n) * tri / q_pochhammer(a * q, q, n);
    };
    f.shift.available = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        for (const char* k : {"a", "b"}) r.lambda[k] = p.get(k) * p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return 1.0 / p.q; };
    f.shift.varphi = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double eta = (s == Sector::plus ? a : b) * qpow(q, x + 1);
        return q * eta / ((1.0 - a * q) * (1.0 - b * q));
    };
    f.shift.varphi_bar = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double eta = (s == Sector::plus ? a : b) * qpow(q, x + 1);
        return eta * (1.0 - a * q) * (1.0 - b * q) / (-a * b * q);
    };
    f.bj_scale0_fn = [](const ParameterSet& p) {
        return -p.get("a") * p.get("b") * p.q;
    };
    f.eval_lattice = [alpha = f.alpha_n](Sector s, int n, int x,
                                         const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double Q =
            s == Sector::plus
                ? terminating_phi32_nx(n, x, 0.0, a * q, 0.0, q,
                                       a / b * std::pow(q, x + 1))
                : terminating_phi32_nx(n, x, 0.0, b * q, 0.0, q,
                                       b / a * std::pow(q, x + 1));
        return alpha(s, n, p) * Q;
    };
    return f;
}

// ---- Al-Salam-Carlitz I ----------------------------------------------------

double asc1_eval(int n, double eta, double q, double a) {
    // 2phi1(q^-n, eta^-1; 0; q; a^-1 q eta) via
    // (eta^-1;q)_k eta^k = prod_{j<k} (eta - q^j)
    const double qmn = qpow(q, -n);
    KahanSum<accum_t> s;
    double term = 1.0, qk = 1.0;
    s.add(term);
    for (int k = 0; k < n; ++k) {
        term *= (1.0 - qmn * qk) * (eta - qk) / (1.0 - q * qk) * (q / a);
        s.add(term);
        qk *= q;
    }
    return static_cast<double>(s.value());
}

FamilyDescriptor make_asc1() {
    FamilyDescriptor f;
    f.id = FamilyId::AlSalamCarlitzI;
    f.name = "ascI";
    f.sectors = 2;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a"};
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        require(p.q > 0 && p.q < 1, "ascI: need 0<q<1");
        require(p.get("a") < 0, "ascI: need a<0");
    };
    f.eta = [](Sector s, int x, const ParameterSet& p) {
        return (s == Sector::plus ? 1.0 : p.get("a")) * qpow(p.q, x);
    };
    f.Bj = [](Sector, double eta, const ParameterSet& p) {
        return -p.get("a") / p.q / (eta * eta);
    };
    f.Dj = [](Sector, double eta, const ParameterSet& p) {
        return (1.0 - eta) * (eta - p.get("a")) / (eta * eta);
    };
    f.B = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double lead = s == Sector::plus ? -a : -1.0 / a;
        return lead * qpow(q, -2 * x - 1);
    };
    f.D = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double r = s == Sector::plus ? a : 1.0 / a;
        return qpow(q, -2 * x) * (1.0 - qpow(q, x)) * (qpow(q, x) - r);
    };
    f.energy = [](int n, const ParameterSet& p) { return qpow(p.q, -n) - 1.0; };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        return asc1_eval(n, eta, p.q, p.get("a"));
    };
    f.phi0_sq = [](Sector s, int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, a = p.get("a");
        const double eta = (s == Sector::plus ? 1.0 : a) * qpow(q, x);
        return sector_sign(s) * eta * q_pochhammer_inf(q * eta, q) *
               q_pochhammer_inf(q * eta / a, q);
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double d0 = 1.0 / (q_pochhammer_inf(q, q) *
                                 q_pochhammer_inf(a, q) *
                                 q_pochhammer_inf(q / a, q));
        return pow(-a, n) * qtri(q, n) / q_pochhammer(q, q, n) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        return p.get("a") * qpow(p.q, n);
    };
    f.Cn = [](int n, const ParameterSet& p) {
        return -(1.0 - qpow(p.q, n));
    };
    f.lhs = RecurrenceLhs::one_minus_eta;
    f.has_recurrence = true;
    f.alpha_n = [](Sector s, int n, const ParameterSet& p) {
        return s == Sector::plus ? 1.0 : pow(p.get("a"), -n);
    };
    f.shift.available = true;
    f.shift.shifted = [](const ParameterSet& p) { return p; }; // delta = 0
    f.shift.kappa = [](const ParameterSet& p) { return 1.0 / p.q; };
    f.shift.varphi = [](Sector s, int x, const ParameterSet& p) {
        const double eta = (s == Sector::plus ? 1.0 : p.get("a")) * qpow(p.q, x);
        return p.q * eta / (-p.get("a"));
    };
    f.shift.varphi_bar = [](Sector s, int x, const ParameterSet& p) {
        return (s == Sector::plus ? 1.0 : p.get("a")) * qpow(p.q, x);
    };
    f.bj_scale0_fn = [](const ParameterSet& p) { return -p.get("a") / p.q; };
    f.eval_lattice = [alpha = f.alpha_n](Sector s, int n, int x,
                                         const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        const double z =
            (s == Sector::plus ? 1.0 / a : a) * std::pow(q, x + 1);
        return alpha(s, n, p) * terminating_phi32_nx(n, x, 0.0, 0.0, 0.0, q, z);
    };
    return f;
}

// discrete q-Hermite I: Al-Salam-Carlitz I pinned at a = -1.
FamilyDescriptor make_dqh1() {
    FamilyDescriptor f = make_asc1();
    f.id = FamilyId::discreteQHermiteI;
    f.name = "dqh1";
    f.param_names = {};
    auto pin = [](const ParameterSet& p) {
        ParameterSet r = p;
        r.lambda["a"] = -1.0;
        return r;
    };
    const FamilyDescriptor base = make_asc1();
    f.validate = [](const ParameterSet& p) {
        require(p.q > 0 && p.q < 1, "dqh1: need 0<q<1");
    };
    f.eta = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.eta(s, x, pin(p));
    };
    f.Bj = [base, pin](Sector s, double e, const ParameterSet& p) {
        return base.Bj(s, e, pin(p));
    };
    f.Dj = [base, pin](Sector s, double e, const ParameterSet& p) {
        return base.Dj(s, e, pin(p));
    };
    f.B = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.B(s, x, pin(p));
    };
    f.D = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.D(s, x, pin(p));
    };
    f.energy = [base, pin](int n, const ParameterSet& p) {
        return base.energy(n, pin(p));
    };
    f.eval_eta = [base, pin](int n, double e, const ParameterSet& p) {
        return base.eval_eta(n, e, pin(p));
    };
    f.phi0_sq = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.phi0_sq(s, x, pin(p));
    };
    f.norm_sq = [base, pin](int n, const ParameterSet& p) {
        return base.norm_sq(n, pin(p));
    };
    f.An = [base, pin](int n, const ParameterSet& p) {
        return base.An(n, pin(p));
    };
    f.Cn = [base, pin](int n, const ParameterSet& p) {
        return base.Cn(n, pin(p));
    };
    f.alpha_n = [base, pin](Sector s, int n, const ParameterSet& p) {
        return base.alpha_n(s, n, pin(p));
    };
    f.eval_lattice = [base, pin](Sector s, int n, int x,
                                 const ParameterSet& p) {
        return base.eval_lattice(s, n, x, pin(p));
    };
    f.shift.shifted = [](const ParameterSet& p) { return p; };
    f.shift.kappa = [](const ParameterSet& p) { return 1.0 / p.q; };
    f.shift.varphi = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.shift.varphi(s, x, pin(p));
    };
    f.shift.varphi_bar = [base, pin](Sector s, int x, const ParameterSet& p) {
        return base.shift.varphi_bar(s, x, pin(p));
    };
    f.bj_scale0_fn = [](const ParameterSet& p) { return 1.0 / p.q; };
    return f;
}

// ---- discrete q-Hermite II -------------------------------------------------

double dqh2_eval(int n, double eta, double q) {
    // i^{-n} 2phi0(q^{-n}, i eta; -; q; -q^n); the result is real.
    const std::complex<double> I(0.0, 1.0);
    const double qmn = qpow(q, -n);
    std::complex<double> term(1.0, 0.0);
    KahanSum<accum_t> sre, sim;
    sre.add(1.0);
    double qk = 1.0;
    for (int k = 0; k < n; ++k) {
        // ratio picks up ((-1) q^k)^{-1} * z from the 2phi0 prefactor
        term *= (1.0 - qmn * qk) * (1.0 - I * eta * qk) / (1.0 - q * qk) *
                (qpow(q, n) / qk);
        sre.add(term.real());
        sim.add(term.imag());
        qk *= q;
    }
    const std::complex<double> sum(static_cast<double>(sre.value()),
                                   static_cast<double>(sim.value()));
    const std::complex<double> val = std::pow(-I, n) * sum;
    return val.real();
}

FamilyDescriptor make_dqh2() {
    FamilyDescriptor f;
    f.id = FamilyId::discreteQHermiteII;
    f.name = "dqh2";
    f.sectors = 2;
    f.lattice = Lattice::full;
    f.param_names = {"c"};
    f.ortho_factor = 2.0; // <phi_n, phi_m> = 2 delta_nm / d_n^2
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        require(p.q > 0 && p.q < 1, "dqh2: need 0<q<1");
        require(p.get("c") > 0, "dqh2: need c>0");
    };
    f.eta = [](Sector s, int x, const ParameterSet& p) {
        return sector_sign(s) * p.get("c") * qpow(p.q, x);
    };
    f.Bj = [](Sector, double eta, const ParameterSet&) {
        return (1.0 + eta * eta) / (eta * eta);
    };
    f.Dj = [](Sector, double eta, const ParameterSet& p) {
        return p.q / (eta * eta);
    };
    f.B = [](Sector, int x, const ParameterSet& p) {
        const double c = p.get("c");
        return 1.0 + qpow(p.q, -2 * x) / (c * c);
    };
    f.D = [](Sector, int x, const ParameterSet& p) {
        const double c = p.get("c");
        return qpow(p.q, 1 - 2 * x) / (c * c);
    };
    f.energy = [](int n, const ParameterSet& p) { return 1.0 - qpow(p.q, n); };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        return dqh2_eval(n, eta, p.q);
    };
    f.phi0_sq = [](Sector, int x, const ParameterSet& p) {
        const double q = p.q, c = p.get("c");
        const double arg = -c * c * qpow(q, 2 * x);
        if (std::abs(arg) < 1.0)
            return qpow(q, x) / q_pochhammer_inf(arg, q * q);
        const auto [lg, sign] = log_q_pochhammer_inf(arg, q * q);
        (void)sign; // all factors positive here
        return std::exp(x * std::log(q) - lg);
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, c = p.get("c"), q2 = p.q * p.q;
        const double d0 =
            q_pochhammer_inf(q, q2) * q_pochhammer_inf(-c * c, q2) *
            q_pochhammer_inf(-q2 / (c * c), q2) /
            (q_pochhammer_inf(q2, q2) * q_pochhammer_inf(-c * c * q, q2) *
             q_pochhammer_inf(-q / (c * c), q2));
        return qpow(q, n) / q_pochhammer(q, q, n) * d0;
    };
    f.An = [](int n, const ParameterSet& p) { return qpow(p.q, -n); };
    f.Cn = [](int n, const ParameterSet& p) { return qpow(p.q, -n) - 1.0; };
    f.lhs = RecurrenceLhs::eta_no_diag;
    f.has_recurrence = true;
    f.shift.available = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        r.lambda["c"] = p.get("c") * p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return p.q; };
    f.shift.varphi = [](Sector s, int x, const ParameterSet& p) {
        return sector_sign(s) * p.get("c") * qpow(p.q, x);
    };
    f.shift.varphi_bar = f.shift.varphi;
    f.bj_scale0_fn = [](const ParameterSet&) { return 1.0; };
    return f;
}

// ---- q-Laguerre ------------------------------------------------------------

FamilyDescriptor make_qlaguerre() {
    FamilyDescriptor f;
    f.id = FamilyId::qLaguerre;
    f.name = "ql";
    f.sectors = 1;
    f.lattice = Lattice::full;
    f.param_names = {"a", "c"};
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        const double q = p.q, a = p.get("a"), c = p.get("c");
        require(q > 0 && q < 1, "ql: need 0<q<1");
        require(a > 0 && a < 1.0 / q, "ql: need 0<a<q^-1");
        require(c > 0, "ql: need c>0");
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return p.get("c") * qpow(p.q, x);
    };
    f.Bj = [](Sector, double eta, const ParameterSet&) {
        return (eta + 1.0) / eta;
    };
    f.Dj = [](Sector, double eta, const ParameterSet& p) {
        return 1.0 / (p.get("a") * eta);
    };
    f.B = [](Sector, int x, const ParameterSet& p) {
        return 1.0 + qpow(p.q, -x) / p.get("c");
    };
    f.D = [](Sector, int x, const ParameterSet& p) {
        return qpow(p.q, -x) / (p.get("a") * p.get("c"));
    };
    f.energy = [](int n, const ParameterSet& p) { return 1.0 - qpow(p.q, n); };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        // 2phi1(q^-n, -eta; 0; q; a q^{n+1})
        const double q = p.q, a = p.get("a");
        const double qmn = qpow(q, -n), z = a * qpow(q, n + 1);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (1.0 + eta * qk) / (1.0 - q * qk) * z;
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    f.phi0_sq = [](Sector, int x, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        const double arg = -c * qpow(q, x);
        if (std::abs(arg) < 1.0)
            return qpow(a * q, x) / q_pochhammer_inf(arg, q);
        const auto [lg, sign] = log_q_pochhammer_inf(arg, q);
        (void)sign;
        return std::exp(x * std::log(a * q) - lg);
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a"), c = p.get("c");
        const double d0 =
            q_pochhammer_inf(a * q, q) * q_pochhammer_inf(-c, q) *
            q_pochhammer_inf(-q / c, q) /
            (q_pochhammer_inf(q, q) * q_pochhammer_inf(-a * c * q, q) *
             q_pochhammer_inf(-1.0 / (a * c), q));
        return qpow(q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(a * q, q, n)) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        return -qpow(p.q, -2 * n - 1) / p.get("a");
    };
    f.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, a = p.get("a");
        return -qpow(q, -2 * n) / a * (1.0 - qpow(q, n)) * (1.0 - a * qpow(q, n));
    };
    f.lhs = RecurrenceLhs::one_plus_eta;
    f.has_recurrence = true;
    f.shift.available = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        for (const char* k : {"a", "c"}) r.lambda[k] = p.get(k) * p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return p.q; };
    f.shift.varphi = [](Sector, int x, const ParameterSet& p) {
        return -p.get("a") * p.q * p.get("c") * qpow(p.q, x);
    };
    f.shift.varphi_bar = [](Sector, int x, const ParameterSet& p) {
        return p.get("c") * qpow(p.q, x) / (-p.get("a") * p.get("c") * p.q);
    };
    f.bj_scale0_fn = [](const ParameterSet&) { return 0.0; };
    return f;
}

// ---- universally normalised entries (evaluation + duality pair only) -------

FamilyDescriptor make_little_qjacobi() {
    FamilyDescriptor f;
    f.id = FamilyId::littleQJacobi;
    f.name = "lqj";
    f.sectors = 1;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a", "b"};
    f.full_data = false;
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        const double q = p.q, a = p.get("a"), b = p.get("b");
        require(q > 0 && q < 1, "lqj: need 0<q<1");
        require(a > 0 && a < 1.0 / q, "lqj: need 0<a<q^-1");
        require(b < 1.0 / q, "lqj: need b<q^-1");
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return 1.0 - qpow(p.q, x);
    };
    f.energy = [](int n, const ParameterSet& p) {
        const double q = p.q;
        return (qpow(q, -n) - 1.0) * (1.0 - p.get("a") * p.get("b") * qpow(q, n + 1));
    };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        // 3phi1(q^-n, abq^{n+1}, q^-x; bq; q; q^x/a), u = q^x = 1 - eta
        const double q = p.q, a = p.get("a"), b = p.get("b");
        const double u = 1.0 - eta;
        const double qmn = qpow(q, -n), ab = a * b * qpow(q, n + 1);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            // (q^-x;q) and z combine into (u - q^k); the 3phi1 prefactor
            // contributes ((-1) q^k)^{-1} per step
            term *= (1.0 - qmn * qk) * (1.0 - ab * qk) * (u - qk) /
                    ((1.0 - q * qk) * (1.0 - b * q * qk)) * (-1.0 / (a * qk));
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    return f;
}

FamilyDescriptor make_little_qlaguerre() {
    FamilyDescriptor f;
    f.id = FamilyId::littleQLaguerre;
    f.name = "lql";
    f.sectors = 1;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a"};
    f.full_data = false;
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        require(p.q > 0 && p.q < 1, "lql: need 0<q<1");
        require(p.get("a") > 0 && p.get("a") < 1.0 / p.q, "lql: need 0<a<q^-1");
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return 1.0 - qpow(p.q, x);
    };
    f.energy = [](int n, const ParameterSet& p) { return qpow(p.q, -n) - 1.0; };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        // 2phi0(q^-n, q^-x; -; q; q^x/a), u = q^x = 1 - eta
        const double q = p.q, a = p.get("a");
        const double u = 1.0 - eta, qmn = qpow(q, -n);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (u - qk) / (1.0 - q * qk) *
                    (-1.0 / (a * qk));
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    return f;
}

FamilyDescriptor make_asc2() {
    FamilyDescriptor f;
    f.id = FamilyId::AlSalamCarlitzII;
    f.name = "asc2";
    f.sectors = 1;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a"};
    f.full_data = false;
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        require(p.q > 0 && p.q < 1, "asc2: need 0<q<1");
        require(p.get("a") > 0, "asc2: need a>0");
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return qpow(p.q, -x) - 1.0;
    };
    f.energy = [](int n, const ParameterSet& p) { return 1.0 - qpow(p.q, n); };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        // 2phi0(q^-n, q^-x; -; q; q^n/a), u = q^-x = 1 + eta
        const double q = p.q, a = p.get("a");
        const double u = 1.0 + eta, qmn = qpow(q, -n);
        const double z = qpow(q, n) / a;
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (1.0 - u * qk) / (1.0 - q * qk) *
                    (-z / qk);
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    return f;
}

FamilyDescriptor make_alt_qcharlier() {
    FamilyDescriptor f;
    f.id = FamilyId::altQCharlier;
    f.name = "aqc";
    f.sectors = 1;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"a"};
    f.full_data = false;
    f.validate = [](const ParameterSet& p) {
        if (p.unchecked) return;
        require(p.q > 0 && p.q < 1, "aqc: need 0<q<1");
        require(p.get("a") > 0, "aqc: need a>0");
    };
    f.eta = [](Sector, int x, const ParameterSet& p) {
        return 1.0 - qpow(p.q, x);
    };
    f.energy = [](int n, const ParameterSet& p) {
        const double q = p.q;
        return (qpow(q, -n) - 1.0) * (1.0 + p.get("a") * qpow(q, n));
    };
    f.eval_eta = [](int n, double eta, const ParameterSet& p) {
        // 3phi0(q^-n, -aq^n, q^-x; -; q; -q^x/a), u = q^x = 1 - eta
        const double q = p.q, a = p.get("a");
        const double u = 1.0 - eta, qmn = qpow(q, -n);
        const double maq = -a * qpow(q, n);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            // 3phi0 prefactor contributes ((-1) q^k)^{-2} = q^{-2k} per step
            term *= (1.0 - qmn * qk) * (1.0 - maq * qk) * (u - qk) /
                    (1.0 - q * qk) * (-1.0 / (a * qk * qk));
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    return f;
}

// ---- two-component dual q-Meixner system -----------------------------------

FamilyDescriptor make_dual_qmeixner() {
    FamilyDescriptor f;
    f.id = FamilyId::qMeixner; // auxiliary system; reuses the qM parameters
    f.name = "dqm";
    f.sectors = 2;
    f.lattice = Lattice::semi_infinite;
    f.param_names = {"b", "c"};
    f.validate = make_qmeixner().validate;
    f.eta = [](Sector s, int x, const ParameterSet& p) {
        return s == Sector::plus ? qpow(p.q, x) : -p.get("c") * qpow(p.q, x);
    };
    f.Bj = [](Sector, double y, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return c / q * (1.0 - b * q * y) / (y * y);
    };
    f.Dj = [](Sector, double y, const ParameterSet& p) {
        return (1.0 - y) * (y + p.get("c")) / (y * y);
    };
    f.B = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        if (s == Sector::plus)
            return c * qpow(q, -2 * x - 1) * (1.0 - b * qpow(q, x + 1));
        return qpow(q, -2 * x - 1) / c * (1.0 + b * c * qpow(q, x + 1));
    };
    f.D = [](Sector s, int x, const ParameterSet& p) {
        const double q = p.q, c = p.get("c");
        if (s == Sector::plus)
            return qpow(q, -2 * x) * (1.0 - qpow(q, x)) * (qpow(q, x) + c);
        return qpow(q, -2 * x) / c * (1.0 - qpow(q, x)) * (1.0 + c * qpow(q, x));
    };
    f.energy = [](int n, const ParameterSet& p) { return qpow(p.q, -n) - 1.0; };
    f.eval_eta = [](int n, double y, const ParameterSet& p) {
        // 2phi1(q^-n, y^-1; bq; q; -c^-1 q y)
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double qmn = qpow(q, -n);
        KahanSum<accum_t> s;
        double term = 1.0, qk = 1.0;
        s.add(term);
        for (int k = 0; k < n; ++k) {
            term *= (1.0 - qmn * qk) * (y - qk) /
                    ((1.0 - q * qk) * (1.0 - b * q * qk)) * (-q / c);
            s.add(term);
            qk *= q;
        }
        return static_cast<double>(s.value());
    };
    f.phi0_sq = [](Sector s, int x, const ParameterSet& p) {
        if (x < 0) return 0.0;
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double y = (s == Sector::plus ? 1.0 : -c) * qpow(q, x);
        return sector_sign(s) * y * q_pochhammer_inf(q * y, q) *
               q_pochhammer_inf(-q * y / c, q) / q_pochhammer_inf(b * q * y, q);
    };
    f.norm_sq = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        const double d0 = q_pochhammer_inf(b * q, q) *
                          q_pochhammer_inf(-b * c * q, q) /
                          (q_pochhammer_inf(q, q) * q_pochhammer_inf(-c, q) *
                           q_pochhammer_inf(-q / c, q));
        return pow(c, n) * qtri(q, n) * q_pochhammer(b * q, q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(-b * c * q, q, n)) * d0;
    };
    f.An = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return -c * qpow(q, n) * (1.0 - b * qpow(q, n + 1));
    };
    f.Cn = [](int n, const ParameterSet& p) {
        const double q = p.q, b = p.get("b"), c = p.get("c");
        return -(1.0 - qpow(q, n)) * (1.0 + b * c * qpow(q, n));
    };
    f.lhs = RecurrenceLhs::one_minus_eta;
    f.has_recurrence = true;
    f.shift.available = true;
    f.shift.shifted = [](const ParameterSet& p) {
        ParameterSet r = p;
        r.lambda["b"] = p.get("b") * p.q;
        return r;
    };
    f.shift.kappa = [](const ParameterSet& p) { return 1.0 / p.q; };
    f.bj_scale0_fn = [](const ParameterSet& p) { return p.get("c") / p.q; };
    return f;
}

std::vector<FamilyDescriptor> build_registry() {
    return {
        make_qmeixner(),      make_qcharlier(),       make_big_qjacobi(),
        make_big_qlaguerre(), make_asc1(),            make_dqh1(),
        make_dqh2(),          make_qlaguerre(),       make_little_qjacobi(),
        make_little_qlaguerre(), make_asc2(),         make_alt_qcharlier(),
    };
}

} // namespace

const std::vector<FamilyDescriptor>& list_families() {
    static const std::vector<FamilyDescriptor> registry = build_registry();
    return registry;
}

const FamilyDescriptor& family(FamilyId id) {
    for (const auto& f : list_families())
        if (f.id == id) return f;
    throw UnsupportedFamily("unknown family id");
}

const FamilyDescriptor& dual_qmeixner_system() {
    static const FamilyDescriptor f = make_dual_qmeixner();
    return f;
}

FamilyId family_id_from_string(const std::string& s) {
    static const std::map<std::string, FamilyId> table = {
        {"qm", FamilyId::qMeixner},
        {"qmeixner", FamilyId::qMeixner},
        {"qc", FamilyId::qCharlier},
        {"qcharlier", FamilyId::qCharlier},
        {"bqj", FamilyId::bigQJacobi},
        {"big-q-jacobi", FamilyId::bigQJacobi},
        {"bql", FamilyId::bigQLaguerre},
        {"big-q-laguerre", FamilyId::bigQLaguerre},
        {"asci", FamilyId::AlSalamCarlitzI},
        {"asc1", FamilyId::AlSalamCarlitzI},
        {"dqh1", FamilyId::discreteQHermiteI},
        {"dqhi", FamilyId::discreteQHermiteI},
        {"dqh2", FamilyId::discreteQHermiteII},
        {"dqhii", FamilyId::discreteQHermiteII},
        {"ql", FamilyId::qLaguerre},
        {"qlaguerre", FamilyId::qLaguerre},
        {"lqj", FamilyId::littleQJacobi},
        {"lql", FamilyId::littleQLaguerre},
        {"asc2", FamilyId::AlSalamCarlitzII},
        {"ascii", FamilyId::AlSalamCarlitzII},
        {"aqc", FamilyId::altQCharlier},
    };
    std::string key;
    for (char ch : s) key += static_cast<char>(std::tolower(ch));
    auto it = table.find(key);
    if (it == table.end()) throw UnsupportedFamily("unknown family '" + s + "'");
    return it->second;
}

std::string family_name(FamilyId id) { return family(id).name; }

double eval_series(const FamilyDescriptor& fam, Sector s, int n, int x,
                   const ParameterSet& p) {
    fam.validate(p);
    if (n < 0) throw InvalidParameter("eval_series: n must be >= 0");
    if (fam.lattice == Lattice::semi_infinite && x < 0)
        throw InvalidParameter("eval_series: x must be >= 0 on this lattice");
    if (static_cast<int>(s) >= fam.sectors)
        throw InvalidParameter("eval_series: family has no minus sector");
    if (fam.eval_lattice) return fam.eval_lattice(s, n, x, p);
    return fam.eval_eta(n, fam.eta(s, x, p), p);
}

double eval_poly_at_eta(const FamilyDescriptor& fam, int n, double eta,
                        const ParameterSet& p) {
    fam.validate(p);
    if (n < 0) throw InvalidParameter("eval_poly_at_eta: n must be >= 0");
    return fam.eval_eta(n, eta, p);
}

double eval_recurrence(const FamilyDescriptor& fam, int n, double eta,
                       const ParameterSet& p) {
    fam.validate(p);
    if (!fam.has_recurrence)
        throw UnsupportedFamily("no recurrence data for this family");
    if (n < 0) throw InvalidParameter("eval_recurrence: n must be >= 0");
    double lhs = eta;
    switch (fam.lhs) {
        case RecurrenceLhs::one_minus_eta: lhs = 1.0 - eta; break;
        case RecurrenceLhs::one_plus_eta: lhs = 1.0 + eta; break;
        default: break;
    }
    double pm1 = 0.0, pk = 1.0;
    for (int k = 0; k < n; ++k) {
        const double A = fam.An(k, p), C = fam.Cn(k, p);
        double next;
        if (fam.lhs == RecurrenceLhs::eta_no_diag)
            next = (lhs * pk - C * pm1) / A;
        else
            next = (lhs * pk + (A + C) * pk - C * pm1) / A;
        pm1 = pk;
        pk = next;
    }
    return pk;
}

double ground_state_sq(const FamilyDescriptor& fam, Sector s, int x,
                       const ParameterSet& p) {
    fam.validate(p);
    if (!fam.phi0_sq) throw UnsupportedFamily("no ground-state data");
    return fam.phi0_sq(s, x, p);
}

double norm_sq(const FamilyDescriptor& fam, int n, const ParameterSet& p) {
    fam.validate(p);
    if (!fam.norm_sq) throw UnsupportedFamily("no normalisation data");
    if (n < 0) throw InvalidParameter("norm_sq: n must be >= 0");
    return fam.norm_sq(n, p);
}

} // namespace qlattice
