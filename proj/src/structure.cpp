#include "qlattice/structure.hpp"

#include <cmath>
#include <vector>

namespace qlattice {

namespace {

void need_shift(const FamilyDescriptor& fam) {
    if (!fam.shift.available)
        throw UnsupportedFamily("no shape-invariance data for this family");
}

} // namespace

ShapeResidual check_shape_invariance(const FamilyDescriptor& fam, Sector s,
                                     const ParameterSet& p, int x_max) {
    fam.validate(p);
    need_shift(fam);
    const ParameterSet ps = fam.shift.shifted(p);
    const double kappa = fam.shift.kappa(p);
    const double e1 = fam.energy(1, p);
    ShapeResidual r;
    const int x_lo = fam.lattice == Lattice::full ? -x_max : 0;
    for (int x = x_lo; x <= x_max; ++x) {
        const double lhs1 = fam.B(s, x + 1, p) * fam.D(s, x + 1, p);
        const double rhs1 = kappa * kappa * fam.B(s, x, ps) * fam.D(s, x + 1, ps);
        r.cond1 = std::max(r.cond1, std::abs(lhs1 - rhs1) /
                                        std::max(1.0, std::abs(lhs1) +
                                                          std::abs(rhs1)));
        const double lhs2 = fam.B(s, x, p) + fam.D(s, x + 1, p);
        const double rhs2 = kappa * (fam.B(s, x, ps) + fam.D(s, x, ps)) + e1;
        r.cond2 = std::max(r.cond2, std::abs(lhs2 - rhs2) /
                                        std::max(1.0, std::abs(lhs2) +
                                                          std::abs(rhs2)));
    }
    return r;
}

double telescoped_energy(const FamilyDescriptor& fam, const ParameterSet& p,
                         int n) {
    fam.validate(p);
    need_shift(fam);
    double sum = 0.0, kpow = 1.0;
    ParameterSet lam = p;
    for (int s = 0; s < n; ++s) {
        sum += kpow * fam.energy(1, lam);
        kpow *= fam.shift.kappa(p);
        lam = fam.shift.shifted(lam);
    }
    return sum;
}

double varphi_universal(const FamilyDescriptor& fam, Sector s, int x,
                        const ParameterSet& p) {
    return (fam.eta(s, x + 1, p) - fam.eta(s, x, p)) /
           fam.eta(s, 1, p);
}

double forward_shift(const FamilyDescriptor& fam, Sector s,
                     const ParameterSet& p, int n, int x) {
    fam.validate(p);
    need_shift(fam);
    if (n < 1) throw InvalidParameter("forward_shift: n must be >= 1");
    const double pref = fam.shift.universal ? fam.shift.B0(p) : 1.0;
    const double pn_x = eval_lattice_value(fam, s, n, x, p);
    const double pn_x1 = eval_lattice_value(fam, s, n, x + 1, p);
    return pref * (pn_x - pn_x1) / fam.shift.varphi(s, x, p);
}

double backward_shift(const FamilyDescriptor& fam, Sector s,
                      const ParameterSet& p, int n, int x) {
    fam.validate(p);
    need_shift(fam);
    if (n < 1) throw InvalidParameter("backward_shift: n must be >= 1");
    const ParameterSet ps = fam.shift.shifted(p);
    const double pref = fam.shift.universal ? 1.0 / fam.shift.B0(p) : 1.0;
    // f = P_{n-1}(.; lambda+delta) evaluated on the shifted coordinate
    const double fx = eval_lattice_value(fam, s, n - 1, x, ps);
    const double bterm = fam.B(s, x, p) * fam.shift.varphi(s, x, p) * fx;
    double dterm = 0.0;
    if (!(fam.lattice == Lattice::semi_infinite && x == 0)) {
        const double fxm = eval_lattice_value(fam, s, n - 1, x - 1, ps);
        dterm = fam.D(s, x, p) * fam.shift.varphi(s, x - 1, p) * fxm;
    }
    return pref * (bterm - dterm);
}

double rodrigues(const FamilyDescriptor& fam, Sector s, const ParameterSet& p,
                 int n, int x, bool modified) {
    fam.validate(p);
    need_shift(fam);
    if (n < 0) throw InvalidParameter("rodrigues: n must be >= 0");
    const bool semi = fam.lattice == Lattice::semi_infinite;
    if (semi && x < 0) throw InvalidParameter("rodrigues: x must be >= 0");

    // parameter chain lambda + k delta, k = 0..n
    std::vector<ParameterSet> lam(n + 1);
    lam[0] = p;
    for (int k = 0; k < n; ++k) lam[k + 1] = fam.shift.shifted(lam[k]);

    auto aux = [&](int xx, const ParameterSet& lp) {
        if (modified) return fam.shift.varphi_bar(s, xx, lp);
        return varphi_universal(fam, s, xx, lp);
    };

    // start from phi0(.; lambda + n delta)^2 on the window x-n .. x
    std::vector<double> f(n + 1);
    for (int j = 0; j <= n; ++j) {
        const int xx = x - n + j;
        f[j] = (semi && xx < 0) ? 0.0 : fam.phi0_sq(s, xx, lam[n]);
    }
    // apply D(lambda + k delta) for k = n-1 down to 0 (rightmost first);
    // each application consumes the leftmost window point
    for (int k = n - 1; k >= 0; --k) {
        const int applied = n - 1 - k;           // how many already applied
        const int lo = x - n + applied;          // leftmost lattice point of f
        std::vector<double> g(f.size() - 1);
        for (std::size_t j = 0; j + 1 < f.size(); ++j) {
            const int xx = lo + static_cast<int>(j) + 1;
            g[j] = f[j + 1] / aux(xx, lam[k]) - f[j] / aux(xx - 1, lam[k]);
        }
        f.swap(g);
    }
    const double w = fam.phi0_sq(s, x, p);
    if (w == 0.0)
        throw ShiftedParameterInvalid("rodrigues: vanishing weight at x");
    return f[0] / w;
}

} // namespace qlattice
