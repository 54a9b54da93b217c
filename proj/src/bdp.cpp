#include "qlattice/bdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "qlattice/qcore.hpp"

namespace qlattice {
namespace {

bool is_two_sector(BdVariant v) { return v == BdVariant::two_component; }

Block2 kernel_sum(const TransitionKernel& k, int x, int y, double t,
                  double tol, bool with_supplement) {
    const FamilyDescriptor& fam = family(k.id);
    const ParameterSet& p = k.params;
    Block2 out;
    const double log_cut = 745.0; // exp underflow

    switch (k.variant) {
        case BdVariant::one_component: {
            KahanSum<accum_t> acc;
            const double w = fam.phi0_sq(Sector::plus, x, p);
            int small = 0;
            for (int n = 0; n < k.n_cap; ++n) {
                const double e = fam.energy(n, p);
                if (e * t > log_cut) break;
                const double term =
                    std::exp(-e * t) * fam.norm_sq(n, p) * w *
                    eval_lattice_value(fam, Sector::plus, n, x, p) *
                    eval_lattice_value(fam, Sector::plus, n, y, p);
                acc.add(term);
                if (std::abs(term) < tol * 1e-3) {
                    if (++small >= 4) break;
                } else {
                    small = 0;
                }
            }
            out.v[0][0] = static_cast<double>(acc.value());
            return out;
        }
        case BdVariant::complete_qm: {
            KahanSum<accum_t> acc;
            const double w = fam.phi0_sq(Sector::plus, x, p);
            const double r0x = std::sqrt(fam.phi0_sq(Sector::plus, x, p));
            const double r0y = std::sqrt(fam.phi0_sq(Sector::plus, y, p));
            int small = 0;
            for (int n = 0; n < k.n_cap; ++n) {
                const double e = fam.energy(n, p);
                double term = 0.0;
                if (e * t <= log_cut)
                    term += std::exp(-e * t) * fam.norm_sq(n, p) * w *
                            eval_lattice_value(fam, Sector::plus, n, x, p) *
                            eval_lattice_value(fam, Sector::plus, n, y, p);
                if (with_supplement) {
                    const double ep = fam.supplement.Eprime(n, p);
                    if (ep * t <= log_cut)
                        term += std::exp(-ep * t) * fam.supplement.norm_sq(n, p) *
                                r0x * fam.supplement.phi0_signed(x, p) *
                                fam.supplement.eval(n, x, p) *
                                fam.supplement.phi0_signed(y, p) *
                                fam.supplement.eval(n, y, p) / r0y;
                }
                acc.add(term);
                if (std::abs(term) < tol * 1e-3) {
                    if (++small >= 4) break;
                } else {
                    small = 0;
                }
            }
            out.v[0][0] = static_cast<double>(acc.value());
            return out;
        }
        case BdVariant::two_component: {
            out.scalar = false;
            KahanSum<accum_t> acc[2][2];
            int small = 0;
            for (int n = 0; n < k.n_cap; ++n) {
                const double e = fam.energy(n, p);
                if (e * t > log_cut) break;
                const double cn2 =
                    std::exp(-e * t) * fam.norm_sq(n, p) / fam.ortho_factor;
                double worst = 0.0;
                for (int si = 0; si < 2; ++si)
                    for (int sj = 0; sj < 2; ++sj) {
                        const Sector ss = static_cast<Sector>(si);
                        const Sector sd = static_cast<Sector>(sj);
                        const double term =
                            cn2 * fam.phi0_sq(ss, x, p) *
                            eval_lattice_value(fam, ss, n, x, p) *
                            eval_lattice_value(fam, sd, n, y, p);
                        acc[si][sj].add(term);
                        worst = std::max(worst, std::abs(term));
                    }
                if (worst < tol * 1e-3) {
                    if (++small >= 4) break;
                } else {
                    small = 0;
                }
            }
            for (int si = 0; si < 2; ++si)
                for (int sj = 0; sj < 2; ++sj)
                    out.v[si][sj] = static_cast<double>(acc[si][sj].value());
            return out;
        }
        case BdVariant::dual_bqj: {
            const DualDescriptor& d = dual_descriptor(k.id);
            const double d0sq = fam.norm_sq(0, p);
            const int n_site = x, m_site = y;
            auto phi0d = [&](Sector s, int m) { return d.phi0d(s, m, p); };
            const double ratio =
                phi0d(Sector::plus, n_site) / phi0d(Sector::plus, m_site);
            KahanSum<accum_t> acc;
            int small = 0;
            for (int xx = 0; xx < k.n_cap; ++xx) {
                double term = 0.0;
                double wmax = 0.0;
                for (Sector eps : {Sector::plus, Sector::minus}) {
                    if (!with_supplement && eps == Sector::minus) continue;
                    const double e = eps == Sector::plus
                                         ? d.Ed(Sector::plus, xx, p)
                                         : d.Edp(Sector::plus, xx, p);
                    if (e * t > log_cut) continue;
                    const double w = fam.phi0_sq(eps, xx, p);
                    wmax = std::max(wmax, w);
                    term += std::exp(-e * t) * d0sq * w * phi0d(eps, n_site) *
                            phi0d(eps, m_site) * d.evalQ(eps, xx, n_site, p) *
                            d.evalQ(eps, xx, m_site, p);
                }
                acc.add(ratio * term);
                if (wmax < tol * 1e-3) {
                    if (++small >= 4) break;
                } else {
                    small = 0;
                }
            }
            out.v[0][0] = static_cast<double>(acc.value());
            return out;
        }
    }
    throw InvalidConfig("transition_probability: unknown variant");
}

} // namespace

TransitionKernel make_kernel(BdVariant v, FamilyId id, const ParameterSet& p) {
    const FamilyDescriptor& fam = family(id);
    fam.validate(p);
    switch (v) {
        case BdVariant::one_component:
            if (id != FamilyId::qLaguerre)
                throw InvalidConfig("one_component kernel: q-Laguerre only");
            break;
        case BdVariant::two_component:
            if (fam.sectors != 2)
                throw InvalidConfig("two_component kernel: need a two-sector family");
            break;
        case BdVariant::dual_bqj:
            dual_descriptor(id); // throws if unavailable
            break;
        case BdVariant::complete_qm:
            if (!fam.supplement.available)
                throw InvalidConfig("complete_qm kernel: need qM or qC");
            break;
    }
    TransitionKernel k;
    k.variant = v;
    k.id = id;
    k.params = p;
    return k;
}

Block2 transition_probability(const TransitionKernel& k, int x, int y,
                              double t, double tol, bool with_supplement) {
    if (!(t > 0.0)) throw InvalidParameter("transition_probability: t must be > 0");
    const FamilyDescriptor& fam = family(k.id);
    if (fam.lattice == Lattice::semi_infinite && (x < 0 || y < 0))
        throw InvalidParameter("transition_probability: site off the lattice");
    return kernel_sum(k, x, y, t, tol, with_supplement);
}

double chapman_kolmogorov_check(const TransitionKernel& k, int x, int y,
                                double t, double tp, int z_max, double tol,
                                bool with_supplement) {
    if (!(tp > 0.0 && tp < t))
        throw InvalidParameter("chapman_kolmogorov_check: need 0 < t' < t");
    const FamilyDescriptor& fam = family(k.id);
    const int z_lo = fam.lattice == Lattice::full ? -z_max : 0;
    const Block2 lhs = transition_probability(k, x, y, t, tol, with_supplement);
    if (is_two_sector(k.variant)) {
        double rhs[2][2] = {{0, 0}, {0, 0}};
        for (int z = z_lo; z <= z_max; ++z) {
            const Block2 a =
                transition_probability(k, x, z, t - tp, tol, with_supplement);
            const Block2 b =
                transition_probability(k, z, y, tp, tol, with_supplement);
            for (int si = 0; si < 2; ++si)
                for (int sj = 0; sj < 2; ++sj)
                    for (int r = 0; r < 2; ++r)
                        rhs[si][sj] += a.v[si][r] * b.v[r][sj];
        }
        double worst = 0.0;
        for (int si = 0; si < 2; ++si)
            for (int sj = 0; sj < 2; ++sj)
                worst = std::max(worst, std::abs(lhs.v[si][sj] - rhs[si][sj]));
        return worst;
    }
    double rhs = 0.0;
    for (int z = z_lo; z <= z_max; ++z)
        rhs += transition_probability(k, x, z, t - tp, tol, with_supplement)
                   .v[0][0] *
               transition_probability(k, z, y, tp, tol, with_supplement).v[0][0];
    return std::abs(lhs.v[0][0] - rhs);
}

double probability_mass(const TransitionKernel& k, int y, Sector y_sector,
                        double t, double tol, int x_lo, int x_hi) {
    double mass = 0.0;
    const int col = static_cast<int>(y_sector);
    for (int x = x_lo; x <= x_hi; ++x) {
        const Block2 b = transition_probability(k, x, y, t, tol);
        if (is_two_sector(k.variant))
            mass += b.v[0][col] + b.v[1][col];
        else
            mass += b.v[0][0];
    }
    return mass;
}

Eigen::MatrixXd bd_operator(const FamilyDescriptor& fam, Sector s,
                            const ParameterSet& p, int N) {
    fam.validate(p);
    if (N < 2) throw InvalidParameter("bd_operator: N must be >= 2");
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N + 1, N + 1);
    const int x0 = fam.lattice == Lattice::full ? -(N / 2) : 0;
    for (int i = 0; i <= N; ++i) {
        const int x = x0 + i;
        L(i, i) = -(fam.B(s, x, p) + fam.D(s, x, p));
        if (i > 0) L(i, i - 1) = fam.B(s, x - 1, p);
        if (i < N) L(i, i + 1) = fam.D(s, x + 1, p);
    }
    return L;
}

Eigen::MatrixXd bd_operator_dual(FamilyId id, const ParameterSet& p, int N) {
    const DualDescriptor& d = dual_descriptor(id);
    family(id).validate(p);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) {
        const double birth = -d.And(Sector::plus, i, p);
        const double death = -d.Cnd(Sector::plus, i, p);
        L(i, i) = -(birth + death);
        if (i > 0) L(i, i - 1) = -d.And(Sector::plus, i - 1, p);
        if (i < N) L(i, i + 1) = -d.Cnd(Sector::plus, i + 1, p);
    }
    return L;
}

namespace {

struct SplitMixRng {
    std::uint64_t state;
    explicit SplitMixRng(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // in (0, 1)
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
};

struct RateModel {
    std::function<double(int)> birth, death;
    bool reflecting_at_zero = true;
};

RateModel rates_for(const TransitionKernel& k, Sector sector) {
    const FamilyDescriptor& fam = family(k.id);
    const ParameterSet p = k.params;
    switch (k.variant) {
        case BdVariant::one_component:
            return {[&fam, p](int x) { return fam.B(Sector::plus, x, p); },
                    [&fam, p](int x) { return fam.D(Sector::plus, x, p); },
                    false};
        case BdVariant::two_component:
            return {[&fam, p, sector](int x) { return fam.B(sector, x, p); },
                    [&fam, p, sector](int x) { return fam.D(sector, x, p); },
                    fam.lattice == Lattice::semi_infinite};
        case BdVariant::complete_qm:
            return {[&fam, p](int x) { return fam.B(Sector::plus, x, p); },
                    [&fam, p](int x) { return fam.D(Sector::plus, x, p); },
                    true};
        case BdVariant::dual_bqj: {
            const DualDescriptor& d = dual_descriptor(k.id);
            return {[&d, p](int n) { return -d.And(Sector::plus, n, p); },
                    [&d, p](int n) { return -d.Cnd(Sector::plus, n, p); },
                    true};
        }
    }
    throw InvalidConfig("rates_for: unknown variant");
}

} // namespace

SimResult simulate(const TransitionKernel& k, const SimConfig& cfg) {
    if (cfg.paths < 1 || !(cfg.t > 0.0))
        throw InvalidConfig("simulate: need paths >= 1 and t > 0");
    const RateModel model = rates_for(k, cfg.start_sector);

    unsigned n_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("QLATTICE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n_threads = static_cast<unsigned>(cap);
    }
    n_threads = std::max(1u, std::min(n_threads, 16u));

    struct Local {
        std::map<int, long> counts;
        std::uint64_t jumps = 0;
        bool capped = false;
    };
    std::vector<Local> locals(n_threads);

    auto run_range = [&](unsigned tid, long lo, long hi) {
        Local& loc = locals[tid];
        for (long path = lo; path < hi; ++path) {
            SplitMixRng rng(splitmix64(cfg.seed ^
                                       (0x5851f42d4c957f2dULL *
                                        static_cast<std::uint64_t>(path + 1))));
            int x = cfg.start_site;
            double time = 0.0;
            for (std::uint64_t step = 0;; ++step) {
                if (step > 50'000'000ULL) {
                    loc.capped = true;
                    break;
                }
                const double b = model.birth(x);
                const double d =
                    (model.reflecting_at_zero && x == 0) ? 0.0 : model.death(x);
                const double rate = b + d;
                if (rate <= 0.0) break; // absorbing (does not occur here)
                const double wait = -std::log(1.0 - rng.uniform()) / rate;
                if (time + wait > cfg.t) break;
                time += wait;
                x += (rng.uniform() < b / rate) ? 1 : -1;
                ++loc.jumps;
            }
            ++loc.counts[x];
        }
    };

    const long per = (cfg.paths + n_threads - 1) / n_threads;
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < n_threads; ++tid) {
        const long lo = tid * per, hi = std::min<long>(cfg.paths, lo + per);
        if (lo >= hi) break;
        pool.emplace_back(run_range, tid, lo, hi);
    }
    for (auto& th : pool) th.join();

    std::map<int, long> counts;
    std::uint64_t jumps = 0;
    for (const auto& loc : locals) {
        if (loc.capped)
            throw NonConvergent("simulate: a path exceeded the jump cap");
        for (const auto& [site, c] : loc.counts) counts[site] += c;
        jumps += loc.jumps;
    }

    SimResult res;
    res.paths = cfg.paths;
    res.seed = cfg.seed;
    res.total_jumps = jumps;
    if (counts.empty()) return res;
    res.x_lo = counts.begin()->first;
    const int span = counts.rbegin()->first - res.x_lo + 1;
    res.p_plus.assign(span, 0.0);
    res.se_plus.assign(span, 0.0);
    for (const auto& [site, c] : counts) {
        const double ph = static_cast<double>(c) / cfg.paths;
        res.p_plus[site - res.x_lo] = ph;
        res.se_plus[site - res.x_lo] =
            std::sqrt(std::max(ph * (1.0 - ph), 1.0 / cfg.paths) / cfg.paths);
    }
    return res;
}

} // namespace qlattice
