#ifndef QLATTICE_BDP_HPP
#define QLATTICE_BDP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qlattice/duality.hpp"
#include "qlattice/families.hpp"

namespace qlattice {

enum class BdVariant {
    one_component,     // q-Laguerre on the full integer lattice
    two_component,     // big q-Jacobi family / discrete q-Hermite II pairs
    dual_bqj,          // dual big q-Jacobi family on the n-lattice
    complete_qm,       // q-Meixner / q-Charlier with the supplement series
};

/// Analytic transition kernel P(x,y;t) as an eigen-expansion.
struct TransitionKernel {
    BdVariant variant{};
    FamilyId id{};
    ParameterSet params;
    int n_cap = 500;        // eigen-sum iteration cap
    double tail_tol = 1e-12;
};

TransitionKernel make_kernel(BdVariant v, FamilyId id, const ParameterSet& p);

/// 2x2 sector block (arrival sector row, departure sector column); the
/// scalar variants use only (0,0).
struct Block2 {
    double v[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    bool scalar = true;
};

/// P(x,y;t) with the n-series truncated to tail < tol.  Setting
/// with_supplement = false on the complete_qm variant reproduces the
/// flawed kernel that drops the E'(n) series.
Block2 transition_probability(const TransitionKernel& k, int x, int y,
                              double t, double tol,
                              bool with_supplement = true);

/// max |P(x,y;t) - sum_{z<=z_max} P(x,z;t-tp) P(z,y;tp)| over sector
/// entries (matrix form for the two-component variants).
double chapman_kolmogorov_check(const TransitionKernel& k, int x, int y,
                                double t, double tp, int z_max, double tol,
                                bool with_supplement = true);

/// Column sum over arrivals: conservation  sum_x sum_sigma P = 1.
double probability_mass(const TransitionKernel& k, int y, Sector y_sector,
                        double t, double tol, int x_lo, int x_hi);

/// Truncated birth-death generator L_BD = (e^{-d}-1)B(x) + (e^d-1)D(x)
/// (columns sum to zero in the interior).
Eigen::MatrixXd bd_operator(const FamilyDescriptor& fam, Sector s,
                            const ParameterSet& p, int N);
Eigen::MatrixXd bd_operator_dual(FamilyId id, const ParameterSet& p, int N);

struct SimConfig {
    double t = 1.0;
    long paths = 100000;
    std::uint64_t seed = 0;
    int start_site = 0;
    Sector start_sector = Sector::plus;
};

struct SimResult {
    int x_lo = 0;
    std::vector<double> p_plus, p_minus;   // empirical probabilities
    std::vector<double> se_plus, se_minus; // binomial standard errors
    long paths = 0;
    std::uint64_t seed = 0;
    std::uint64_t total_jumps = 0;
};

/// Continuous-time Markov chain paths with exact exponential waiting
/// times (rate B+D, jump up with probability B/(B+D)); the sector never
/// changes.  Deterministic for a fixed seed independent of threading.
SimResult simulate(const TransitionKernel& k, const SimConfig& cfg);

} // namespace qlattice

#endif
