#ifndef QLATTICE_DUALITY_HPP
#define QLATTICE_DUALITY_HPP

#include <Eigen/Dense>
#include <utility>

#include "qlattice/families.hpp"

namespace qlattice {

/// Dual polynomials Q_x(E) of a Jackson-measure family, obtained from
/// the original eigenpolynomials by removing the n-dependent factor
/// alpha_n^(sigma):  P_n^(sigma)(x) = alpha_n^(sigma) Q_x^(sigma)(n).
struct DualDescriptor {
    FamilyId base{};
    // Q_x^(sigma)(n), degree-x polynomial in E(n); Q_x(0) = 1
    std::function<double(Sector, int, int, const ParameterSet&)> evalQ;
    std::function<double(Sector, int, const ParameterSet&)> alpha_n;
    // dual potentials: -A_n > 0 (n>=0), -C_n > 0 (n>=1), C_0 = 0
    std::function<double(Sector, int, const ParameterSet&)> And, Cnd;
    // signed dual ground state phi0^d(n) = (+-1)^n prod sqrt(A_m/C_{m+1})
    std::function<double(Sector, int, const ParameterSet&)> phi0d;
    // dual spectra: ordinary E^d(x) and cross-sector E'^d(x)
    std::function<double(Sector, int, const ParameterSet&)> Ed, Edp;
};

/// Available for bigQJacobi, bigQLaguerre, AlSalamCarlitzI and
/// discreteQHermiteI; throws UnsupportedFamily otherwise.
const DualDescriptor& dual_descriptor(FamilyId id);

double eval_dual(const DualDescriptor& d, Sector s, int x, int n,
                 const ParameterSet& p);

/// Symmetric dual Hamiltonian H^{d(sigma)} truncated to n = 0..N.
Eigen::MatrixXd dual_hamiltonian(const DualDescriptor& d, Sector s,
                                 const ParameterSet& p, int N);

struct AlternatingSum {
    double value = 0.0;
    double max_partial = 0.0; // cancellation scale for "= 0" assertions
    int terms = 0;
};

/// sum_n phi0^{d(e)}(n) phi0^{d(e')}(n) Q_x^(e)(n) Q_y^(e')(n),
/// truncated once the Gaussian-decaying terms drop below tol; summed in
/// (n, n+1) pairs with compensated accumulation.
AlternatingSum dual_orthogonality_sum(const DualDescriptor& d, Sector e,
                                      Sector ep, int x, int y,
                                      const ParameterSet& p, double tol);

/// Cross-sector moment identity of the dual big q-Jacobi pair:
/// sum_n (-1)^n q^{n(n-1)/2}/(q;q)_n (1-abq^{2n+1})/(1-abq^{n+1})
///       (abq^2;q)_n E(n)^k  = 0.
AlternatingSum bqj_cross_moment(const ParameterSet& p, int k);

/// sum_n (-1)^n q^{n(n-1)/2}/(q;q)_n q^{-kn} = (q^{-k};q)_inf = 0.
AlternatingSum alternating_qpow_sum(double q, int k);

/// The failed naive dual orthogonality sum
///   sum_n d_n^2 P_n(eta(x)) P_n(eta(y))
/// of the q-Meixner data; strictly positive at (0,1) when
/// A = 1 - c^{-1}(1-bq)^{-1} > 0.
double naive_dual_qmeixner_failure(const ParameterSet& p, int x, int y,
                                   double tol);

/// Independent lower-bound expression sum_n d_n^2 (A(1-q^n)+q^n).
double naive_dual_qmeixner_bound(const ParameterSet& p, double tol);

/// The corrected two-component dual sum <phi_x, phi_y> of the dual
/// q-Meixner pair; vanishes for x != y.
double corrected_dual_qmeixner_sum(const ParameterSet& p, int x, int y,
                                   double tol);

/// (phi_n(x), phi^(-)_n(x)) for q-Meixner / q-Charlier: the ordinary
/// eigenvector and its completeness supplement (with the (-1)^x sign).
std::pair<double, double> qm_complete_set(const FamilyDescriptor& fam,
                                          const ParameterSet& p, int n, int x);

/// Completeness sum  sum_n phihat_n(x) phihat_n(y) (+ supplement where
/// the family needs one) as an approximation of delta_xy.  For
/// two-sector Jackson families the (e, e') block is selected by the
/// sector arguments and evaluated through the dual representation.
double completeness_sum(const FamilyDescriptor& fam, const ParameterSet& p,
                        int x, int y, double tol, bool with_supplement = true,
                        Sector e = Sector::plus, Sector ep = Sector::plus);

/// Diagnostic: number of sign changes of phi0^{d(sigma)}(n) Q_x(n) over
/// n = 0..n_max ('zeros' in the oscillation-theorem sense).
int dual_sign_changes(const DualDescriptor& d, Sector s, int x,
                      const ParameterSet& p, int n_max);

} // namespace qlattice

#endif
