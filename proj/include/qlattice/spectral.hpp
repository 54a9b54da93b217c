#ifndef QLATTICE_SPECTRAL_HPP
#define QLATTICE_SPECTRAL_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qlattice/families.hpp"

namespace qlattice {

/// Finite slice of a Jacobi-matrix Hamiltonian.  Row i corresponds to
/// lattice point x = x_first + i; diag holds B(x)+D(x), offdiag holds
/// -sqrt(B(x) D(x+1)).
struct TruncatedOperator {
    FamilyId id{};
    Sector sector = Sector::plus;
    int x_first = 0;
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag;

    int size() const { return static_cast<int>(diag.size()); }
    Eigen::MatrixXd dense() const;
};

/// Upper-bidiagonal factor A with H = A^T A up to the truncation row.
struct BidiagonalFactor {
    int x_first = 0;
    Eigen::VectorXd diag;  // sqrt(B(x))
    Eigen::VectorXd super; // -sqrt(D(x+1))
    Eigen::MatrixXd dense() const;
};

/// Two-component lattice vector with the direct-sum inner product.
struct SectorVector {
    Eigen::VectorXd plus;
    Eigen::VectorXd minus;
    int x_first = 0;
};

struct DefectReport {
    int N = 0;
    double plus_defect = 0.0;
    double minus_defect = 0.0;
    double combined_defect = 0.0;
    double predicted_plus = 0.0;
    double predicted_minus = 0.0;
};

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns
};

TruncatedOperator build_hamiltonian(const FamilyDescriptor& fam, Sector s,
                                    const ParameterSet& p, int N);

/// Window [-N_neg, N_pos] for full-lattice families.
TruncatedOperator build_hamiltonian_window(const FamilyDescriptor& fam,
                                           Sector s, const ParameterSet& p,
                                           int N_neg, int N_pos);

BidiagonalFactor build_factor(const FamilyDescriptor& fam, Sector s,
                              const ParameterSet& p, int N);

/// Applies the similarity-transformed Hamiltonian
///   (H~ v)(x) = B(x)(v(x) - v(x+1)) + D(x)(v(x) - v(x-1))
/// to values on x = 0..N+1 (one ghost point for the forward shift);
/// returns values on x = 0..N.  Semi-infinite lattices only; D(0) = 0
/// decouples the x = -1 point.
std::vector<double> similarity_transform_apply(const FamilyDescriptor& fam,
                                               Sector s, const ParameterSet& p,
                                               const std::vector<double>& v);

double two_component_inner(const SectorVector& f, const SectorVector& g);

/// Truncated self-adjointness criterion: per sector
///   phi0(N)^2 B(N) (P(N+1)Q(N) - P(N)Q(N+1))
/// with P, Q smooth functions of the sector's sinusoidal coordinate.
/// The predicted limits are the closed-form boundary terms
/// +- p1(0) (1-q) W[P,Q](0).
DefectReport selfadjointness_defect(const FamilyDescriptor& fam,
                                    const ParameterSet& p,
                                    const std::function<double(double)>& P,
                                    const std::function<double(double)>& Q,
                                    int N);

/// Same diagnostic for the naive (single-component) dual q-Meixner
/// system, whose sinusoidal coordinate 1-q^x accumulates at 1; the
/// plus-sector defect converges to the nonzero constant
/// -c q^{-1} (1-q) W[P,Q](1), reproducing the breakdown.
DefectReport naive_dual_qmeixner_defect(const ParameterSet& p,
                                        const std::function<double(double)>& P,
                                        const std::function<double(double)>& Q,
                                        int N);

EigenSystem eigen_decompose(const TruncatedOperator& op);

/// Wronskian W[f,g](y) = f(y) g'(y) - f'(y) g(y) by central differences.
double wronskian(const std::function<double(double)>& f,
                 const std::function<double(double)>& g, double y,
                 double h = 1e-6);

} // namespace qlattice

#endif
