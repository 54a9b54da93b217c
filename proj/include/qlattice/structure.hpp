#ifndef QLATTICE_STRUCTURE_HPP
#define QLATTICE_STRUCTURE_HPP

#include "qlattice/families.hpp"

namespace qlattice {

/// Max residuals of the two shape-invariance conditions
///   B(x+1;l) D(x+1;l)   = kappa^2 (B(x;l+d) D(x+1;l+d))
///   B(x;l) + D(x+1;l)   = kappa (B(x;l+d) + D(x;l+d)) + E(1;l)
/// over 0 <= x <= x_max, each scaled by the local term magnitude (the
/// potentials grow like q^{-2x}, so absolute residuals are meaningless
/// at large x).
struct ShapeResidual {
    double cond1 = 0.0;
    double cond2 = 0.0;
};

ShapeResidual check_shape_invariance(const FamilyDescriptor& fam, Sector s,
                                     const ParameterSet& p, int x_max);

/// E(n) rebuilt by telescoping: sum_{s<n} kappa^s E(1; lambda + s delta).
double telescoped_energy(const FamilyDescriptor& fam, const ParameterSet& p,
                         int n);

/// (F(lambda) P_n)(x); equals E(n;lambda) P_{n-1}(x;lambda+delta).
double forward_shift(const FamilyDescriptor& fam, Sector s,
                     const ParameterSet& p, int n, int x);

/// (B(lambda) P_{n-1}(.;lambda+delta))(x); equals P_n(x;lambda).
double backward_shift(const FamilyDescriptor& fam, Sector s,
                      const ParameterSet& p, int n, int x);

/// Rodrigues evaluation of P_n(eta(x)) by n-fold application of
/// D(lambda+k delta) = (1 - e^{-d}) varphi-bar(.;lambda+k delta)^{-1} to
/// phi0(.;lambda+n delta)^2, divided by phi0(x;lambda)^2.  With
/// `modified` false the plain coordinate-difference varphi of the
/// universal formula is used instead of the family's varphi-bar (for the
/// Jackson-measure families this is a deliberate mismatch).
double rodrigues(const FamilyDescriptor& fam, Sector s, const ParameterSet& p,
                 int n, int x, bool modified = true);

/// varphi(x) = (eta(x+1) - eta(x)) / eta(1) of the universal formula.
double varphi_universal(const FamilyDescriptor& fam, Sector s, int x,
                        const ParameterSet& p);

} // namespace qlattice

#endif
