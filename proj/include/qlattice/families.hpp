#ifndef QLATTICE_FAMILIES_HPP
#define QLATTICE_FAMILIES_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qlattice/errors.hpp"

namespace qlattice {

enum class FamilyId {
    qMeixner,
    qCharlier,
    bigQJacobi,
    bigQLaguerre,
    AlSalamCarlitzI,
    discreteQHermiteI,
    discreteQHermiteII,
    qLaguerre,
    littleQJacobi,
    littleQLaguerre,
    AlSalamCarlitzII,
    altQCharlier,
};

enum class Sector { plus = 0, minus = 1 };
enum class Lattice { semi_infinite, full };

inline double sector_sign(Sector s) { return s == Sector::plus ? 1.0 : -1.0; }

/// Base q plus the family's named parameters.  Validation is strict by
/// default; set `unchecked` to explore outside the tabulated ranges.
struct ParameterSet {
    double q = 0.5;
    std::map<std::string, double> lambda;
    bool unchecked = false;

    double get(const std::string& name) const {
        auto it = lambda.find(name);
        if (it == lambda.end())
            throw InvalidParameter("missing parameter '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return lambda.count(name) > 0; }
};

/// Left-hand side of the three term recurrence  lhs(eta) * P_n =
/// A_n P_{n+1} - (A_n + C_n) P_n + C_n P_{n-1}  (no diagonal term at all
/// for `eta_no_diag`).
enum class RecurrenceLhs { one_minus_eta, one_plus_eta, eta, eta_no_diag };

/// Shape-invariance data: parameter shift, kappa, and the auxiliary
/// functions entering the forward/backward shift operators and the
/// Rodrigues formula.
struct ShiftData {
    bool available = false;
    std::function<ParameterSet(const ParameterSet&)> shifted;
    std::function<double(const ParameterSet&)> kappa;
    // varphi(x; lambda): forward/backward shift auxiliary
    std::function<double(Sector, int, const ParameterSet&)> varphi;
    // varphi-bar: the Jackson-modified Rodrigues auxiliary
    std::function<double(Sector, int, const ParameterSet&)> varphi_bar;
    // true when the universal boundary conditions P_n(0)=1, phi0(0)=1 hold
    // and the unmodified Rodrigues formula applies
    bool universal = false;
    // B(0; lambda) prefactor used by the universal shift operators
    std::function<double(const ParameterSet&)> B0;
};

/// Completeness supplement (q-Meixner / q-Charlier second eigenvector
/// series with eigenvalues E'(n)).
struct SupplementData {
    bool available = false;
    std::function<double(int, const ParameterSet&)> B, D;
    std::function<double(int, const ParameterSet&)> phi0_signed; // carries (-1)^x
    std::function<double(int, int, const ParameterSet&)> eval;   // P^(-)_n(x)
    std::function<double(int, const ParameterSet&)> Eprime;
    std::function<double(int, const ParameterSet&)> An, Cn;
    std::function<double(int, const ParameterSet&)> norm_sq;
};

/// One polynomial family as a plain data record: closed-form callables
/// for everything the paper tabulates.  Families are data, not
/// subclasses, so tests and the CLI iterate uniformly.
struct FamilyDescriptor {
    FamilyId id{};
    std::string name;
    int sectors = 1;
    Lattice lattice = Lattice::semi_infinite;
    std::vector<std::string> param_names;
    // full potential/weight/norm data present (false for the
    // universally-normalised evaluation-only entries)
    bool full_data = true;

    std::function<void(const ParameterSet&)> validate;

    std::function<double(Sector, int, const ParameterSet&)> B, D;
    std::function<double(Sector, double, const ParameterSet&)> Bj, Dj;
    std::function<double(Sector, int, const ParameterSet&)> eta;
    std::function<double(int, const ParameterSet&)> energy;
    std::function<double(Sector, int, const ParameterSet&)> phi0_sq;
    std::function<double(int, const ParameterSet&)> norm_sq;
    // <phi_n, phi_m> = ortho_factor * delta_nm / d_n^2
    double ortho_factor = 1.0;
    std::function<double(int, const ParameterSet&)> An, Cn;
    RecurrenceLhs lhs = RecurrenceLhs::eta;
    bool has_recurrence = false;
    // P_n evaluated at a continuous eta argument (sector-independent; the
    // sectors only select the evaluation point eta^(sigma)(x)).  Near the
    // lattice accumulation point the eta-form series cancels to
    // ~q^{n(n+1)} of its largest term; lattice evaluation goes through
    // eval_lattice instead.
    std::function<double(int, double, const ParameterSet&)> eval_eta;
    // P_n at a lattice point; defaults to eval_eta(eta(x)) and is
    // overridden with the stable alpha_n Q_x(n) route for the Jackson
    // families
    std::function<double(Sector, int, int, const ParameterSet&)> eval_lattice;
    // alpha_n^(sigma): dual-correspondence prefactor (1 for families
    // satisfying the universal boundary condition)
    std::function<double(Sector, int, const ParameterSet&)> alpha_n;

    ShiftData shift;
    SupplementData supplement;
    // p1(0) = lim_{eta->0} eta^2 B^J(eta): boundary-term scale of the
    // self-adjointness defect
    double bj_scale0(const ParameterSet& p) const {
        return bj_scale0_fn ? bj_scale0_fn(p) : 0.0;
    }
    std::function<double(const ParameterSet&)> bj_scale0_fn;
};

const FamilyDescriptor& family(FamilyId id);
const std::vector<FamilyDescriptor>& list_families();

/// Unvalidated lattice evaluation through the family's preferred route.
inline double eval_lattice_value(const FamilyDescriptor& fam, Sector s, int n,
                                 int x, const ParameterSet& p) {
    if (fam.eval_lattice) return fam.eval_lattice(s, n, x, p);
    return fam.eval_eta(n, fam.eta(s, x, p), p);
}

/// Accepts the CLI spellings (qm, qc, bqj, bql, ascI, dqh1, dqh2, ql,
/// lqj, lql, asc2, aqc) plus a few aliases.
FamilyId family_id_from_string(const std::string& s);
std::string family_name(FamilyId id);

/// Two-component dual q-Meixner system: the pair of Hamiltonians whose
/// direct sum restores self-adjointness for the dual q-Meixner
/// polynomials.  Kept outside the public registry (it is a rescaled big
/// q-Laguerre), but needed for the breakdown/recovery diagnostics.
const FamilyDescriptor& dual_qmeixner_system();

// ---- operations ----------------------------------------------------------

double eval_series(const FamilyDescriptor& fam, Sector s, int n, int x,
                   const ParameterSet& p);
double eval_poly_at_eta(const FamilyDescriptor& fam, int n, double eta,
                        const ParameterSet& p);
double eval_recurrence(const FamilyDescriptor& fam, int n, double eta,
                       const ParameterSet& p);
double ground_state_sq(const FamilyDescriptor& fam, Sector s, int x,
                       const ParameterSet& p);
double norm_sq(const FamilyDescriptor& fam, int n, const ParameterSet& p);

} // namespace qlattice

#endif
