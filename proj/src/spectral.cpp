#include "qlattice/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qlattice {

Eigen::MatrixXd TruncatedOperator::dense() const {
    const int n = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i + 1 < n) {
            m(i, i + 1) = offdiag[i];
            m(i + 1, i) = offdiag[i];
        }
    }
    return m;
}

Eigen::MatrixXd BidiagonalFactor::dense() const {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i + 1 < n) m(i, i + 1) = super[i];
    }
    return m;
}

TruncatedOperator build_hamiltonian(const FamilyDescriptor& fam, Sector s,
                                    const ParameterSet& p, int N) {
    if (N < 2) throw InvalidParameter("build_hamiltonian: N must be >= 2");
    return build_hamiltonian_window(fam, s, p, 0, N);
}

TruncatedOperator build_hamiltonian_window(const FamilyDescriptor& fam,
                                           Sector s, const ParameterSet& p,
                                           int N_neg, int N_pos) {
    fam.validate(p);
    if (fam.lattice == Lattice::semi_infinite && N_neg != 0)
        throw InvalidParameter("window below 0 on a semi-infinite lattice");
    TruncatedOperator op;
    op.id = fam.id;
    op.sector = s;
    op.x_first = -N_neg;
    const int n = N_neg + N_pos + 1;
    op.diag.resize(n);
    op.offdiag.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        const int x = op.x_first + i;
        op.diag[i] = fam.B(s, x, p) + fam.D(s, x, p);
        if (i + 1 < n)
            op.offdiag[i] =
                -std::sqrt(fam.B(s, x, p) * fam.D(s, x + 1, p));
    }
    return op;
}

BidiagonalFactor build_factor(const FamilyDescriptor& fam, Sector s,
                              const ParameterSet& p, int N) {
    fam.validate(p);
    if (N < 2) throw InvalidParameter("build_factor: N must be >= 2");
    BidiagonalFactor a;
    a.x_first = 0;
    a.diag.resize(N + 1);
    a.super.resize(N);
    for (int x = 0; x <= N; ++x) {
        a.diag[x] = std::sqrt(fam.B(s, x, p));
        if (x < N) a.super[x] = -std::sqrt(fam.D(s, x + 1, p));
    }
    return a;
}

std::vector<double> similarity_transform_apply(const FamilyDescriptor& fam,
                                               Sector s, const ParameterSet& p,
                                               const std::vector<double>& v) {
    fam.validate(p);
    if (fam.lattice != Lattice::semi_infinite)
        throw ShapeMismatch("similarity_transform_apply: semi-infinite only");
    if (v.size() < 2)
        throw ShapeMismatch("similarity_transform_apply: need at least 2 points");
    const int N = static_cast<int>(v.size()) - 2;
    std::vector<double> out(N + 1);
    for (int x = 0; x <= N; ++x) {
        const double back = (x == 0) ? 0.0 : v[x - 1]; // D(0)=0 decouples x=-1
        out[x] = fam.B(s, x, p) * (v[x] - v[x + 1]) +
                 fam.D(s, x, p) * (v[x] - back);
    }
    return out;
}

double two_component_inner(const SectorVector& f, const SectorVector& g) {
    if (f.plus.size() != g.plus.size() || f.minus.size() != g.minus.size() ||
        f.x_first != g.x_first)
        throw ShapeMismatch("two_component_inner: shapes differ");
    return f.plus.dot(g.plus) + f.minus.dot(g.minus);
}

double wronskian(const std::function<double(double)>& f,
                 const std::function<double(double)>& g, double y, double h) {
    const double fp = (f(y + h) - f(y - h)) / (2.0 * h);
    const double gp = (g(y + h) - g(y - h)) / (2.0 * h);
    return f(y) * gp - fp * g(y);
}

namespace {

double sector_defect(const FamilyDescriptor& fam, Sector s,
                     const ParameterSet& p,
                     const std::function<double(double)>& P,
                     const std::function<double(double)>& Q, int N) {
    const double pN = P(fam.eta(s, N, p)), pN1 = P(fam.eta(s, N + 1, p));
    const double qN = Q(fam.eta(s, N, p)), qN1 = Q(fam.eta(s, N + 1, p));
    return fam.phi0_sq(s, N, p) * fam.B(s, N, p) * (pN1 * qN - pN * qN1);
}

} // namespace

DefectReport selfadjointness_defect(const FamilyDescriptor& fam,
                                    const ParameterSet& p,
                                    const std::function<double(double)>& P,
                                    const std::function<double(double)>& Q,
                                    int N) {
    fam.validate(p);
    if (!fam.phi0_sq)
        throw UnsupportedFamily("selfadjointness_defect: no weight data");
    DefectReport r;
    r.N = N;
    const double w0 = wronskian(P, Q, 0.0);
    const double scale = fam.bj_scale0(p);
    r.plus_defect = sector_defect(fam, Sector::plus, p, P, Q, N);
    r.predicted_plus = scale * (1.0 - p.q) * w0;
    if (fam.sectors == 2) {
        r.minus_defect = sector_defect(fam, Sector::minus, p, P, Q, N);
        r.predicted_minus = -scale * (1.0 - p.q) * w0;
    }
    r.combined_defect = r.plus_defect + r.minus_defect;
    return r;
}

DefectReport naive_dual_qmeixner_defect(const ParameterSet& p,
                                        const std::function<double(double)>& P,
                                        const std::function<double(double)>& Q,
                                        int N) {
    const FamilyDescriptor& sys = dual_qmeixner_system();
    sys.validate(p);
    const double q = p.q, c = p.get("c");
    // naive coordinate eta^d(x) = 1 - q^x; the plus sector of the
    // two-component pair is the naive dual q-Meixner Hamiltonian
    auto etad = [&](int x) { return 1.0 - std::pow(q, x); };
    DefectReport r;
    r.N = N;
    const double pN = P(etad(N)), pN1 = P(etad(N + 1));
    const double qN = Q(etad(N)), qN1 = Q(etad(N + 1));
    r.plus_defect = sys.phi0_sq(Sector::plus, N, p) * sys.B(Sector::plus, N, p) *
                    (pN1 * qN - pN * qN1);
    r.combined_defect = r.plus_defect;
    r.predicted_plus = -c / q * (1.0 - q) * wronskian(P, Q, 1.0);
    return r;
}

EigenSystem eigen_decompose(const TruncatedOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(op.diag, op.offdiag,
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eigen_decompose: tridiagonal QL failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace qlattice
