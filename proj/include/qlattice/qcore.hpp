#ifndef QLATTICE_QCORE_HPP
#define QLATTICE_QCORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "qlattice/errors.hpp"

namespace qlattice {

// Accumulator type for the badly cancelling alternating sums.  The build
// option QLATTICE_WIDE_ACCUM (on by default) widens it to long double.
#ifdef QLATTICE_WIDE_ACCUM
using accum_t = long double;
#else
using accum_t = double;
#endif

inline constexpr int kIterationCap = 10000;
inline constexpr double kTermTol = 1e-12;

/// Result of a truncated series evaluation.
/// tail_bound >= 0 estimates the discarded remainder; terms_used >= 1.
struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    double tail_bound = 0.0;
};

struct ComplexSeriesResult {
    std::complex<double> value{0.0, 0.0};
    int terms_used = 0;
    double tail_bound = 0.0;
};

/// Neumaier-compensated accumulator.
template <typename T = accum_t>
class KahanSum {
  public:
    void add(T x) {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + carry_; }

  private:
    T sum_ = 0;
    T carry_ = 0;
};

namespace detail {
inline void check_base(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw InvalidParameter("base q must satisfy 0 < q < 1");
}
} // namespace detail

/// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), with (a;q)_0 = 1.
template <typename Scalar>
Scalar q_pochhammer(Scalar a, double q, int n) {
    Scalar p{1.0};
    double qk = 1.0;
    for (int k = 0; k < n; ++k) {
        p *= Scalar(1.0) - a * qk;
        qk *= q;
    }
    return p;
}

/// (a;q)_inf, converged until the geometric tail drops below tolerance.
template <typename Scalar>
Scalar q_pochhammer_inf(Scalar a, double q, double tol = 1e-16) {
    detail::check_base(q);
    Scalar p{1.0};
    double mag = std::abs(a);
    for (int k = 0; k < kIterationCap; ++k) {
        if (mag / (1.0 - q) < tol) return p;
        p *= Scalar(1.0) - a * std::pow(q, k);
        mag *= q;
    }
    throw NonConvergent("q_pochhammer_inf: tail bound stalled above tolerance");
}

/// log|(a;q)_inf| together with the product's sign; safe where the direct
/// product over- or underflows (|a| >> 1 factors).
inline std::pair<double, int> log_q_pochhammer_inf(double a, double q,
                                                   double tol = 1e-16) {
    detail::check_base(q);
    double lg = 0.0;
    int sign = 1;
    double aq = a;
    for (int k = 0; k < kIterationCap; ++k) {
        if (std::abs(aq) / (1.0 - q) < tol) return {lg, sign};
        const double f = 1.0 - aq;
        if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        if (f < 0.0) sign = -sign;
        lg += std::log(std::abs(f));
        aq *= q;
    }
    throw NonConvergent("log_q_pochhammer_inf: tail bound stalled above tolerance");
}

/// Detects a ~ q^{-m} for integer m >= 0 (relative tolerance 1e-12);
/// parameters arrive as floats, so equality is approximate.
inline std::optional<int> negative_q_power(std::complex<double> a, double q,
                                           double rel_tol = 1e-12) {
    if (std::abs(a.imag()) > rel_tol * std::abs(a)) return std::nullopt;
    const double re = a.real();
    if (re < 1.0 - rel_tol) return std::nullopt;
    const double m = -std::log(re) / std::log(q);
    const double mr = std::round(m);
    if (std::abs(m - mr) <= rel_tol * std::max(1.0, std::abs(m)) * 1e3 ||
        std::abs(re - std::pow(q, -mr)) <= rel_tol * re)
        return static_cast<int>(mr);
    return std::nullopt;
}

/// Basic hypergeometric series
///   r_phi_s(a_1..a_r; b_1..b_s; q; z)
///     = sum_k [(a_1;q)_k...(a_r;q)_k / ((q;q)_k (b_1;q)_k...(b_s;q)_k)]
///       * ((-1)^k q^{k(k-1)/2})^{1+s-r} z^k.
/// Terminates after m+1 terms when some upper parameter is q^{-m}.
inline ComplexSeriesResult phi_rs(const std::vector<std::complex<double>>& upper,
                                  const std::vector<double>& lower, double q,
                                  std::complex<double> z, double tol = 1e-15) {
    detail::check_base(q);
    std::optional<int> kmax;
    for (const auto& a : upper) {
        if (auto m = negative_q_power(a, q)) {
            if (!kmax || *m < *kmax) kmax = *m;
        }
    }
    const int power = 1 + static_cast<int>(lower.size()) -
                      static_cast<int>(upper.size());

    ComplexSeriesResult out;
    KahanSum<accum_t> sum_re, sum_im;
    std::complex<double> term{1.0, 0.0};
    sum_re.add(1.0);
    out.terms_used = 1;

    double qk = 1.0; // q^k while building term k+1 from term k
    double prev_mag = 1.0;
    int small_streak = 0;
    for (int k = 0;; ++k) {
        if (kmax && k >= *kmax) {
            out.tail_bound = 0.0;
            break;
        }
        if (k + 1 >= kIterationCap)
            throw NonConvergent("phi_rs: iteration cap reached");

        // term_{k+1} = term_k * ratio
        std::complex<double> ratio{1.0, 0.0};
        for (const auto& a : upper) ratio *= 1.0 - a * qk;
        const double qfac = 1.0 - q * qk; // (q;q) factor at index k+1
        double low = qfac;
        for (double b : lower) low *= 1.0 - b * qk;
        if (low == 0.0)
            throw PoleInLowerParameter("phi_rs: lower parameter hit a pole");
        ratio /= low;
        ratio *= z;
        // ((-1)^k q^{k(k-1)/2})^{1+s-r} gains a factor ((-1) q^k)^{power}
        // from k to k+1.
        if (power != 0) {
            double extra = (power % 2 != 0) ? -1.0 : 1.0;
            extra *= std::pow(qk, power);
            ratio *= extra;
        }
        term *= ratio;
        qk *= q;

        sum_re.add(term.real());
        sum_im.add(term.imag());
        ++out.terms_used;

        if (!kmax) {
            const double mag = std::abs(term);
            const double r = (prev_mag > 0.0) ? mag / prev_mag : 0.0;
            prev_mag = mag;
            if (r < 1.0 && mag / (1.0 - r) < tol) {
                if (++small_streak >= 3) {
                    out.tail_bound = mag / (1.0 - r);
                    break;
                }
            } else {
                small_streak = 0;
                if (k > 50 && r >= 1.0)
                    throw NonConvergent("phi_rs: terms not decreasing");
            }
        }
    }
    out.value = {static_cast<double>(sum_re.value()),
                 static_cast<double>(sum_im.value())};
    return out;
}

/// Real-argument convenience wrapper.
inline SeriesResult phi_rs(const std::vector<double>& upper,
                           const std::vector<double>& lower, double q, double z,
                           double tol = 1e-15) {
    std::vector<std::complex<double>> up(upper.begin(), upper.end());
    const auto r = phi_rs(up, lower, q, std::complex<double>(z), tol);
    return {r.value.real(), r.terms_used, r.tail_bound};
}

/// Jackson integral over [alpha, beta]:
///   (1-q) [ beta sum_k f(beta q^k) q^k - alpha sum_k f(alpha q^k) q^k ],
/// each sum truncated once the geometric majorant |f(c q^K)| q^K / (1-q)
/// stays below tol (the integrands here are bounded near 0).
inline SeriesResult jackson_integral(const std::function<double(double)>& f,
                                     double alpha, double beta, double q,
                                     double tol) {
    detail::check_base(q);
    if (!(tol > 0.0)) throw InvalidParameter("jackson_integral: tol must be > 0");

    SeriesResult out;
    double tail_total = 0.0;
    int terms_total = 0;

    auto one_endpoint = [&](double c) -> double {
        if (c == 0.0) return 0.0;
        KahanSum<accum_t> s;
        double qk = 1.0;
        int small_streak = 0;
        for (int k = 0; k < kIterationCap; ++k) {
            const double fv = f(c * qk);
            s.add(fv * qk);
            ++terms_total;
            const double bound = std::abs(fv) * qk * q / (1.0 - q) * std::abs(c) * (1.0 - q);
            if (bound < tol) {
                if (++small_streak >= 4) {
                    tail_total += bound;
                    return static_cast<double>(s.value());
                }
            } else {
                small_streak = 0;
            }
            qk *= q;
        }
        throw NonConvergent("jackson_integral: tail bound stalled above tolerance");
    };

    const double sb = one_endpoint(beta);
    const double sa = one_endpoint(alpha);
    out.value = (1.0 - q) * (beta * sb - alpha * sa);
    out.terms_used = std::max(terms_total, 1);
    out.tail_bound = tail_total;
    return out;
}

/// Terminating 3phi2(q^-n, s2, q^-x; l1, l2; q; z) with the q^-n and
/// q^-x upper parameters explicit; s2 = 0 or l_j = 0 drop the factor.
/// Terms stay on the scale of the value for moderate x, unlike the
/// eta-form series near the lattice accumulation point.
inline double terminating_phi32_nx(int n, int x, double s2, double l1,
                                   double l2, double q, double z) {
    const double qmn = std::pow(q, -n), qmx = std::pow(q, -x);
    const int kmax = std::min(n, x);
    KahanSum<accum_t> s;
    double term = 1.0, qk = 1.0;
    s.add(term);
    for (int k = 0; k < kmax; ++k) {
        double num = (1.0 - qmn * qk) * (1.0 - qmx * qk);
        if (s2 != 0.0) num *= 1.0 - s2 * qk;
        double den = 1.0 - q * qk;
        if (l1 != 0.0) den *= 1.0 - l1 * qk;
        if (l2 != 0.0) den *= 1.0 - l2 * qk;
        term *= num / den * z;
        s.add(term);
        qk *= q;
    }
    return static_cast<double>(s.value());
}

/// splitmix64; used to derive independent per-path RNG seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace qlattice

#endif
