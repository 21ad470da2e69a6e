#include "claimgate/stats_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "claimgate/errors.hpp"

namespace claimgate {

namespace {

// lnΓ in extended precision: shift the argument above 16 with the recurrence,
// then apply the Stirling series. Truncation error at x >= 16 is below 1e-19.
long double ln_gamma_ld(long double z) {
    long double x = z;
    long double prod = 1.0L;
    while (x < 16.0L) {
        prod *= x;
        x += 1.0L;
    }
    const long double inv = 1.0L / x;
    const long double inv2 = inv * inv;
    // Bernoulli terms B_2k / (2k (2k-1)).
    const long double series =
        inv * (1.0L / 12.0L +
               inv2 * (-1.0L / 360.0L +
                       inv2 * (1.0L / 1260.0L +
                               inv2 * (-1.0L / 1680.0L +
                                       inv2 * (1.0L / 1188.0L +
                                               inv2 * (-691.0L / 360360.0L +
                                                       inv2 * (1.0L / 156.0L)))))));
    constexpr long double half_log_two_pi = 0.918938533204672741780329736405617639861L;
    return (x - 0.5L) * std::log(x) - x + half_log_two_pi + series - std::log(prod);
}

long double ln_beta_ld(long double a, long double b) {
    return ln_gamma_ld(a) + ln_gamma_ld(b) - ln_gamma_ld(a + b);
}

// Continued fraction for I_x(a,b) / (x^a y^b / (a B(a,b))); converges quickly
// for x < (a+1)/(a+b+2).
long double beta_continued_fraction(long double x, long double a, long double b) {
    constexpr long double tiny = 1e-300L;
    constexpr long double eps = 1e-18L;
    constexpr int max_iter = 1'000'000;

    const long double qab = a + b;
    const long double qap = a + 1.0L;
    const long double qam = a - 1.0L;
    long double c = 1.0L;
    long double d = 1.0L - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0L / d;
    long double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const long double m2 = 2.0L * m;
        long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0L + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0L + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0L / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0L + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0L + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const long double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0L) < eps) return h;
    }
    throw InvariantViolation("incomplete beta continued fraction did not converge");
}

// I_x(a,b) on the side where the continued fraction converges. x and y = 1 - x
// are both passed so neither is recomputed by cancellation.
long double ibeta_lower(long double x, long double y, long double a, long double b) {
    const long double log_x = x < 0.5L ? std::log(x) : std::log1p(-y);
    const long double log_y = y < 0.5L ? std::log(y) : std::log1p(-x);
    const long double log_front = a * log_x + b * log_y - ln_beta_ld(a, b);
    return std::exp(log_front) * beta_continued_fraction(x, a, b) / a;
}

double ibeta(double x, double y, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    if (x > (a + 1.0) / (a + b + 2.0)) {
        return static_cast<double>(1.0L - ibeta_lower(y, x, b, a));
    }
    return static_cast<double>(ibeta_lower(x, y, a, b));
}

}  // namespace

double ln_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("ln_gamma requires z > 0, got " + std::to_string(z));
    }
    return static_cast<double>(ln_gamma_ld(z));
}

double reg_inc_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("reg_inc_beta requires 0 <= x <= 1, got " + std::to_string(x));
    }
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("reg_inc_beta requires a > 0 and b > 0");
    }
    return ibeta(x, 1.0 - x, a, b);
}

double student_t_cdf(double z, double dof) {
    if (!(dof >= 1.0)) {
        throw DomainError("student_t_cdf requires dof >= 1, got " + std::to_string(dof));
    }
    if (std::isnan(z)) throw DomainError("student_t_cdf: z is NaN");
    if (z == 0.0) return 0.5;
    if (std::isinf(dof)) return 0.5 * std::erfc(-z / std::sqrt(2.0));

    const double t2 = z * z;
    double tail;  // P(T <= -|z|)
    if (!std::isfinite(t2)) {
        tail = 0.0;
    } else {
        const double denom = dof + t2;
        tail = 0.5 * ibeta(dof / denom, t2 / denom, 0.5 * dof, 0.5);
    }
    return z < 0.0 ? tail : 1.0 - tail;
}

DirichletParams::DirichletParams(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 2) {
        throw DomainError("Dirichlet needs at least two parameters");
    }
    for (double a : alphas_) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw DomainError("Dirichlet parameters must be positive and finite, got " +
                              std::to_string(a));
        }
    }
}

double DirichletParams::sum() const noexcept {
    return std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
}

void sample_dirichlet(const DirichletParams& params, Sampler& sampler, std::span<double> out) {
    const auto& alphas = params.alphas();
    if (out.size() != alphas.size()) {
        throw ArgumentError("sample_dirichlet: output size does not match parameter count");
    }
    const bool small_shape =
        std::any_of(alphas.begin(), alphas.end(), [](double a) { return a < 1.0; });
    if (!small_shape) {
        double total = 0.0;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            out[i] = sampler.gamma(alphas[i]);
            total += out[i];
        }
        for (double& v : out) v /= total;
        return;
    }
    // Shapes below 1 can underflow to exactly zero; normalize in log space.
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        out[i] = sampler.log_gamma_variate(alphas[i]);
        max_log = std::max(max_log, out[i]);
    }
    double total = 0.0;
    for (double& v : out) {
        v = std::exp(v - max_log);
        total += v;
    }
    for (double& v : out) v /= total;
}

std::vector<double> sample_dirichlet(const DirichletParams& params, Sampler& sampler) {
    std::vector<double> out(params.size());
    sample_dirichlet(params, sampler, out);
    return out;
}

}  // namespace claimgate
