#pragma once

#include <span>
#include <vector>

#include "claimgate/rng.hpp"

namespace claimgate {

/// Natural log of the gamma function. Throws DomainError unless z > 0.
double ln_gamma(double z);

/// Regularized incomplete beta I_x(a, b).
///
/// Evaluated with the Lentz continued fraction on whichever side of the
/// distribution mean converges fastest. Throws DomainError when x is outside
/// [0, 1] or a, b are not positive.
double reg_inc_beta(double x, double a, double b);

/// CDF of the standard Student t distribution with `dof` degrees of freedom.
///
/// Computed through the incomplete beta identity, so lower tails down to
/// ~1e-300 keep full relative precision. student_t_cdf(0, dof) is exactly 0.5.
/// Throws DomainError for dof < 1 or NaN input.
double student_t_cdf(double z, double dof);

/// Parameters of a Dirichlet distribution. Real-valued alphas are allowed.
class DirichletParams {
public:
    /// Throws DomainError unless there are >= 2 alphas and every alpha is a
    /// positive finite number.
    explicit DirichletParams(std::vector<double> alphas);

    const std::vector<double>& alphas() const noexcept { return alphas_; }
    std::size_t size() const noexcept { return alphas_.size(); }
    double sum() const noexcept;

private:
    std::vector<double> alphas_;
};

/// One Dirichlet draw by normalizing independent Gamma(alpha_i, 1) variates.
std::vector<double> sample_dirichlet(const DirichletParams& params, Sampler& sampler);

/// Allocation-free variant; `out.size()` must equal `params.size()`.
void sample_dirichlet(const DirichletParams& params, Sampler& sampler, std::span<double> out);

}  // namespace claimgate
