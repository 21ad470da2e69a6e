#include "claimgate/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "claimgate/errors.hpp"
#include "claimgate/stats_kernels.hpp"

namespace claimgate {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

void check_correlation(const CongruenceAssumption& r_ab) {
    if (!(r_ab.value > -1.0 && r_ab.value <= 1.0)) {
        throw ArgumentError("segmentation congruence r_ab must lie in (-1, 1]");
    }
}

void check_sds(const SdPair& sds) {
    if (!(sds.a >= 0.0) || !(sds.b >= 0.0) || !std::isfinite(sds.a) || !std::isfinite(sds.b)) {
        throw ArgumentError("standard deviations must be finite and >= 0");
    }
}

// Variance of the per-image DSC difference. Written as
// (s_a - s_b)^2 + 2 s_a s_b (1 - r) so it cannot go negative for r <= 1.
double difference_variance(const SdPair& sds, double r) {
    const double d = sds.a - sds.b;
    const double v = d * d + 2.0 * sds.a * sds.b * (1.0 - r);
    if (v < 0.0) throw InvariantViolation("negative variance of the DSC difference");
    return v;
}

}  // namespace

void SegmentationComparison::validate() const {
    if (n < 2) throw ArgumentError("segmentation needs n >= 2 (Student t with n - 1 dof)");
    if (!in_unit_interval(dsc_a) || !in_unit_interval(dsc_b)) {
        throw ArgumentError("mean DSC values must lie in [0, 1]");
    }
    if (dsc_b > dsc_a) {
        throw ArgumentError(
            "rank-order violation: dsc_b must not exceed dsc_a (method A is the reported winner)");
    }
    if ((sd_a && !(*sd_a >= 0.0)) || (sd_b && !(*sd_b >= 0.0))) {
        throw ArgumentError("reported SDs must be >= 0");
    }
}

std::string_view to_string(SdVariant v) noexcept {
    switch (v) {
        case SdVariant::point: return "point";
        case SdVariant::q1: return "q1";
        case SdVariant::q3: return "q3";
    }
    return "point";
}

std::string_view to_string(SdSource s) noexcept {
    switch (s) {
        case SdSource::reported: return "reported";
        case SdSource::imputed_point: return "imputed-point";
        case SdSource::imputed_q1: return "imputed-q1";
        case SdSource::imputed_q3: return "imputed-q3";
    }
    return "reported";
}

std::optional<SdVariant> parse_sd_variant(std::string_view s) noexcept {
    if (s == "point") return SdVariant::point;
    if (s == "q1") return SdVariant::q1;
    if (s == "q3") return SdVariant::q3;
    return std::nullopt;
}

std::optional<SdSource> parse_sd_source(std::string_view s) noexcept {
    if (s == "reported") return SdSource::reported;
    if (s == "imputed-point") return SdSource::imputed_point;
    if (s == "imputed-q1") return SdSource::imputed_q1;
    if (s == "imputed-q3") return SdSource::imputed_q3;
    return std::nullopt;
}

SdImputationModel SdImputationModel::from_table(std::vector<std::pair<double, double>> knots,
                                                double q1_multiplier, double q3_multiplier) {
    SdImputationModel m;
    m.kind = Kind::user_table;
    m.table = std::move(knots);
    m.q1_multiplier = q1_multiplier;
    m.q3_multiplier = q3_multiplier;
    m.validate();
    return m;
}

void SdImputationModel::validate() const {
    if (!(q1_multiplier > 0.0) || !(q1_multiplier <= 1.0) || !(q3_multiplier >= 1.0) ||
        !std::isfinite(q3_multiplier)) {
        throw ArgumentError("prediction-interval multipliers must satisfy 0 < q1 <= 1 <= q3");
    }
    if (kind == Kind::parametric_default) {
        if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
            throw ArgumentError("SD imputation coefficient must be positive");
        }
        return;
    }
    if (table.empty()) throw ArgumentError("SD imputation table is empty");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto [mean, sd] = table[i];
        if (!in_unit_interval(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
            throw ArgumentError("SD table knots need mean in [0,1] and sd > 0");
        }
        if (i > 0 && !(mean > table[i - 1].first)) {
            throw ArgumentError("SD table means must be strictly increasing");
        }
    }
}

double impute_sd(double mean_dsc, const SdImputationModel& model, SdVariant variant) {
    if (!in_unit_interval(mean_dsc)) {
        throw DomainError("mean DSC must lie in [0, 1], got " + std::to_string(mean_dsc));
    }
    if (mean_dsc == 0.0 || mean_dsc == 1.0) {
        throw DegenerateError("cannot impute an SD at a mean DSC of exactly 0 or 1");
    }
    model.validate();

    double point;
    if (model.kind == SdImputationModel::Kind::parametric_default) {
        point = model.coefficient * std::sqrt(mean_dsc * (1.0 - mean_dsc));
    } else {
        const auto& t = model.table;
        if (mean_dsc <= t.front().first) {
            point = t.front().second;
        } else if (mean_dsc >= t.back().first) {
            point = t.back().second;
        } else {
            auto hi = std::upper_bound(t.begin(), t.end(), mean_dsc,
                                       [](double v, const auto& knot) { return v < knot.first; });
            auto lo = hi - 1;
            const double w = (mean_dsc - lo->first) / (hi->first - lo->first);
            point = lo->second + w * (hi->second - lo->second);
        }
    }
    switch (variant) {
        case SdVariant::point: return point;
        case SdVariant::q1: return point * model.q1_multiplier;
        case SdVariant::q3: return point * model.q3_multiplier;
    }
    return point;
}

SdPair resolve_sds(const SegmentationComparison& cmp, SdSource source,
                   const SdImputationModel& model) {
    switch (source) {
        case SdSource::reported:
            if (!cmp.sd_a || !cmp.sd_b) {
                throw ArgumentError("reported SDs requested but not available");
            }
            return SdPair{*cmp.sd_a, *cmp.sd_b};
        case SdSource::imputed_point:
            return SdPair{impute_sd(cmp.dsc_a, model, SdVariant::point),
                          impute_sd(cmp.dsc_b, model, SdVariant::point)};
        case SdSource::imputed_q1:
            return SdPair{impute_sd(cmp.dsc_a, model, SdVariant::q1),
                          impute_sd(cmp.dsc_b, model, SdVariant::q1)};
        case SdSource::imputed_q3:
            return SdPair{impute_sd(cmp.dsc_a, model, SdVariant::q3),
                          impute_sd(cmp.dsc_b, model, SdVariant::q3)};
    }
    throw InvariantViolation("unknown SD source");
}

PfcEstimate pfc_segmentation(const SegmentationComparison& cmp, const CongruenceAssumption& r_ab,
                             const SdPair& sds) {
    cmp.validate();
    check_correlation(r_ab);
    check_sds(sds);

    PfcEstimate est;
    est.method = EstimateMethod::closed_form;
    est.congruence_used = r_ab;

    const double variance = difference_variance(sds, r_ab.value);
    const double delta = cmp.dsc_b - cmp.dsc_a;
    if (variance == 0.0) {
        est.degenerate = true;
        est.probability = delta == 0.0 ? 0.5 : 0.0;
        return est;
    }
    const double n = static_cast<double>(cmp.n);
    const double z = std::sqrt(n) * delta / std::sqrt(variance);
    est.probability = student_t_cdf(z, n - 1.0);
    return est;
}

PfcEstimate pfc_segmentation(const SegmentationComparison& cmp, const CongruenceAssumption& r_ab,
                             SdSource sd_source, const SdImputationModel& model) {
    cmp.validate();
    return pfc_segmentation(cmp, r_ab, resolve_sds(cmp, sd_source, model));
}

PfcEstimate pfc_segmentation_mc_check(const SegmentationComparison& cmp,
                                      const CongruenceAssumption& r_ab, const SdPair& sds,
                                      std::uint64_t k, const RngStream& rng) {
    if (k == 0) throw ArgumentError("Monte Carlo draw count k must be >= 1");
    cmp.validate();
    check_correlation(r_ab);
    check_sds(sds);

    PfcEstimate est;
    est.method = EstimateMethod::monte_carlo;
    est.k = k;
    est.congruence_used = r_ab;

    const double s2 = difference_variance(sds, r_ab.value);
    const double mean_diff = cmp.dsc_a - cmp.dsc_b;
    if (s2 == 0.0) {
        est.degenerate = true;
        est.probability = mean_diff == 0.0 ? 0.5 : 0.0;
        return est;
    }

    const double n = static_cast<double>(cmp.n);
    const double dof = n - 1.0;
    Sampler sampler(rng);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        // chi^2_dof = 2 Gamma(dof / 2)
        const double chi2 = 2.0 * sampler.gamma(0.5 * dof);
        const double sigma2 = dof * s2 / chi2;
        const double mu = mean_diff + std::sqrt(sigma2 / n) * sampler.normal();
        if (mu <= 0.0) ++hits;
    }
    est.probability = static_cast<double>(hits) / static_cast<double>(k);
    est.std_err = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(k));
    return est;
}

}  // namespace claimgate
