#include "claimgate/rng.hpp"

#include <cmath>
#include <string>

#include "claimgate/errors.hpp"

namespace claimgate {

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t w : words) {
        h = mix64(h ^ mix64(w));
    }
    return h;
}

RngStream RngStream::substream(std::uint64_t index) const noexcept {
    return RngStream{seed, hash_words({stream, index, 0x5348415244ULL})};
}

namespace {

std::seed_seq make_seed_seq(const RngStream& s) {
    return std::seed_seq{
        static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
        static_cast<std::uint32_t>(s.stream), static_cast<std::uint32_t>(s.stream >> 32)};
}

}  // namespace

Sampler::Sampler(const RngStream& stream) {
    auto seq = make_seed_seq(stream);
    engine_.seed(seq);
}

double Sampler::uniform() noexcept {
    // 53 random bits, shifted by half an ulp so 0 is never returned.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Sampler::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_ = true;
    return u * f;
}

double Sampler::gamma(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw DomainError("gamma shape must be positive and finite, got " + std::to_string(shape));
    }
    if (shape < 1.0) {
        // Boost to shape + 1, then scale by U^(1/shape).
        return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia & Tsang (2000).
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Sampler::log_gamma_variate(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw DomainError("gamma shape must be positive and finite, got " + std::to_string(shape));
    }
    if (shape < 1.0) {
        return std::log(gamma(shape + 1.0)) + std::log(uniform()) / shape;
    }
    return std::log(gamma(shape));
}

}  // namespace claimgate
