#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace claimgate {

// Identity of a reproducible random stream. Two samplers built from equal
// streams produce bit-identical sequences on every platform: the engine is
// std::mt19937_64 seeded through std::seed_seq (both fully specified by the
// standard) and every variate transform below is implemented here rather than
// taken from <random>'s implementation-defined distributions.
struct RngStream {
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;

    // Child stream for shard `index`; used to fan out Monte Carlo work.
    RngStream substream(std::uint64_t index) const noexcept;

    friend bool operator==(const RngStream&, const RngStream&) = default;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-sensitive hash of a word sequence. Used to derive stream ids from
// the content of a computation so equal inputs map to equal streams.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept;

inline std::uint64_t word_of(double v) noexcept {
    // +0.0 and -0.0 hash alike.
    return v == 0.0 ? 0 : std::bit_cast<std::uint64_t>(v);
}

class Sampler {
public:
    explicit Sampler(const RngStream& stream);

    // Uniform on the open interval (0, 1).
    double uniform() noexcept;
    double normal() noexcept;
    // Gamma(shape, 1). shape > 0.
    double gamma(double shape);
    // log of a Gamma(shape, 1) variate; stays finite for tiny shapes where
    // the variate itself underflows.
    double log_gamma_variate(double shape);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace claimgate
