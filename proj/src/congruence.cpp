#include "claimgate/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "claimgate/csv.hpp"
#include "claimgate/errors.hpp"

namespace claimgate {

CongruenceAssumption congruence_classification(const PairedClassificationOutcomes& outcomes) {
    const auto& a = outcomes.correct_a;
    const auto& b = outcomes.correct_b;
    if (a.empty() || a.size() != b.size()) {
        throw ArgumentError("paired outcomes must be non-empty and of equal length");
    }
    std::size_t both = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) ++both;
    }
    return CongruenceAssumption{static_cast<double>(both) / static_cast<double>(a.size()),
                                Provenance::empirical, false};
}

CongruenceAssumption congruence_segmentation(const PairedDscVectors& vectors) {
    const auto& a = vectors.dsc_a;
    const auto& b = vectors.dsc_b;
    if (a.size() != b.size()) throw ArgumentError("paired DSC vectors differ in length");
    if (a.size() < 3) throw ArgumentError("correlation needs at least 3 pairs");

    const auto constant = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(a) || constant(b)) {
        throw DegenerateError("correlation undefined: a DSC vector has zero variance");
    }
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        throw DegenerateError("correlation undefined: a DSC vector has zero variance");
    }
    const double r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
    return CongruenceAssumption{r, Provenance::empirical, false};
}

double quantile(std::span<const double> values, double prob) {
    if (values.empty()) throw ArgumentError("quantile of an empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw ArgumentError("quantile probability outside [0,1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Quartiles quartiles(std::span<const double> values) {
    if (values.empty()) throw ArgumentError("quartiles of an empty sample");
    return Quartiles{quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)};
}

Quartiles congruence_quantiles(std::span<const CongruenceAssumption> values) {
    std::vector<double> v;
    v.reserve(values.size());
    for (const auto& c : values) v.push_back(c.value);
    return quartiles(v);
}

namespace {

template <class OnRow>
void read_paired_csv(const std::filesystem::path& path, OnRow&& on_row) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open paired-output file: " + path.string());
    std::string line;
    if (!csv::read_line(in, line)) throw ArgumentError("paired-output file is empty");
    const auto header = csv::split_line(line);
    if (!header || header->size() != 3 || csv::trim((*header)[0]) != "id" ||
        csv::trim((*header)[1]) != "a" || csv::trim((*header)[2]) != "b") {
        throw ArgumentError("paired-output header must be `id,a,b`");
    }
    std::size_t line_no = 1;
    while (csv::read_line(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split_line(line);
        if (!fields || fields->size() != 3) {
            throw ArgumentError("line " + std::to_string(line_no) + ": expected 3 fields");
        }
        on_row(line_no, (*fields)[1], (*fields)[2]);
    }
}

}  // namespace

PairedClassificationOutcomes read_paired_classification_csv(const std::filesystem::path& path) {
    PairedClassificationOutcomes out;
    read_paired_csv(path, [&](std::size_t line_no, const std::string& a, const std::string& b) {
        auto flag = [&](const std::string& f) {
            const auto v = csv::trim(f);
            if (v == "1") return true;
            if (v == "0") return false;
            throw ArgumentError("line " + std::to_string(line_no) + ": expected 0 or 1");
        };
        out.correct_a.push_back(flag(a));
        out.correct_b.push_back(flag(b));
    });
    return out;
}

PairedDscVectors read_paired_dsc_csv(const std::filesystem::path& path) {
    PairedDscVectors out;
    read_paired_csv(path, [&](std::size_t line_no, const std::string& a, const std::string& b) {
        auto value = [&](const std::string& f) {
            const auto v = csv::parse_double(f);
            if (!v || *v < 0.0 || *v > 1.0) {
                throw ArgumentError("line " + std::to_string(line_no) + ": DSC must be in [0,1]");
            }
            return *v;
        };
        out.dsc_a.push_back(value(a));
        out.dsc_b.push_back(value(b));
    });
    return out;
}

}  // namespace claimgate
