#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "voroshot/geometry.hpp"

namespace voroshot {

enum class Split : uint8_t { Base = 0, Novel = 1, Validation = 2 };

const char* split_name(Split s);
Split split_from_name(const std::string& name);

enum class BankFormat { Text, Binary };

// Immutable labeled feature matrix with one or more augmentation views.
// Every view holds the same samples in the same order; only the feature
// values differ. This is the artifact's sole input from the model world.
struct FeatureBank {
    uint32_t n_samples = 0;
    uint32_t n_dims = 0;
    uint32_t n_classes = 0;
    Split split = Split::Base;
    std::vector<std::string> view_provenance;  // one entry per view
    std::vector<uint32_t> labels;              // n_samples, values in [0, n_classes)
    std::vector<std::vector<float>> features;  // per view, n_samples * n_dims row-major

    uint32_t n_views() const { return static_cast<uint32_t>(features.size()); }

    std::span<const float> row(uint32_t view, uint32_t sample) const {
        return {features[view].data() + static_cast<size_t>(sample) * n_dims, n_dims};
    }

    Point point(uint32_t view, uint32_t sample) const {
        auto r = row(view, sample);
        return Point(r.begin(), r.end());
    }

    // Sample indices grouped by class id, each group in ascending order.
    std::vector<std::vector<uint32_t>> samples_by_class() const;

    // Throws DataError naming the first violated invariant.
    void validate() const;
};

// Readers/writers for the two canonical on-disk encodings. load_bank sniffs
// the format from the leading magic. All loads re-validate invariants; a
// bank that fails validation is never returned.
FeatureBank load_bank(const std::string& path);
void save_bank(const FeatureBank& bank, const std::string& path, BankFormat format);

} // namespace voroshot
