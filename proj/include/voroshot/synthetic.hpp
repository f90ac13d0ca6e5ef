#pragma once

#include <cstdint>

#include "voroshot/bank.hpp"

namespace voroshot {

// Desk-scale stand-in for externally extracted embedding banks. Class
// centers are drawn from an isotropic Gaussian; samples add isotropic
// noise; a configurable fraction of samples is displaced by five noise
// scales to act as outliers. When combo_size > 0, novel and validation
// centers are sparse nonnegative combinations of base centers, which makes
// distances to base prototypes informative. Extra views add seeded jitter
// on top of view 0, standing in for upstream augmentation. All entries are
// shifted to be strictly positive so every transform is applicable.
struct SyntheticSpec {
    uint32_t base_classes = 20;
    uint32_t novel_classes = 10;
    uint32_t validation_classes = 10;
    uint32_t dim = 64;
    uint32_t samples_per_class = 50;
    double center_dispersion = 1.0;
    double noise_scale = 0.25;
    double outlier_rate = 0.0;
    uint64_t seed = 42;
    uint32_t views = 1;
    double view_jitter = 0.0;
    uint32_t combo_size = 0;  // 0 = independent novel centers

    void validate() const;
};

struct SyntheticBanks {
    FeatureBank base;
    FeatureBank novel;
    FeatureBank validation;
};

SyntheticBanks gen_synthetic(const SyntheticSpec& spec);

} // namespace voroshot
