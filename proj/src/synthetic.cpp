#include "voroshot/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voroshot/error.hpp"
#include "voroshot/rng.hpp"

namespace voroshot {

namespace {

std::vector<double> gaussian_vec(SplitMix64& rng, uint32_t dim, double scale) {
    std::vector<double> v(dim);
    for (uint32_t i = 0; i < dim; ++i) v[i] = scale * rng.next_gaussian();
    return v;
}

std::vector<double> unit_gaussian_dir(SplitMix64& rng, uint32_t dim) {
    std::vector<double> v = gaussian_vec(rng, dim, 1.0);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = 1.0;
    for (double& x : v) x /= norm;
    return v;
}

std::vector<std::vector<double>> combo_centers(SplitMix64& rng, uint32_t count,
                                               const std::vector<std::vector<double>>& base,
                                               uint32_t combo_size, uint32_t dim) {
    std::vector<std::vector<double>> centers(count, std::vector<double>(dim, 0.0));
    for (uint32_t c = 0; c < count; ++c) {
        auto picks = rng.sample_without_replacement(static_cast<uint32_t>(base.size()), combo_size);
        std::vector<double> weights(combo_size);
        double total = 0.0;
        for (auto& w : weights) {
            w = rng.next_double() + 1e-3;
            total += w;
        }
        for (uint32_t j = 0; j < combo_size; ++j) {
            double w = weights[j] / total;
            for (uint32_t d = 0; d < dim; ++d) centers[c][d] += w * base[picks[j]][d];
        }
    }
    return centers;
}

FeatureBank fill_bank(SplitMix64& rng, const SyntheticSpec& spec, Split split,
                      const std::vector<std::vector<double>>& centers) {
    FeatureBank bank;
    bank.n_dims = spec.dim;
    bank.n_classes = static_cast<uint32_t>(centers.size());
    bank.n_samples = bank.n_classes * spec.samples_per_class;
    bank.split = split;
    bank.labels.reserve(bank.n_samples);

    std::vector<float> view0;
    view0.reserve(static_cast<size_t>(bank.n_samples) * spec.dim);
    for (uint32_t c = 0; c < bank.n_classes; ++c) {
        for (uint32_t s = 0; s < spec.samples_per_class; ++s) {
            bank.labels.push_back(c);
            auto noise = gaussian_vec(rng, spec.dim, spec.noise_scale);
            bool outlier = spec.outlier_rate > 0.0 && rng.next_double() < spec.outlier_rate;
            std::vector<double> offset;
            if (outlier) {
                offset = unit_gaussian_dir(rng, spec.dim);
                for (double& x : offset) x *= 5.0 * spec.noise_scale;
            }
            for (uint32_t d = 0; d < spec.dim; ++d) {
                double v = centers[c][d] + noise[d] + (outlier ? offset[d] : 0.0);
                view0.push_back(static_cast<float>(v));
            }
        }
    }
    bank.view_provenance.push_back("identity");
    bank.features.push_back(std::move(view0));
    for (uint32_t v = 1; v < spec.views; ++v) {
        std::vector<float> view(bank.features[0]);
        for (auto& x : view) {
            x = static_cast<float>(x + spec.view_jitter * rng.next_gaussian());
        }
        bank.view_provenance.push_back("jitter" + std::to_string(v));
        bank.features.push_back(std::move(view));
    }
    return bank;
}

float bank_min(const FeatureBank& bank) {
    float m = bank.features[0][0];
    for (const auto& view : bank.features)
        for (float v : view) m = std::min(m, v);
    return m;
}

void shift_bank(FeatureBank& bank, float shift) {
    for (auto& view : bank.features)
        for (float& v : view) v += shift;
}

} // namespace

void SyntheticSpec::validate() const {
    if (base_classes == 0 || novel_classes == 0 || validation_classes == 0)
        throw ConfigError("synthetic spec: class counts must be positive");
    if (dim == 0) throw ConfigError("synthetic spec: dim must be positive");
    if (samples_per_class == 0)
        throw ConfigError("synthetic spec: samples_per_class must be positive");
    if (views == 0) throw ConfigError("synthetic spec: views must be positive");
    if (!(noise_scale > 0.0)) throw ConfigError("synthetic spec: noise_scale must be > 0");
    if (outlier_rate < 0.0 || outlier_rate > 1.0)
        throw ConfigError("synthetic spec: outlier_rate must be in [0,1]");
    if (combo_size > base_classes)
        throw ConfigError("synthetic spec: combo_size exceeds base class count");
}

SyntheticBanks gen_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    SplitMix64 rng(spec.seed);

    std::vector<std::vector<double>> base_centers(spec.base_classes);
    for (auto& c : base_centers) c = gaussian_vec(rng, spec.dim, spec.center_dispersion);

    std::vector<std::vector<double>> novel_centers, val_centers;
    if (spec.combo_size > 0) {
        novel_centers = combo_centers(rng, spec.novel_classes, base_centers, spec.combo_size, spec.dim);
        val_centers = combo_centers(rng, spec.validation_classes, base_centers, spec.combo_size, spec.dim);
    } else {
        novel_centers.resize(spec.novel_classes);
        for (auto& c : novel_centers) c = gaussian_vec(rng, spec.dim, spec.center_dispersion);
        val_centers.resize(spec.validation_classes);
        for (auto& c : val_centers) c = gaussian_vec(rng, spec.dim, spec.center_dispersion);
    }

    SyntheticBanks banks;
    banks.base = fill_bank(rng, spec, Split::Base, base_centers);
    banks.novel = fill_bank(rng, spec, Split::Novel, novel_centers);
    banks.validation = fill_bank(rng, spec, Split::Validation, val_centers);

    // One common shift keeps the three banks mutually consistent.
    float global_min = std::min({bank_min(banks.base), bank_min(banks.novel),
                                 bank_min(banks.validation)});
    if (global_min <= 0.0f) {
        float shift = 0.1f - global_min;
        shift_bank(banks.base, shift);
        shift_bank(banks.novel, shift);
        shift_bank(banks.validation, shift);
    }
    banks.base.validate();
    banks.novel.validate();
    banks.validation.validate();
    return banks;
}

} // namespace voroshot
