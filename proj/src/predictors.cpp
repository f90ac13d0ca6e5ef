#include "voroshot/predictors.hpp"

#include "voroshot/error.hpp"

namespace voroshot {

std::vector<uint32_t> VdPredictor::predict(const FeatureBank& bank,
                                           const EpisodeIndices& ep) const {
    Episode episode = make_episode(bank, ep, view_, &transform_);
    auto centers = prototypes(episode);
    std::vector<uint32_t> out;
    out.reserve(episode.query.size());
    for (const Point& z : episode.query) {
        out.push_back(static_cast<uint32_t>(assign_vd(centers, z)));
    }
    return out;
}

std::vector<uint32_t> LinearPredictor::predict(const FeatureBank& bank,
                                               const EpisodeIndices& ep) const {
    Episode episode = make_episode(bank, ep, view_, &transform_);
    LinearModel model = voronoi_ ? train_voronoi_lr(episode, opts_)
                                 : train_power_lr(episode, opts_);
    std::vector<uint32_t> out;
    out.reserve(episode.query.size());
    for (const Point& z : episode.query) {
        out.push_back(static_cast<uint32_t>(classify_linear(model, z)));
    }
    return out;
}

std::vector<uint32_t> CivdIntegratedPredictor::predict(const FeatureBank& bank,
                                                       const EpisodeIndices& ep) const {
    Episode episode = make_episode(bank, ep, view_, &transform_);
    auto vd = prototypes(episode);
    LinearModel model = train_voronoi_lr(episode, opts_);
    auto lr = lr_centers(model);
    std::vector<uint32_t> out;
    out.reserve(episode.query.size());
    for (const Point& z : episode.query) {
        out.push_back(static_cast<uint32_t>(classify_civd_integrated(vd, lr, z, influence_)));
    }
    return out;
}

std::string SurrogatePredictor::name() const {
    return "surrogate(R=" + std::to_string(params_.top_r) +
           ",beta=" + std::to_string(params_.beta) +
           ",gamma=" + std::to_string(params_.gamma) + ")";
}

std::vector<uint32_t> SurrogatePredictor::predict(const FeatureBank& bank,
                                                  const EpisodeIndices& ep) const {
    // classify_surrogate transforms the episode itself
    Episode raw = make_episode(bank, ep, view_, nullptr);
    return classify_surrogate(raw, base_, params_, transform_);
}

std::string EnsemblePredictor::name() const {
    return "ccvd_ensemble(L=" + std::to_string(ctx_->pool().size()) + ")";
}

std::vector<uint32_t> EnsemblePredictor::predict(const FeatureBank& bank,
                                                 const EpisodeIndices& ep) const {
    if (&bank != &ctx_->bank()) {
        throw DomainError("ensemble predictor: episode bank does not match the prepared context");
    }
    EnsembleModel model = ctx_->fit_members(ep);
    return ctx_->predict(model, ep, influence_);
}

} // namespace voroshot
