#pragma once

#include <memory>
#include <string>

#include "voroshot/classifiers.hpp"
#include "voroshot/ensemble.hpp"
#include "voroshot/eval.hpp"
#include "voroshot/surrogate.hpp"

namespace voroshot {

// Nearest-prototype head over one view and transform.
class VdPredictor : public Predictor {
public:
    explicit VdPredictor(TransformParams transform = {}, uint32_t view = 0)
        : transform_(transform), view_(view) {}
    std::string name() const override { return "vd"; }
    std::vector<uint32_t> predict(const FeatureBank& bank,
                                  const EpisodeIndices& ep) const override;

private:
    TransformParams transform_;
    uint32_t view_;
};

// Linear head trained per episode; `voronoi` selects the bias-constrained
// variant.
class LinearPredictor : public Predictor {
public:
    LinearPredictor(bool voronoi, TrainOptions opts, TransformParams transform = {},
                    uint32_t view = 0)
        : voronoi_(voronoi), opts_(opts), transform_(transform), view_(view) {}
    std::string name() const override { return voronoi_ ? "voronoi_lr" : "power_lr"; }
    std::vector<uint32_t> predict(const FeatureBank& bank,
                                  const EpisodeIndices& ep) const override;

private:
    bool voronoi_;
    TrainOptions opts_;
    TransformParams transform_;
    uint32_t view_;
};

// Two-member clusters {prototype, linear-head center} assigned by joint
// influence.
class CivdIntegratedPredictor : public Predictor {
public:
    CivdIntegratedPredictor(TrainOptions opts, InfluenceParams influence,
                            TransformParams transform = {}, uint32_t view = 0)
        : opts_(opts), influence_(influence), transform_(transform), view_(view) {}
    std::string name() const override { return "civd_integrated"; }
    std::vector<uint32_t> predict(const FeatureBank& bank,
                                  const EpisodeIndices& ep) const override;

private:
    TrainOptions opts_;
    InfluenceParams influence_;
    TransformParams transform_;
    uint32_t view_;
};

// Surrogate-representation head. Base prototypes are computed once at
// construction and shared across episodes.
class SurrogatePredictor : public Predictor {
public:
    SurrogatePredictor(const FeatureBank& base_bank, SurrogateParams params,
                       TransformParams transform = {}, uint32_t view = 0)
        : params_(params),
          transform_(transform),
          base_(base_prototypes(base_bank, transform, view)),
          view_(view) {}
    std::string name() const override;
    std::vector<uint32_t> predict(const FeatureBank& bank,
                                  const EpisodeIndices& ep) const override;

private:
    SurrogateParams params_;
    TransformParams transform_;
    BasePrototypes base_;
    uint32_t view_;
};

// CCVD ensemble over a prepared configuration pool.
class EnsemblePredictor : public Predictor {
public:
    EnsemblePredictor(std::shared_ptr<const EnsembleContext> ctx, InfluenceParams influence)
        : ctx_(std::move(ctx)), influence_(influence) {}
    std::string name() const override;
    std::vector<uint32_t> predict(const FeatureBank& bank,
                                  const EpisodeIndices& ep) const override;

private:
    std::shared_ptr<const EnsembleContext> ctx_;
    InfluenceParams influence_;
};

} // namespace voroshot
