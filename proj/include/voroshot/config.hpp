#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voroshot/classifiers.hpp"
#include "voroshot/ensemble.hpp"
#include "voroshot/episode.hpp"
#include "voroshot/synthetic.hpp"

namespace voroshot {

struct SchemeSpec {
    enum class Kind { Full, Random, Guided };
    Kind kind = Kind::Full;
    uint32_t size = 0;    // random: subset size
    uint64_t seed = 0;    // random: draw seed
};

// Head grids declared in a run configuration. `surrogate_grid` head entries
// expand into one surrogate head per R with the beta chosen on the
// validation set.
struct PoolHeadSpec {
    enum class Kind { Feature, Surrogate, SurrogateGrid };
    Kind kind = Kind::Feature;
    SurrogateParams surrogate;
};

struct PoolConfig {
    bool views_all = true;              // use every bank view
    std::vector<uint32_t> views;        // explicit view ids when !views_all
    std::vector<TransformParams> transforms;
    std::vector<PoolHeadSpec> heads;
    SchemeSpec scheme;
};

struct SurrogateGridConfig {
    std::vector<uint32_t> r_values;    // default 1..10
    std::vector<double> beta_values;   // default {0.2,0.5,1,2,5}
    double gamma = 1.0;
};

// Parsed run configuration; one JSON document drives every CLI command.
struct RunConfig {
    std::string base_path;
    std::string novel_path;
    std::string validation_path;
    EpisodeSpec episodes;
    InfluenceParams influence;
    unsigned threads = 0;
    std::string output_dir = "out";

    std::string head_kind = "vd";  // vd|power_lr|voronoi_lr|civd_integrated|surrogate|ensemble
    uint32_t head_view = 0;
    TransformParams transform;
    TrainOptions train;
    SurrogateParams surrogate;
    PoolConfig pool;
    SurrogateGridConfig grid;
};

RunConfig load_run_config(const std::string& path);

// Generation spec for the `gen` command.
struct GenConfig {
    std::string dataset = "synthetic";
    SyntheticSpec synthetic;
    BankFormat format = BankFormat::Binary;
    std::string output_dir = "out";
};

GenConfig load_gen_config(const std::string& path);

// The default transform grid used by ensembles when a config says
// "default_grid": lambda in {1.0, 0.5} crossed with b in {0, 0.02, 0.04,
// 0.08}, w = 1.
std::vector<TransformParams> default_transform_grid();

} // namespace voroshot
