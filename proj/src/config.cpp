#include "voroshot/config.hpp"

#include <filesystem>
#include <fstream>

#include "voroshot/error.hpp"

#include <nlohmann/json.hpp>

namespace voroshot {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return j;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

TransformParams parse_transform(const json& j) {
    TransformParams t;
    t.w = get_or(j, "w", 1.0);
    t.b = get_or(j, "b", 0.0);
    t.lambda = get_or(j, "lambda", 1.0);
    if (t.w == 0.0) throw ConfigError("config: transform scale w must be nonzero");
    return t;
}

SurrogateParams parse_surrogate(const json& j) {
    SurrogateParams s;
    s.top_r = get_or(j, "top_r", 1u);
    s.beta = get_or(j, "beta", 1.0);
    s.gamma = get_or(j, "gamma", 1.0);
    std::string metric = get_or<std::string>(j, "metric", "squared");
    if (metric == "squared") {
        s.surrogate_metric = Metric::SquaredEuclidean;
    } else if (metric == "euclidean") {
        s.surrogate_metric = Metric::Euclidean;
    } else {
        throw ConfigError("config: surrogate metric must be 'squared' or 'euclidean'");
    }
    s.validate();
    return s;
}

InfluenceParams parse_influence(const json& j) {
    InfluenceParams p;
    p.alpha = get_or(j, "alpha", 1.0);
    if (p.alpha == 0.0) throw ConfigError("config: influence alpha must be nonzero");
    std::string metric = get_or<std::string>(j, "metric", "squared");
    if (metric == "squared") {
        p.metric = Metric::SquaredEuclidean;
    } else if (metric == "euclidean") {
        p.metric = Metric::Euclidean;
    } else {
        throw ConfigError("config: influence metric must be 'squared' or 'euclidean'");
    }
    return p;
}

} // namespace

std::vector<TransformParams> default_transform_grid() {
    std::vector<TransformParams> grid;
    for (double lambda : {1.0, 0.5}) {
        for (double b : {0.0, 0.02, 0.04, 0.08}) {
            grid.push_back(TransformParams{1.0, b, lambda});
        }
    }
    return grid;
}

RunConfig load_run_config(const std::string& path) {
    json j = parse_file(path);
    RunConfig cfg;

    if (!j.contains("banks")) throw ConfigError("config: missing key 'banks'");
    const json& banks = j.at("banks");
    if (!banks.contains("novel")) throw ConfigError("config: missing key 'banks.novel'");
    cfg.novel_path = banks.at("novel").get<std::string>();
    cfg.base_path = get_or<std::string>(banks, "base", "");
    cfg.validation_path = get_or<std::string>(banks, "validation", "");
    const std::pair<const char*, const std::string*> bank_keys[] = {
        {"banks.novel", &cfg.novel_path},
        {"banks.base", &cfg.base_path},
        {"banks.validation", &cfg.validation_path},
    };
    for (const auto& [key, path] : bank_keys) {
        if (!path->empty() && !std::filesystem::exists(*path)) {
            throw ConfigError(std::string("config: ") + key + " references missing file '" +
                              *path + "'");
        }
    }

    if (j.contains("episodes")) {
        const json& e = j.at("episodes");
        cfg.episodes.way = get_or(e, "way", 5u);
        cfg.episodes.shots = get_or(e, "shots", 1u);
        cfg.episodes.queries = get_or(e, "queries", 15u);
        cfg.episodes.episodes = get_or(e, "count", 2000u);
        cfg.episodes.seed = get_or<uint64_t>(e, "seed", 0);
    }
    if (cfg.episodes.way == 0 || cfg.episodes.shots == 0 || cfg.episodes.queries == 0 ||
        cfg.episodes.episodes == 0) {
        throw ConfigError("config: episodes.way/shots/queries/count must be positive");
    }
    if (j.contains("influence")) cfg.influence = parse_influence(j.at("influence"));
    cfg.threads = get_or(j, "threads", 0u);
    cfg.output_dir = get_or<std::string>(j, "output_dir", "out");

    const json head = j.contains("head") ? j.at("head") : json::object();
    cfg.head_kind = get_or<std::string>(head, "kind", "vd");
    cfg.head_view = get_or(head, "view", 0u);
    if (head.contains("transform")) cfg.transform = parse_transform(head.at("transform"));
    if (head.contains("train")) {
        const json& t = head.at("train");
        cfg.train.learning_rate = get_or(t, "learning_rate", 0.01);
        cfg.train.batch_size = get_or(t, "batch_size", 64u);
        cfg.train.epochs = get_or(t, "epochs", 100u);
        cfg.train.seed = get_or<uint64_t>(t, "seed", 0);
        cfg.train.init_scale = get_or(t, "init_scale", 0.01);
        if (cfg.train.learning_rate < 0.0 || cfg.train.epochs == 0 || cfg.train.batch_size == 0) {
            throw ConfigError("config: head.train values out of range");
        }
    }
    if (head.contains("surrogate")) cfg.surrogate = parse_surrogate(head.at("surrogate"));

    static const char* kKnownHeads[] = {"vd",        "power_lr",  "voronoi_lr",
                                        "civd_integrated", "surrogate", "ensemble"};
    bool known = false;
    for (const char* k : kKnownHeads) known = known || cfg.head_kind == k;
    if (!known) throw ConfigError("config: unknown head.kind '" + cfg.head_kind + "'");

    if (j.contains("pool")) {
        const json& p = j.at("pool");
        if (p.contains("views")) {
            if (p.at("views").is_string() && p.at("views").get<std::string>() == "all") {
                cfg.pool.views_all = true;
            } else {
                cfg.pool.views_all = false;
                cfg.pool.views = p.at("views").get<std::vector<uint32_t>>();
                if (cfg.pool.views.empty()) throw ConfigError("config: pool.views is empty");
            }
        }
        if (p.contains("transforms")) {
            if (p.at("transforms").is_string()) {
                if (p.at("transforms").get<std::string>() != "default_grid") {
                    throw ConfigError("config: pool.transforms string must be 'default_grid'");
                }
                cfg.pool.transforms = default_transform_grid();
            } else {
                for (const json& t : p.at("transforms")) {
                    cfg.pool.transforms.push_back(parse_transform(t));
                }
                if (cfg.pool.transforms.empty())
                    throw ConfigError("config: pool.transforms is empty");
            }
        } else {
            cfg.pool.transforms = {cfg.transform};
        }
        if (p.contains("heads")) {
            for (const json& h : p.at("heads")) {
                PoolHeadSpec spec;
                std::string kind = get_or<std::string>(h, "kind", "feature");
                if (kind == "feature") {
                    spec.kind = PoolHeadSpec::Kind::Feature;
                } else if (kind == "surrogate") {
                    spec.kind = PoolHeadSpec::Kind::Surrogate;
                    spec.surrogate = parse_surrogate(h);
                } else if (kind == "surrogate_grid") {
                    spec.kind = PoolHeadSpec::Kind::SurrogateGrid;
                } else {
                    throw ConfigError("config: unknown pool head kind '" + kind + "'");
                }
                cfg.pool.heads.push_back(spec);
            }
        }
        if (cfg.pool.heads.empty()) cfg.pool.heads.push_back(PoolHeadSpec{});
        if (p.contains("scheme")) {
            const json& s = p.at("scheme");
            std::string kind = get_or<std::string>(s, "kind", "full");
            if (kind == "full") {
                cfg.pool.scheme.kind = SchemeSpec::Kind::Full;
            } else if (kind == "random") {
                cfg.pool.scheme.kind = SchemeSpec::Kind::Random;
                cfg.pool.scheme.size = get_or(s, "size", 0u);
                cfg.pool.scheme.seed = get_or<uint64_t>(s, "seed", 0);
                if (cfg.pool.scheme.size == 0) {
                    throw ConfigError("config: pool.scheme.size must be positive for random scheme");
                }
            } else if (kind == "guided") {
                cfg.pool.scheme.kind = SchemeSpec::Kind::Guided;
            } else {
                throw ConfigError("config: unknown scheme kind '" + kind + "'");
            }
        }
    } else if (cfg.head_kind == "ensemble") {
        cfg.pool.transforms = {cfg.transform};
        cfg.pool.heads.push_back(PoolHeadSpec{});
    }

    if (j.contains("surrogate_grid")) {
        const json& g = j.at("surrogate_grid");
        cfg.grid.r_values = get_or(g, "r", std::vector<uint32_t>{});
        cfg.grid.beta_values = get_or(g, "beta", std::vector<double>{});
        cfg.grid.gamma = get_or(g, "gamma", 1.0);
    }
    if (cfg.grid.r_values.empty()) {
        for (uint32_t r = 1; r <= 10; ++r) cfg.grid.r_values.push_back(r);
    }
    if (cfg.grid.beta_values.empty()) cfg.grid.beta_values = {0.2, 0.5, 1.0, 2.0, 5.0};

    return cfg;
}

GenConfig load_gen_config(const std::string& path) {
    json j = parse_file(path);
    GenConfig cfg;
    cfg.dataset = get_or<std::string>(j, "dataset", "synthetic");
    cfg.output_dir = get_or<std::string>(j, "output_dir", "out");
    std::string format = get_or<std::string>(j, "format", "binary");
    if (format == "binary") {
        cfg.format = BankFormat::Binary;
    } else if (format == "text") {
        cfg.format = BankFormat::Text;
    } else {
        throw ConfigError("config: format must be 'binary' or 'text'");
    }
    if (j.contains("synthetic")) {
        const json& s = j.at("synthetic");
        SyntheticSpec& spec = cfg.synthetic;
        spec.base_classes = get_or(s, "base_classes", spec.base_classes);
        spec.novel_classes = get_or(s, "novel_classes", spec.novel_classes);
        spec.validation_classes = get_or(s, "validation_classes", spec.validation_classes);
        spec.dim = get_or(s, "dim", spec.dim);
        spec.samples_per_class = get_or(s, "samples_per_class", spec.samples_per_class);
        spec.center_dispersion = get_or(s, "center_dispersion", spec.center_dispersion);
        spec.noise_scale = get_or(s, "noise_scale", spec.noise_scale);
        spec.outlier_rate = get_or(s, "outlier_rate", spec.outlier_rate);
        spec.seed = get_or<uint64_t>(s, "seed", spec.seed);
        spec.views = get_or(s, "views", spec.views);
        spec.view_jitter = get_or(s, "view_jitter", spec.view_jitter);
        spec.combo_size = get_or(s, "combo_size", spec.combo_size);
    }
    cfg.synthetic.validate();
    return cfg;
}

} // namespace voroshot
