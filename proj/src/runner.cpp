#include "voroshot/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>

#include "voroshot/error.hpp"
#include "voroshot/predictors.hpp"
#include "voroshot/render.hpp"

#include <nlohmann/json.hpp>

namespace voroshot {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << body;
    if (!out) throw DataError(path + ": write failed");
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
}

struct LoadedBanks {
    FeatureBank novel;
    std::optional<FeatureBank> base;
    std::optional<FeatureBank> validation;
};

std::shared_ptr<LoadedBanks> load_banks(const RunConfig& cfg, bool need_base,
                                        bool need_validation) {
    auto banks = std::make_shared<LoadedBanks>();
    banks->novel = load_bank(cfg.novel_path);
    if (need_base) {
        if (cfg.base_path.empty()) {
            throw ConfigError("config: head '" + cfg.head_kind + "' requires banks.base");
        }
        banks->base = load_bank(cfg.base_path);
    }
    if (need_validation) {
        if (cfg.validation_path.empty()) {
            throw ConfigError("config: this run requires banks.validation");
        }
        banks->validation = load_bank(cfg.validation_path);
    }
    return banks;
}

bool pool_wants_base(const PoolConfig& pool) {
    for (const auto& h : pool.heads) {
        if (h.kind != PoolHeadSpec::Kind::Feature) return true;
    }
    return false;
}

bool pool_wants_validation(const PoolConfig& pool) {
    if (pool.scheme.kind == SchemeSpec::Kind::Guided) return true;
    for (const auto& h : pool.heads) {
        if (h.kind == PoolHeadSpec::Kind::SurrogateGrid) return true;
    }
    return false;
}

// Expands the declared pool against the actual banks: resolves "all" views,
// expands surrogate_grid heads via the validation sweep, applies the
// member-selection scheme.
ConfigPool resolve_pool(const RunConfig& cfg, const LoadedBanks& banks) {
    PoolSpec spec;
    if (cfg.pool.views_all) {
        for (uint32_t v = 0; v < banks.novel.n_views(); ++v) spec.views.push_back(v);
    } else {
        spec.views = cfg.pool.views;
    }
    spec.transforms = cfg.pool.transforms;
    if (spec.transforms.empty()) spec.transforms = {cfg.transform};

    for (const auto& h : cfg.pool.heads) {
        switch (h.kind) {
            case PoolHeadSpec::Kind::Feature:
                spec.heads.push_back(HeadSpec{HeadSpec::Kind::Feature, {}});
                break;
            case PoolHeadSpec::Kind::Surrogate:
                spec.heads.push_back(HeadSpec{HeadSpec::Kind::Surrogate, h.surrogate});
                break;
            case PoolHeadSpec::Kind::SurrogateGrid: {
                // per-R best beta on the validation set, swept under the
                // pool's first transform
                auto table = sweep_surrogate_grid(cfg.grid.r_values, cfg.grid.beta_values,
                                                  cfg.grid.gamma, *banks.validation,
                                                  *banks.base, cfg.episodes,
                                                  spec.transforms.front(), cfg.threads);
                for (const auto& row : table) {
                    SurrogateParams params;
                    params.top_r = row.top_r;
                    params.beta = row.beta;
                    params.gamma = cfg.grid.gamma;
                    spec.heads.push_back(HeadSpec{HeadSpec::Kind::Surrogate, params});
                }
                break;
            }
        }
    }

    ConfigPool pool = build_pool(spec, banks.novel.n_views());
    switch (cfg.pool.scheme.kind) {
        case SchemeSpec::Kind::Full:
            return scheme_full(pool);
        case SchemeSpec::Kind::Random:
            return scheme_random(pool, cfg.pool.scheme.size, cfg.pool.scheme.seed);
        case SchemeSpec::Kind::Guided: {
            const FeatureBank* base = banks.base ? &*banks.base : nullptr;
            GuidedResult guided = scheme_guided(pool, *banks.validation, base,
                                                cfg.episodes, cfg.influence);
            return guided.selected;
        }
    }
    throw ConfigError("config: unreachable scheme kind");
}

struct BuiltPredictor {
    std::shared_ptr<LoadedBanks> banks;  // stable addresses for contexts
    std::unique_ptr<Predictor> predictor;
    std::shared_ptr<const EnsembleContext> ensemble_ctx;  // ensemble heads only
};

BuiltPredictor build_predictor(const RunConfig& cfg) {
    BuiltPredictor built;
    bool is_ensemble = cfg.head_kind == "ensemble";
    bool need_base = cfg.head_kind == "surrogate" ||
                     (is_ensemble && pool_wants_base(cfg.pool));
    bool need_validation = is_ensemble && pool_wants_validation(cfg.pool);
    built.banks = load_banks(cfg, need_base, need_validation);

    if (cfg.head_kind == "vd") {
        built.predictor = std::make_unique<VdPredictor>(cfg.transform, cfg.head_view);
    } else if (cfg.head_kind == "power_lr") {
        built.predictor =
            std::make_unique<LinearPredictor>(false, cfg.train, cfg.transform, cfg.head_view);
    } else if (cfg.head_kind == "voronoi_lr") {
        built.predictor =
            std::make_unique<LinearPredictor>(true, cfg.train, cfg.transform, cfg.head_view);
    } else if (cfg.head_kind == "civd_integrated") {
        built.predictor = std::make_unique<CivdIntegratedPredictor>(
            cfg.train, cfg.influence, cfg.transform, cfg.head_view);
    } else if (cfg.head_kind == "surrogate") {
        built.predictor = std::make_unique<SurrogatePredictor>(
            *built.banks->base, cfg.surrogate, cfg.transform, cfg.head_view);
    } else if (is_ensemble) {
        ConfigPool pool = resolve_pool(cfg, *built.banks);
        const FeatureBank* base = built.banks->base ? &*built.banks->base : nullptr;
        built.ensemble_ctx =
            std::make_shared<EnsembleContext>(std::move(pool), built.banks->novel, base);
        built.predictor =
            std::make_unique<EnsemblePredictor>(built.ensemble_ctx, cfg.influence);
    } else {
        throw ConfigError("config: unknown head.kind '" + cfg.head_kind + "'");
    }
    return built;
}

// Raw-space point classifier for the configured head, fitted on one episode.
// Pixels outside a transform's domain classify to nullopt.
CellClassifier make_point_classifier(const RunConfig& cfg, const BuiltPredictor& built,
                                     const EpisodeIndices& ep) {
    const FeatureBank& bank = built.banks->novel;
    const TransformParams transform = cfg.transform;
    const InfluenceParams influence = cfg.influence;

    auto guard = [](auto fn) {
        return [fn](const Point& p) -> std::optional<size_t> {
            try {
                return fn(p);
            } catch (const DomainError&) {
                return std::nullopt;
            }
        };
    };

    if (cfg.head_kind == "ensemble") {
        auto ctx = built.ensemble_ctx;
        auto model = std::make_shared<EnsembleModel>(ctx->fit_members(ep));
        return guard([ctx, model, influence](const Point& p) {
            return reduce_influence(ctx->point_distances(*model, p), influence);
        });
    }

    Episode episode = make_episode(bank, ep, cfg.head_view, &transform);
    if (cfg.head_kind == "vd") {
        auto centers = std::make_shared<std::vector<Point>>(prototypes(episode));
        return guard([centers, transform](const Point& p) {
            return assign_vd(*centers, apply_transform(transform, p));
        });
    }
    if (cfg.head_kind == "power_lr" || cfg.head_kind == "voronoi_lr") {
        bool voronoi = cfg.head_kind == "voronoi_lr";
        auto model = std::make_shared<LinearModel>(voronoi ? train_voronoi_lr(episode, cfg.train)
                                                           : train_power_lr(episode, cfg.train));
        return guard([model, transform](const Point& p) {
            return classify_linear(*model, apply_transform(transform, p));
        });
    }
    if (cfg.head_kind == "civd_integrated") {
        auto vd = std::make_shared<std::vector<Point>>(prototypes(episode));
        auto lr = std::make_shared<std::vector<Point>>(
            lr_centers(train_voronoi_lr(episode, cfg.train)));
        return guard([vd, lr, influence, transform](const Point& p) {
            return classify_civd_integrated(*vd, *lr, apply_transform(transform, p), influence);
        });
    }
    if (cfg.head_kind == "surrogate") {
        struct SurrogateState {
            std::vector<Point> protos;
            std::vector<Point> surrogate_centers;
            std::vector<std::vector<double>> proto_repr;
            SurrogateParams params;
        };
        auto state = std::make_shared<SurrogateState>();
        state->params = cfg.surrogate;
        state->protos = prototypes(episode);
        if (state->params.gamma > 0.0) {
            BasePrototypes base = base_prototypes(*built.banks->base, transform, cfg.head_view);
            auto ids = select_surrogates(state->protos, base, state->params.top_r);
            for (uint32_t id : ids) state->surrogate_centers.push_back(base.centers[id]);
            for (const Point& proto : state->protos) {
                state->proto_repr.push_back(surrogate_repr(proto, state->surrogate_centers));
            }
        }
        return guard([state, transform](const Point& p) {
            Point z = apply_transform(transform, p);
            std::vector<double> d(state->protos.size()), dpp(state->protos.size(), 0.0);
            for (size_t k = 0; k < state->protos.size(); ++k) {
                d[k] = sq_dist(z, state->protos[k]);
            }
            if (state->params.gamma > 0.0) {
                Point repr = surrogate_repr(z, state->surrogate_centers);
                for (size_t k = 0; k < state->protos.size(); ++k) {
                    dpp[k] = point_dist(repr, state->proto_repr[k],
                                        state->params.surrogate_metric);
                }
            }
            auto criterion = combined_criterion(d, dpp, state->params);
            size_t best = 0;
            for (size_t k = 1; k < criterion.size(); ++k) {
                if (criterion[k] < criterion[best]) best = k;
            }
            return best;
        });
    }
    throw ConfigError("render2d: unsupported head.kind '" + cfg.head_kind + "'");
}

RunConfig load_with_overrides(const std::string& config_path, const RunOverrides& o) {
    RunConfig cfg = load_run_config(config_path);
    if (o.seed) cfg.episodes.seed = *o.seed;
    if (o.episodes) cfg.episodes.episodes = *o.episodes;
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    if (o.train_lr) {
        if (*o.train_lr < 0.0) throw ConfigError("config: negative --train-lr");
        cfg.train.learning_rate = *o.train_lr;
    }
    if (o.train_epochs) {
        if (*o.train_epochs == 0) throw ConfigError("config: --train-epochs must be >= 1");
        cfg.train.epochs = *o.train_epochs;
    }
    return cfg;
}

} // namespace

EvalOutcome run_eval(const std::string& config_path, const RunOverrides& overrides) {
    RunConfig cfg = load_with_overrides(config_path, overrides);
    BuiltPredictor built = build_predictor(cfg);
    EvalReport report = evaluate(*built.predictor, built.banks->novel, cfg.episodes, cfg.threads);

    ensure_dir(cfg.output_dir);
    EvalOutcome outcome;
    outcome.report = report;
    outcome.report_path = cfg.output_dir + "/report.json";
    outcome.csv_path = cfg.output_dir + "/episodes.csv";
    write_text_file(outcome.report_path, report_to_json(report));
    write_text_file(outcome.csv_path, report_to_csv(report));
    return outcome;
}

GenOutcome run_gen(const std::string& spec_path, const RunOverrides& overrides) {
    GenConfig cfg = load_gen_config(spec_path);
    if (overrides.seed) cfg.synthetic.seed = *overrides.seed;
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    SyntheticBanks banks = gen_synthetic(cfg.synthetic);

    ensure_dir(cfg.output_dir);
    GenOutcome out;
    out.base_path = cfg.output_dir + "/base.bank";
    out.novel_path = cfg.output_dir + "/novel.bank";
    out.validation_path = cfg.output_dir + "/validation.bank";
    out.manifest_path = cfg.output_dir + "/manifest.json";
    save_bank(banks.base, out.base_path, cfg.format);
    save_bank(banks.novel, out.novel_path, cfg.format);
    save_bank(banks.validation, out.validation_path, cfg.format);

    nlohmann::ordered_json manifest;
    manifest["dataset"] = cfg.dataset;
    manifest["splits"]["base"] = out.base_path;
    manifest["splits"]["novel"] = out.novel_path;
    manifest["splits"]["validation"] = out.validation_path;
    manifest["provenance"] = "synthetic generator, seed " + std::to_string(cfg.synthetic.seed);
    write_text_file(out.manifest_path, manifest.dump(2) + "\n");
    return out;
}

std::string run_render2d(const std::string& config_path, const std::string& svg_path,
                         const RunOverrides& overrides) {
    RunConfig cfg = load_with_overrides(config_path, overrides);
    BuiltPredictor built = build_predictor(cfg);
    const FeatureBank& bank = built.banks->novel;
    if (bank.n_dims != 2) {
        throw DomainError("render2d: bank dimension is " + std::to_string(bank.n_dims) +
                          ", rendering requires 2");
    }

    EpisodeIndices ep = sample_episode(bank, cfg.episodes, 0);
    Episode raw = make_episode(bank, ep, 0);
    std::vector<Point> raw_centers = prototypes(raw);
    std::vector<uint32_t> support_class(raw.support.size());
    for (size_t i = 0; i < raw.support.size(); ++i) {
        support_class[i] = static_cast<uint32_t>(raw.support_class(i));
    }

    CellClassifier classify = make_point_classifier(cfg, built, ep);
    RenderOptions opts;
    opts.threads = cfg.threads;
    std::string svg = render_partition_svg(classify, raw_centers, raw.support,
                                           support_class, opts);
    write_text_file(svg_path, svg);
    return svg;
}

std::string run_bench(const std::string& config_path, const RunOverrides& overrides) {
    RunConfig cfg = load_with_overrides(config_path, overrides);
    BuiltPredictor built = build_predictor(cfg);
    const FeatureBank& bank = built.banks->novel;

    // single-threaded on purpose: phase sums should match the wall clock
    double fit_s = 0.0, classify_s = 0.0, reduce_s = 0.0;
    auto total0 = Clock::now();
    for (uint32_t e = 0; e < cfg.episodes.episodes; ++e) {
        EpisodeIndices ep = sample_episode(bank, cfg.episodes, e);
        if (built.ensemble_ctx) {
            auto t0 = Clock::now();
            EnsembleModel model = built.ensemble_ctx->fit_members(ep);
            fit_s += seconds_since(t0);
            t0 = Clock::now();
            auto pages = built.ensemble_ctx->distance_pages(model, ep);
            classify_s += seconds_since(t0);
            t0 = Clock::now();
            std::vector<std::vector<double>> rows(pages.size());
            for (size_t q = 0; q < ep.query_idx.size(); ++q) {
                for (size_t i = 0; i < pages.size(); ++i) rows[i] = pages[i][q];
                reduce_influence(rows, cfg.influence);
            }
            reduce_s += seconds_since(t0);
        } else {
            auto t0 = Clock::now();
            built.predictor->predict(bank, ep);
            classify_s += seconds_since(t0);
        }
    }
    double total_s = seconds_since(total0);

    nlohmann::ordered_json j;
    j["head"] = built.predictor->name();
    j["episodes"] = cfg.episodes.episodes;
    j["fit_s"] = fit_s;
    j["classify_s"] = classify_s;
    j["reduce_s"] = reduce_s;
    j["total_s"] = total_s;
    j["per_episode_s"] = total_s / cfg.episodes.episodes;
    std::string body = j.dump(2) + "\n";
    ensure_dir(cfg.output_dir);
    write_text_file(cfg.output_dir + "/bench.json", body);
    return body;
}

} // namespace voroshot
