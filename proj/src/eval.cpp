#include "voroshot/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "voroshot/error.hpp"
#include "voroshot/predictors.hpp"

#include <nlohmann/json.hpp>

namespace voroshot {

void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)>& body) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, count));
    std::atomic<size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                cursor.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

ConfidenceInterval confidence_interval(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("confidence_interval: empty list");
    ConfidenceInterval ci;
    double sum = 0.0;
    for (double v : values) sum += v;
    ci.mean = sum / static_cast<double>(values.size());
    if (values.size() == 1) {
        ci.degenerate = true;
        return ci;
    }
    double ss = 0.0;
    for (double v : values) {
        double d = v - ci.mean;
        ss += d * d;
    }
    double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    ci.half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    return ci;
}

double geometric_variance(const Episode& episode) {
    if (episode.shots < 2) {
        throw DomainError("geometric_variance: undefined for fewer than 2 shots");
    }
    const uint32_t N = episode.shots;
    double pairs = static_cast<double>(N) * (N - 1) / 2.0;
    double total = 0.0;
    for (uint32_t k = 0; k < episode.way; ++k) {
        double class_sum = 0.0;
        size_t base = static_cast<size_t>(k) * N;
        for (uint32_t i = 0; i < N; ++i) {
            for (uint32_t j = i + 1; j < N; ++j) {
                class_sum += euclidean_dist(episode.support[base + i], episode.support[base + j]);
            }
        }
        total += class_sum / pairs;
    }
    return total / static_cast<double>(episode.way);
}

EvalReport evaluate(const Predictor& predictor, const FeatureBank& bank,
                    const EpisodeSpec& spec, unsigned threads) {
    if (spec.episodes == 0) throw ConfigError("evaluate: episode count must be positive");
    EvalReport report;
    report.description = predictor.name();
    report.seed = spec.seed;
    report.way = spec.way;
    report.shots = spec.shots;
    report.queries = spec.queries;
    report.episode_accuracy.assign(spec.episodes, 0.0);
    report.episode_gv.assign(spec.episodes, std::numeric_limits<double>::quiet_NaN());

    auto t0 = std::chrono::steady_clock::now();
    parallel_for(spec.episodes, threads, [&](size_t e) {
        // failures abort the run naming the failing episode; the error
        // category is preserved for exit-code mapping
        auto tag = [e](const Error& err) {
            return "episode " + std::to_string(e) + ": " + err.what();
        };
        try {
            EpisodeIndices ep = sample_episode(bank, spec, e);
            auto predicted = predictor.predict(bank, ep);
            if (predicted.size() != ep.query_idx.size()) {
                throw DomainError("predictor returned " + std::to_string(predicted.size()) +
                                  " labels for " + std::to_string(ep.query_idx.size()) +
                                  " queries");
            }
            size_t correct = 0;
            for (size_t q = 0; q < predicted.size(); ++q) {
                uint32_t truth = static_cast<uint32_t>(q / ep.queries);
                if (predicted[q] == truth) ++correct;
            }
            report.episode_accuracy[e] =
                static_cast<double>(correct) / static_cast<double>(predicted.size());
            if (spec.shots >= 2) {
                report.episode_gv[e] = geometric_variance(make_episode(bank, ep, 0));
            }
        } catch (const ConfigError& err) {
            throw ConfigError(tag(err));
        } catch (const DataError& err) {
            throw DataError(tag(err));
        } catch (const DomainError& err) {
            throw DomainError(tag(err));
        }
    });
    auto ci = confidence_interval(report.episode_accuracy);
    report.mean_accuracy = ci.mean;
    report.ci_half_width = ci.half_width;
    report.degenerate_ci = ci.degenerate;
    report.wall_eval_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string report_to_json(const EvalReport& report, bool include_wall_clock) {
    nlohmann::ordered_json j;
    j["description"] = report.description;
    j["seed"] = report.seed;
    j["way"] = report.way;
    j["shots"] = report.shots;
    j["queries"] = report.queries;
    j["episodes"] = report.episode_accuracy.size();
    j["mean_accuracy"] = report.mean_accuracy;
    j["ci_half_width"] = report.ci_half_width;
    j["degenerate_ci"] = report.degenerate_ci;
    j["episode_accuracy"] = report.episode_accuracy;
    if (include_wall_clock) j["wall_eval_s"] = report.wall_eval_s;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& report) {
    std::string out = "episode_index,accuracy,gv\n";
    char buf[96];
    for (size_t e = 0; e < report.episode_accuracy.size(); ++e) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", e, report.episode_accuracy[e],
                      report.episode_gv[e]);
        out += buf;
    }
    return out;
}

std::vector<GridChoice> sweep_surrogate_grid(const std::vector<uint32_t>& r_values,
                                             const std::vector<double>& beta_values,
                                             double gamma,
                                             const FeatureBank& validation_bank,
                                             const FeatureBank& base_bank,
                                             const EpisodeSpec& spec,
                                             const TransformParams& transform,
                                             unsigned threads) {
    if (r_values.empty() || beta_values.empty()) {
        throw ConfigError("sweep_surrogate_grid: empty grid");
    }
    std::vector<double> betas = beta_values;
    std::sort(betas.begin(), betas.end());
    std::vector<GridChoice> table;
    table.reserve(r_values.size());
    for (uint32_t r : r_values) {
        GridChoice best;
        bool have = false;
        for (double beta : betas) {
            SurrogateParams params;
            params.top_r = r;
            params.beta = beta;
            params.gamma = gamma;
            SurrogatePredictor predictor(base_bank, params, transform);
            EvalReport rep = evaluate(predictor, validation_bank, spec, threads);
            // strict > keeps the smaller beta on ties (betas scanned ascending)
            if (!have || rep.mean_accuracy > best.accuracy) {
                best = GridChoice{r, beta, rep.mean_accuracy};
                have = true;
            }
        }
        table.push_back(best);
    }
    return table;
}

} // namespace voroshot
