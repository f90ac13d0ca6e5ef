#include "voroshot.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "voroshot/bank.hpp"
#include "voroshot/error.hpp"
#include "voroshot/eval.hpp"
#include "voroshot/runner.hpp"

using namespace voroshot;

struct vs_bank {
    FeatureBank bank;
};

struct vs_report {
    EvalReport report;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <typename F>
vs_status wrap(F&& body) noexcept {
    try {
        body();
        return VS_OK;
    } catch (const ConfigError& e) {
        set_error(e.what());
        return VS_ERR_CONFIG;
    } catch (const DataError& e) {
        set_error(e.what());
        return VS_ERR_DATA;
    } catch (const DomainError& e) {
        set_error(e.what());
        return VS_ERR_DOMAIN;
    } catch (const std::exception& e) {
        set_error(e.what());
        return VS_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return VS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

RunOverrides to_overrides(const vs_overrides* o) {
    RunOverrides out;
    if (o) {
        if (o->has_seed) out.seed = o->seed;
        if (o->has_episodes) out.episodes = o->episodes;
        if (o->output_dir) out.output_dir = std::string(o->output_dir);
        if (o->has_train_lr) out.train_lr = o->train_lr;
        if (o->has_train_epochs) out.train_epochs = o->train_epochs;
    }
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) throw ConfigError(what);
}

} // namespace

extern "C" {

const char* vs_version(void) { return "0.1.0"; }

const char* vs_last_error(void) { return g_last_error.c_str(); }

void vs_string_free(char* s) { std::free(s); }

vs_status vs_bank_load(const char* path, vs_bank** out) {
    return wrap([&] {
        require(path && out, "vs_bank_load: null argument");
        auto handle = new vs_bank{load_bank(path)};
        *out = handle;
    });
}

vs_status vs_bank_save(const vs_bank* bank, const char* path, const char* format) {
    return wrap([&] {
        require(bank && path && format, "vs_bank_save: null argument");
        BankFormat fmt;
        if (std::strcmp(format, "text") == 0) {
            fmt = BankFormat::Text;
        } else if (std::strcmp(format, "binary") == 0) {
            fmt = BankFormat::Binary;
        } else {
            throw ConfigError("vs_bank_save: format must be 'text' or 'binary'");
        }
        save_bank(bank->bank, path, fmt);
    });
}

void vs_bank_free(vs_bank* bank) { delete bank; }

uint32_t vs_bank_samples(const vs_bank* bank) { return bank ? bank->bank.n_samples : 0; }
uint32_t vs_bank_dims(const vs_bank* bank) { return bank ? bank->bank.n_dims : 0; }
uint32_t vs_bank_views(const vs_bank* bank) { return bank ? bank->bank.n_views() : 0; }
uint32_t vs_bank_classes(const vs_bank* bank) { return bank ? bank->bank.n_classes : 0; }
const char* vs_bank_split(const vs_bank* bank) {
    return bank ? split_name(bank->bank.split) : "";
}

double vs_report_mean_accuracy(const vs_report* report) {
    return report ? report->report.mean_accuracy : 0.0;
}
double vs_report_ci_half_width(const vs_report* report) {
    return report ? report->report.ci_half_width : 0.0;
}
uint32_t vs_report_episodes(const vs_report* report) {
    return report ? static_cast<uint32_t>(report->report.episode_accuracy.size()) : 0;
}
double vs_report_episode_accuracy(const vs_report* report, uint32_t index) {
    if (!report || index >= report->report.episode_accuracy.size()) return -1.0;
    return report->report.episode_accuracy[index];
}
vs_status vs_report_to_json(const vs_report* report, int include_wall_clock, char** out) {
    return wrap([&] {
        require(report && out, "vs_report_to_json: null argument");
        *out = dup_string(report_to_json(report->report, include_wall_clock != 0));
        require(*out != nullptr, "vs_report_to_json: allocation failed");
    });
}
void vs_report_free(vs_report* report) { delete report; }

vs_status vs_run_eval(const char* config_path, const vs_overrides* overrides,
                      vs_report** out) {
    return wrap([&] {
        require(config_path, "vs_run_eval: null config path");
        EvalOutcome outcome = run_eval(config_path, to_overrides(overrides));
        if (out) *out = new vs_report{std::move(outcome.report)};
    });
}

vs_status vs_run_gen(const char* spec_path, const vs_overrides* overrides) {
    return wrap([&] {
        require(spec_path, "vs_run_gen: null spec path");
        run_gen(spec_path, to_overrides(overrides));
    });
}

vs_status vs_run_render2d(const char* config_path, const char* svg_path,
                          const vs_overrides* overrides) {
    return wrap([&] {
        require(config_path && svg_path, "vs_run_render2d: null argument");
        run_render2d(config_path, svg_path, to_overrides(overrides));
    });
}

vs_status vs_run_bench(const char* config_path, const vs_overrides* overrides,
                       char** timing_json) {
    return wrap([&] {
        require(config_path, "vs_run_bench: null config path");
        std::string body = run_bench(config_path, to_overrides(overrides));
        if (timing_json) {
            *timing_json = dup_string(body);
            require(*timing_json != nullptr, "vs_run_bench: allocation failed");
        }
    });
}

vs_status vs_assign_vd(const double* centers, uint32_t k, uint32_t dim,
                       const double* z, uint32_t* out) {
    return wrap([&] {
        require(centers && z && out && k > 0 && dim > 0, "vs_assign_vd: bad arguments");
        std::vector<Point> cs(k);
        for (uint32_t i = 0; i < k; ++i) {
            cs[i].assign(centers + static_cast<size_t>(i) * dim,
                         centers + static_cast<size_t>(i + 1) * dim);
        }
        Point q(z, z + dim);
        *out = static_cast<uint32_t>(assign_vd(cs, q));
    });
}

vs_status vs_assign_pd(const double* centers, const double* weights, uint32_t k,
                       uint32_t dim, const double* z, uint32_t* out) {
    return wrap([&] {
        require(centers && weights && z && out && k > 0 && dim > 0,
                "vs_assign_pd: bad arguments");
        std::vector<Point> cs(k);
        for (uint32_t i = 0; i < k; ++i) {
            cs[i].assign(centers + static_cast<size_t>(i) * dim,
                         centers + static_cast<size_t>(i + 1) * dim);
        }
        std::vector<double> ws(weights, weights + k);
        Point q(z, z + dim);
        *out = static_cast<uint32_t>(assign_pd(cs, ws, q));
    });
}

vs_status vs_influence(const double* cluster, uint32_t members, uint32_t dim,
                       const double* z, double alpha, double* out) {
    return wrap([&] {
        require(cluster && z && out && members > 0 && dim > 0,
                "vs_influence: bad arguments");
        Cluster c(members);
        for (uint32_t i = 0; i < members; ++i) {
            c[i].assign(cluster + static_cast<size_t>(i) * dim,
                        cluster + static_cast<size_t>(i + 1) * dim);
        }
        Point q(z, z + dim);
        InfluenceParams p;
        p.alpha = alpha;
        *out = influence(c, q, p);
    });
}

} // extern "C"
