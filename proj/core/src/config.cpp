// Copyright 2026 The photonic-qrc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json_io.hpp"

#ifndef QRC_VERSION
#define QRC_VERSION "0.0.0"
#endif

namespace qrc {

using nlohmann::json;
using detail::ordered_json;

std::string version_string() { return std::string("photonic-qrc ") + QRC_VERSION; }

std::vector<int> default_input_modes(int n_ph) {
    switch (n_ph) {
    case 1: return {0};
    case 2: return {0, 3};
    case 3: return {0, 1, 3};
    case 4: return {0, 1, 2, 3};
    default: throw UnsupportedConfiguration(fmt::format("n_ph = {} unsupported (1..{})", n_ph, kMaxPhotons));
    }
}

namespace {

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

class Section {
  public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw FieldError(path_, "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, _] : node_.items())
            if (!ok.contains(k)) throw FieldError(join(path_, k), "unknown field");
    }

    bool has(const char* key) const { return node_.contains(key) && !node_.at(key).is_null(); }
    const json& at(const char* key) const { return node_.at(key); }
    std::string path(const char* key) const { return join(path_, key); }

    double number(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number()) throw FieldError(path(key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw FieldError(path(key), "must be finite");
        return x;
    }

    std::int64_t integer(const char* key, std::int64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (v.is_number_integer()) return v.get<std::int64_t>();
        if (v.is_number_float()) {
            const double x = v.get<double>();
            if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return static_cast<std::int64_t>(x);
        }
        throw FieldError(path(key), "expected an integer");
    }

    std::size_t count(const char* key, std::size_t fallback) const {
        const std::int64_t v = integer(key, static_cast<std::int64_t>(fallback));
        if (v < 0) throw FieldError(path(key), "must be >= 0");
        return static_cast<std::size_t>(v);
    }

    std::uint64_t seed(const char* key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
        throw FieldError(path(key), "expected a non-negative integer seed");
    }

    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_boolean()) throw FieldError(path(key), "expected true or false");
        return at(key).get<bool>();
    }

    std::string string(const char* key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_string()) throw FieldError(path(key), "expected a string");
        return at(key).get<std::string>();
    }

  private:
    const json& node_;
    std::string path_;
};

template <class F>
auto rethrow_as_field(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const FieldError&) {
        throw;
    } catch (const UnsupportedConfiguration& e) {
        throw FieldError(path, std::string("unsupported configuration: ") + e.what());
    } catch (const Error& e) {
        throw FieldError(path, e.what());
    }
}

double wrapped_weight(const Section& s, const char* key, double fallback, std::vector<std::string>* notes) {
    const double w = s.number(key, fallback);
    if (std::abs(w) <= std::numbers::pi + 1e-9) return w;
    const double wrapped = wrap_phase(w);
    if (notes)
        notes->push_back(fmt::format("{} = {} lies outside [-pi, pi]; wrapped to {:.6f}", s.path(key), w, wrapped));
    return wrapped;
}

void parse_task(const json& node, ExperimentConfig& cfg) {
    const Section s(node, "task");
    s.allow({"kind", "order", "K", "seed", "shuffle", "memory_d_max", "narma", "mackey_glass"});
    if (!s.has("kind")) throw FieldError("task.kind", "required field is missing");
    TaskSpec& t = cfg.pipeline.task;
    t.kind = rethrow_as_field("task.kind", [&] { return task_kind_from_string(s.string("kind", "")); });

    int default_order = 1;
    std::size_t default_k = 500;
    switch (t.kind) {
    case TaskKind::Memory: default_order = 1; default_k = 497; break;
    case TaskKind::Monomial: default_order = 2; default_k = 150; break;
    case TaskKind::Polynomial: default_order = 1; default_k = 150; break;
    case TaskKind::Xor: default_order = 1; default_k = 300; break;
    case TaskKind::Narma: default_order = 5; default_k = 500; break;
    case TaskKind::MackeyGlass: default_order = 3; default_k = 390; break;
    }
    t.order = static_cast<int>(s.integer("order", default_order));
    t.K = s.count("K", default_k);
    t.seed = s.seed("seed", 0);
    t.shuffle = s.boolean("shuffle", false);
    cfg.pipeline.memory_d_max = static_cast<int>(s.integer("memory_d_max", 6));

    if (s.has("narma")) {
        const Section n(s.at("narma"), "task.narma");
        n.allow({"alpha", "beta", "gamma", "delta", "mu", "nu", "divergence_bound"});
        NarmaParams& p = t.narma;
        p.alpha = n.number("alpha", p.alpha);
        p.beta = n.number("beta", p.beta);
        p.gamma = n.number("gamma", p.gamma);
        p.delta = n.number("delta", p.delta);
        p.mu = n.number("mu", p.mu);
        p.nu = n.number("nu", p.nu);
        p.divergence_bound = n.number("divergence_bound", p.divergence_bound);
    }
    if (s.has("mackey_glass")) {
        const Section m(s.at("mackey_glass"), "task.mackey_glass");
        m.allow({"alpha", "beta", "gamma", "tau", "h", "history", "sample_interval", "transient_taus"});
        MackeyGlassParams& p = t.mg;
        p.alpha = m.number("alpha", p.alpha);
        p.beta = m.number("beta", p.beta);
        p.gamma = m.number("gamma", p.gamma);
        p.tau = m.number("tau", p.tau);
        p.h = m.number("h", p.h);
        p.history = m.number("history", p.history);
        p.sample_interval = m.number("sample_interval", p.sample_interval);
        p.transient_taus = m.number("transient_taus", p.transient_taus);
    }
}

void parse_photon(const json* node, ExperimentConfig& cfg) {
    PhotonInput& ph = cfg.pipeline.photon;
    if (!node) {
        ph = PhotonInput::two_photon(1.0);
        return;
    }
    const Section s(*node, "photon");
    s.allow({"n_ph", "input_modes", "visibility"});
    if (s.has("input_modes")) {
        const json& modes = s.at("input_modes");
        if (!modes.is_array()) throw FieldError("photon.input_modes", "expected an array of mode indices");
        ph.input_modes.clear();
        for (const auto& m : modes) {
            if (!m.is_number_integer()) throw FieldError("photon.input_modes", "mode indices must be integers");
            ph.input_modes.push_back(m.get<int>());
        }
        if (s.has("n_ph") && s.integer("n_ph", 0) != static_cast<std::int64_t>(ph.input_modes.size()))
            throw FieldError("photon.n_ph", fmt::format("n_ph = {} but {} input modes are listed",
                                                        s.integer("n_ph", 0), ph.input_modes.size()));
    } else {
        const auto n = s.integer("n_ph", 2);
        ph.input_modes = rethrow_as_field("photon.n_ph", [&] { return default_input_modes(static_cast<int>(n)); });
    }
    ph.visibility = s.number("visibility", 1.0);
}

void parse_reservoir(const json* node, ExperimentConfig& cfg, std::vector<std::string>* notes) {
    ReservoirConfig& r = cfg.pipeline.reservoir;
    r.feedback_mode = default_feedback_mode(cfg.pipeline.task.kind);
    if (!node) return;
    const Section s(*node, "reservoir");
    s.allow({"a_in", "a_fb_D", "a_fb_4", "a_fb_B", "mu_prime", "mu_dprime", "mu_tprime", "feedback_mode", "n_shot",
             "phase_step", "seed", "exact_feedback"});
    r.a_in = wrapped_weight(s, "a_in", 0.0, notes);
    r.a_fb_D = wrapped_weight(s, "a_fb_D", 0.0, notes);
    r.a_fb_4 = wrapped_weight(s, "a_fb_4", 0.0, notes);
    r.a_fb_B = wrapped_weight(s, "a_fb_B", 0.0, notes);
    r.mu_prime = s.count("mu_prime", 0);
    r.mu_dprime = s.count("mu_dprime", 0);
    r.mu_tprime = s.count("mu_tprime", 0);
    if (s.has("feedback_mode"))
        r.feedback_mode = rethrow_as_field(s.path("feedback_mode"),
                                           [&] { return feedback_mode_from_string(s.string("feedback_mode", "")); });
    if (s.has("n_shot")) {
        const json& v = s.at("n_shot");
        if (v.is_string()) {
            const auto str = v.get<std::string>();
            if (str != "inf" && str != "infinity")
                throw FieldError("reservoir.n_shot", "expected a positive integer, \"inf\" or null");
            r.n_shot.reset();
        } else {
            const auto n = s.integer("n_shot", 0);
            if (n < 1) throw FieldError("reservoir.n_shot", fmt::format("must be >= 1, got {}", n));
            r.n_shot = n;
        }
    }
    r.phase_step = s.number("phase_step", 0.0);
    r.seed = s.seed("seed", 0);
    r.exact_feedback = s.boolean("exact_feedback", false);
}

void parse_readout(const json* node, ExperimentConfig& cfg, bool& optimize_requested) {
    optimize_requested = false;
    if (!node) return;
    if (node->is_string()) {
        if (node->get<std::string>() != "optimize")
            throw FieldError("readout", "expected an object or the string \"optimize\"");
        optimize_requested = true;
        return;
    }
    const Section s(*node, "readout");
    s.allow({"alpha", "washout", "standardize", "gram_tol"});
    ReadoutSettings& r = cfg.pipeline.readout;
    r.alpha = s.number("alpha", r.alpha);
    r.washout = s.count("washout", r.washout);
    r.standardize = s.boolean("standardize", r.standardize);
    r.gram_tol = s.number("gram_tol", r.gram_tol);
}

ExperimentConfig parse_tree(const json& root, std::vector<std::string>* notes) {
    const Section top(root, "");
    top.allow({"task", "photon", "reservoir", "split", "readout", "hyperopt", "replicas", "output_dir", "characterize"});
    if (!top.has("task")) throw FieldError("task", "required section is missing");

    ExperimentConfig cfg;
    parse_task(top.at("task"), cfg);
    parse_photon(top.has("photon") ? &top.at("photon") : nullptr, cfg);
    parse_reservoir(top.has("reservoir") ? &top.at("reservoir") : nullptr, cfg, notes);

    if (top.has("split")) {
        const Section s(top.at("split"), "split");
        s.allow({"train_fraction"});
        cfg.pipeline.train_fraction = s.number("train_fraction", cfg.pipeline.train_fraction);
    } else if (cfg.pipeline.task.kind == TaskKind::MackeyGlass) {
        cfg.pipeline.train_fraction = 0.5;
    }

    bool optimize_requested = false;
    parse_readout(top.has("readout") ? &top.at("readout") : nullptr, cfg, optimize_requested);

    if (top.has("hyperopt")) {
        const Section s(top.at("hyperopt"), "hyperopt");
        s.allow({"budget", "seed", "sampler"});
        HyperoptSettings h;
        h.budget = s.count("budget", h.budget);
        h.seed = s.seed("seed", h.seed);
        h.sampler = s.string("sampler", h.sampler);
        cfg.hyperopt = h;
    } else if (optimize_requested) {
        cfg.hyperopt = HyperoptSettings{};
    }

    cfg.replicas = top.count("replicas", 1);
    cfg.output_dir = top.string("output_dir", cfg.output_dir);

    if (top.has("characterize")) {
        const Section s(top.at("characterize"), "characterize");
        s.allow({"grid"});
        if (s.has("grid")) {
            const json& g = s.at("grid");
            if (!g.is_array()) throw FieldError("characterize.grid", "expected an array");
            for (const auto& v : g) {
                if (v.is_number()) cfg.characterize_grid.push_back(v.get<double>());
                else if (v.is_string() && v.get<std::string>() == "inf")
                    cfg.characterize_grid.push_back(std::numeric_limits<double>::infinity());
                else throw FieldError("characterize.grid", "entries must be numbers or \"inf\"");
            }
        }
    }
    return cfg;
}

} // namespace

void validate_config(const ExperimentConfig& cfg) {
    const PipelineSpec& p = cfg.pipeline;
    rethrow_as_field("task", [&] { p.task.validate(); });
    if (p.task.kind == TaskKind::Memory && p.memory_d_max < 0)
        throw FieldError("task.memory_d_max", "must be >= 0");

    rethrow_as_field("photon", [&] { p.photon.validate(4); });
    const std::size_t dim = basis_dimension(4, p.photon.photon_count());

    const ReservoirConfig& r = p.reservoir;
    auto outcome = [&](const char* key, std::size_t mu) {
        if (mu >= dim)
            throw FieldError(std::string("reservoir.") + key,
                             fmt::format("{} = {}: outcome index >= {}", key, mu, dim));
    };
    outcome("mu_prime", r.mu_prime);
    outcome("mu_dprime", r.mu_dprime);
    if (r.feedback_mode == FeedbackMode::ThreeLoop) outcome("mu_tprime", r.mu_tprime);
    rethrow_as_field("reservoir", [&] { r.validate(dim); });

    if (!(p.train_fraction > 0.0 && p.train_fraction < 1.0))
        throw FieldError("split.train_fraction", fmt::format("must lie in (0, 1), got {}", p.train_fraction));
    if (!(p.readout.alpha >= 0.0)) throw FieldError("readout.alpha", "must be >= 0");
    if (!(p.readout.gram_tol > 0.0)) throw FieldError("readout.gram_tol", "must be > 0");

    // Scored rows and the training prefix they leave.
    const std::size_t start = p.task.kind == TaskKind::Memory
                                  ? static_cast<std::size_t>(std::max({p.memory_d_max, p.task.order, 0}))
                                  : (p.task.kind == TaskKind::MackeyGlass ? 0 : static_cast<std::size_t>(p.task.order));
    const std::size_t end =
        p.task.kind == TaskKind::MackeyGlass ? p.task.K - static_cast<std::size_t>(p.task.order) : p.task.K;
    const std::size_t first = (p.task.kind == TaskKind::Monomial || p.task.kind == TaskKind::Polynomial) ? 0 : start;
    if (first >= end) throw FieldError("task", "no rows left to score");
    const SplitSpec split = rethrow_as_field("split.train_fraction",
                                             [&] { return SplitSpec::from_fraction(end - first, p.train_fraction); });
    if (!cfg.hyperopt && p.readout.washout >= split.train)
        throw FieldError("readout.washout", fmt::format("washout {} must be < K_tr = {}", p.readout.washout, split.train));

    if (cfg.hyperopt) {
        if (cfg.hyperopt->budget < 1) throw FieldError("hyperopt.budget", "must be >= 1");
        rethrow_as_field("hyperopt.sampler", [&] { make_sampler(cfg.hyperopt->sampler); });
    }
    if (cfg.replicas < 1) throw FieldError("replicas", "must be >= 1");
    if (cfg.replicas > 1 && r.noiseless())
        throw FieldError("replicas", "replicas > 1 needs a finite reservoir.n_shot (noiseless runs are identical)");
    if (cfg.output_dir.empty()) throw FieldError("output_dir", "must not be empty");
}

std::size_t locate_field(std::string_view text, const std::string& path) {
    std::size_t pos = 0;
    std::size_t found = std::string_view::npos;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) continue;
        const std::string needle = "\"" + part + "\"";
        const std::size_t at = text.find(needle, pos);
        if (at == std::string_view::npos) break;
        found = at;
        pos = at + needle.size();
    }
    if (found == std::string_view::npos) return 1;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(found), '\n'));
}

ExperimentConfig parse_config(std::string_view text, const std::string& source, std::vector<std::string>* notes) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
        throw ConfigFileError(source, line, fmt::format("malformed JSON ({})", e.what()));
    }
    try {
        ExperimentConfig cfg = parse_tree(root, notes);
        validate_config(cfg);
        return cfg;
    } catch (const FieldError& e) {
        throw ConfigFileError(source, locate_field(text, e.path()), e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path, std::vector<std::string>* notes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string(), notes);
}

std::string resolved_config_json(const ExperimentConfig& config) { return detail::to_json(config).dump(2); }

namespace detail {

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json to_json(const ExperimentConfig& c) {
    const PipelineSpec& p = c.pipeline;
    ordered_json j;
    ordered_json task;
    task["kind"] = to_string(p.task.kind);
    task["order"] = p.task.order;
    task["K"] = p.task.K;
    task["seed"] = p.task.seed;
    task["shuffle"] = p.task.shuffle;
    task["memory_d_max"] = p.memory_d_max;
    task["narma"] = {{"alpha", p.task.narma.alpha}, {"beta", p.task.narma.beta},   {"gamma", p.task.narma.gamma},
                     {"delta", p.task.narma.delta}, {"mu", p.task.narma.mu},       {"nu", p.task.narma.nu},
                     {"divergence_bound", p.task.narma.divergence_bound}};
    task["mackey_glass"] = {{"alpha", p.task.mg.alpha},     {"beta", p.task.mg.beta},
                            {"gamma", p.task.mg.gamma},     {"tau", p.task.mg.tau},
                            {"h", p.task.mg.h},             {"history", p.task.mg.history},
                            {"sample_interval", p.task.mg.sample_interval},
                            {"transient_taus", p.task.mg.transient_taus}};
    j["task"] = task;
    j["photon"] = {{"n_ph", p.photon.photon_count()},
                   {"input_modes", p.photon.input_modes},
                   {"visibility", p.photon.visibility}};
    const ReservoirConfig& r = p.reservoir;
    ordered_json res;
    res["a_in"] = r.a_in;
    res["a_fb_D"] = r.a_fb_D;
    res["a_fb_4"] = r.a_fb_4;
    res["a_fb_B"] = r.a_fb_B;
    res["mu_prime"] = r.mu_prime;
    res["mu_dprime"] = r.mu_dprime;
    res["mu_tprime"] = r.mu_tprime;
    res["feedback_mode"] = to_string(r.feedback_mode);
    res["n_shot"] = r.n_shot ? ordered_json(*r.n_shot) : ordered_json("inf");
    res["phase_step"] = r.phase_step;
    res["seed"] = r.seed;
    res["exact_feedback"] = r.exact_feedback;
    j["reservoir"] = res;
    j["split"] = {{"train_fraction", p.train_fraction}};
    j["readout"] = {{"alpha", p.readout.alpha},
                    {"washout", p.readout.washout},
                    {"standardize", p.readout.standardize},
                    {"gram_tol", p.readout.gram_tol}};
    if (c.hyperopt)
        j["hyperopt"] = {{"budget", c.hyperopt->budget}, {"seed", c.hyperopt->seed}, {"sampler", c.hyperopt->sampler}};
    else
        j["hyperopt"] = nullptr;
    j["replicas"] = c.replicas;
    j["output_dir"] = c.output_dir;
    if (!c.characterize_grid.empty()) {
        ordered_json grid = ordered_json::array();
        for (double v : c.characterize_grid) grid.push_back(std::isinf(v) ? ordered_json("inf") : ordered_json(v));
        j["characterize"] = {{"grid", grid}};
    }
    return j;
}

ordered_json to_json(const TrialParams& p) {
    return {{"a_in", p.a_in},           {"a_fb_D", p.a_fb_D},       {"a_fb_4", p.a_fb_4},
            {"a_fb_B", p.a_fb_B},       {"mu_prime", p.mu_prime},   {"mu_dprime", p.mu_dprime},
            {"mu_tprime", p.mu_tprime}, {"ridge_alpha", p.ridge_alpha}, {"washout", p.washout}};
}

ordered_json to_json(const MetricsReport& r) {
    ordered_json j;
    j["mse"] = number_or_null(r.mse);
    j["r2"] = number_or_null(r.r2);
    j["r2_degenerate"] = r.r2_degenerate;
    j["accuracy"] = r.accuracy ? number_or_null(*r.accuracy) : ordered_json(nullptr);
    if (!r.per_delay_r2.empty()) {
        ordered_json d = ordered_json::array();
        for (double v : r.per_delay_r2) d.push_back(number_or_null(v));
        j["per_delay_r2"] = d;
    }
    j["capacity"] = r.capacity ? number_or_null(*r.capacity) : ordered_json(nullptr);
    j["gram_rank"] = r.gram_rank;
    j["pseudoinverse"] = r.pseudoinverse;
    j["ridge_residual"] = number_or_null(r.ridge_residual);
    return j;
}

} // namespace detail

} // namespace qrc
