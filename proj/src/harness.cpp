#include "bai/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bai/rng.hpp"

namespace bai {

namespace {

using ordered_json = nlohmann::ordered_json;

// Model stream root: the policy tag enters only when pairing is off, so
// paired experiments across policies share instance sequences exactly.
std::uint64_t model_master(const ExperimentConfig& cfg) {
    if (cfg.paired) return cfg.master_seed;
    return mix64(cfg.master_seed ^ mix64(static_cast<std::uint64_t>(cfg.policy) + 1));
}

TrialResult run_trial(const ExperimentConfig& cfg, double d0, int trial) {
    const BanditModel model = model_for_trial(cfg, trial);
    const std::uint64_t t = static_cast<std::uint64_t>(trial);
    Rng reward(derive_seed(cfg.master_seed, t, StreamPurpose::Reward));
    Rng policy(derive_seed(cfg.master_seed, t, StreamPurpose::Policy));
    switch (cfg.policy) {
        case PolicyKind::Elimination:
            return run_elim_trial(model, cfg.delta, d0, reward, policy, cfg.pull_cap);
        case PolicyKind::NoElimination:
            return run_noelim_trial(model, cfg.delta, d0, reward, policy, cfg.pull_cap);
        case PolicyKind::Ttts:
            return ttts_policy_run(model, cfg.prior, cfg.delta, reward, policy,
                                   cfg.pull_cap);
        case PolicyKind::Ttucb:
            return ttucb_policy_run(model, cfg.prior, cfg.delta, reward, policy,
                                    cfg.pull_cap);
    }
    throw std::logic_error("run_trial: unhandled policy kind");
}

[[noreturn]] void fail_at(const std::string& path, int line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s, const std::string& path, int line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail_at(path, line_no, "not a number: '" + std::string(s) + "'");
    return v;
}

std::int64_t parse_int(std::string_view s, const std::string& path, int line_no) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail_at(path, line_no, "not an integer: '" + std::string(s) + "'");
    return v;
}

std::uint64_t parse_uint(std::string_view s, const std::string& path, int line_no) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail_at(path, line_no, "not an unsigned integer: '" + std::string(s) + "'");
    return v;
}

ArmPrior parse_arm_triple(std::string_view s, const std::string& path, int line_no) {
    std::istringstream ss{std::string(s)};
    double m = 0.0, xi = 0.0, sigma = 0.0;
    std::string extra;
    if (!(ss >> m >> xi >> sigma) || (ss >> extra))
        fail_at(path, line_no, "expected three numbers: m xi sigma");
    return ArmPrior{m, xi, sigma};
}

}  // namespace

const char* to_string(PolicyKind policy) {
    switch (policy) {
        case PolicyKind::Elimination: return "elim";
        case PolicyKind::NoElimination: return "noelim";
        case PolicyKind::Ttts: return "ttts";
        case PolicyKind::Ttucb: return "ttucb";
    }
    return "unknown";
}

PolicyKind parse_policy(std::string_view name) {
    if (name == "elim") return PolicyKind::Elimination;
    if (name == "noelim") return PolicyKind::NoElimination;
    if (name == "ttts") return PolicyKind::Ttts;
    if (name == "ttucb") return PolicyKind::Ttucb;
    throw std::invalid_argument("unknown policy '" + std::string(name) +
                                "' (expected elim, noelim, ttts or ttucb)");
}

BanditModel model_for_trial(const ExperimentConfig& cfg, int trial) {
    Rng rng(derive_seed(model_master(cfg), static_cast<std::uint64_t>(trial),
                        StreamPurpose::ModelDraw));
    return sample_model(cfg.prior, rng);
}

Summary run_experiment(const ExperimentConfig& cfg) {
    cfg.prior.validate();
    if (cfg.delta <= 0.0 || cfg.delta >= 1.0)
        throw std::invalid_argument("run_experiment: delta must be in (0, 1)");
    if (cfg.n_trials < 1)
        throw std::invalid_argument("run_experiment: need at least one trial");
    if (cfg.pull_cap < 1)
        throw std::invalid_argument("run_experiment: pull_cap must be positive");

    const auto start = std::chrono::steady_clock::now();

    // Delta_0 depends only on (prior, delta); hoisted out of the trial loop.
    double d0 = 0.0;
    if (cfg.policy == PolicyKind::Elimination || cfg.policy == PolicyKind::NoElimination)
        d0 = delta0(cfg.prior, cfg.delta);

    std::vector<TrialResult> results(static_cast<std::size_t>(cfg.n_trials));
    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, cfg.n_trials);

    std::atomic<int> next{0};
    std::exception_ptr failure = nullptr;
    std::mutex failure_mu;
    const auto pump = [&]() {
        try {
            for (int i = next.fetch_add(1); i < cfg.n_trials; i = next.fetch_add(1))
                results[static_cast<std::size_t>(i)] = run_trial(cfg, d0, i);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(cfg.n_trials);
        }
    };
    if (workers == 1) {
        pump();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(pump);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    Summary summary = aggregate(std::move(results));
    summary.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

Summary aggregate(std::vector<TrialResult> per_trial) {
    Summary s;
    s.per_trial = std::move(per_trial);
    if (s.per_trial.empty()) return s;
    double tau_sum = 0.0;
    std::int64_t completed = 0;
    std::int64_t wrong = 0;
    for (const TrialResult& r : s.per_trial) {
        tau_sum += static_cast<double>(r.tau);
        s.max_tau = std::max(s.max_tau, r.tau);
        if (r.truncated()) {
            ++s.n_truncated;
            continue;
        }
        ++completed;
        if (!r.correct) ++wrong;
    }
    s.avg_tau = tau_sum / static_cast<double>(s.per_trial.size());
    s.error_rate =
        completed > 0 ? static_cast<double>(wrong) / static_cast<double>(completed) : 0.0;
    return s;
}

std::string fmt7(double x) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 7);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

std::string render_csv(const ExperimentConfig& cfg, const Summary& summary) {
    std::string out = "trial_index,seed,tau,recommendation,correct,stop_reason\n";
    for (std::size_t i = 0; i < summary.per_trial.size(); ++i) {
        const TrialResult& r = summary.per_trial[i];
        out += std::to_string(i);
        out += ',';
        out += std::to_string(trial_seed(cfg.master_seed, static_cast<std::uint64_t>(i)));
        out += ',';
        out += std::to_string(r.tau);
        out += ',';
        out += std::to_string(r.recommendation);
        out += ',';
        out += r.correct ? '1' : '0';
        out += ',';
        out += to_string(r.stop_reason);
        out += '\n';
    }
    return out;
}

std::string render_json(const ExperimentConfig& cfg, const Summary& summary) {
    ordered_json prior = ordered_json::array();
    for (const ArmPrior& a : cfg.prior.arms)
        prior.push_back({{"m", a.m}, {"xi", a.xi}, {"sigma", a.sigma}});

    ordered_json j;
    j["config"] = {
        {"policy", to_string(cfg.policy)}, {"delta", cfg.delta},
        {"trials", cfg.n_trials},          {"seed", cfg.master_seed},
        {"pull_cap", cfg.pull_cap},        {"paired", cfg.paired},
        {"prior", std::move(prior)},
    };
    j["summary"] = {
        {"avg_tau", summary.avg_tau},         {"max_tau", summary.max_tau},
        {"error_rate", summary.error_rate},   {"n_truncated", summary.n_truncated},
        {"wall_time_s", summary.wall_time_s},
    };
    ordered_json trials = ordered_json::array();
    for (std::size_t i = 0; i < summary.per_trial.size(); ++i) {
        const TrialResult& r = summary.per_trial[i];
        trials.push_back({
            {"trial_index", i},
            {"seed", trial_seed(cfg.master_seed, static_cast<std::uint64_t>(i))},
            {"tau", r.tau},
            {"recommendation", r.recommendation},
            {"correct", r.correct},
            {"stop_reason", to_string(r.stop_reason)},
        });
    }
    j["trials"] = std::move(trials);
    return j.dump(2) + "\n";
}

}  // namespace

std::string render_output(const ExperimentConfig& cfg, const Summary& summary,
                          OutputFormat format) {
    return format == OutputFormat::Csv ? render_csv(cfg, summary)
                                       : render_json(cfg, summary);
}

void write_output(const ExperimentConfig& cfg, const Summary& summary,
                  OutputFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << render_output(cfg, summary, format);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string format_summary_table(
    const std::vector<std::pair<std::string, Summary>>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(10) << "policy" << std::right << std::setw(14)
        << "avg_tau" << std::setw(14) << "max_tau" << std::setw(12) << "error"
        << std::setw(11) << "truncated" << '\n';
    for (const auto& [name, s] : rows) {
        out << std::left << std::setw(10) << name << std::right << std::setw(14)
            << fmt7(s.avg_tau) << std::setw(14) << s.max_tau << std::setw(12)
            << fmt7(s.error_rate) << std::setw(11) << s.n_truncated << '\n';
    }
    return out.str();
}

Prior parse_prior_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prior file: " + path);
    Prior prior;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty()) continue;
        prior.arms.push_back(parse_arm_triple(line, path, line_no));
    }
    try {
        prior.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return prior;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string_view stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string_view::npos)
            fail_at(path, line_no, "expected 'key = value'");
        const std::string_view key = trim(stripped.substr(0, eq));
        const std::string_view value = trim(stripped.substr(eq + 1));
        if (value.empty()) fail_at(path, line_no, "empty value");
        if (key == "delta") {
            cfg.delta = parse_double(value, path, line_no);
        } else if (key == "policy") {
            try {
                cfg.policy = parse_policy(value);
            } catch (const std::invalid_argument& e) {
                fail_at(path, line_no, e.what());
            }
        } else if (key == "trials") {
            cfg.n_trials = static_cast<int>(parse_int(value, path, line_no));
        } else if (key == "seed") {
            cfg.master_seed = parse_uint(value, path, line_no);
        } else if (key == "pull_cap") {
            cfg.pull_cap = parse_int(value, path, line_no);
        } else if (key == "paired") {
            if (value == "true" || value == "1") {
                cfg.paired = true;
            } else if (value == "false" || value == "0") {
                cfg.paired = false;
            } else {
                fail_at(path, line_no, "paired must be true or false");
            }
        } else if (key == "arm") {
            cfg.prior.arms.push_back(parse_arm_triple(value, path, line_no));
        } else {
            fail_at(path, line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    return cfg;
}

}  // namespace bai
