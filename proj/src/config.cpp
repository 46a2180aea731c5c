#include "chdg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <sstream>

namespace chdg {

namespace {

const std::vector<ConfigKey> keys = {
    {"mode", "convergence | spinodal | single"},
    {"k", "polynomial degree, 0..2"},
    {"scheme", "fi (fully implicit) | cs (convex splitting)"},
    {"eps", "interface parameter epsilon > 0"},
    {"T", "final time > 0"},
    {"dt", "explicit time step > 0 (excludes dt_rule)"},
    {"dt_rule", "h^{k+m}: dt = (1/n)^(k+m), m in 1..4 (excludes dt)"},
    {"levels", "comma-separated mesh subdivisions, increasing (convergence)"},
    {"n", "mesh subdivisions per side (spinodal, single)"},
    {"newton_atol", "absolute Newton tolerance on the residual norm"},
    {"newton_rtol", "relative Newton tolerance"},
    {"newton_max_iter", "Newton iteration cap per step, 1..200"},
    {"source", "discrete | continuous manufactured forcing"},
    {"negative_norm", "also report the negative-norm error of u (0|1)"},
    {"out", "output directory"},
    {"seed", "random seed for the spinodal initial data"},
    {"vtk_every", "write fields every m steps (0: first and last only)"},
};

[[noreturn]] void fail(const std::string& key, const std::string& value, const std::string& why)
{
    throw ConfigError("config: " + key + "=" + value + ": " + why);
}

double to_double(const std::string& key, const std::string& v)
{
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x))
        fail(key, v, "not a finite number");
    return x;
}

long long to_integer(const std::string& key, const std::string& v)
{
    long long x = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end)
        fail(key, v, "not an integer");
    return x;
}

double positive(const std::string& key, const std::string& v)
{
    const double x = to_double(key, v);
    if (!(x > 0.0))
        fail(key, v, "must be > 0");
    return x;
}

int bounded(const std::string& key, const std::string& v, long long lo, long long hi)
{
    const long long x = to_integer(key, v);
    if (x < lo || x > hi)
        fail(key, v, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string to_string(RunMode mode)
{
    switch (mode) {
    case RunMode::Convergence: return "convergence";
    case RunMode::Spinodal: return "spinodal";
    case RunMode::Single: return "single";
    }
    return "?";
}

const std::vector<ConfigKey>& config_keys() { return keys; }

DtRule RunConfig::dt_rule() const
{
    if (dt)
        return DtRule::fixed_step(*dt);
    return DtRule::power(dt_rule_offset.value_or(1));
}

std::string RunConfig::to_text() const
{
    std::ostringstream out;
    out << "mode=" << to_string(mode) << "\n"
        << "k=" << k << "\n"
        << "scheme=" << to_string(scheme) << "\n"
        << "eps=" << format_double(epsilon) << "\n"
        << "T=" << format_double(final_time) << "\n";
    if (dt)
        out << "dt=" << format_double(*dt) << "\n";
    else
        out << "dt_rule=h^{k+" << dt_rule_offset.value_or(1) << "}\n";
    out << "levels=";
    for (std::size_t i = 0; i < levels.size(); ++i)
        out << (i ? "," : "") << levels[i];
    out << "\n"
        << "n=" << n << "\n"
        << "newton_atol=" << format_double(newton.abs_tol) << "\n"
        << "newton_rtol=" << format_double(newton.rel_tol) << "\n"
        << "newton_max_iter=" << newton.max_iterations << "\n"
        << "source=" << (source == SourceTiming::TimeDiscrete ? "discrete" : "continuous") << "\n"
        << "negative_norm=" << (negative_norm ? 1 : 0) << "\n"
        << "out=" << output_dir << "\n"
        << "seed=" << seed << "\n"
        << "vtk_every=" << vtk_every << "\n";
    return out.str();
}

RunConfig parse_config(const std::vector<std::string>& tokens)
{
    std::map<std::string, std::string> kv;
    for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("config: expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        const bool known = std::any_of(keys.begin(), keys.end(),
                                       [&](const ConfigKey& k) { return key == k.name; });
        if (!known)
            throw ConfigError("config: unknown key '" + key + "'");
        if (value.empty())
            fail(key, value, "empty value");
        kv[key] = value; // later tokens override earlier ones
    }

    RunConfig cfg;
    if (auto it = kv.find("mode"); it != kv.end()) {
        if (it->second == "convergence")
            cfg.mode = RunMode::Convergence;
        else if (it->second == "spinodal")
            cfg.mode = RunMode::Spinodal;
        else if (it->second == "single")
            cfg.mode = RunMode::Single;
        else
            fail("mode", it->second, "expected convergence, spinodal or single");
    }
    if (cfg.mode == RunMode::Spinodal) {
        cfg.epsilon = 0.05;
        cfg.n = 64;
        cfg.k = 1;
        cfg.dt = 1e-4;
        cfg.final_time = 0.05;
        cfg.scheme = Scheme::ConvexSplitting;
    }

    const bool has_dt = kv.count("dt") > 0;
    const bool has_rule = kv.count("dt_rule") > 0;
    if (has_dt && has_rule)
        throw ConfigError("config: dt and dt_rule are mutually exclusive (got dt=" + kv["dt"] +
                          " and dt_rule=" + kv["dt_rule"] + ")");

    for (const auto& [key, v] : kv) {
        if (key == "k") {
            cfg.k = bounded(key, v, 0, 2);
        } else if (key == "scheme") {
            if (v == "fi")
                cfg.scheme = Scheme::FullyImplicit;
            else if (v == "cs")
                cfg.scheme = Scheme::ConvexSplitting;
            else
                fail(key, v, "expected fi or cs");
        } else if (key == "eps") {
            cfg.epsilon = positive(key, v);
        } else if (key == "T") {
            cfg.final_time = positive(key, v);
        } else if (key == "dt") {
            cfg.dt = positive(key, v);
            cfg.dt_rule_offset.reset();
        } else if (key == "dt_rule") {
            static const std::regex rule(R"(h\^\{?k\+([1-4])\}?)");
            std::smatch m;
            if (!std::regex_match(v, m, rule))
                fail(key, v, "expected h^{k+m} with m in 1..4");
            cfg.dt_rule_offset = std::stoi(m[1].str());
            cfg.dt.reset();
        } else if (key == "levels") {
            cfg.levels.clear();
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                cfg.levels.push_back(bounded(key, item, 1, 1024));
            if (cfg.levels.empty())
                fail(key, v, "no levels given");
            for (std::size_t i = 1; i < cfg.levels.size(); ++i)
                if (cfg.levels[i] <= cfg.levels[i - 1])
                    fail(key, v, "levels must be strictly increasing");
        } else if (key == "n") {
            cfg.n = bounded(key, v, 1, 1024);
        } else if (key == "newton_atol") {
            cfg.newton.abs_tol = positive(key, v);
        } else if (key == "newton_rtol") {
            cfg.newton.rel_tol = to_double(key, v);
            if (cfg.newton.rel_tol < 0.0 || cfg.newton.rel_tol >= 1.0)
                fail(key, v, "must lie in [0, 1)");
        } else if (key == "newton_max_iter") {
            cfg.newton.max_iterations = bounded(key, v, 1, 200);
        } else if (key == "source") {
            if (v == "discrete")
                cfg.source = SourceTiming::TimeDiscrete;
            else if (v == "continuous")
                cfg.source = SourceTiming::Continuous;
            else
                fail(key, v, "expected discrete or continuous");
        } else if (key == "negative_norm") {
            cfg.negative_norm = bounded(key, v, 0, 1) == 1;
        } else if (key == "out") {
            cfg.output_dir = v;
        } else if (key == "seed") {
            const long long s = to_integer(key, v);
            if (s < 0)
                fail(key, v, "must be >= 0");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "vtk_every") {
            cfg.vtk_every = bounded(key, v, 0, 1 << 30);
        }
    }
    if (!cfg.dt && !cfg.dt_rule_offset)
        cfg.dt_rule_offset = 1;
    return cfg;
}

std::vector<std::string> config_tokens_from_text(const std::string& text)
{
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        tokens.push_back(trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
    }
    return tokens;
}

RunConfig parse_config_text(const std::string& text)
{
    return parse_config(config_tokens_from_text(text));
}

} // namespace chdg
