#include "warptrend/cli/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

namespace warptrend::cli {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

template <typename T>
T parse_as(std::string_view key, std::string_view value) {
    T v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw UsageError(std::string(key) + ": cannot parse '" + std::string(value) + "'");
    return v;
}

int parse_positive(std::string_view key, std::string_view value, int min) {
    const int v = parse_as<int>(key, value);
    if (v < min) throw UsageError(std::string(key) + " must be >= " + std::to_string(min));
    return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw UsageError(std::string(key) + ": expected true or false, got '" + std::string(value) + "'");
}

}  // namespace

int RunConfig::level() const {
    if (l) return *l;
    if (l_range && l_range->first == l_range->second) return l_range->first;
    if (l_range) throw UsageError("this command fits a single level; use --l instead of --l-range");
    return 4;
}

std::pair<int, int> RunConfig::level_range() const {
    if (l_range) return *l_range;
    if (l) return {*l, *l};
    throw UsageError("select needs --l-range A..B");
}

std::pair<int, int> parse_level_range(std::string_view text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string_view::npos) {
        const int v = parse_positive("l-range", text, 1);
        return {v, v};
    }
    const int a = parse_positive("l-range", text.substr(0, dots), 1);
    const int b = parse_positive("l-range", text.substr(dots + 2), 1);
    if (b < a) throw UsageError("l-range: upper end " + std::to_string(b) + " is below " + std::to_string(a));
    return {a, b};
}

void set_key(RunConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "basis") {
        const auto fam = parse_basis_family(value);
        if (!fam) throw UsageError("basis: unknown family '" + std::string(value) +
                                   "' (fourier, sine, cosine, legendre)");
        cfg.basis = *fam;
    } else if (key == "l") {
        cfg.l = parse_positive(key, value, 1);
    } else if (key == "l-range") {
        cfg.l_range = parse_level_range(value);
    } else if (key == "max-iter") {
        cfg.max_iter = parse_positive(key, value, 1);
    } else if (key == "lattice") {
        cfg.lattice = parse_as<int>(key, value);
        if (cfg.lattice != 0 && cfg.lattice < 2) throw UsageError("lattice must be 0 (auto) or >= 2");
    } else if (key == "replicates") {
        cfg.replicates = parse_positive(key, value, 2);
    } else if (key == "alpha") {
        cfg.alpha = parse_as<double>(key, value);
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    } else if (key == "seed") {
        cfg.seed = parse_as<std::uint64_t>(key, value);
    } else if (key == "model") {
        if (value == "mle")
            cfg.model = Model::Mle;
        else if (value == "separation")
            cfg.model = Model::Separation;
        else
            throw UsageError("model: expected mle or separation, got '" + std::string(value) + "'");
    } else if (key == "out") {
        if (value.empty()) throw UsageError("out: empty path");
        cfg.out = std::filesystem::path(std::string(value));
    } else if (key == "plots") {
        cfg.plots = parse_bool(key, value);
    } else if (key == "scenario") {
        const auto sc = parse_scenario(value);
        if (!sc) throw UsageError("scenario: unknown '" + std::string(value) +
                                  "' (fig1, subspace_selection, noise_perturbation)");
        cfg.scenario = *sc;
    } else if (key == "n") {
        cfg.n = parse_positive(key, value, 2);
    } else if (key == "m") {
        cfg.m = parse_positive(key, value, 3);
    } else if (key == "sigma") {
        cfg.sigma = parse_as<double>(key, value);
        if (!(cfg.sigma >= 0.0)) throw UsageError("sigma must be >= 0");
    } else {
        throw UsageError("unknown configuration key '" + std::string(key) + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError(path.string() + ": cannot open configuration file");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        try {
            set_key(cfg, key, value);
        } catch (const UsageError& e) {
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

}  // namespace warptrend::cli
