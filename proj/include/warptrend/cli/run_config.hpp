#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "warptrend/basis.hpp"
#include "warptrend/synthgen.hpp"

namespace warptrend::cli {

/// Bad flags or configuration; maps to exit status 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Model { Mle, Separation };

struct RunConfig {
    BasisFamily basis = BasisFamily::ShiftedLegendre;
    std::optional<int> l;
    std::optional<std::pair<int, int>> l_range;
    int max_iter = 20;
    int lattice = 0;
    int replicates = 500;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    Model model = Model::Mle;
    std::filesystem::path out = ".";
    bool plots = false;

    // simulate
    Scenario scenario = Scenario::Fig1;
    int n = 30;
    int m = 200;
    double sigma = 0.0;

    /// Level for single-fit commands: l, else a one-element l-range, else 4.
    int level() const;
    /// Range for select: l-range, else {l, l}; throws if neither is set.
    std::pair<int, int> level_range() const;
};

/// Keys accepted by set_key and by configuration files; they match the long
/// flag names without the leading dashes.
inline constexpr std::string_view kConfigKeys[] = {
    "basis", "l", "l-range", "max-iter", "lattice", "replicates", "alpha", "seed",
    "model", "out", "plots", "scenario", "n", "m", "sigma"};

void set_key(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat key=value lines; '#' starts a comment; unknown keys are rejected.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

std::pair<int, int> parse_level_range(std::string_view text);

}  // namespace warptrend::cli
