#include "warptrend/basis.hpp"

#include <cmath>
#include <numbers>

namespace warptrend {

std::string_view to_string(BasisFamily family) {
    switch (family) {
        case BasisFamily::Fourier: return "fourier";
        case BasisFamily::Sine: return "sine";
        case BasisFamily::Cosine: return "cosine";
        case BasisFamily::ShiftedLegendre: return "legendre";
    }
    return "unknown";
}

std::optional<BasisFamily> parse_basis_family(std::string_view name) {
    if (name == "fourier") return BasisFamily::Fourier;
    if (name == "sine") return BasisFamily::Sine;
    if (name == "cosine") return BasisFamily::Cosine;
    if (name == "legendre" || name == "shifted-legendre") return BasisFamily::ShiftedLegendre;
    return std::nullopt;
}

void BasisSpec::validate() const {
    if (max_level < 1) throw std::invalid_argument("BasisSpec: max_level must be >= 1");
    if (level < 1 || level > max_level)
        throw std::invalid_argument("BasisSpec: level " + std::to_string(level) +
                                    " outside [1, " + std::to_string(max_level) + "]");
}

namespace {

long double binomial(int n, int k) {
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
    return r;
}

double shifted_legendre(int k, double t) {
    // long double keeps the alternating sum accurate up to the default ceiling of 20
    const int n = k - 1;
    long double sum = 0.0L;
    long double power = 1.0L;
    for (int j = 0; j <= n; ++j) {
        sum += binomial(n, j) * binomial(n + j, j) * power;
        power *= -static_cast<long double>(t);
    }
    const long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
    return static_cast<double>(sign * sum / static_cast<long double>(2 * k - 1));
}

}  // namespace

GridFunction raw_basis_element(BasisFamily family, int k, const Grid& grid) {
    if (k < 1) throw std::invalid_argument("raw_basis_element: k must be >= 1");
    constexpr double pi = std::numbers::pi;
    const double r2 = std::numbers::sqrt2;
    switch (family) {
        case BasisFamily::Fourier:
            if (k == 1) return GridFunction::constant(grid, 1.0);
            return GridFunction::sample(grid, [&](double t) {
                const double w = 2.0 * pi * static_cast<double>(k / 2);
                return (k % 2 == 0) ? r2 * std::sin(w * t) : r2 * std::cos(w * t);
            });
        case BasisFamily::Sine:
            return GridFunction::sample(grid, [&](double t) { return r2 * std::sin(k * pi * t); });
        case BasisFamily::Cosine:
            if (k == 1) return GridFunction::constant(grid, 1.0);
            return GridFunction::sample(grid,
                                        [&](double t) { return r2 * std::cos((k - 1) * pi * t); });
        case BasisFamily::ShiftedLegendre:
            return GridFunction::sample(grid, [&](double t) { return shifted_legendre(k, t); });
    }
    throw std::invalid_argument("raw_basis_element: unknown family");
}

OrthonormalBasis::OrthonormalBasis(BasisSpec spec, const Grid& grid)
    : spec_(spec), grid_(grid) {
    spec_.validate();
    functions_.reserve(static_cast<std::size_t>(spec_.level));
    for (int k = 1; k <= spec_.level; ++k) {
        GridFunction v = raw_basis_element(spec_.family, k, grid_);
        // two MGS sweeps restore orthogonality lost to cancellation
        for (int sweep = 0; sweep < 2; ++sweep)
            for (const GridFunction& e : functions_) v.axpy(-inner_product(v, e), e);
        const double pivot = norm(v);
        if (pivot < 1e-10)
            throw RankDeficientBasis("basis element " + std::to_string(k) + " of " +
                                     std::string(to_string(spec_.family)) +
                                     " is numerically dependent on the grid (" +
                                     std::to_string(grid_.size()) + " samples)");
        v *= 1.0 / pivot;
        functions_.push_back(std::move(v));
    }
}

std::vector<double> OrthonormalBasis::coefficients(const GridFunction& f) const {
    require_same_grid(f.grid(), grid_, "basis coefficients");
    std::vector<double> c;
    c.reserve(functions_.size());
    for (const GridFunction& e : functions_) c.push_back(inner_product(f, e));
    return c;
}

OrthonormalBasis build_orthonormal(const BasisSpec& spec, const Grid& grid) {
    return OrthonormalBasis(spec, grid);
}

GridFunction project(const GridFunction& f, const OrthonormalBasis& basis) {
    const std::vector<double> c = basis.coefficients(f);
    GridFunction out = GridFunction::zeros(f.grid());
    for (std::size_t k = 0; k < c.size(); ++k) out.axpy(c[k], basis.functions()[k]);
    return out;
}

GridFunction project_complement(const GridFunction& f, const OrthonormalBasis& basis) {
    return f - project(f, basis);
}

}  // namespace warptrend
