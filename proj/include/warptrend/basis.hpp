#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "warptrend/grid.hpp"

namespace warptrend {

enum class BasisFamily { Fourier, Sine, Cosine, ShiftedLegendre };

std::string_view to_string(BasisFamily family);
std::optional<BasisFamily> parse_basis_family(std::string_view name);

inline constexpr int kDefaultMaxBasisLevel = 20;

/// A basis family truncated to its first `level` elements.
struct BasisSpec {
    BasisFamily family = BasisFamily::ShiftedLegendre;
    int level = 1;
    int max_level = kDefaultMaxBasisLevel;

    void validate() const;
};

class RankDeficientBasis : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k-th element (1-based) of a family exactly as tabulated: Fourier
/// {1, √2 sin 2πt, √2 cos 2πt, √2 sin 4πt, ...}, sine {√2 sin kπt}, cosine
/// {1, √2 cos πt, ...}, and shifted Legendre with its 1/(2k-1) prefactor.
GridFunction raw_basis_element(BasisFamily family, int k, const Grid& grid);

/// Orthonormal (under the grid inner product) version of the first l
/// elements of a family.
class OrthonormalBasis {
public:
    OrthonormalBasis(BasisSpec spec, const Grid& grid);

    const BasisSpec& spec() const noexcept { return spec_; }
    const Grid& grid() const noexcept { return grid_; }
    const std::vector<GridFunction>& functions() const noexcept { return functions_; }
    std::size_t size() const noexcept { return functions_.size(); }

    std::vector<double> coefficients(const GridFunction& f) const;

private:
    BasisSpec spec_;
    Grid grid_;
    std::vector<GridFunction> functions_;
};

/// Modified Gram-Schmidt on the grid; throws RankDeficientBasis when a pivot
/// norm drops below 1e-10.
OrthonormalBasis build_orthonormal(const BasisSpec& spec, const Grid& grid);

GridFunction project(const GridFunction& f, const OrthonormalBasis& basis);
GridFunction project_complement(const GridFunction& f, const OrthonormalBasis& basis);

}  // namespace warptrend
