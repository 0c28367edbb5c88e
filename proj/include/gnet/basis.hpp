#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gnet/gegenbauer.hpp"
#include "gnet/types.hpp"

namespace gnet {

/// Per-coordinate degrees (k_1, ..., k_m) of one tensor-product basis function.
using MultiIndex = std::vector<int>;

/// Tag written to model files for the only ordering implemented.
inline constexpr std::string_view kGradedLexTag = "grlex";

/// First L multi-indices over m coordinates in graded-lexicographic order:
/// total degree ascending, ties broken by ascending lexicographic order of the
/// degree vector. So for m = 2: (0,0) (0,1) (1,0) (0,2) (1,1) (2,0) ...
std::vector<MultiIndex> enumerate_graded_lex(int m, int L);

/// The hidden layer: L Gegenbauer elementary functions over m features.
class BasisSpec {
 public:
  BasisSpec(GegenbauerParam lambda, int m, int L);

  GegenbauerParam lambda() const noexcept { return lambda_; }
  int dimension() const noexcept { return m_; }
  int size() const noexcept { return static_cast<int>(indices_.size()); }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  /// Largest degree used in coordinate t.
  int max_degree(int t) const { return max_degree_[static_cast<std::size_t>(t)]; }
  int max_degree() const noexcept { return overall_max_degree_; }

  /// Non-constant factors of basis function l as (coordinate, degree) pairs in
  /// ascending coordinate order.
  struct Factor {
    int coordinate;
    int degree;
  };
  std::span<const Factor> factors(int l) const;

 private:
  GegenbauerParam lambda_;
  int m_;
  std::vector<MultiIndex> indices_;
  std::vector<int> max_degree_;
  int overall_max_degree_ = 0;
  std::vector<Factor> factors_;
  std::vector<std::size_t> factor_offsets_;
};

/// prod_t g_{k_t}(x_t). x is expected in [0,1]^m.
double gef_eval(const MultiIndex& index, GegenbauerParam lambda, std::span<const double> x);

/// S x L activation matrix: entry (s, l) is basis function l at row s of X.
/// Every entry of X must lie in [0,1]; violations raise NormalizationError
/// naming the offending row and column. Runs the OpenMP kernel.
Matrix build_activation_matrix(const Matrix& X, const BasisSpec& spec);

/// Throws NormalizationError unless every entry of X is in [0,1].
void check_unit_cube(const Matrix& X);

}  // namespace gnet
