#include "gnet/basis.hpp"

#include <algorithm>
#include <string>

#include "gnet/errors.hpp"
#include "gnet/kernels.hpp"

namespace gnet {
namespace {

// Appends every composition of `remaining` into the coordinates [pos, m) in
// ascending lexicographic order, stopping once `out` holds `limit` entries.
void append_compositions(MultiIndex& current, std::size_t pos, int remaining,
                         std::vector<MultiIndex>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = 0; k <= remaining && out.size() < limit; ++k) {
    current[pos] = k;
    append_compositions(current, pos + 1, remaining - k, out, limit);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_graded_lex(int m, int L) {
  if (m < 1) throw ParameterError("feature dimension m must be >= 1, got " + std::to_string(m));
  if (L < 1) throw ParameterError("basis size L must be >= 1, got " + std::to_string(L));
  const auto limit = static_cast<std::size_t>(L);
  std::vector<MultiIndex> out;
  out.reserve(limit);
  MultiIndex current(static_cast<std::size_t>(m), 0);
  for (int degree = 0; out.size() < limit; ++degree) {
    append_compositions(current, 0, degree, out, limit);
  }
  return out;
}

BasisSpec::BasisSpec(GegenbauerParam lambda, int m, int L)
    : lambda_(lambda), m_(m), indices_(enumerate_graded_lex(m, L)) {
  max_degree_.assign(static_cast<std::size_t>(m), 0);
  factor_offsets_.reserve(indices_.size() + 1);
  factor_offsets_.push_back(0);
  for (const auto& index : indices_) {
    for (int t = 0; t < m; ++t) {
      const int k = index[static_cast<std::size_t>(t)];
      if (k == 0) continue;
      factors_.push_back({t, k});
      auto& cap = max_degree_[static_cast<std::size_t>(t)];
      cap = std::max(cap, k);
    }
    factor_offsets_.push_back(factors_.size());
  }
  overall_max_degree_ = *std::max_element(max_degree_.begin(), max_degree_.end());
}

std::span<const BasisSpec::Factor> BasisSpec::factors(int l) const {
  const auto i = static_cast<std::size_t>(l);
  return {factors_.data() + factor_offsets_[i], factor_offsets_[i + 1] - factor_offsets_[i]};
}

double gef_eval(const MultiIndex& index, GegenbauerParam lambda, std::span<const double> x) {
  if (index.size() != x.size()) {
    throw ShapeError("multi-index has " + std::to_string(index.size()) + " coordinates but x has " +
                     std::to_string(x.size()));
  }
  double product = 1.0;
  for (std::size_t t = 0; t < x.size(); ++t) product *= gegenbauer(index[t], lambda, x[t]);
  return product;
}

void check_unit_cube(const Matrix& X) {
  for (Index j = 0; j < X.cols(); ++j) {
    for (Index i = 0; i < X.rows(); ++i) {
      const double v = X(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw NormalizationError("feature value " + std::to_string(v) + " at row " +
                                 std::to_string(i) + ", column " + std::to_string(j) +
                                 " is outside [0,1]");
      }
    }
  }
}

Matrix build_activation_matrix(const Matrix& X, const BasisSpec& spec) {
  if (X.cols() != spec.dimension()) {
    throw ShapeError("input has " + std::to_string(X.cols()) + " features but the basis expects " +
                     std::to_string(spec.dimension()));
  }
  check_unit_cube(X);
  return kernels::parallel::activation_matrix(X, spec);
}

}  // namespace gnet
