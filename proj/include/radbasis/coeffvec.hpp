#pragma once

#include <cstdint>
#include <vector>

namespace radbasis {

/// Finite real coefficient vector with 1-based position semantics.
///
/// A CoeffVec of dimension d stands for the infinite sequence whose entries
/// beyond d are zero; `at` honors that padding. All entries are finite
/// (construction rejects NaN and infinities) and d >= 1.
class CoeffVec {
 public:
  explicit CoeffVec(std::vector<double> entries);

  static CoeffVec zeros(std::int64_t dim);
  /// Unit vector e_pos (1-based) in dimension dim.
  static CoeffVec unit(std::int64_t dim, std::int64_t pos);

  std::int64_t dim() const { return static_cast<std::int64_t>(entries_.size()); }

  /// Entry at 1-based position; 0.0 beyond dim.
  double at(std::int64_t pos) const;

  const std::vector<double>& entries() const { return entries_; }

  /// Prefix of the first `new_dim` entries (new_dim >= 1, <= dim).
  CoeffVec truncated(std::int64_t new_dim) const;

  bool operator==(const CoeffVec& other) const { return entries_ == other.entries_; }

 private:
  std::vector<double> entries_;
};

/// True when both vectors represent the same padded sequence (exact entry
/// equality, trailing zeros ignored).
bool same_sequence(const CoeffVec& a, const CoeffVec& b);

}  // namespace radbasis
