#ifndef PROBMETRICS_SPACE_HPP
#define PROBMETRICS_SPACE_HPP

// Finite metric spaces given by an explicit distance matrix.  Measures
// either live on the real line (no space object) or reference one of
// these via a shared handle.

#include <memory>
#include <string>
#include <vector>

#include "probmetrics/rational.hpp"

namespace probmetrics {

class FiniteMetricSpace {
 public:
  // Validates symmetry, zero diagonal, positivity off the diagonal and
  // the triangle inequality; names the offending entry on failure.
  explicit FiniteMetricSpace(std::vector<std::vector<Rat>> dist) : dist_(std::move(dist)) {
    const std::size_t n = dist_.size();
    if (n == 0) throw ValidationError("finite space: empty distance matrix");
    for (std::size_t i = 0; i < n; ++i) {
      if (dist_[i].size() != n)
        throw ValidationError("finite space: row " + std::to_string(i) + " has " +
                              std::to_string(dist_[i].size()) + " entries, expected " +
                              std::to_string(n));
      if (dist_[i][i] != 0)
        throw ValidationError("finite space: dist[" + std::to_string(i) + "][" +
                              std::to_string(i) + "] must be 0");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && dist_[i][j] <= 0)
          throw ValidationError("finite space: dist[" + std::to_string(i) + "][" +
                                std::to_string(j) + "] must be positive");
        if (dist_[i][j] != dist_[j][i])
          throw ValidationError("finite space: dist[" + std::to_string(i) + "][" +
                                std::to_string(j) + "] breaks symmetry");
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (dist_[i][j] > dist_[i][k] + dist_[k][j])
            throw ValidationError("finite space: triangle inequality fails at (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
  }

  std::size_t size() const { return dist_.size(); }
  const Rat& dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }

  bool operator==(const FiniteMetricSpace& other) const { return dist_ == other.dist_; }

 private:
  std::vector<std::vector<Rat>> dist_;
};

using SpaceHandle = std::shared_ptr<const FiniteMetricSpace>;

inline bool same_space(const SpaceHandle& a, const SpaceHandle& b) {
  if (!a && !b) return true;  // both on the line
  if (!a || !b) return false;
  return a == b || *a == *b;
}

}  // namespace probmetrics

#endif  // PROBMETRICS_SPACE_HPP
