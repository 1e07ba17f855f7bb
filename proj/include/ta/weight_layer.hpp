#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ta/network.hpp"

namespace ta {

// Mutable edge weights layered over an immutable RoadNetwork. Starts equal to
// the base free-flow weights; edges can be rescaled, overwritten or removed
// (removed edges are never traversed).
//
// Stored densely: every layer is rebuilt per trip and read by every relaxation
// of the shortest-path search, so a flat copy beats a sparse lookup.
class WeightLayer {
 public:
  explicit WeightLayer(const RoadNetwork& base)
      : base_(&base), weights_(base.base_weights().begin(), base.base_weights().end()) {}

  const RoadNetwork& network() const { return *base_; }

  double weight(EdgeId e) const { return weights_[e]; }
  double operator[](EdgeId e) const { return weights_[e]; }
  std::span<const double> weights() const { return weights_; }

  bool removed(EdgeId e) const { return std::isinf(weights_[e]); }
  bool overridden(EdgeId e) const { return weights_[e] != base_->base_weights()[e]; }

  // w must be > 0.
  void set(EdgeId e, double w);
  void scale(EdgeId e, double factor) { set(e, weights_[e] * factor); }
  void remove(EdgeId e) { weights_[e] = std::numeric_limits<double>::infinity(); }
  void reset(EdgeId e) { weights_[e] = base_->base_weights()[e]; }

  // Edge ids whose effective weight differs from the base, ascending.
  std::vector<EdgeId> overrides() const;

 private:
  const RoadNetwork* base_;
  std::vector<double> weights_;
};

}  // namespace ta
