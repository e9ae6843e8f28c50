#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lorentz/extended.hpp"
#include "lorentz/space.hpp"

namespace lorentz {

/// Event (t, x) in R^{1,n}.
struct Event {
  double t = 0.0;
  std::vector<double> x;

  Event() = default;
  Event(double time, std::vector<double> space) : t(time), x(std::move(space)) {}
  Event(double time, double space) : t(time), x{space} {}

  friend bool operator==(const Event&, const Event&) = default;
};

double spatial_norm(const Event& a, const Event& b);
double euclidean_distance(const Event& a, const Event& b);

/// tau((t1,x1),(t2,x2)) = sqrt((t2-t1)^2 - |x2-x1|^2) on causal pairs, else 0.
Extended minkowski_tau(const Event& p, const Event& q);

/// Region the samplers draw base points from: t in [t_min, t_max] and each
/// spatial coordinate in [x_min, x_max].
struct SamplingBox {
  double t_min = -1.0;
  double t_max = 1.0;
  double x_min = -1.0;
  double x_max = 1.0;
};

/// Minkowski space R^{1,n} with coordinate time.
class MinkowskiSpace {
 public:
  using point_type = Event;

  explicit MinkowskiSpace(int spatial_dimension = 1, SamplingBox box = {});

  static constexpr std::string_view kind() { return "minkowski"; }

  int spatial_dimension() const { return dim_; }
  const SamplingBox& box() const { return box_; }

  Extended tau(const Event& p, const Event& q) const { return minkowski_tau(p, q); }
  bool causal(const Event& p, const Event& q, double slack = 0.0) const;
  bool chronological(const Event& p, const Event& q) const;
  bool contains(const Event& p) const;
  bool same(const Event& a, const Event& b) const { return a == b; }
  bool precedes(const Event& a, const Event& b) const;
  double tolerance() const { return 1e-9; }
  double background_distance(const Event& a, const Event& b) const {
    return euclidean_distance(a, b);
  }

  Event sample_point(Rng& rng) const;
  std::optional<Event> sample_future(const Event& p, Rng& rng) const;

  /// Coordinatewise limit of a Cauchy sequence, approximated by its last
  /// term. The caller certifies the tail bound.
  std::optional<Event> limit(std::span<const Event> sequence) const;

  /// Point at parameter lambda on the straight segment from a to b.
  Event interpolate(const Event& a, const Event& b, double lambda) const;

  nlohmann::json to_json(const Event& p) const;
  Event from_json(const nlohmann::json& j) const;
  std::string describe(const Event& p) const;

  /// Parses "t x1 x2 ..." or "t,x1,..." (whitespace or comma separated).
  Event parse(std::string_view text) const;

 private:
  int dim_;
  SamplingBox box_;
};

/// Minkowski space with finitely many points removed from the universe.
/// A point within `removal_radius` (max-norm) of a removed point is treated
/// as removed.
class PuncturedMinkowski {
 public:
  using point_type = Event;

  PuncturedMinkowski(MinkowskiSpace base, std::vector<Event> removed,
                     double removal_radius = 1e-9);

  static constexpr std::string_view kind() { return "punctured"; }

  const MinkowskiSpace& base() const { return base_; }
  const std::vector<Event>& removed() const { return removed_; }
  int spatial_dimension() const { return base_.spatial_dimension(); }

  Extended tau(const Event& p, const Event& q) const { return base_.tau(p, q); }
  bool causal(const Event& p, const Event& q, double slack = 0.0) const {
    return base_.causal(p, q, slack);
  }
  bool chronological(const Event& p, const Event& q) const { return base_.chronological(p, q); }
  bool contains(const Event& p) const;
  bool same(const Event& a, const Event& b) const { return a == b; }
  bool precedes(const Event& a, const Event& b) const { return base_.precedes(a, b); }
  double tolerance() const { return base_.tolerance(); }
  double background_distance(const Event& a, const Event& b) const {
    return euclidean_distance(a, b);
  }

  Event sample_point(Rng& rng) const;
  std::optional<Event> sample_future(const Event& p, Rng& rng) const;

  /// Like the Minkowski limit, but undefined when the limit is a removed
  /// point: the punctured space is not complete.
  std::optional<Event> limit(std::span<const Event> sequence) const;

  Event interpolate(const Event& a, const Event& b, double lambda) const {
    return base_.interpolate(a, b, lambda);
  }

  nlohmann::json to_json(const Event& p) const { return base_.to_json(p); }
  Event from_json(const nlohmann::json& j) const { return base_.from_json(j); }
  std::string describe(const Event& p) const { return base_.describe(p); }
  Event parse(std::string_view text) const { return base_.parse(text); }

 private:
  MinkowskiSpace base_;
  std::vector<Event> removed_;
  double removal_radius_;
};

/// T = t with Euclidean anti-Lipschitz witnesses of the given radius.
TimeFunctionBundle<Event> canonical_time(double witness_radius = 1.0);

/// T = t^3 with Euclidean witnesses. Flat at t = 0 and steep for |t| > 1/sqrt(3).
TimeFunctionBundle<Event> cubic_time(double witness_radius = 1.0);

}  // namespace lorentz
