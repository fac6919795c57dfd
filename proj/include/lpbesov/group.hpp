#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpbesov {

enum class GroupFamily { torus, heisenberg };

std::string to_string(GroupFamily family);
std::optional<GroupFamily> parse_group_family(const std::string& name);

/// Finite model parameters: torus Z_N^d or Heisenberg group over Z_N
/// (upper-triangular unipotent 3x3 matrices with entries mod N).
struct GroupSpec {
  GroupFamily family = GroupFamily::torus;
  int modulus = 2;    // N >= 2
  int dimension = 1;  // torus only
  std::int64_t element_cap = 1 << 20;

  std::int64_t element_count() const;
  std::string label() const;
  void validate() const;  // throws std::invalid_argument
};

/// A finite group with a fixed symmetric generating set, elements addressed
/// by dense indices. Right translations by generators are precomputed, so the
/// Cayley-graph stencil of an operator is a table lookup.
class CayleyGroup {
 public:
  static CayleyGroup build(const GroupSpec& spec);

  int size() const { return size_; }
  int identity() const { return 0; }
  const GroupSpec& spec() const { return spec_; }

  int multiply(int a, int b) const;
  int inverse(int a) const { return inverse_[a]; }

  /// Number of generator pairs {s_j, s_j^{-1}}.
  int generator_count() const { return pairs_; }
  int generator(int j) const { return gen_[check_gen(j)]; }
  int generator_inverse(int j) const { return gen_inv_[check_gen(j)]; }

  /// x * s_j and x * s_j^{-1} via the precomputed tables.
  int translate(int x, int j) const { return fwd_[static_cast<std::size_t>(x) * pairs_ + check_gen(j)]; }
  int translate_inverse(int x, int j) const { return bwd_[static_cast<std::size_t>(x) * pairs_ + check_gen(j)]; }

  /// Coordinates of an element (d entries for the torus, (a,b,c) for Heisenberg).
  std::vector<int> coordinates(int idx) const;

 private:
  CayleyGroup() = default;
  int check_gen(int j) const {
    if (j < 0 || j >= pairs_) throw std::out_of_range("generator index out of range");
    return j;
  }
  int encode(const std::vector<int>& c) const;

  GroupSpec spec_;
  int size_ = 0;
  int pairs_ = 0;
  std::vector<std::int32_t> fwd_, bwd_;  // size_ x pairs_
  std::vector<std::int32_t> inverse_;
  std::vector<std::int32_t> gen_, gen_inv_;
};

/// Word-metric data from a breadth-first search over generator edges:
/// dist[x] = |x| and the ball volume sequence V(r) = #{x : |x| <= r}.
struct WordMetric {
  std::vector<int> dist;
  std::vector<std::int64_t> ball_volume;  // indexed by radius 0..r_max
  int r_max = 0;

  std::int64_t volume(int r) const {
    if (r < 0) return 0;
    if (r > r_max) r = r_max;
    return ball_volume[r];
  }
  /// V at a real radius, piecewise constant between integer radii.
  double volume_at(double r) const {
    if (r < 0) return 0.0;
    return static_cast<double>(volume(static_cast<int>(r)));
  }
};

WordMetric word_metric(const CayleyGroup& g);

void write_word_metric_csv(const WordMetric& m, const std::string& path);

struct FitWindow {
  int r_lo = 0;
  int r_hi = 0;
  int sample_count() const { return r_hi >= r_lo ? r_hi - r_lo + 1 : 0; }
};

/// Fitted growth exponents and the measured doubling constant.
/// When the metric range is too short for a meaningful fit, only the
/// doubling constant is populated and sufficient_range is false.
struct GrowthProfile {
  std::optional<double> local_dimension;   // small-radius log-log slope
  std::optional<double> global_dimension;  // mid-radius log-log slope
  double doubling_constant = 1.0;          // max_r V(2r)/V(r)
  int smoothing_order = 1;                 // 1 + max(floor(d/2), floor(D/2))
  FitWindow small_window, large_window;
  bool sufficient_range = false;
};

GrowthProfile growth_profile(const WordMetric& m);

}  // namespace lpbesov
