#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "horo/flat_table.hpp"
#include "horo/marked_group.hpp"
#include "horo/polytope.hpp"

namespace horo {

struct SearchLimits {
  /// Upper bound on stored elements per search or ball.
  std::size_t max_entries = 8'000'000;
};

/// Exact word-metric ball: element -> distance from the identity.
class DistanceTable {
 public:
  DistanceTable(const MarkedGroup& G, int radius);

  const GroupShape& shape() const { return shape_; }
  const std::string& group_hash() const { return hash_; }
  int radius() const { return radius_; }
  std::size_t size() const { return table_.size(); }

  std::optional<int> distance(const GroupElement& g) const;
  std::optional<int> distance(const std::int64_t* key) const;
  bool contains(const GroupElement& g) const { return distance(g).has_value(); }

  /// Entries sorted by (distance, coordinates).
  std::vector<std::pair<GroupElement, int>> entries() const;
  /// Number of elements at each distance 0..radius.
  std::vector<std::size_t> sphere_sizes() const;

  /// Restriction to a smaller radius.
  DistanceTable truncated(int radius) const;

 private:
  friend DistanceTable ball(const MarkedGroup&, int, const SearchLimits&);
  friend std::optional<DistanceTable> load_ball(const MarkedGroup&, const std::string&);

  GroupShape shape_;
  std::string hash_;
  int radius_ = 0;
  FlatTable table_;
};

/// Complete ball of the given radius by layered breadth-first search.
/// Throws BudgetError (achieved = last complete radius) past limits.max_entries.
DistanceTable ball(const MarkedGroup& G, int radius, const SearchLimits& limits = {});

/// JSONL persistence: a header {"group_hash","radius","key_encoding"} followed
/// by one {"key":[...],"dist":d} per element, sorted.
void save_ball(const DistanceTable& table, const std::string& path);
/// nullopt when the file is missing or belongs to another group/generating set.
std::optional<DistanceTable> load_ball(const MarkedGroup& G, const std::string& path);
/// Cache directory: $HOROCALC_CACHE when set, otherwise `fallback`.
std::string cache_directory(const std::string& fallback = "");
/// Loads a cached ball of at least `radius` from `dir`, or computes and stores it.
/// An empty `dir` disables caching.
DistanceTable cached_ball(const MarkedGroup& G, int radius, const std::string& dir,
                          const SearchLimits& limits = {});

enum class LengthStatus { Exact, ExceedsBudget, Inconclusive };
std::string_view to_string(LengthStatus s);

struct LengthResult {
  LengthStatus status = LengthStatus::Inconclusive;
  /// Exact length when status == Exact.
  int length = -1;
  int budget = 0;
  /// Admissible lower bound from the abelianized gauge.
  int lower_bound = 0;
  std::size_t stored = 0;

  bool exact() const { return status == LengthStatus::Exact; }
};

/// Word-length oracle for one marked group. Bidirectional layered search with
/// nodes pruned by depth + ceil(gauge of the abelianized remainder) > bound,
/// iterated over increasing bounds. Results are memoized; safe to share.
class WordMetric {
 public:
  explicit WordMetric(const MarkedGroup& G, SearchLimits limits = {});

  const MarkedGroup& group() const { return G_; }
  const Polytope& polytope() const { return polytope_; }
  const GaugeHeuristic& heuristic() const { return heuristic_; }

  /// Elements of this ball are answered by lookup; others get radius+1 as a
  /// lower bound.
  void attach_ball(std::shared_ptr<const DistanceTable> table);

  int lower_bound(const GroupElement& g) const;
  LengthResult length(const GroupElement& g, int budget) const;
  /// d(a, b) = |a^-1 b|.
  LengthResult distance(const GroupElement& a, const GroupElement& b, int budget) const {
    return length(mul(inv(a), b), budget);
  }
  /// Exact length or BudgetError.
  int exact_length(const GroupElement& g, int budget) const;

  /// True iff |w| equals the length of its value (then every prefix is geodesic).
  /// Throws BudgetError when the search is inconclusive.
  bool is_geodesic_word(const Word& w) const;

  std::size_t queries() const { return queries_; }

 private:
  MarkedGroup G_;
  SearchLimits limits_;
  Polytope polytope_;
  GaugeHeuristic heuristic_;
  std::vector<std::vector<std::int64_t>> gens_;
  std::shared_ptr<const DistanceTable> ball_;

  mutable std::mutex mutex_;
  mutable std::map<std::vector<std::int64_t>, int> exact_;
  mutable std::map<std::vector<std::int64_t>, int> exceeds_;  // proven length > value
  mutable std::size_t queries_ = 0;

  LengthResult bounded_search(const GroupElement& g, int bound) const;
};

LengthResult word_length(const MarkedGroup& G, const GroupElement& g, int budget,
                         const SearchLimits& limits = {});
bool is_geodesic_word(const MarkedGroup& G, const Word& w);

enum class FaceCertificate { Certified, Unknown };
/// Certified iff the abelianized letters share a proper face of the
/// abelianized generator polytope (then w is geodesic).
FaceCertificate geodesic_certificate_by_face(const MarkedGroup& G, const Word& w);
FaceCertificate geodesic_certificate_by_face(const Polytope& P, const MarkedGroup& G, const Word& w);

}  // namespace horo
