#pragma once

#include <string>

#include <json.hpp>

#include "horo/cartan_analysis.hpp"
#include "horo/heisenberg_classifier.hpp"
#include "horo/subfinsler.hpp"

namespace horo {

inline constexpr const char* kSchema = "horocalc/1";
inline constexpr const char* kVersion = "1.0.0";

using nlohmann::json;

json element_to_json(const GroupElement& g);
json word_to_json(const Word& w);
json point_to_json(const Point2& p);

json to_json(const LengthResult& r);
json to_json(const BusemannEstimate& e);
json to_json(const ComparisonReport& r);
json to_json(const CofinalWitness& w);
json to_json(const MarkedGroup& G, const RayInvariants& inv);
json to_json(const Classifier::OrbitKey& key);
json to_json(const AnagramSet& a);
json to_json(const IntervalReport& r);
json to_json(const DirectionFrame& f);
json to_json(const BoundAuditReport& r);
json to_json(const UpperAuditReport& r);
json to_json(const CentralElement& c);
json to_json(const DistinctnessReport& r);
json to_json(const StabilizerReport& r);
json to_json(const Polygon& P);
json to_json(const WindowComparison& r);
json to_json(const SeamReport& r);

/// Rows "n,delta,count,max_pairing,reference,excess,cbrt_excess".
std::string lower_audit_csv(const BoundAuditReport& r);
/// Rows "radius,points,max_difference".
std::string window_comparison_csv(const WindowComparison& r);
/// Rows "distance,count".
std::string sphere_sizes_csv(const DistanceTable& t);

}  // namespace horo
