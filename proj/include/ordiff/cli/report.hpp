#pragma once

// JSON (complete, round-trippable) and text (truncated) renderings of reports.

#include <json.hpp>
#include <span>
#include <string>

#include "ordiff/cones.hpp"
#include "ordiff/diffcheck.hpp"
#include "ordiff/ordopt.hpp"
#include "ordiff/spaces.hpp"

namespace ordiff {

using json = nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(SpaceKind, {{SpaceKind::SequenceLp, "SequenceLp"},
                                         {SpaceKind::GridC01, "GridC01"},
                                         {SpaceKind::GridLp01, "GridLp01"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Relation, {{Relation::LessEq, "LessEq"},
                                        {Relation::GreaterEq, "GreaterEq"},
                                        {Relation::Equal, "Equal"},
                                        {Relation::Incomparable, "Incomparable"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {{Verdict::Pass, "Pass"}, {Verdict::Fail, "Fail"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ExtremumStatus, {{ExtremumStatus::Maximum, "Maximum"},
                                              {ExtremumStatus::Minimum, "Minimum"},
                                              {ExtremumStatus::NotExtreme, "NotExtreme"},
                                              {ExtremumStatus::Inconclusive, "Inconclusive"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ExtremumScope, {{ExtremumScope::Directional, "Directional"},
                                             {ExtremumScope::Absolute, "Absolute"}})
NLOHMANN_JSON_SERIALIZE_ENUM(CriticalSetKind, {{CriticalSetKind::OnlyOrigin, "OnlyOrigin"},
                                               {CriticalSetKind::Empty, "Empty"},
                                               {CriticalSetKind::OriginPlusNonzeroRoots, "OriginPlusNonzeroRoots"},
                                               {CriticalSetKind::NonzeroRootsOnly, "NonzeroRootsOnly"}})

void to_json(json& j, const SpaceDescriptor& s);
void from_json(const json& j, SpaceDescriptor& s);
void to_json(json& j, const ConeDiagnostic& d);
void from_json(const json& j, ConeDiagnostic& d);
void to_json(json& j, const OrderVerdict& v);
void from_json(const json& j, OrderVerdict& v);
void to_json(json& j, const FrechetReport& r);
void from_json(const json& j, FrechetReport& r);
void to_json(json& j, const ExtremumWitness& w);
void from_json(const json& j, ExtremumWitness& w);
void to_json(json& j, const ExtremumVerdict& v);
void from_json(const json& j, ExtremumVerdict& v);
void to_json(json& j, const MonotoneCertificate& c);
void from_json(const json& j, MonotoneCertificate& c);
void to_json(json& j, const CriticalSetResult& r);
void from_json(const json& j, CriticalSetResult& r);

}  // namespace ordiff

namespace ordiff::cli {

/// Text vectors show at most this many coordinates.
inline constexpr std::size_t kTextCoords = 8;

/// "[a, b, ..., h] ... (+N more)"
std::string format_coords(std::span<const double> v);
std::string format_number(double x);

std::string render(const FrechetReport& r);
std::string render(const ExtremumVerdict& v);
std::string render(const MonotoneCertificate& c);
std::string render(const CriticalSetResult& r);
std::string render(const OrderVerdict& v);

}  // namespace ordiff::cli
