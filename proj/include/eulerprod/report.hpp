#pragma once

#include <string>

#include <json.hpp>

#include "eulerprod/continuation.hpp"
#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/geometry.hpp"
#include "eulerprod/puiseux.hpp"

namespace eulerprod {

// Keys keep insertion order so a report serializes the same way every run.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

Json to_json(const Complex& z);      // {"re": x, "im": y}
Json to_json(const Rational& q);     // "p/q"
Json to_json(const BigInt& v);       // number when it fits in 64 bits, else a decimal string
Json to_json(const MultiIndex& m);   // array
Json exponent_json(const ExponentVector& a);
Json to_json(const SparsePolynomial& h);
Json to_json(const UnivariatePolynomial& f);

Json to_json(const ExpansionTable& table);
Json to_json(const ExpansionCheck& check);
Json to_json(const CyclotomyVerdict& verdict);
Json to_json(const CyclotomicRemoval& removal);

Json to_json(const HalfspaceSystem& system);
Json to_json(const FaceReport& face);
Json to_json(const BoundaryVerdict& verdict);

Json to_json(const DirectProduct& product);
Json to_json(const ContinuationResult& result);

Json to_json(const BasePoint& base);
Json to_json(const DirectionConfig& dir);
Json to_json(const PuiseuxBranch& branch);
Json to_json(const PrimeCount& count);
Json to_json(const RectangleCount& count);
Json to_json(const InterferenceReport& report);
Json to_json(const FaceAnalysis& analysis);

/// {"schema": 1, "command": ..., "inputs": ..., "settings": ..., "results": ...}
Json make_document(const std::string& command, Json inputs, Json settings, Json results);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& doc);

}  // namespace eulerprod
