#pragma once

#include <string>

#include <json.hpp>

#include "balfilt/chain.hpp"
#include "balfilt/flow.hpp"

namespace balfilt {

inline constexpr const char* kToolName = "balfilt";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Parses a state document:
///   { "rank": r,
///     "characters": [[int,...], ...],            (or "point", see below)
///     "polarisation": [rational, ...],           optional, default zero
///     "gram": [[rational, ...], ...],            optional, default identity
///     "point": {"weights": [[int,...], ...],
///               "coordinates": [rational, ...]}  reduces via state_of_point
///   }
/// Rationals are accepted as JSON integers or "p/q" strings. Errors carry
/// the offending field path.
PolarisedState parse_state(const std::string& text);

PolarisedState state_from_json(const Json& doc);

/// Canonical emission: characters as integer arrays, polarisation and gram
/// entries as canonical rational strings. parse(emit(s)) == s.
Json state_to_json(const PolarisedState& s);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& path);

QVec vector_from_json(const Json& j, const std::string& path);
Json vector_to_json(const QVec& v);
Json matrix_to_json(const QMat& m);
Json integer_matrix_to_json(const QMat& m);

Json slice_to_json(const SliceResult& sl);
Json balanced_to_json(const BalancedResult& b);
Json sequence_to_json(const SequentialFiltration& seq);
SequentialFiltration sequence_from_json(const Json& doc, std::size_t rank);
Json chain_to_json(const ChainTrace& trace);
Json flow_result_to_json(const flow::FlowResult& r);

/// FNV-1a 64-bit digest of the raw input bytes, as "fnv1a64:<hex>".
std::string input_digest(const std::string& text);

/// Report envelope with stable field order.
Json make_report(const std::string& command, Json options, const std::string& digest,
                 Json result);

}  // namespace balfilt
