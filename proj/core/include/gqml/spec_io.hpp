#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gqml/algebra.hpp"
#include "gqml/groupoid.hpp"
#include "gqml/metric.hpp"
#include "gqml/rapid_decay.hpp"
#include "gqml/state.hpp"

namespace gqml {

using Json = nlohmann::json;

/// A parsed and fully validated groupoid document:
///
///   {"group":  {"order": n, "cayley": [[...]], "inverses": [...], "identity": i,
///               "labels": [...]?},
///    "space":  {"size": m, "labels": [...]?},
///    "action": [[...]],                                   // order × m
///    "length": {"type": "word", "generators": [...], "weights": [...]?}
///            | {"type": "table", "values": [[...]]}}
struct GroupoidSpec {
  TransformationGroupoid groupoid;
  LengthFunction length;
  std::vector<std::string> group_labels;
  std::vector<std::string> space_labels;
};

/// Throws Error{ParseError} for structural problems and the groupoid-core
/// validation errors otherwise; every error carries a JSON pointer.
GroupoidSpec parse_groupoid_spec(const Json& doc);
Json groupoid_spec_to_json(const GroupoidSpec& spec);

/// Throws Error{ParseError} when the file is unreadable or not JSON.
Json read_json_file(const std::filesystem::path& path);

/// {"re": [[...]], "im": [[...]]}, order × |X|; "im" may be omitted.
AlgebraElement parse_element(const TransformationGroupoid& groupoid, const Json& doc);
Json element_to_json(const AlgebraElement& f);

/// {"blocks": [{"x": i, "re": [[...]], "im": [[...]]}, ...]} with omitted
/// points read as zero blocks, or {"vector": {"x": i, "psi_re": [...], "psi_im": [...]}}.
State parse_state(const TransformationGroupoid& groupoid, const Json& doc);
Json state_to_json(const State& state);

Json certificate_to_json(const DistanceCertificate& cert);
Json rd_report_to_json(const RdReport& report);

/// Serialises with every double at 17 significant digits (so values round
/// trip exactly) and non-finite doubles as null. Object keys come out sorted.
std::string dump_json(const Json& value, int indent = 2);

/// Fibre matrix of f over x; the header row names the group elements.
std::string fibre_matrix_csv(const GroupoidSpec& spec, const AlgebraElement& f, int x);
std::string tail_table_csv(const RdReport& report);

}  // namespace gqml
