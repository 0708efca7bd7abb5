#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlvu/query.hpp"

namespace hlvu {

// Wire vocabulary. The root element names the query type (QA, QB, QC); each
// query is a <Query id="..."> element. Node references are text content of
// the form "Person:Marge"; relations are "Relation:Spouse_of", with spaces of
// the label written as underscores. Variables are "<Category>:Unknown_<n>".
//
// Answer keys use roots KeyA, KeyB, KeyC and carry the query content plus
// <Binding>, <Correct> or <Path> elements. Query files never contain them.

/// "Relation:" + label with spaces replaced by underscores.
std::string encode_relation(const RelationLabel& relation);
/// Inverse of encode_relation; whitespace after the prefix is ignored.
/// Throws ProtocolError when the prefix is missing or the label is empty.
RelationLabel decode_relation(std::string_view text);

std::string emit_query_xml(const QueryDocument& document);
/// Keyless queries. Throws ProtocolError for malformed XML, unknown
/// elements, duplicate query ids and incomplete queries.
QueryDocument parse_query_xml(std::string_view text);

/// Query content plus answer keys, under a confidentiality comment.
std::string emit_key_xml(const QueryDocument& document);
QueryDocument parse_key_xml(std::string_view text);

struct RankedAnswer {
  NodeId node;
  double confidence = 0.0;

  friend bool operator==(const RankedAnswer&, const RankedAnswer&) = default;
};

/// Type A response: per variable, answers best first (rank = index + 1).
struct FillAnswers {
  std::map<std::string, std::vector<RankedAnswer>> by_variable;
};

/// Type B response.
struct ChoiceAnswer {
  std::optional<RelationLabel> label;
};

/// Type C response. Paths that could not be read still count as submitted.
struct PathAnswers {
  std::vector<Path> paths;
  std::size_t rejected = 0;
};

struct SubmissionDiagnostic {
  std::size_t line = 0;
  std::string query_id;  // empty for document-level notes
  std::string message;
};

struct Submission {
  QueryType type = QueryType::fill;
  std::string team;
  std::string movie;
  Parameters parameters;
  // Exactly one of these is populated, according to `type`. Every expected
  // query id has an entry, possibly empty.
  std::map<std::string, FillAnswers> fill;
  std::map<std::string, ChoiceAnswer> choice;
  std::map<std::string, PathAnswers> paths;
  std::vector<SubmissionDiagnostic> diagnostics;
};

/// Matches a participant response against the expected queries. Malformed
/// XML, a root that does not match the query type, a missing `team`
/// attribute or a different movie are fatal (ProtocolError). Problems with
/// individual items are recorded as diagnostics and only drop that item.
Submission parse_submission_xml(std::string_view text,
                                const QueryDocument& expected);

std::string emit_submission_xml(const Submission& submission);

}  // namespace hlvu
