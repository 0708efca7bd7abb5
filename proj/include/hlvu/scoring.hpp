#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hlvu/graph.hpp"
#include "hlvu/protocol.hpp"
#include "hlvu/query.hpp"

namespace hlvu {

inline constexpr int kReportVersion = 1;

/// 1/rank of the first answer found in `key` (ranks start at 1); 0 when no
/// answer is in the key.
double reciprocal_rank(const std::set<NodeId>& key,
                       std::span<const RankedAnswer> ranked);

struct FillScore {
  std::string movie;
  std::string query_id;
  std::map<std::string, double> variable_rr;
  double mrr = 0.0;  // mean of variable_rr over the query's variables
  std::vector<std::string> notes;
};

/// Scores each variable's ranked list against the nodes any key binding
/// assigns to it; a variable with no answers scores 0.
FillScore score_fill(const FillQuery& query, const FillAnswers& answers);

struct ChoiceScore {
  std::string movie;
  std::string query_id;
  bool correct = false;
  std::string expected;
  std::string submitted;  // empty when unanswered
};

ChoiceScore score_choice_query(const ChoiceQuery& query, const ChoiceAnswer& answer);

/// Correct answers over total questions; unanswered questions are wrong.
double score_choice(std::span<const ChoiceQuery> queries,
                    const std::map<std::string, ChoiceAnswer>& answers);

struct PathVerdict {
  bool valid = true;
  std::string reason;  // first failing check when invalid

  static PathVerdict ok() { return {}; }
  static PathVerdict invalid(std::string why) { return {false, std::move(why)}; }
};

/// Structural check: endpoints match the query, every hop is a
/// traversal-view edge, no node repeats, length within max_edges.
PathVerdict validate_path(const KnowledgeGraph& graph, const PathQuery& query,
                          const Path& path);

struct ScoredPath {
  std::size_t index = 0;  // 1-based position in the submission
  PathVerdict verdict;
  bool in_key = false;
  bool duplicate = false;
};

struct PathScore {
  std::string movie;
  std::string query_id;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  std::size_t key_size = 0;
  std::size_t submitted = 0;  // every submitted entry, including unreadable ones
  std::size_t matched = 0;    // distinct valid submitted paths in the key
  std::vector<ScoredPath> paths;
};

/// Recall = matched / |key|; precision = matched / submitted (duplicates and
/// rejected entries count in the denominator); F1 is 0 when both are 0.
PathScore score_paths(const KnowledgeGraph& graph, const PathQuery& query,
                      const PathAnswers& answers);

double f1_score(double precision, double recall);

using QueryScore = std::variant<FillScore, ChoiceScore, PathScore>;

struct FillSummary {
  std::vector<FillScore> queries;
  double mrr_query_mean = 0.0;     // Q = number of queries
  double mrr_variable_mean = 0.0;  // Q = number of variables over all queries
  std::size_t variable_count = 0;
};

struct ChoiceSummary {
  std::vector<ChoiceScore> queries;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct PathSummary {
  std::vector<PathScore> queries;
  double recall = 0.0;  // macro averages
  double precision = 0.0;
  double f1 = 0.0;
};

struct ScoreReport {
  int report_version = kReportVersion;
  std::string team;
  std::string movie;
  Parameters parameters;
  std::optional<FillSummary> fill;
  std::optional<ChoiceSummary> choice;
  std::optional<PathSummary> paths;
  std::vector<std::string> diagnostics;
};

/// Per-type means over the given per-query scores. Throws ScoringError when
/// scores from more than one movie are mixed.
ScoreReport aggregate(std::span<const QueryScore> scores);

/// Scores every query of a key document against a parsed submission.
std::vector<QueryScore> score_submission(const KnowledgeGraph& graph,
                                         const QueryDocument& key,
                                         const Submission& submission);

/// Fixed-width table, one line per query plus per-type aggregates.
std::string report_to_text(const ScoreReport& report);
/// Structured form with stable key names and a report_version field.
std::string report_to_json(const ScoreReport& report);

}  // namespace hlvu
