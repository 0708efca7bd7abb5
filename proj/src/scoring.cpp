#include "hlvu/scoring.hpp"

#include <algorithm>
#include <numeric>

#include "hlvu/error.hpp"

namespace hlvu {

double reciprocal_rank(const std::set<NodeId>& key,
                       std::span<const RankedAnswer> ranked) {
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (key.contains(ranked[i].node)) return 1.0 / static_cast<double>(i + 1);
  return 0.0;
}

FillScore score_fill(const FillQuery& query, const FillAnswers& answers) {
  FillScore score;
  score.query_id = query.id;
  static const std::vector<RankedAnswer> none;
  double total = 0.0;
  for (const Variable& var : query.variables) {
    std::set<NodeId> keyed;
    for (const Binding& b : query.key)
      if (auto it = b.find(var.name); it != b.end()) keyed.insert(it->second);
    auto it = answers.by_variable.find(var.name);
    const auto& ranked = it == answers.by_variable.end() ? none : it->second;
    double rr = reciprocal_rank(keyed, ranked);
    score.variable_rr[var.name] = rr;
    total += rr;
  }
  if (!query.variables.empty())
    score.mrr = total / static_cast<double>(query.variables.size());

  // Variables are scored independently; flag top answers that are each
  // correct but do not come from one keyed binding.
  Binding top;
  for (const Variable& var : query.variables) {
    auto it = answers.by_variable.find(var.name);
    if (it == answers.by_variable.end() || it->second.empty() ||
        score.variable_rr[var.name] != 1.0)
      return score;
    top.emplace(var.name, it->second.front().node);
  }
  if (query.variables.size() > 1 &&
      std::find(query.key.begin(), query.key.end(), top) == query.key.end())
    score.notes.push_back("top-ranked answers are individually correct but not a joint solution");
  return score;
}

ChoiceScore score_choice_query(const ChoiceQuery& query, const ChoiceAnswer& answer) {
  ChoiceScore score;
  score.query_id = query.id;
  if (query.key) score.expected = query.options.at(*query.key).str();
  if (answer.label) score.submitted = answer.label->str();
  score.correct = query.key && answer.label && *answer.label == query.options[*query.key];
  return score;
}

double score_choice(std::span<const ChoiceQuery> queries,
                    const std::map<std::string, ChoiceAnswer>& answers) {
  if (queries.empty()) return 0.0;
  std::size_t correct = 0;
  for (const ChoiceQuery& q : queries) {
    auto it = answers.find(q.id);
    if (it != answers.end() && score_choice_query(q, it->second).correct) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(queries.size());
}

PathVerdict validate_path(const KnowledgeGraph& graph, const PathQuery& query,
                          const Path& path) {
  if (path.nodes.size() < 2 || path.relations.size() + 1 != path.nodes.size())
    return PathVerdict::invalid("malformed path");
  if (path.source() != query.source)
    return PathVerdict::invalid("starts at " + path.source().str() + ", not " +
                                query.source.str());
  if (path.target() != query.target)
    return PathVerdict::invalid("ends at " + path.target().str() + ", not " +
                                query.target.str());
  for (std::size_t i = 0; i < path.relations.size(); ++i) {
    const NodeId& a = path.nodes[i];
    const NodeId& b = path.nodes[i + 1];
    if (!graph.has_node(a) || !graph.has_node(b) ||
        !graph.has_link(a, path.relations[i], b))
      return PathVerdict::invalid("edge " + std::to_string(i + 1) + " (" + a.str() +
                                  " -[" + path.relations[i].str() + "]-> " + b.str() +
                                  ") not in graph");
  }
  std::set<NodeId> seen(path.nodes.begin(), path.nodes.end());
  if (seen.size() != path.nodes.size()) return PathVerdict::invalid("not simple");
  if (path.edge_count() > query.max_edges)
    return PathVerdict::invalid("longer than max_edges = " +
                                std::to_string(query.max_edges));
  return PathVerdict::ok();
}

double f1_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

PathScore score_paths(const KnowledgeGraph& graph, const PathQuery& query,
                      const PathAnswers& answers) {
  PathScore score;
  score.query_id = query.id;
  score.key_size = query.key.size();
  score.submitted = answers.paths.size() + answers.rejected;
  const std::set<Path> key(query.key.begin(), query.key.end());
  std::set<Path> matched;
  std::set<Path> seen;
  for (std::size_t i = 0; i < answers.paths.size(); ++i) {
    const Path& p = answers.paths[i];
    ScoredPath scored;
    scored.index = i + 1;
    scored.verdict = validate_path(graph, query, p);
    scored.in_key = key.contains(p);
    scored.duplicate = !seen.insert(p).second;
    if (scored.verdict.valid && scored.in_key) matched.insert(p);
    score.paths.push_back(std::move(scored));
  }
  score.matched = matched.size();
  if (score.key_size > 0)
    score.recall = static_cast<double>(score.matched) / static_cast<double>(score.key_size);
  if (score.submitted > 0)
    score.precision = static_cast<double>(score.matched) / static_cast<double>(score.submitted);
  score.f1 = f1_score(score.precision, score.recall);
  return score;
}

namespace {

const std::string& movie_of(const QueryScore& s) {
  return std::visit([](const auto& v) -> const std::string& { return v.movie; }, s);
}

template <typename T, typename F>
double mean_of(const std::vector<T>& items, F field) {
  if (items.empty()) return 0.0;
  double total = 0.0;
  for (const T& item : items) total += field(item);
  return total / static_cast<double>(items.size());
}

}  // namespace

ScoreReport aggregate(std::span<const QueryScore> scores) {
  ScoreReport report;
  for (const QueryScore& s : scores) {
    const std::string& movie = movie_of(s);
    if (&s == &scores.front())
      report.movie = movie;
    else if (movie != report.movie)
      throw ScoringError("scores mix movies '" + report.movie + "' and '" + movie + "'");

    if (const auto* f = std::get_if<FillScore>(&s)) {
      if (!report.fill) report.fill.emplace();
      report.fill->queries.push_back(*f);
    } else if (const auto* c = std::get_if<ChoiceScore>(&s)) {
      if (!report.choice) report.choice.emplace();
      report.choice->queries.push_back(*c);
    } else {
      if (!report.paths) report.paths.emplace();
      report.paths->queries.push_back(std::get<PathScore>(s));
    }
  }

  if (report.fill) {
    FillSummary& f = *report.fill;
    f.mrr_query_mean = mean_of(f.queries, [](const FillScore& q) { return q.mrr; });
    double total = 0.0;
    for (const FillScore& q : f.queries)
      for (const auto& [var, rr] : q.variable_rr) {
        total += rr;
        ++f.variable_count;
      }
    if (f.variable_count > 0) f.mrr_variable_mean = total / static_cast<double>(f.variable_count);
  }
  if (report.choice) {
    ChoiceSummary& c = *report.choice;
    c.correct = static_cast<std::size_t>(std::count_if(
        c.queries.begin(), c.queries.end(), [](const ChoiceScore& q) { return q.correct; }));
    if (!c.queries.empty())
      c.accuracy = static_cast<double>(c.correct) / static_cast<double>(c.queries.size());
  }
  if (report.paths) {
    PathSummary& p = *report.paths;
    p.recall = mean_of(p.queries, [](const PathScore& q) { return q.recall; });
    p.precision = mean_of(p.queries, [](const PathScore& q) { return q.precision; });
    p.f1 = mean_of(p.queries, [](const PathScore& q) { return q.f1; });
  }
  return report;
}

std::vector<QueryScore> score_submission(const KnowledgeGraph& graph,
                                         const QueryDocument& key,
                                         const Submission& submission) {
  if (submission.type != key.type())
    throw ScoringError(std::string("submission of type ") + type_letter(submission.type) +
                       " cannot be scored against type " + type_letter(key.type()) +
                       " keys");
  std::vector<QueryScore> out;
  auto tag = [&](auto score) {
    score.movie = key.movie;
    out.emplace_back(std::move(score));
  };
  std::visit(
      [&](const auto& list) {
        for (const auto& q : list) {
          using T = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<T, FillQuery>) {
            auto it = submission.fill.find(q.id);
            tag(score_fill(q, it == submission.fill.end() ? FillAnswers{} : it->second));
          } else if constexpr (std::is_same_v<T, ChoiceQuery>) {
            auto it = submission.choice.find(q.id);
            tag(score_choice_query(
                q, it == submission.choice.end() ? ChoiceAnswer{} : it->second));
          } else {
            auto it = submission.paths.find(q.id);
            tag(score_paths(graph, q,
                            it == submission.paths.end() ? PathAnswers{} : it->second));
          }
        }
      },
      key.queries);
  return out;
}

}  // namespace hlvu
