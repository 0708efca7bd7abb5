#include <fmt/format.h>

#include <json.hpp>

#include "hlvu/scoring.hpp"

namespace hlvu {

namespace {

std::string fixed(double value) { return fmt::format("{:.6f}", value); }

}  // namespace

std::string report_to_text(const ScoreReport& report) {
  std::string out;
  auto line = [&out](const std::string& text) {
    out += text;
    out += '\n';
  };
  line(fmt::format("# HLVU score report, report_version {}", report.report_version));
  line("team: " + report.team);
  line("movie: " + report.movie);
  for (const auto& [k, v] : report.parameters) line("param: " + k + "=" + v);

  if (report.fill) {
    const FillSummary& f = *report.fill;
    line(fmt::format("[Type A] queries={} variables={}", f.queries.size(), f.variable_count));
    for (const FillScore& q : f.queries) {
      std::string row = fmt::format("{:<12} mrr={}", q.query_id, fixed(q.mrr));
      for (const auto& [var, rr] : q.variable_rr) row += " " + var + "=" + fixed(rr);
      line(row);
      for (const std::string& note : q.notes) line("  note: " + note);
    }
    line("Type A MRR (mean over queries): " + fixed(f.mrr_query_mean));
    line("Type A MRR (mean over variables): " + fixed(f.mrr_variable_mean));
  }
  if (report.choice) {
    const ChoiceSummary& c = *report.choice;
    line(fmt::format("[Type B] queries={}", c.queries.size()));
    for (const ChoiceScore& q : c.queries)
      line(fmt::format("{:<12} {:<9} expected=\"{}\" submitted=\"{}\"", q.query_id,
                       q.correct ? "correct" : "wrong", q.expected, q.submitted));
    line(fmt::format("Type B accuracy: {} ({}/{})", fixed(c.accuracy), c.correct,
                     c.queries.size()));
  }
  if (report.paths) {
    const PathSummary& p = *report.paths;
    line(fmt::format("[Type C] queries={}", p.queries.size()));
    for (const PathScore& q : p.queries) {
      line(fmt::format("{:<12} recall={} precision={} f1={} matched={} key={} submitted={}",
                       q.query_id, fixed(q.recall), fixed(q.precision), fixed(q.f1),
                       q.matched, q.key_size, q.submitted));
      for (const ScoredPath& s : q.paths) {
        std::string verdict = s.verdict.valid ? "valid" : "invalid (" + s.verdict.reason + ")";
        if (s.verdict.valid && !s.in_key) verdict += ", not in key";
        if (s.duplicate) verdict += ", duplicate";
        line(fmt::format("  path {}: {}", s.index, verdict));
      }
    }
    line("Type C recall (macro): " + fixed(p.recall));
    line("Type C precision (macro): " + fixed(p.precision));
    line("Type C F1 (macro): " + fixed(p.f1));
  }
  if (!report.diagnostics.empty()) {
    line("diagnostics:");
    for (const std::string& d : report.diagnostics) line("  " + d);
  }
  return out;
}

std::string report_to_json(const ScoreReport& report) {
  using nlohmann::json;
  json j;
  j["report_version"] = report.report_version;
  j["team"] = report.team;
  j["movie"] = report.movie;
  j["parameters"] = json(report.parameters);
  j["diagnostics"] = report.diagnostics;

  if (report.fill) {
    json queries = json::array();
    for (const FillScore& q : report.fill->queries)
      queries.push_back({{"query_id", q.query_id},
                         {"mrr", q.mrr},
                         {"variable_rr", json(q.variable_rr)},
                         {"notes", q.notes}});
    j["type_a"] = {{"queries", queries},
                   {"query_count", report.fill->queries.size()},
                   {"variable_count", report.fill->variable_count},
                   {"mrr_query_mean", report.fill->mrr_query_mean},
                   {"mrr_variable_mean", report.fill->mrr_variable_mean}};
  }
  if (report.choice) {
    json queries = json::array();
    for (const ChoiceScore& q : report.choice->queries)
      queries.push_back({{"query_id", q.query_id},
                         {"correct", q.correct},
                         {"expected", q.expected},
                         {"submitted", q.submitted}});
    j["type_b"] = {{"queries", queries},
                   {"query_count", report.choice->queries.size()},
                   {"correct", report.choice->correct},
                   {"accuracy", report.choice->accuracy}};
  }
  if (report.paths) {
    json queries = json::array();
    for (const PathScore& q : report.paths->queries) {
      json paths = json::array();
      for (const ScoredPath& s : q.paths)
        paths.push_back({{"index", s.index},
                         {"valid", s.verdict.valid},
                         {"reason", s.verdict.reason},
                         {"in_key", s.in_key},
                         {"duplicate", s.duplicate}});
      queries.push_back({{"query_id", q.query_id},
                         {"recall", q.recall},
                         {"precision", q.precision},
                         {"f1", q.f1},
                         {"key_size", q.key_size},
                         {"submitted", q.submitted},
                         {"matched", q.matched},
                         {"paths", paths}});
    }
    j["type_c"] = {{"queries", queries},
                   {"query_count", report.paths->queries.size()},
                   {"recall", report.paths->recall},
                   {"precision", report.paths->precision},
                   {"f1", report.paths->f1}};
  }
  return j.dump(2) + "\n";
}

}  // namespace hlvu
