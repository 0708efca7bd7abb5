#include "hlvu/protocol.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <variant>

#include "hlvu/error.hpp"
#include "hlvu/xml.hpp"

namespace hlvu {

namespace {

constexpr std::string_view kRelationPrefix = "Relation:";
constexpr std::string_view kKeyBanner =
    "<!-- CONFIDENTIAL: answer key. Do not distribute to participants. -->\n";

std::string_view trim(std::string_view text) {
  const char* ws = " \t\r\n\v\f";
  auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

std::string root_name(QueryType type, bool key) {
  return std::string(key ? "Key" : "Q") + type_letter(type);
}

std::optional<QueryType> type_from_letter(char c) {
  switch (c) {
    case 'A': return QueryType::fill;
    case 'B': return QueryType::choice;
    case 'C': return QueryType::path;
    default: return std::nullopt;
  }
}

std::optional<std::size_t> parse_index(std::string_view text) {
  std::size_t value = 0;
  text = trim(text);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------------------
// Writing

class Writer {
 public:
  void open(int depth, std::string_view name,
            const std::vector<std::pair<std::string, std::string>>& attrs = {}) {
    indent(depth);
    out_ += '<';
    out_ += name;
    append_attributes(attrs);
    out_ += ">\n";
  }
  void close(int depth, std::string_view name) {
    indent(depth);
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }
  void leaf(int depth, std::string_view name, std::string_view text,
            const std::vector<std::pair<std::string, std::string>>& attrs = {}) {
    indent(depth);
    out_ += '<';
    out_ += name;
    append_attributes(attrs);
    out_ += '>';
    out_ += xml::escape(text);
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }
  void empty(int depth, std::string_view name,
             const std::vector<std::pair<std::string, std::string>>& attrs) {
    indent(depth);
    out_ += '<';
    out_ += name;
    append_attributes(attrs);
    out_ += "/>\n";
  }
  void raw(std::string_view text) { out_ += text; }
  std::string take() { return std::move(out_); }

 private:
  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }
  void append_attributes(const std::vector<std::pair<std::string, std::string>>& attrs) {
    for (const auto& [k, v] : attrs) {
      out_ += ' ';
      out_ += k;
      out_ += "=\"";
      out_ += xml::escape(v);
      out_ += '"';
    }
  }

  std::string out_;
};

std::vector<std::pair<std::string, std::string>> root_attributes(
    const std::string* team, const std::string& movie, const Parameters& params) {
  std::vector<std::pair<std::string, std::string>> attrs;
  if (team) attrs.emplace_back("team", *team);
  if (!movie.empty()) attrs.emplace_back("movie", movie);
  for (const auto& [k, v] : params)
    if (k != "team" && k != "movie") attrs.emplace_back(k, v);
  return attrs;
}

std::string node_ref_text(const NodeRef& ref) {
  if (const NodeId* id = std::get_if<NodeId>(&ref)) return id->str();
  const Variable& v = std::get<Variable>(ref);
  return v.category ? v.category->name() + ":" + v.name : v.name;
}

void write_path(Writer& w, int depth, const Path& path, std::size_t index) {
  w.open(depth, "Path", {{"index", std::to_string(index)}});
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    const char* name = i == 0 ? "Source"
                       : i + 1 == path.nodes.size() ? "Target"
                                                    : "Node";
    w.leaf(depth + 1, name, path.nodes[i].str());
    if (i < path.relations.size())
      w.leaf(depth + 1, "Edge", encode_relation(path.relations[i]));
  }
  w.close(depth, "Path");
}

void write_fill_body(Writer& w, const FillQuery& q, bool with_key) {
  for (const PatternTriple& t : q.triples) {
    w.leaf(2, "Subject", node_ref_text(t.subject));
    w.leaf(2, "Pred", encode_relation(t.relation));
    w.leaf(2, "Object", node_ref_text(t.object));
  }
  if (!with_key) return;
  for (const Binding& b : q.key) {
    w.open(2, "Binding");
    for (const auto& [var, node] : b) w.leaf(3, "Bind", node.str(), {{"var", var}});
    w.close(2, "Binding");
  }
}

void write_choice_body(Writer& w, const ChoiceQuery& q, bool with_key) {
  w.leaf(2, "Subject", q.subject.str());
  w.leaf(2, "Pred", std::string(kRelationPrefix) + "Unknown_1");
  w.leaf(2, "Object", q.object.str());
  for (std::size_t i = 0; i < q.options.size(); ++i)
    w.leaf(2, "Ans", encode_relation(q.options[i]),
           {{"index", std::to_string(i + 1)}});
  if (with_key && q.key)
    w.empty(2, "Correct", {{"index", std::to_string(*q.key + 1)}});
}

void write_path_body(Writer& w, const PathQuery& q, bool with_key) {
  w.leaf(2, "Source", q.source.str());
  w.leaf(2, "Target", q.target.str());
  if (!with_key) return;
  for (std::size_t i = 0; i < q.key.size(); ++i) write_path(w, 2, q.key[i], i + 1);
}

std::string emit_document(const QueryDocument& doc, bool with_key) {
  Writer w;
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  if (with_key) w.raw(kKeyBanner);
  const std::string root = root_name(doc.type(), with_key);
  w.open(0, root, root_attributes(nullptr, doc.movie, doc.parameters));
  std::visit(
      [&](const auto& list) {
        for (const auto& q : list) {
          using T = std::decay_t<decltype(q)>;
          std::vector<std::pair<std::string, std::string>> attrs{{"id", q.id}};
          if constexpr (std::is_same_v<T, PathQuery>)
            attrs.emplace_back("max_edges", std::to_string(q.max_edges));
          w.open(1, "Query", attrs);
          if constexpr (std::is_same_v<T, FillQuery>) write_fill_body(w, q, with_key);
          if constexpr (std::is_same_v<T, ChoiceQuery>) write_choice_body(w, q, with_key);
          if constexpr (std::is_same_v<T, PathQuery>) write_path_body(w, q, with_key);
          w.close(1, "Query");
        }
      },
      doc.queries);
  w.close(0, root);
  return w.take();
}

// ---------------------------------------------------------------------------
// Reading

[[noreturn]] void fail(const xml::Element& at, const std::string& message) {
  throw ProtocolError(at.line, message);
}

NodeId parse_node(const xml::Element& e) {
  try {
    return NodeId::parse(trim(e.text));
  } catch (const GraphError& err) {
    fail(e, "<" + e.name + ">: " + err.what());
  }
}

NodeRef parse_node_ref(const xml::Element& e) {
  std::string_view text = trim(e.text);
  auto colon = text.find(':');
  std::string_view name = colon == std::string_view::npos
                              ? text
                              : trim(text.substr(colon + 1));
  if (is_variable_name(name)) {
    if (colon == std::string_view::npos) return Variable{std::string(name), std::nullopt};
    try {
      return Variable{std::string(name), NodeCategory::parse(text.substr(0, colon))};
    } catch (const GraphError& err) {
      fail(e, "<" + e.name + ">: " + err.what());
    }
  }
  return parse_node(e);
}

RelationLabel parse_relation(const xml::Element& e) {
  try {
    return decode_relation(e.text);
  } catch (const ProtocolError& err) {
    fail(e, "<" + e.name + ">: " + err.what());
  }
}

std::string require_attribute(const xml::Element& e, std::string_view name) {
  const std::string* v = e.attribute(name);
  if (!v) fail(e, "<" + e.name + "> has no '" + std::string(name) + "' attribute");
  return *v;
}

// Reads an alternating node/edge sequence. Returns an error message instead
// of throwing so that submissions can drop a single bad path.
std::variant<Path, std::string> read_path(const xml::Element& e) {
  Path path;
  const auto& items = e.children;
  if (items.size() < 3 || items.size() % 2 == 0)
    return std::string("path must alternate nodes and edges, starting and ending with a node");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const xml::Element& item = items[i];
    if (i % 2 == 1) {
      if (item.name != "Edge")
        return "expected <Edge> at position " + std::to_string(i + 1) +
               ", found <" + item.name + ">";
      try {
        path.relations.push_back(decode_relation(item.text));
      } catch (const Error& err) {
        return std::string(err.what());
      }
      continue;
    }
    bool first = i == 0;
    bool last = i + 1 == items.size();
    bool name_ok = item.name == "Node" || (first && item.name == "Source") ||
                   (last && item.name == "Target");
    if (!name_ok)
      return "unexpected <" + item.name + "> at position " + std::to_string(i + 1);
    auto node = NodeId::try_parse(trim(item.text));
    if (!node) return "unreadable node '" + std::string(trim(item.text)) + "'";
    path.nodes.push_back(*node);
  }
  return path;
}

struct RootInfo {
  QueryType type;
  std::string movie;
  Parameters parameters;
  std::string team;
};

RootInfo read_root(const xml::Element& root, bool key) {
  std::string_view prefix = key ? "Key" : "Q";
  std::optional<QueryType> type;
  if (root.name.size() == prefix.size() + 1 && root.name.starts_with(prefix))
    type = type_from_letter(root.name.back());
  if (!type)
    fail(root, "unexpected root element <" + root.name + ">, expected " +
                   std::string(prefix) + "A, " + std::string(prefix) + "B or " +
                   std::string(prefix) + "C");
  RootInfo info{*type, {}, {}, {}};
  for (const auto& [k, v] : root.attributes) {
    if (k == "movie")
      info.movie = v;
    else if (k == "team")
      info.team = v;
    else
      info.parameters.emplace(k, v);
  }
  if (!trim(root.text).empty()) fail(root, "unexpected text in <" + root.name + ">");
  return info;
}

FillQuery read_fill(const xml::Element& q, const std::string& id, bool key) {
  FillQuery out;
  out.id = id;
  const auto& items = q.children;
  std::size_t i = 0;
  while (i < items.size() && items[i].name == "Subject") {
    if (i + 2 >= items.size() || items[i + 1].name != "Pred" ||
        items[i + 2].name != "Object")
      fail(items[i], "query " + id + ": <Subject> must be followed by <Pred> and <Object>");
    out.triples.push_back(PatternTriple{parse_node_ref(items[i]),
                                        parse_relation(items[i + 1]),
                                        parse_node_ref(items[i + 2])});
    i += 3;
  }
  if (out.triples.empty()) fail(q, "query " + id + " has no Subject/Pred/Object triple");
  try {
    out.variables = pattern_variables(out.triples);
  } catch (const QueryError& e) {
    fail(q, "query " + id + ": " + e.what());
  }
  if (out.variables.empty()) fail(q, "query " + id + " has no Unknown_<n> variable");

  for (; i < items.size(); ++i) {
    const xml::Element& item = items[i];
    if (!key || item.name != "Binding")
      fail(item, "query " + id + ": unexpected element <" + item.name + ">");
    Binding binding;
    for (const xml::Element& bind : item.children) {
      if (bind.name != "Bind") fail(bind, "unexpected element <" + bind.name + "> in <Binding>");
      std::string var = require_attribute(bind, "var");
      bool known = std::any_of(out.variables.begin(), out.variables.end(),
                               [&](const Variable& v) { return v.name == var; });
      if (!known) fail(bind, "query " + id + ": binding for unknown variable " + var);
      if (!binding.emplace(var, parse_node(bind)).second)
        fail(bind, "query " + id + ": variable " + var + " bound twice");
    }
    if (binding.size() != out.variables.size())
      fail(item, "query " + id + ": binding does not cover every variable");
    out.key.push_back(std::move(binding));
  }
  return out;
}

ChoiceQuery read_choice(const xml::Element& q, const std::string& id, bool key) {
  const auto& items = q.children;
  if (items.size() < 3 || items[0].name != "Subject" || items[1].name != "Pred" ||
      items[2].name != "Object")
    fail(q, "query " + id + " must start with <Subject>, <Pred>, <Object>");
  std::string_view pred = trim(items[1].text);
  if (!pred.starts_with(kRelationPrefix) ||
      !is_variable_name(trim(pred.substr(kRelationPrefix.size()))))
    fail(items[1], "query " + id + ": <Pred> must be Relation:Unknown_<n>");

  ChoiceQuery out{id, parse_node(items[0]), parse_node(items[2]), {}, std::nullopt};
  std::size_t i = 3;
  for (; i < items.size() && items[i].name == "Ans"; ++i) {
    auto index = parse_index(require_attribute(items[i], "index"));
    if (!index || *index != out.options.size() + 1)
      fail(items[i], "query " + id + ": <Ans> index attributes must count up from 1");
    RelationLabel option = parse_relation(items[i]);
    if (std::find(out.options.begin(), out.options.end(), option) != out.options.end())
      fail(items[i], "query " + id + ": duplicate option " + option.str());
    out.options.push_back(std::move(option));
  }
  if (out.options.empty()) fail(q, "query " + id + " has no <Ans> options");
  if (key) {
    if (i >= items.size() || items[i].name != "Correct")
      fail(q, "key for query " + id + " has no <Correct> element");
    auto index = parse_index(require_attribute(items[i], "index"));
    if (!index || *index < 1 || *index > out.options.size())
      fail(items[i], "query " + id + ": <Correct> index out of range");
    out.key = *index - 1;
    ++i;
  }
  if (i < items.size())
    fail(items[i], "query " + id + ": unexpected element <" + items[i].name + ">");
  return out;
}

PathQuery read_path_query(const xml::Element& q, const std::string& id, bool key) {
  const auto& items = q.children;
  if (items.size() < 2 || items[0].name != "Source" || items[1].name != "Target")
    fail(q, "query " + id + " must contain <Source> then <Target>");
  auto max_edges = parse_index(require_attribute(q, "max_edges"));
  if (!max_edges || *max_edges < 1)
    fail(q, "query " + id + ": max_edges must be a positive integer");
  PathQuery out{id, parse_node(items[0]), parse_node(items[1]), *max_edges, {}};
  if (out.source == out.target) fail(q, "query " + id + ": source equals target");
  for (std::size_t i = 2; i < items.size(); ++i) {
    if (!key || items[i].name != "Path")
      fail(items[i], "query " + id + ": unexpected element <" + items[i].name + ">");
    auto path = read_path(items[i]);
    if (auto* err = std::get_if<std::string>(&path))
      fail(items[i], "query " + id + ": " + *err);
    out.key.push_back(std::get<Path>(std::move(path)));
  }
  return out;
}

QueryDocument parse_document(std::string_view text, bool key) {
  xml::Element root = xml::parse(text);
  RootInfo info = read_root(root, key);
  if (!info.team.empty() || root.attribute("team"))
    fail(root, "query documents do not carry a 'team' attribute");

  QueryDocument doc;
  doc.movie = info.movie;
  doc.parameters = info.parameters;
  std::set<std::string> ids;

  auto collect = [&](auto reader, auto& list) {
    for (const xml::Element& q : root.children) {
      if (q.name != "Query") fail(q, "unexpected element <" + q.name + ">");
      std::string id = require_attribute(q, "id");
      if (!ids.insert(id).second) fail(q, "duplicate query id " + id);
      if (!trim(q.text).empty()) fail(q, "unexpected text in query " + id);
      list.push_back(reader(q, id, key));
    }
  };
  switch (info.type) {
    case QueryType::fill: {
      std::vector<FillQuery> list;
      collect(read_fill, list);
      doc.queries = std::move(list);
      break;
    }
    case QueryType::choice: {
      std::vector<ChoiceQuery> list;
      collect(read_choice, list);
      doc.queries = std::move(list);
      break;
    }
    case QueryType::path: {
      std::vector<PathQuery> list;
      collect(read_path_query, list);
      doc.queries = std::move(list);
      break;
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Submissions

class SubmissionReader {
 public:
  SubmissionReader(Submission& out) : out_(out) {}

  void note(std::size_t line, const std::string& id, std::string message) {
    out_.diagnostics.push_back({line, id, std::move(message)});
  }

  void read_fill(const xml::Element& q, const std::string& id, const FillQuery& query) {
    struct Item {
      RankedAnswer answer;
      std::optional<std::size_t> rank;
    };
    std::map<std::string, std::vector<Item>> items;
    for (const xml::Element& a : q.children) {
      if (a.name != "Answer") {
        note(a.line, id, "ignored element <" + a.name + ">");
        continue;
      }
      const std::string* var = a.attribute("var");
      const std::string* confidence = a.attribute("confidence");
      if (!var || !confidence) {
        note(a.line, id, "answer needs 'var' and 'confidence' attributes; dropped");
        continue;
      }
      bool known = std::any_of(query.variables.begin(), query.variables.end(),
                               [&](const Variable& v) { return v.name == *var; });
      if (!known) {
        note(a.line, id, "answer for unknown variable " + *var + "; dropped");
        continue;
      }
      double value = 0;
      std::string_view ct = trim(*confidence);
      auto [ptr, ec] = std::from_chars(ct.data(), ct.data() + ct.size(), value);
      if (ec != std::errc() || ptr != ct.data() + ct.size() || !std::isfinite(value) ||
          value < 0.0 || value > 1.0) {
        note(a.line, id, "confidence '" + *confidence + "' is not a number in [0,1]; dropped");
        continue;
      }
      std::optional<std::size_t> rank;
      if (const std::string* r = a.attribute("rank")) {
        rank = parse_index(*r);
        if (!rank || *rank == 0) {
          note(a.line, id, "rank '" + *r + "' is not a positive integer; dropped");
          continue;
        }
      }
      auto node = NodeId::try_parse(trim(a.text));
      if (!node) {
        note(a.line, id, "unreadable node '" + std::string(trim(a.text)) + "'; dropped");
        continue;
      }
      items[*var].push_back(Item{RankedAnswer{*node, value}, rank});
    }

    FillAnswers& answers = out_.fill.at(id);
    for (auto& [var, list] : items) {
      std::stable_sort(list.begin(), list.end(), [](const Item& a, const Item& b) {
        return a.answer.confidence > b.answer.confidence;
      });
      bool any_rank = std::any_of(list.begin(), list.end(),
                                  [](const Item& i) { return i.rank.has_value(); });
      bool ranks_agree = true;
      for (std::size_t i = 0; i < list.size(); ++i)
        ranks_agree = ranks_agree && list[i].rank == i + 1;
      if (any_rank && !ranks_agree)
        note(q.line, id, "rank attributes of " + var +
                             " disagree with confidence order; ranked by confidence");
      auto& ranked = answers.by_variable[var];
      for (Item& item : list) ranked.push_back(std::move(item.answer));
    }
  }

  void read_choice(const xml::Element& q, const std::string& id) {
    std::vector<const xml::Element*> answers;
    for (const xml::Element& a : q.children) {
      if (a.name == "Answer")
        answers.push_back(&a);
      else
        note(a.line, id, "ignored element <" + a.name + ">");
    }
    if (answers.empty()) return;
    if (answers.size() > 1) {
      note(q.line, id, "more than one <Answer>; query counted as unanswered");
      return;
    }
    try {
      out_.choice.at(id).label = decode_relation(answers[0]->text);
    } catch (const Error& e) {
      note(answers[0]->line, id, std::string(e.what()) + "; answer dropped");
    }
  }

  void read_paths(const xml::Element& q, const std::string& id) {
    PathAnswers& answers = out_.paths.at(id);
    for (const xml::Element& p : q.children) {
      if (p.name != "Path") {
        note(p.line, id, "ignored element <" + p.name + ">");
        continue;
      }
      auto path = read_path(p);
      if (auto* err = std::get_if<std::string>(&path)) {
        note(p.line, id, "path rejected: " + *err);
        ++answers.rejected;
        continue;
      }
      answers.paths.push_back(std::get<Path>(std::move(path)));
    }
  }

 private:
  Submission& out_;
};

}  // namespace

std::string encode_relation(const RelationLabel& relation) {
  std::string out(kRelationPrefix);
  for (char c : relation.str()) out.push_back(c == ' ' ? '_' : c);
  return out;
}

RelationLabel decode_relation(std::string_view text) {
  text = trim(text);
  if (!text.starts_with(kRelationPrefix))
    throw ProtocolError(0, "'" + std::string(text) + "' does not start with 'Relation:'");
  std::string label(trim(text.substr(kRelationPrefix.size())));
  std::replace(label.begin(), label.end(), '_', ' ');
  try {
    return RelationLabel(label);
  } catch (const OntologyError& e) {
    throw ProtocolError(0, e.what());
  }
}

std::string emit_query_xml(const QueryDocument& document) {
  return emit_document(document, false);
}

QueryDocument parse_query_xml(std::string_view text) {
  return parse_document(text, false);
}

std::string emit_key_xml(const QueryDocument& document) {
  return emit_document(document, true);
}

QueryDocument parse_key_xml(std::string_view text) {
  return parse_document(text, true);
}

Submission parse_submission_xml(std::string_view text,
                                const QueryDocument& expected) {
  xml::Element root = xml::parse(text);
  RootInfo info = read_root(root, false);
  if (info.type != expected.type())
    fail(root, "submission root <" + root.name + "> does not match the expected " +
                   root_name(expected.type(), false) + " queries");
  if (!root.attribute("team")) fail(root, "submission root has no 'team' attribute");
  if (!info.movie.empty() && !expected.movie.empty() && info.movie != expected.movie)
    fail(root, "submission is for movie '" + info.movie + "', queries are for '" +
                   expected.movie + "'");

  Submission out;
  out.type = info.type;
  out.team = info.team;
  out.movie = expected.movie;
  out.parameters = info.parameters;

  std::map<std::string, std::size_t> index;
  std::visit(
      [&](const auto& list) {
        for (std::size_t i = 0; i < list.size(); ++i) {
          index.emplace(list[i].id, i);
          switch (info.type) {
            case QueryType::fill: out.fill[list[i].id]; break;
            case QueryType::choice: out.choice[list[i].id]; break;
            case QueryType::path: out.paths[list[i].id]; break;
          }
        }
      },
      expected.queries);

  SubmissionReader reader(out);
  std::set<std::string> seen;
  for (const xml::Element& q : root.children) {
    if (q.name != "Query") {
      reader.note(q.line, "", "ignored element <" + q.name + ">");
      continue;
    }
    const std::string* id = q.attribute("id");
    if (!id) {
      reader.note(q.line, "", "<Query> without an id; ignored");
      continue;
    }
    auto it = index.find(*id);
    if (it == index.end()) {
      reader.note(q.line, *id, "no such query; ignored");
      continue;
    }
    if (!seen.insert(*id).second) {
      reader.note(q.line, *id, "query answered more than once; later entry ignored");
      continue;
    }
    switch (info.type) {
      case QueryType::fill:
        reader.read_fill(q, *id, std::get<std::vector<FillQuery>>(expected.queries)[it->second]);
        break;
      case QueryType::choice:
        reader.read_choice(q, *id);
        break;
      case QueryType::path:
        reader.read_paths(q, *id);
        break;
    }
  }
  for (const auto& [id, i] : index)
    if (!seen.contains(id)) reader.note(0, id, "no answer submitted");
  return out;
}

std::string emit_submission_xml(const Submission& submission) {
  Writer w;
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  const std::string root = root_name(submission.type, false);
  w.open(0, root,
         root_attributes(&submission.team, submission.movie, submission.parameters));
  switch (submission.type) {
    case QueryType::fill:
      for (const auto& [id, answers] : submission.fill) {
        w.open(1, "Query", {{"id", id}});
        for (const auto& [var, ranked] : answers.by_variable)
          for (std::size_t i = 0; i < ranked.size(); ++i)
            w.leaf(2, "Answer", ranked[i].node.str(),
                   {{"var", var},
                    {"rank", std::to_string(i + 1)},
                    {"confidence", fmt::format("{}", ranked[i].confidence)}});
        w.close(1, "Query");
      }
      break;
    case QueryType::choice:
      for (const auto& [id, answer] : submission.choice) {
        w.open(1, "Query", {{"id", id}});
        if (answer.label) w.leaf(2, "Answer", encode_relation(*answer.label));
        w.close(1, "Query");
      }
      break;
    case QueryType::path:
      for (const auto& [id, answers] : submission.paths) {
        w.open(1, "Query", {{"id", id}});
        for (std::size_t i = 0; i < answers.paths.size(); ++i)
          write_path(w, 2, answers.paths[i], i + 1);
        w.close(1, "Query");
      }
      break;
  }
  w.close(0, root);
  return w.take();
}

}  // namespace hlvu
