#include <charconv>
#include <map>
#include <memory>
#include <sstream>
#include <variant>

#include "hlvu/parsers.hpp"

namespace hlvu {

namespace {

constexpr std::size_t kMaxNesting = 64;

struct GmlList;

struct GmlValue {
  std::variant<long long, double, std::string, std::unique_ptr<GmlList>> data;
  std::size_t line = 0;
};

struct GmlEntry {
  std::string key;
  GmlValue value;
};

struct GmlList {
  std::vector<GmlEntry> entries;
};

struct SyntaxError {
  std::size_t line;
  std::string message;
};

// Recursive-descent reader for the GML bracket grammar:
//   list  := (key value)*
//   value := integer | real | "string" | '[' list ']'
class GmlReader {
 public:
  explicit GmlReader(std::string_view text) : text_(text) {}

  GmlList read_document() {
    GmlList list = read_list(0);
    skip_space();
    if (pos_ < text_.size()) fail("unexpected ']' without matching '['");
    return list;
  }

 private:
  [[noreturn]] void fail(std::string message) {
    throw SyntaxError{line_, std::move(message)};
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  static bool is_key_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_key_char(char c) {
    return is_key_start(c) || (c >= '0' && c <= '9');
  }

  GmlList read_list(std::size_t depth) {
    if (depth > kMaxNesting) fail("brackets nested too deeply");
    GmlList list;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ']') return list;
      if (!is_key_start(text_[pos_]))
        fail(std::string("expected a key, found '") + text_[pos_] + "'");
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_key_char(text_[pos_])) ++pos_;
      GmlEntry entry;
      entry.key = std::string(text_.substr(start, pos_ - start));
      entry.value = read_value(depth, entry.key);
      list.entries.push_back(std::move(entry));
    }
  }

  GmlValue read_value(std::size_t depth, const std::string& key) {
    skip_space();
    GmlValue value;
    value.line = line_;
    if (pos_ >= text_.size()) fail("key '" + key + "' has no value");
    char c = text_[pos_];
    if (c == '[') {
      std::size_t open_line = line_;
      ++pos_;
      auto list = std::make_unique<GmlList>(read_list(depth + 1));
      if (pos_ >= text_.size())
        throw SyntaxError{open_line, "unbalanced '[' opened for key '" + key + "'"};
      ++pos_;  // ']'
      value.data = std::move(list);
    } else if (c == '"') {
      value.data = read_string();
    } else {
      value.data = read_number(key);
    }
    return value;
  }

  std::string read_string() {
    std::size_t open_line = line_;
    ++pos_;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\n') ++line_;
      if (c == '\\' && pos_ < text_.size() &&
          (text_[pos_] == '"' || text_[pos_] == '\\')) {
        out.push_back(text_[pos_++]);
        continue;
      }
      out.push_back(c);
    }
    throw SyntaxError{open_line, "unterminated string"};
  }

  std::variant<long long, double, std::string, std::unique_ptr<GmlList>>
  read_number(const std::string& key) {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' ||
          c == 'e' || c == 'E')
        ++pos_;
      else
        break;
    }
    std::string_view token = text_.substr(start, pos_ - start);
    if (token.empty())
      fail("key '" + key + "' has an invalid value starting with '" +
           std::string(1, text_[pos_]) + "'");
    long long integer = 0;
    auto [iptr, iec] =
        std::from_chars(token.data(), token.data() + token.size(), integer);
    if (iec == std::errc() && iptr == token.data() + token.size()) return integer;
    double real = 0;
    auto [rptr, rec] =
        std::from_chars(token.data(), token.data() + token.size(), real);
    if (rec == std::errc() && rptr == token.data() + token.size()) return real;
    fail("key '" + key + "' has a malformed number '" + std::string(token) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

const GmlList* as_list(const GmlValue& v) {
  auto* p = std::get_if<std::unique_ptr<GmlList>>(&v.data);
  return p ? p->get() : nullptr;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Reads the fields of one node or edge block. Unknown keys are warned about
// and skipped.
struct Fields {
  std::map<std::string, const GmlValue*> known;
};

Fields collect(const GmlList& list, std::initializer_list<std::string_view> keys,
               std::string_view block, detail::GraphAssembler& out) {
  Fields fields;
  for (const GmlEntry& entry : list.entries) {
    bool is_known = false;
    for (std::string_view k : keys) is_known = is_known || entry.key == k;
    if (!is_known) {
      out.warning(entry.value.line, "ignored key '" + entry.key + "' in " +
                                        std::string(block));
      continue;
    }
    if (fields.known.contains(entry.key)) {
      out.error(entry.value.line, "key '" + entry.key + "' repeated in " +
                                      std::string(block));
      continue;
    }
    fields.known.emplace(entry.key, &entry.value);
  }
  return fields;
}

const long long* int_field(const Fields& f, const std::string& key) {
  auto it = f.known.find(key);
  return it == f.known.end() ? nullptr : std::get_if<long long>(&it->second->data);
}

const std::string* string_field(const Fields& f, const std::string& key) {
  auto it = f.known.find(key);
  return it == f.known.end() ? nullptr
                             : std::get_if<std::string>(&it->second->data);
}

}  // namespace

GraphParseResult parse_xgml(std::string_view text,
                            const RelationOntology& ontology,
                            const ParseOptions& options) {
  detail::GraphAssembler assembler(ontology, options);

  GmlList document;
  try {
    document = GmlReader(text).read_document();
  } catch (const SyntaxError& e) {
    assembler.error(e.line, e.message);
    return assembler.finish();
  }

  const GmlList* graph = nullptr;
  for (const GmlEntry& entry : document.entries) {
    if (entry.key != "graph") {
      assembler.warning(entry.value.line,
                        "ignored top-level key '" + entry.key + "'");
      continue;
    }
    const GmlList* list = as_list(entry.value);
    if (!list) {
      assembler.error(entry.value.line, "'graph' must be a [ ... ] block");
    } else if (graph) {
      assembler.error(entry.value.line, "more than one 'graph' block");
    } else {
      graph = list;
    }
  }
  if (!graph) {
    assembler.error(1, "document has no 'graph' block");
    return assembler.finish();
  }

  std::map<long long, NodeId> ids;
  std::vector<const GmlEntry*> edges;
  for (const GmlEntry& entry : graph->entries) {
    std::size_t line = entry.value.line;
    if (entry.key == "edge") {
      edges.push_back(&entry);
      continue;
    }
    if (entry.key != "node") {
      assembler.warning(line, "ignored key '" + entry.key + "' in graph");
      continue;
    }
    const GmlList* list = as_list(entry.value);
    if (!list) {
      assembler.error(line, "'node' must be a [ ... ] block");
      continue;
    }
    Fields f = collect(*list, {"id", "label"}, "node", assembler);
    const long long* id = int_field(f, "id");
    const std::string* label = string_field(f, "label");
    if (!id) {
      assembler.error(line, "node has no integer 'id'");
      continue;
    }
    if (!label) {
      assembler.error(line, "node " + std::to_string(*id) + " has no string 'label'");
      continue;
    }
    if (ids.contains(*id)) {
      assembler.error(line, "node id " + std::to_string(*id) +
                                " declared more than once");
      continue;
    }
    if (auto node = assembler.add_node(line, *label)) ids.emplace(*id, *node);
  }

  for (const GmlEntry* entry : edges) {
    std::size_t line = entry->value.line;
    const GmlList* list = as_list(entry->value);
    if (!list) {
      assembler.error(line, "'edge' must be a [ ... ] block");
      continue;
    }
    Fields f = collect(*list, {"source", "target", "label"}, "edge", assembler);
    const long long* source = int_field(f, "source");
    const long long* target = int_field(f, "target");
    const std::string* label = string_field(f, "label");
    if (!source || !target) {
      assembler.error(line, "edge needs integer 'source' and 'target'");
      continue;
    }
    if (!label) {
      assembler.error(line, "edge has no string 'label'");
      continue;
    }
    auto src = ids.find(*source);
    auto dst = ids.find(*target);
    if (src == ids.end() || dst == ids.end()) {
      assembler.error(line, "edge references undeclared node id " +
                                std::to_string(src == ids.end() ? *source : *target));
      continue;
    }
    assembler.add_edge(line, src->second, dst->second, *label);
  }
  return assembler.finish();
}

std::string emit_xgml(const KnowledgeGraph& graph) {
  std::ostringstream out;
  out << "graph [\n";
  std::map<NodeId, std::size_t> number;
  for (const NodeId& id : graph.nodes()) {
    std::size_t n = number.size() + 1;
    number.emplace(id, n);
    out << "  node [\n    id " << n << "\n    label " << quote(id.str())
        << "\n  ]\n";
  }
  std::vector<const Edge*> edges;
  for (const Edge& e : graph.edges()) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->src, a->dst, a->relation) <
           std::tie(b->src, b->dst, b->relation);
  });
  for (const Edge* e : edges)
    out << "  edge [\n    source " << number.at(e->src) << "\n    target "
        << number.at(e->dst) << "\n    label " << quote(e->relation.str())
        << "\n  ]\n";
  out << "]\n";
  return out.str();
}

}  // namespace hlvu
