#include "hlvu/ontology.hpp"

#include <sstream>

#include "hlvu/error.hpp"

namespace hlvu {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

std::string canonicalize_label(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

RelationLabel::RelationLabel(std::string_view text)
    : name_(canonicalize_label(text)) {
  if (name_.empty()) throw OntologyError("relation label is empty");
  if (name_.find('|') != std::string::npos)
    throw OntologyError("relation label contains '|': " + name_);
}

bool RelationOntology::contains(const RelationLabel& relation) const {
  return inverse_.contains(relation);
}

bool RelationOntology::is_symmetric(const RelationLabel& relation) const {
  return inverse_of(relation) == relation;
}

const RelationLabel& RelationOntology::inverse_of(
    const RelationLabel& relation) const {
  auto it = inverse_.find(relation);
  if (it == inverse_.end())
    throw OntologyError("unknown relation: " + relation.str());
  return it->second;
}

RelationOntology RelationOntology::extended(
    const RelationLabel& relation, const RelationLabel& inverse) const {
  auto check = [this](const RelationLabel& r, const RelationLabel& inv) {
    auto it = inverse_.find(r);
    if (it != inverse_.end() && it->second != inv)
      throw OntologyError("conflicting redefinition of '" + r.str() +
                          "': inverse is '" + it->second.str() + "', not '" +
                          inv.str() + "'");
  };
  check(relation, inverse);
  check(inverse, relation);
  RelationOntology copy = *this;
  copy.insert_pair(relation, inverse);
  return copy;
}

std::vector<RelationLabel> RelationOntology::relations() const {
  std::vector<RelationLabel> out;
  out.reserve(inverse_.size());
  for (const auto& [relation, inverse] : inverse_) out.push_back(relation);
  return out;
}

void RelationOntology::insert_pair(const RelationLabel& relation,
                                   const RelationLabel& inverse) {
  inverse_.insert_or_assign(relation, inverse);
  inverse_.insert_or_assign(inverse, relation);
}

RelationOntology load_ontology(std::string_view text) {
  RelationOntology ontology;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string& message) {
    throw OntologyError("line " + std::to_string(line_no) + ": " + message);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::string trimmed = canonicalize_label(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::size_t bar = trimmed.find('|');
    if (bar == std::string::npos)
      fail("relation '" + trimmed + "' has no declared inverse");
    if (trimmed.find('|', bar + 1) != std::string::npos)
      fail("more than one '|' separator");

    std::string left = canonicalize_label(trimmed.substr(0, bar));
    std::string right = canonicalize_label(trimmed.substr(bar + 1));
    if (left.empty()) fail("missing relation before '|'");
    if (right.empty())
      fail("relation '" + left + "' is paired with an empty inverse");

    RelationLabel relation(left);
    RelationLabel inverse(right);
    for (const RelationLabel* r : {&relation, &inverse}) {
      if (!ontology.contains(*r)) continue;
      const RelationLabel& other = r == &relation ? inverse : relation;
      if (ontology.inverse_of(*r) == other)
        fail("duplicate relation line for '" + r->str() + "'");
      fail("'" + r->str() + "' already has inverse '" +
           ontology.inverse_of(*r).str() + "', cannot pair it with '" +
           other.str() + "'");
    }
    ontology.insert_pair(relation, inverse);
  }

  if (ontology.empty()) throw OntologyError("ontology file declares no relations");
  return ontology;
}

std::string emit_ontology(const RelationOntology& ontology) {
  std::ostringstream out;
  for (const RelationLabel& relation : ontology.relations()) {
    const RelationLabel& inverse = ontology.inverse_of(relation);
    if (inverse < relation) continue;
    out << relation.str() << " | " << inverse.str() << '\n';
  }
  return out.str();
}

}  // namespace hlvu
