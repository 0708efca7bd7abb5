#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hlvu {

/// Trims the text and collapses internal runs of whitespace to one space.
std::string canonicalize_label(std::string_view text);

/// Name of a relationship such as "Parent of".
///
/// Labels are stored in canonical form (see canonicalize_label) and compare
/// case-sensitively. A label is never empty and never contains '|', which
/// separates a relation from its inverse in ontology files.
class RelationLabel {
 public:
  explicit RelationLabel(std::string_view text);

  const std::string& str() const noexcept { return name_; }

  friend auto operator<=>(const RelationLabel&, const RelationLabel&) = default;

 private:
  std::string name_;
};

/// The relation vocabulary together with its inverse map.
///
/// The inverse map is a total involution over the declared relations:
/// inverse_of(inverse_of(r)) == r, and symmetric relations map to themselves.
/// Instances are immutable once built; extended() returns a new value.
class RelationOntology {
 public:
  RelationOntology() = default;

  bool contains(const RelationLabel& relation) const;
  bool is_symmetric(const RelationLabel& relation) const;

  /// Throws OntologyError("unknown relation: ...") when not declared.
  const RelationLabel& inverse_of(const RelationLabel& relation) const;

  /// Returns a copy that also holds the pair. Re-adding an identical pair is
  /// a no-op; any conflicting redefinition throws OntologyError.
  RelationOntology extended(const RelationLabel& relation,
                            const RelationLabel& inverse) const;

  /// All relations, sorted.
  std::vector<RelationLabel> relations() const;
  std::size_t size() const noexcept { return inverse_.size(); }
  bool empty() const noexcept { return inverse_.empty(); }

  friend bool operator==(const RelationOntology&,
                         const RelationOntology&) = default;

 private:
  // Inserts without copying; the caller has checked for conflicts.
  void insert_pair(const RelationLabel& relation, const RelationLabel& inverse);

  std::map<RelationLabel, RelationLabel> inverse_;

  friend RelationOntology load_ontology(std::string_view text);
};

/// Parses an ontology file: one `<relation> | <inverse>` pair per line, '#'
/// comment lines and blank lines ignored. Throws OntologyError naming the
/// line for duplicate or non-involutive pairings, unpaired relations, and
/// files that declare nothing.
RelationOntology load_ontology(std::string_view text);

/// Writes each pair once, sorted by the lexicographically smaller label.
std::string emit_ontology(const RelationOntology& ontology);

}  // namespace hlvu
