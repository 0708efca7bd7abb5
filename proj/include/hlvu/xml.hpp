#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hlvu::xml {

/// Minimal element tree. Character data of an element is concatenated into
/// `text`; comments and processing instructions are dropped.
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;
  std::vector<Element> children;
  std::size_t line = 0;

  const std::string* attribute(std::string_view key) const;
};

/// Parses a complete document. Throws ProtocolError (with the line number
/// reported by the parser) for anything that is not well-formed XML.
Element parse(std::string_view text);

/// Escapes &, <, >, " and ' for use in text or attribute values.
std::string escape(std::string_view text);

}  // namespace hlvu::xml
