#include "hlvu/xml.hpp"

#include <expat.h>

#include <climits>
#include <memory>

#include "hlvu/error.hpp"

namespace hlvu::xml {

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes)
    if (k == key) return &v;
  return nullptr;
}

namespace {

struct TreeBuilder {
  XML_Parser parser = nullptr;
  Element root;
  bool has_root = false;
  // Open elements; each is the last child of the one before it, so adding
  // children to the innermost element never moves an open element.
  std::vector<Element*> open;
  bool too_deep = false;
};

constexpr std::size_t kMaxDepth = 256;

void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* b = static_cast<TreeBuilder*>(data);
  if (b->open.size() >= kMaxDepth) {
    b->too_deep = true;
    XML_StopParser(b->parser, XML_FALSE);
    return;
  }
  Element* element = nullptr;
  if (b->open.empty()) {
    b->has_root = true;
    element = &b->root;
  } else {
    element = &b->open.back()->children.emplace_back();
  }
  element->name = name;
  element->line = XML_GetCurrentLineNumber(b->parser);
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2)
    element->attributes.emplace_back(attrs[i], attrs[i + 1]);
  b->open.push_back(element);
}

void on_end(void* data, const XML_Char*) {
  static_cast<TreeBuilder*>(data)->open.pop_back();
}

void on_text(void* data, const XML_Char* text, int len) {
  auto* b = static_cast<TreeBuilder*>(data);
  if (!b->open.empty()) b->open.back()->text.append(text, static_cast<std::size_t>(len));
}

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

Element parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(INT_MAX))
    throw ProtocolError(0, "document too large");
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw ProtocolError(0, "cannot create XML parser");

  TreeBuilder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), 1) ==
      XML_STATUS_ERROR) {
    if (builder.too_deep)
      throw ProtocolError(XML_GetCurrentLineNumber(parser.get()),
                          "elements nested too deeply");
    throw ProtocolError(XML_GetCurrentLineNumber(parser.get()),
                        std::string("malformed XML: ") +
                            XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.has_root) throw ProtocolError(0, "document has no root element");
  return std::move(builder.root);
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace hlvu::xml
