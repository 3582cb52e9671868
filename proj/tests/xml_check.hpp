#pragma once

// Minimal XML well-formedness scanner for the SVG outputs: balanced tags,
// quoted attributes, legal entity references. Collects every element's tag
// and attributes so tests can count markers and bound geometry.

#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace xmlcheck {

struct Element {
  std::string tag;
  std::map<std::string, std::string> attrs;
};

struct ScanResult {
  bool well_formed = false;
  std::string error;
  std::vector<Element> elements; // open + self-closing, in document order
};

inline ScanResult scan(const std::string& text) {
  ScanResult result;
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto fail = [&](const std::string& why) {
    result.error = why + " near offset " + std::to_string(i);
    return result;
  };
  auto name_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
           c == '_' || c == ':' || c == '.';
  };

  while (i < n) {
    const char c = text[i];
    if (c == '<') {
      if (i + 1 < n && text[i + 1] == '?') { // declaration
        const auto end = text.find("?>", i);
        if (end == std::string::npos) return fail("unterminated declaration");
        i = end + 2;
        continue;
      }
      if (text.compare(i, 4, "<!--") == 0) {
        const auto end = text.find("-->", i);
        if (end == std::string::npos) return fail("unterminated comment");
        i = end + 3;
        continue;
      }
      if (i + 1 < n && text[i + 1] == '/') { // closing tag
        i += 2;
        std::string tag;
        while (i < n && name_char(text[i])) tag += text[i++];
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= n || text[i] != '>') return fail("malformed closing tag");
        ++i;
        if (stack.empty() || stack.back() != tag)
          return fail("mismatched closing tag </" + tag + ">");
        stack.pop_back();
        continue;
      }
      // opening or self-closing tag
      ++i;
      Element elem;
      while (i < n && name_char(text[i])) elem.tag += text[i++];
      if (elem.tag.empty()) return fail("tag with empty name");
      bool self_closing = false;
      while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= n) return fail("unterminated tag");
        if (text[i] == '>') {
          ++i;
          break;
        }
        if (text[i] == '/') {
          if (i + 1 >= n || text[i + 1] != '>') return fail("stray '/'");
          self_closing = true;
          i += 2;
          break;
        }
        std::string attr;
        while (i < n && name_char(text[i])) attr += text[i++];
        if (attr.empty()) return fail("malformed attribute");
        if (i >= n || text[i] != '=') return fail("attribute without '='");
        ++i;
        if (i >= n || (text[i] != '"' && text[i] != '\''))
          return fail("unquoted attribute value");
        const char quote = text[i++];
        std::string value;
        while (i < n && text[i] != quote) {
          if (text[i] == '<') return fail("'<' inside attribute value");
          value += text[i++];
        }
        if (i >= n) return fail("unterminated attribute value");
        ++i;
        elem.attrs[attr] = value;
      }
      result.elements.push_back(elem);
      if (!self_closing) stack.push_back(result.elements.back().tag);
      continue;
    }
    if (c == '>') return fail("stray '>'");
    if (c == '&') { // entity reference must be one of the five XML entities
      static const char* entities[] = {"&amp;", "&lt;", "&gt;", "&quot;",
                                       "&apos;"};
      bool ok = false;
      for (const char* e : entities)
        if (text.compare(i, std::string(e).size(), e) == 0) {
          i += std::string(e).size();
          ok = true;
          break;
        }
      if (!ok) return fail("bare '&'");
      continue;
    }
    ++i;
  }
  if (!stack.empty()) {
    result.error = "unclosed tag <" + stack.back() + ">";
    return result;
  }
  result.well_formed = true;
  return result;
}

inline std::size_t count_class(const ScanResult& scan, const std::string& cls) {
  std::size_t count = 0;
  for (const auto& e : scan.elements) {
    const auto it = e.attrs.find("class");
    if (it != e.attrs.end() && it->second == cls) ++count;
  }
  return count;
}

} // namespace xmlcheck
