#include <cstdio>
#include <map>
#include <sstream>

#include "aekg/error.hpp"
#include "aekg/rdf/serialize.hpp"

namespace aekg::rdf {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool plain_local_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(is_alpha(s[0]) || is_digit(s[0]) || s[0] == '_')) return false;
  for (char c : s)
    if (!(is_alpha(c) || is_digit(c) || c == '_' || c == '-')) return false;
  return true;
}

void append_codepoint(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const NamespaceTable& ns) : ns_(ns) {}

  std::string iri(const std::string& value) const {
    const std::pair<const std::string, std::string>* best = nullptr;
    for (const auto& binding : ns_.bindings()) {
      if (value.size() > binding.second.size() &&
          value.compare(0, binding.second.size(), binding.second) == 0 &&
          plain_local_name(std::string_view(value).substr(binding.second.size())) &&
          (!best || binding.second.size() > best->second.size()))
        best = &binding;
    }
    if (best) return best->first + ":" + value.substr(best->second.size());
    return "<" + value + ">";
  }

  std::string term(const Term& t) const {
    if (const auto* i = std::get_if<Iri>(&t)) return iri(i->value);
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
    const auto& l = std::get<Literal>(t);
    std::string out = "\"";
    for (char ch : l.lexical) {
      auto c = static_cast<unsigned char>(ch);
      switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (c < 0x20 || c == 0x7F) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04X", c);
            out += buf;
          } else {
            out.push_back(ch);
          }
      }
    }
    out += "\"";
    if (!l.datatype.empty()) out += "^^" + iri(l.datatype);
    return out;
  }

 private:
  const NamespaceTable& ns_;
};

// ---------------------------------------------------------------------------

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view in) : in_(in) {}

  TripleGraph parse() {
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '@') {
        directive_at();
      } else if (starts_with_ci("PREFIX") && pos_ + 6 < in_.size() &&
                 (in_[pos_ + 6] == ' ' || in_[pos_ + 6] == '\t')) {
        advance(6);
        prefix_body(false);
      } else {
        statement();
      }
    }
    return std::move(graph_);
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  TripleGraph graph_;
  std::map<std::string, std::string> prefixes_;
  std::map<std::string, BlankNode> blanks_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw TurtleSyntaxError(msg, line_, col_);
  }

  bool at_end() const { return pos_ >= in_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }
  char get() {
    if (at_end()) fail("unexpected end of input");
    char c = in_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void advance(std::size_t n) {
    while (n--) get();
  }
  bool starts_with_ci(std::string_view word) const {
    if (in_.size() - pos_ < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      char a = in_[pos_ + i], b = word[i];
      if (a >= 'a' && a <= 'z') a = static_cast<char>(a - 'a' + 'A');
      if (a != b) return false;
    }
    return true;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (at_end()) fail(std::string("expected '") + c + "' before end of input");
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void directive_at() {
    get();  // '@'
    if (in_.substr(pos_, 6) == "prefix") {
      advance(6);
      prefix_body(true);
    } else if (in_.substr(pos_, 4) == "base") {
      fail("@base is not supported");
    } else {
      fail("unknown directive");
    }
  }

  void prefix_body(bool needs_dot) {
    skip_ws();
    std::string prefix;
    while (!at_end() && peek() != ':') {
      char c = peek();
      if (!(is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.'))
        fail("bad character in prefix name");
      prefix.push_back(get());
    }
    if (at_end()) fail("expected ':' in prefix directive");
    get();  // ':'
    skip_ws();
    auto iri = iri_ref();
    prefixes_[prefix] = iri;
    if (!prefix.empty()) graph_.namespaces().bind(prefix, iri);
    if (needs_dot) expect('.');
  }

  std::uint32_t hex(std::size_t digits) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = get();
      v <<= 4;
      if (is_digit(c)) v |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    return v;
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected IRI");
    get();
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = get();
        if (e == 'u') append_codepoint(out, hex(4));
        else if (e == 'U') append_codepoint(out, hex(8));
        else fail("bad escape in IRI");
        continue;
      }
      if (c == ' ' || c == '\n' || c == '<' || c == '"') fail("bad character in IRI");
      out.push_back(c);
    }
    if (!is_valid_iri(out)) fail("not an absolute IRI: <" + out + ">");
    return out;
  }

  std::string prefixed_name() {
    std::string prefix;
    while (!at_end() && peek() != ':') {
      char c = peek();
      if (!(is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.'))
        fail("unexpected character");
      prefix.push_back(get());
    }
    if (at_end()) fail("expected ':' in prefixed name");
    get();
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == ':' ||
          c == '%' || c == '.' || static_cast<unsigned char>(c) >= 0x80) {
        // a trailing '.' terminates the statement instead
        if (c == '.') {
          char n = peek(1);
          if (!(is_alpha(n) || is_digit(n) || n == '_' || n == '-' || n == ':' ||
                n == '%'))
            break;
        }
        local.push_back(get());
      } else {
        break;
      }
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + ":'");
    return it->second + local;
  }

  Term blank() {
    get();  // '_'
    if (peek() != ':') fail("expected ':' after '_'");
    get();
    std::string label;
    while (!at_end()) {
      char c = peek();
      if (is_alpha(c) || is_digit(c) || c == '_' || c == '-') label.push_back(get());
      else break;
    }
    if (label.empty()) fail("empty blank node label");
    auto it = blanks_.find(label);
    if (it == blanks_.end()) it = blanks_.emplace(label, graph_.new_blank_node()).first;
    return it->second;
  }

  Term literal() {
    std::size_t line = line_, col = col_;
    get();  // '"'
    if (peek() == '"' && peek(1) == '"') fail("long string literals are not supported");
    std::string lex;
    while (true) {
      if (at_end()) throw TurtleSyntaxError("unterminated string literal", line, col);
      char c = get();
      if (c == '"') break;
      if (c == '\n' || c == '\r')
        throw TurtleSyntaxError("unterminated string literal", line, col);
      if (c == '\\') {
        char e = get();
        switch (e) {
          case 't': lex.push_back('\t'); break;
          case 'b': lex.push_back('\b'); break;
          case 'n': lex.push_back('\n'); break;
          case 'r': lex.push_back('\r'); break;
          case 'f': lex.push_back('\f'); break;
          case '"': lex.push_back('"'); break;
          case '\'': lex.push_back('\''); break;
          case '\\': lex.push_back('\\'); break;
          case 'u': append_codepoint(lex, hex(4)); break;
          case 'U': append_codepoint(lex, hex(8)); break;
          default: fail("bad string escape");
        }
        continue;
      }
      lex.push_back(c);
    }
    std::string datatype;
    if (peek() == '^' && peek(1) == '^') {
      advance(2);
      if (peek() == '<') datatype = iri_ref();
      else datatype = prefixed_name();
    } else if (peek() == '@') {
      fail("language-tagged literals are not supported");
    }
    return Literal{std::move(lex), std::move(datatype)};
  }

  Term subject_or_object(bool allow_literal) {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (c == '<') return Iri{iri_ref()};
    if (c == '_' && peek(1) == ':') return blank();
    if (c == '"') {
      if (!allow_literal) fail("literal cannot be a subject");
      return literal();
    }
    if (c == '[' || c == '(') fail("anonymous nodes and collections are not supported");
    if (is_alpha(c) || c == ':' || c == '_') return Iri{prefixed_name()};
    fail(std::string("unexpected character '") + c + "'");
  }

  Term predicate() {
    skip_ws();
    if (peek() == 'a') {
      char n = peek(1);
      if (n == ' ' || n == '\t' || n == '\n' || n == '\r' || n == '<' || n == '"' ||
          n == '_')
        {
          get();
          return rdf_iri("type");
        }
    }
    auto t = subject_or_object(false);
    if (!is_iri(t)) fail("predicate must be an IRI");
    return t;
  }

  void statement() {
    auto subject = subject_or_object(false);
    while (true) {
      auto pred = predicate();
      while (true) {
        auto object = subject_or_object(true);
        graph_.add(subject, pred, object);
        skip_ws();
        if (peek() == ',') {
          get();
          continue;
        }
        break;
      }
      skip_ws();
      if (peek() == ';') {
        get();
        skip_ws();
        if (peek() == '.') break;  // trailing ';'
        continue;
      }
      break;
    }
    expect('.');
  }
};

}  // namespace

std::uint64_t serialize_turtle(const TripleGraph& graph, std::ostream& out) {
  TurtleWriter w(graph.namespaces());
  std::uint64_t bytes = 0;
  auto emit = [&](const std::string& s) {
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    bytes += s.size();
  };
  for (const auto& [prefix, iri] : graph.namespaces().bindings())
    emit("@prefix " + prefix + ": <" + iri + "> .\n");
  if (!graph.empty()) emit("\n");
  for (const auto& t : graph.triples())
    emit(w.term(t.subject) + " " + w.term(t.predicate) + " " + w.term(t.object) +
         " .\n");
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed writing Turtle");
  return bytes;
}

std::string to_turtle(const TripleGraph& graph) {
  std::ostringstream os;
  serialize_turtle(graph, os);
  return os.str();
}

TripleGraph parse_turtle(std::string_view input) {
  return TurtleParser(input).parse();
}

TripleGraph parse_turtle(std::istream& input) {
  std::ostringstream buf;
  buf << input.rdbuf();
  return parse_turtle(std::string_view(buf.str()));
}

}  // namespace aekg::rdf
