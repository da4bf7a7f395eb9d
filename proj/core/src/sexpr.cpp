#include "astkit/sexpr.hpp"

#include "astkit/error.hpp"

#include <cctype>
#include <utility>

namespace astkit {
namespace {

void append_quoted(std::string &out, std::string_view text) {
  out += '"';
  for (char c : text) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\r':
      out += "\\r";
      break;
    case '\t':
      out += "\\t";
      break;
    default:
      out += c;
    }
  }
  out += '"';
}

void append_atom(std::string &out, std::string_view label) {
  if (label.empty()) {
    out += "\\e";
    return;
  }
  for (std::size_t i = 0; i < label.size(); ++i) {
    const char c = label[i];
    switch (c) {
    case ' ':
      out += "\\s";
      break;
    case '\t':
      out += "\\t";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\r':
      out += "\\r";
      break;
    case '(':
    case ')':
    case '"':
    case '\\':
      out += '\\';
      out += c;
      break;
    case ':':
      if (i == 0)
        out += '\\';
      out += c;
      break;
    default:
      if (std::isspace(static_cast<unsigned char>(c))) {
        // Vertical tab / form feed: rare enough for a hex escape.
        static constexpr char kHex[] = "0123456789abcdef";
        out += "\\x";
        out += kHex[(static_cast<unsigned char>(c) >> 4) & 0xf];
        out += kHex[static_cast<unsigned char>(c) & 0xf];
      } else {
        out += c;
      }
    }
  }
}

bool all_value_children(const AstTree &tree, const AstNode &node) {
  for (NodeId c : node.children)
    if (tree.node(c).kind != NodeKind::Value)
      return false;
  return true;
}

class SexprReader {
public:
  explicit SexprReader(std::string_view text) : text_(text) {}

  AstTree read() {
    skip_space();
    TreeBuilder builder;
    struct Frame {
      NodeId id;
      char marker; // 0, 'n' or 't'
      std::size_t open_pos;
    };
    std::vector<Frame> stack;
    bool have_root = false;

    auto add = [&](NodeKind kind, std::string label) -> NodeId {
      if (stack.empty()) {
        if (have_root)
          throw ParseError("more than one top-level expression", pos_);
        have_root = true;
        return builder.add_root(kind, std::move(label));
      }
      return builder.add_child(stack.back().id, kind, std::move(label));
    };

    do {
      skip_space();
      if (pos_ >= text_.size())
        throw ParseError(stack.empty() ? "empty input" : "unterminated list", pos_);
      const char c = text_[pos_];
      if (c == '(') {
        const std::size_t open = pos_++;
        std::string label = read_atom();
        NodeId id = add(NodeKind::NonTerminal, std::move(label));
        char marker = 0;
        skip_space();
        if (pos_ + 1 < text_.size() && text_[pos_] == ':' &&
            (text_[pos_ + 1] == 'n' || text_[pos_ + 1] == 't') &&
            (pos_ + 2 == text_.size() || is_delim(text_[pos_ + 2]))) {
          marker = text_[pos_ + 1];
          pos_ += 2;
        }
        stack.push_back({id, marker, open});
      } else if (c == ')') {
        if (stack.empty())
          throw ParseError("unexpected ')'", pos_);
        ++pos_;
        finish(builder, stack.back().id, stack.back().marker, stack.back().open_pos);
        stack.pop_back();
      } else if (c == '"') {
        add(NodeKind::Value, read_quoted());
      } else {
        throw ParseError("expected '(', ')' or '\"'", pos_);
      }
    } while (!stack.empty());

    skip_space();
    if (pos_ != text_.size())
      throw ParseError("trailing characters after expression", pos_);

    try {
      return std::move(builder).build();
    } catch (const InputError &e) {
      throw ParseError(e.what(), 0);
    }
  }

private:
  // Kinds are only known once the closing bracket is seen.
  void finish(TreeBuilder &builder, NodeId id, char marker, std::size_t open_pos) {
    const AstNode &node = builder.node(id);
    bool all_values = true;
    for (NodeId c : node.children)
      if (builder.node(c).kind != NodeKind::Value)
        all_values = false;
    NodeKind kind = NodeKind::NonTerminal;
    if (marker == 't') {
      if (!node.children.empty())
        throw ParseError("':t' marker on a list with children", open_pos);
      kind = NodeKind::Terminal;
    } else if (marker == 'n') {
      if (node.children.empty() || !all_values)
        throw ParseError("':n' marker on a list that does not need it", open_pos);
    } else if (!node.children.empty() && all_values) {
      kind = NodeKind::Terminal;
    }
    builder.set_kind(id, kind);
  }

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == '"' || std::isspace(static_cast<unsigned char>(c));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  static int hex_value(char c) {
    if (c >= '0' && c <= '9')
      return c - '0';
    if (c >= 'a' && c <= 'f')
      return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
      return c - 'A' + 10;
    return -1;
  }

  std::string read_atom() {
    std::string out;
    const std::size_t start = pos_;
    bool empty_marker = false;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      char c = text_[pos_++];
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= text_.size())
        throw ParseError("dangling escape", pos_);
      const char e = text_[pos_++];
      switch (e) {
      case 's':
        out += ' ';
        break;
      case 't':
        out += '\t';
        break;
      case 'n':
        out += '\n';
        break;
      case 'r':
        out += '\r';
        break;
      case 'e':
        empty_marker = true;
        break;
      case 'x': {
        if (pos_ + 2 > text_.size())
          throw ParseError("truncated \\x escape", pos_);
        const int hi = hex_value(text_[pos_]);
        const int lo = hex_value(text_[pos_ + 1]);
        if (hi < 0 || lo < 0)
          throw ParseError("bad \\x escape", pos_);
        out += static_cast<char>(hi * 16 + lo);
        pos_ += 2;
        break;
      }
      default:
        out += e;
      }
    }
    if (pos_ == start)
      throw ParseError("expected a label", pos_);
    if (empty_marker && !out.empty())
      throw ParseError("'\\e' mixed with other characters", start);
    return out;
  }

  std::string read_quoted() {
    std::string out;
    const std::size_t start = pos_++;
    while (true) {
      if (pos_ >= text_.size())
        throw ParseError("unterminated string", start);
      const char c = text_[pos_++];
      if (c == '"')
        return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= text_.size())
        throw ParseError("dangling escape", pos_);
      const char e = text_[pos_++];
      switch (e) {
      case 'n':
        out += '\n';
        break;
      case 'r':
        out += '\r';
        break;
      case 't':
        out += '\t';
        break;
      case '"':
      case '\\':
        out += e;
        break;
      default:
        throw ParseError(std::string("unknown escape '\\") + e + "'", pos_ - 2);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

std::string to_sexpr(const AstTree &tree) {
  std::string out;
  if (tree.empty())
    return out;
  out.reserve(tree.size() * 12);

  // Iterative preorder with explicit close markers.
  struct Item {
    NodeId id;
    bool close;
  };
  std::vector<Item> stack{{tree.root_id(), false}};
  bool first = true;
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    if (item.close) {
      out += ')';
      continue;
    }
    if (!first)
      out += ' ';
    first = false;
    const AstNode &node = tree.node(item.id);
    if (node.kind == NodeKind::Value) {
      append_quoted(out, node.label);
      continue;
    }
    out += '(';
    append_atom(out, node.label);
    if (node.kind == NodeKind::NonTerminal && !node.children.empty() && all_value_children(tree, node))
      out += " :n";
    else if (node.kind == NodeKind::Terminal && node.children.empty())
      out += " :t";
    stack.push_back({item.id, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
      stack.push_back({*it, false});
  }
  return out;
}

AstTree parse_sexpr(std::string_view text) { return SexprReader(text).read(); }

} // namespace astkit
