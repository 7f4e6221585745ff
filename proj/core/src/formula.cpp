#include "cpm/formula.hpp"

#include <algorithm>
#include <cctype>

#include "cpm/error.hpp"
#include "cpm/update_models.hpp"

namespace cpm {

struct Formula::Node {
  Kind kind = Kind::top;
  Proposition prop;
  std::string name;
  Formula lhs{nullptr};
  Formula rhs{nullptr};
  std::shared_ptr<const ActionModel> action;
  std::shared_ptr<const CommPatternModel> pattern;
};

Formula::Formula() : node_(top().node_) {}

Formula Formula::top() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::top;
    return std::shared_ptr<const Node>(n);
  }();
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::bottom;
    return std::shared_ptr<const Node>(n);
  }();
  return Formula(node);
}

Formula Formula::prop(Proposition p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::prop;
  n->prop = std::move(p);
  return Formula(std::move(n));
}

Formula Formula::prop(Agent agent, Value value) {
  return prop(Proposition{std::move(agent), std::move(value)});
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negation;
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

namespace {

template <class Node>
std::shared_ptr<Node> binary(Formula::Kind kind, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(binary<Node>(Kind::conjunction, std::move(lhs), std::move(rhs)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(binary<Node>(Kind::disjunction, std::move(lhs), std::move(rhs)));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(binary<Node>(Kind::implication, std::move(lhs), std::move(rhs)));
}

Formula Formula::know(Agent agent, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::know;
  n->name = std::move(agent);
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::action_update(std::shared_ptr<const ActionModel> model, std::string event,
                               Formula f) {
  if (!model) fail(Errc::invalid_argument, "update needs an action model");
  if (!model->find(event)) fail(Errc::invalid_argument, "unknown event '" + event + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::action_update;
  n->name = std::move(event);
  n->action = std::move(model);
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::pattern_update(std::shared_ptr<const CommPatternModel> model,
                                std::string pattern, Formula f) {
  if (!model) fail(Errc::invalid_argument, "update needs a communication pattern model");
  if (!model->find(pattern)) fail(Errc::invalid_argument, "unknown pattern '" + pattern + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::pattern_update;
  n->name = std::move(pattern);
  n->pattern = std::move(model);
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::all_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conjunction(acc, fs[i]);
  return acc;
}

Formula Formula::any_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disjunction(acc, fs[i]);
  return acc;
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const Proposition& Formula::proposition() const { return node_->prop; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }
const std::shared_ptr<const ActionModel>& Formula::action_model() const { return node_->action; }
const std::shared_ptr<const CommPatternModel>& Formula::pattern_model() const {
  return node_->pattern;
}

std::size_t Formula::size() const {
  switch (kind()) {
    case Kind::top:
    case Kind::bottom:
    case Kind::prop:
      return 1;
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return 1 + lhs().size() + rhs().size();
    default:
      return 1 + lhs().size();
  }
}

std::size_t Formula::modal_depth() const {
  switch (kind()) {
    case Kind::top:
    case Kind::bottom:
    case Kind::prop:
      return 0;
    case Kind::negation:
      return lhs().modal_depth();
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return std::max(lhs().modal_depth(), rhs().modal_depth());
    default:
      return 1 + lhs().modal_depth();
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  using K = Formula::Kind;
  switch (a.kind()) {
    case K::top:
    case K::bottom:
      return true;
    case K::prop:
      return a.proposition() == b.proposition();
    case K::negation:
      return a.lhs() == b.lhs();
    case K::conjunction:
    case K::disjunction:
    case K::implication:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case K::know:
      return a.name() == b.name() && a.lhs() == b.lhs();
    case K::action_update:
      return a.name() == b.name() && a.lhs() == b.lhs() &&
             (a.action_model() == b.action_model() || *a.action_model() == *b.action_model());
    case K::pattern_update:
      return a.name() == b.name() && a.lhs() == b.lhs() &&
             (a.pattern_model() == b.pattern_model() ||
              *a.pattern_model() == *b.pattern_model());
  }
  return false;
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { end, ident, not_, and_, or_, implies, lparen, rparen, know_open, rbracket };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::end, "", start};
    char c = src_[pos_];
    switch (c) {
      case '~': ++pos_; return {Tok::not_, "~", start};
      case '&': ++pos_; return {Tok::and_, "&", start};
      case '|': ++pos_; return {Tok::or_, "|", start};
      case '(': ++pos_; return {Tok::lparen, "(", start};
      case ')': ++pos_; return {Tok::rparen, ")", start};
      case ']': ++pos_; return {Tok::rbracket, "]", start};
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          pos_ += 2;
          return {Tok::implies, "->", start};
        }
        throw ParseError(start, "unexpected character '-'");
      default:
        break;
    }
    if (c == 'K' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '[') {
      pos_ += 2;
      return {Tok::know_open, "K[", start};
    }
    if (ident_char(c)) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      return {Tok::ident, std::string(src_.substr(start, pos_ - start)), start};
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Formula parse() {
    Formula f = implication();
    if (cur_.kind != Tok::end) throw ParseError(cur_.pos, "unexpected token '" + cur_.text + "'");
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) {
      throw ParseError(cur_.pos, std::string("expected ") + what +
                                     (cur_.kind == Tok::end ? " before end of input"
                                                            : ", found '" + cur_.text + "'"));
    }
    advance();
  }

  Formula implication() {
    Formula f = disjunction();
    while (cur_.kind == Tok::implies) {
      advance();
      f = Formula::implication(f, disjunction());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (cur_.kind == Tok::or_) {
      advance();
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (cur_.kind == Tok::and_) {
      advance();
      f = Formula::conjunction(f, unary());
    }
    return f;
  }

  Formula unary() {
    switch (cur_.kind) {
      case Tok::not_:
        advance();
        return Formula::negation(unary());
      case Tok::know_open: {
        std::size_t open = cur_.pos;
        advance();
        if (cur_.kind != Tok::ident || !is_token(cur_.text)) {
          throw ParseError(cur_.kind == Tok::end ? open : cur_.pos, "expected agent name in K[");
        }
        std::string agent = cur_.text;
        advance();
        if (cur_.kind != Tok::rbracket) throw ParseError(open, "unclosed bracket in K[");
        advance();
        return Formula::know(std::move(agent), unary());
      }
      case Tok::lparen: {
        std::size_t open = cur_.pos;
        advance();
        Formula f = implication();
        if (cur_.kind != Tok::rparen) throw ParseError(open, "unclosed parenthesis");
        advance();
        return f;
      }
      case Tok::ident: {
        Token t = cur_;
        advance();
        if (t.text == "true") return Formula::top();
        if (t.text == "false") return Formula::bottom();
        if (auto p = parse_proposition(t.text)) return Formula::prop(std::move(*p));
        throw ParseError(t.pos, "unknown token '" + t.text + "'");
      }
      case Tok::end:
        throw ParseError(cur_.pos, "unexpected end of input");
      default:
        throw ParseError(cur_.pos, "unexpected token '" + cur_.text + "'");
    }
  }

  Lexer lexer_;
  Token cur_{};
};

// Binding strength for printing; higher binds tighter.
int precedence(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::implication: return 1;
    case K::disjunction: return 2;
    case K::conjunction: return 3;
    case K::negation:
    case K::know:
    case K::action_update:
    case K::pattern_update: return 4;
    default: return 5;
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f.kind()) < min_prec) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::top: out += "true"; return;
    case K::bottom: out += "false"; return;
    case K::prop: out += f.proposition().name(); return;
    case K::negation:
      out += '~';
      print_operand(f.operand(), 4, out);
      return;
    case K::know:
      out += "K[" + f.name() + "] ";
      print_operand(f.operand(), 4, out);
      return;
    case K::action_update:
      out += "[A:" + f.name() + "] ";
      print_operand(f.operand(), 4, out);
      return;
    case K::pattern_update:
      out += "[P:" + f.name() + "] ";
      print_operand(f.operand(), 4, out);
      return;
    case K::conjunction:
    case K::disjunction:
    case K::implication: {
      int p = precedence(f.kind());
      const char* op = f.kind() == K::conjunction ? " & " : f.kind() == K::disjunction ? " | " : " -> ";
      // Left-associative: the right operand needs strictly tighter binding.
      print_operand(f.lhs(), p, out);
      out += op;
      print_operand(f.rhs(), p + 1, out);
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace cpm
