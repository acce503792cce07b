#include "pgs/logic.hpp"

#include <algorithm>
#include <cctype>

namespace pgs {

Cmp flip_cmp(Cmp c) {
  switch (c) {
    case Cmp::Lt: return Cmp::Gt;
    case Cmp::Gt: return Cmp::Lt;
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Ge: return Cmp::Le;
  }
  throw std::logic_error("bad cmp");
}

bool cmp_is_lower_bound(Cmp c) { return c == Cmp::Gt || c == Cmp::Ge; }
bool cmp_strict(Cmp c) { return c == Cmp::Gt || c == Cmp::Lt; }

std::string cmp_str(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Gt: return ">";
    case Cmp::Le: return "<=";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

Coalition coalition_complement(Coalition c) {
  switch (c) {
    case Coalition::None: return Coalition::Both;
    case Coalition::I: return Coalition::II;
    case Coalition::II: return Coalition::I;
    case Coalition::Both: return Coalition::None;
  }
  throw std::logic_error("bad coalition");
}

namespace {
int coalition_bits(Coalition c) {
  switch (c) {
    case Coalition::None: return 0;
    case Coalition::I: return 1;
    case Coalition::II: return 2;
    case Coalition::Both: return 3;
  }
  return 0;
}
}  // namespace

bool coalition_subset(Coalition sub, Coalition super) {
  return (coalition_bits(sub) & ~coalition_bits(super)) == 0;
}

std::string coalition_str(Coalition c) {
  switch (c) {
    case Coalition::None: return "<<>>";
    case Coalition::I: return "<<I>>";
    case Coalition::II: return "<<II>>";
    case Coalition::Both: return "<<I,II>>";
  }
  return "?";
}

namespace {
StateFormulaPtr mk(StateFormula f) {
  return std::make_shared<const StateFormula>(std::move(f));
}
}  // namespace

StateFormulaPtr f_true() { return mk({.kind = StateFormula::Kind::True}); }
StateFormulaPtr f_false() { return mk({.kind = StateFormula::Kind::False}); }

StateFormulaPtr f_prop(std::string name) {
  StateFormula f{.kind = StateFormula::Kind::Prop};
  f.prop = std::move(name);
  return mk(std::move(f));
}

StateFormulaPtr f_not(StateFormulaPtr f) {
  if (f->kind == StateFormula::Kind::Not) return f->lhs;
  if (f->kind == StateFormula::Kind::True) return f_false();
  if (f->kind == StateFormula::Kind::False) return f_true();
  StateFormula out{.kind = StateFormula::Kind::Not};
  out.lhs = std::move(f);
  return mk(std::move(out));
}

StateFormulaPtr f_and(StateFormulaPtr a, StateFormulaPtr b) {
  StateFormula out{.kind = StateFormula::Kind::And};
  out.lhs = std::move(a);
  out.rhs = std::move(b);
  return mk(std::move(out));
}

StateFormulaPtr f_or(StateFormulaPtr a, StateFormulaPtr b) {
  StateFormula out{.kind = StateFormula::Kind::Or};
  out.lhs = std::move(a);
  out.rhs = std::move(b);
  return mk(std::move(out));
}

StateFormulaPtr f_strategic(Coalition coal, Cmp cmp, Rat threshold,
                            PathFormulaPtr path) {
  if (path->kind == PathFormula::Kind::Release) {
    // <<A>>[cmp a](l R k r) == <<A>>[~cmp 1-a]((!l) U k (!r)), Lemma-1 style.
    return f_strategic(coal, flip_cmp(cmp), Rat(1) - threshold,
                       p_until(f_not(path->lhs), f_not(path->rhs),
                               path->bound));
  }
  StateFormula out{.kind = StateFormula::Kind::Strategic};
  out.coalition = coal;
  out.cmp = cmp;
  out.threshold = std::move(threshold);
  out.path = std::move(path);
  return mk(std::move(out));
}

namespace {
PathFormulaPtr mkp(PathFormula p) {
  return std::make_shared<const PathFormula>(std::move(p));
}
}  // namespace

PathFormulaPtr p_next(StateFormulaPtr f) {
  PathFormula p{.kind = PathFormula::Kind::Next};
  p.rhs = std::move(f);
  return mkp(std::move(p));
}

PathFormulaPtr p_until(StateFormulaPtr lhs, StateFormulaPtr rhs, long bound) {
  PathFormula p{.kind = PathFormula::Kind::Until};
  p.lhs = std::move(lhs);
  p.rhs = std::move(rhs);
  p.bound = bound;
  return mkp(std::move(p));
}

PathFormulaPtr p_release(StateFormulaPtr lhs, StateFormulaPtr rhs,
                         long bound) {
  PathFormula p{.kind = PathFormula::Kind::Release};
  p.lhs = std::move(lhs);
  p.rhs = std::move(rhs);
  p.bound = bound;
  return mkp(std::move(p));
}

bool formulas_equal(const StateFormulaPtr& a, const StateFormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case StateFormula::Kind::True:
    case StateFormula::Kind::False:
      return true;
    case StateFormula::Kind::Prop:
      return a->prop == b->prop;
    case StateFormula::Kind::Not:
      return formulas_equal(a->lhs, b->lhs);
    case StateFormula::Kind::And:
    case StateFormula::Kind::Or:
      return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
    case StateFormula::Kind::Strategic:
      return a->coalition == b->coalition && a->cmp == b->cmp &&
             a->threshold == b->threshold && paths_equal(a->path, b->path);
  }
  return false;
}

bool paths_equal(const PathFormulaPtr& a, const PathFormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind != PathFormula::Kind::Next && a->bound != b->bound) return false;
  if (a->kind != PathFormula::Kind::Next &&
      !formulas_equal(a->lhs, b->lhs))
    return false;
  return formulas_equal(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  End, Ident, Number, LParen, RParen, Not, And, Or,
  CoalOpen, CoalClose, LBracket, RBracket, Comma,
  Lt, Gt, Le, Ge, OpX, OpF, OpG, OpU, OpR, KwTrue, KwFalse, KwI, KwII
};

struct Token {
  Tok kind;
  std::string text;
  int pos;
};

// Unicode aliases normalize to ASCII before lexing; positions refer to the
// normalized text.
std::string normalize_aliases(const std::string& in) {
  static const std::vector<std::pair<std::string, std::string>> subs = {
      {"⟨⟨", "<<"}, {"⟩⟩", ">>"},  // angle bracket pairs
      {"∧", "&"},  {"∨", "|"},  {"¬", "!"},
      {"◯", "X"},  {"○", "X"},  {"◇", "F"}, {"□", "G"},
      {"≤", "<="}, {"≥", ">="}, {"∞", ""}};
  std::string out = in;
  for (const auto& [from, to] : subs) {
    size_t at = 0;
    while ((at = out.find(from, at)) != std::string::npos) {
      out.replace(at, from.size(), to);
      at += to.size();
    }
  }
  return out;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(normalize_aliases(text)) {
    int guard = 0;
    do {
      tokens_.push_back(lex());
      if (++guard > 100000) throw ParseError("formula too long", 0);
    } while (tokens_.back().kind != Tok::End);
  }

  const Token& peek(int ahead = 0) const {
    size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token next() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }
  size_t mark() const { return index_; }
  void rewind(size_t m) { index_ = m; }

 private:
  Token lex() {
    while (at_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[at_])))
      ++at_;
    int start = static_cast<int>(at_);
    if (at_ >= text_.size()) return {Tok::End, "", start};
    char c = text_[at_];
    auto two = [&](char a, char b) {
      return c == a && at_ + 1 < text_.size() && text_[at_ + 1] == b;
    };
    if (two('<', '<')) { at_ += 2; return {Tok::CoalOpen, "<<", start}; }
    if (two('>', '>')) { at_ += 2; return {Tok::CoalClose, ">>", start}; }
    if (two('<', '=')) { at_ += 2; return {Tok::Le, "<=", start}; }
    if (two('>', '=')) { at_ += 2; return {Tok::Ge, ">=", start}; }
    switch (c) {
      case '<': ++at_; return {Tok::Lt, "<", start};
      case '>': ++at_; return {Tok::Gt, ">", start};
      case '(': ++at_; return {Tok::LParen, "(", start};
      case ')': ++at_; return {Tok::RParen, ")", start};
      case '[': ++at_; return {Tok::LBracket, "[", start};
      case ']': ++at_; return {Tok::RBracket, "]", start};
      case ',': ++at_; return {Tok::Comma, ",", start};
      case '!': ++at_; return {Tok::Not, "!", start};
      case '&': ++at_; return {Tok::And, "&", start};
      case '|': ++at_; return {Tok::Or, "|", start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t end = at_;
      while (end < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[end])))
        ++end;
      if (end < text_.size() && (text_[end] == '.' || text_[end] == '/')) {
        ++end;
        while (end < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[end])))
          ++end;
      }
      std::string num = text_.substr(at_, end - at_);
      at_ = end;
      return {Tok::Number, num, start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = at_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) ||
              text_[end] == '_' || text_[end] == '\''))
        ++end;
      std::string word = text_.substr(at_, end - at_);
      at_ = end;
      if (word == "true") return {Tok::KwTrue, word, start};
      if (word == "false") return {Tok::KwFalse, word, start};
      if (word == "X") return {Tok::OpX, word, start};
      if (word == "F") return {Tok::OpF, word, start};
      if (word == "G") return {Tok::OpG, word, start};
      if (word == "U") return {Tok::OpU, word, start};
      if (word == "R") return {Tok::OpR, word, start};
      if (word == "I") return {Tok::KwI, word, start};
      if (word == "II") return {Tok::KwII, word, start};
      return {Tok::Ident, word, start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string text_;
  size_t at_ = 0;
  std::vector<Token> tokens_;
  size_t index_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  StateFormulaPtr parse_state_top() {
    auto f = parse_or();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

  PathFormulaPtr parse_path_top() {
    auto p = parse_path();
    expect(Tok::End, "trailing input after path formula");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& tok) {
    throw ParseError(msg, tok.pos);
  }

  Token expect(Tok kind, const std::string& msg) {
    Token t = lex_.next();
    if (t.kind != kind) fail(msg, t);
    return t;
  }

  StateFormulaPtr parse_or() {
    auto f = parse_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.next();
      f = f_or(f, parse_and());
    }
    return f;
  }

  StateFormulaPtr parse_and() {
    auto f = parse_unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.next();
      f = f_and(f, parse_unary());
    }
    return f;
  }

  StateFormulaPtr parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Not:
        lex_.next();
        return f_not(parse_unary());
      case Tok::KwTrue:
        lex_.next();
        return f_true();
      case Tok::KwFalse:
        lex_.next();
        return f_false();
      case Tok::Ident: {
        Token tok = lex_.next();
        return f_prop(tok.text);
      }
      case Tok::LParen: {
        lex_.next();
        auto f = parse_or();
        expect(Tok::RParen, "expected ')'");
        return f;
      }
      case Tok::CoalOpen:
        return parse_strategic();
      default:
        fail("expected a state formula", t);
    }
  }

  StateFormulaPtr parse_strategic() {
    expect(Tok::CoalOpen, "expected '<<'");
    Coalition coal = Coalition::None;
    if (lex_.peek().kind == Tok::KwI) {
      lex_.next();
      coal = Coalition::I;
      if (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        expect(Tok::KwII, "expected 'II' after 'I,'");
        coal = Coalition::Both;
      }
    } else if (lex_.peek().kind == Tok::KwII) {
      lex_.next();
      coal = Coalition::II;
    }
    expect(Tok::CoalClose, "expected '>>'");
    expect(Tok::LBracket, "expected '[' before comparison");
    Cmp cmp;
    Token c = lex_.next();
    switch (c.kind) {
      case Tok::Lt: cmp = Cmp::Lt; break;
      case Tok::Gt: cmp = Cmp::Gt; break;
      case Tok::Le: cmp = Cmp::Le; break;
      case Tok::Ge: cmp = Cmp::Ge; break;
      default: fail("expected comparison <, >, <= or >=", c);
    }
    Token num = expect(Tok::Number, "expected threshold");
    auto alpha = rat_parse(num.text);
    if (!alpha || *alpha < 0 || *alpha > 1)
      fail("threshold must be a rational in [0,1]", num);
    expect(Tok::RBracket, "expected ']'");
    auto path = parse_path();
    return f_strategic(coal, cmp, *alpha, path);
  }

  long parse_bound_opt() {
    if (lex_.peek().kind != Tok::Le) return -1;
    lex_.next();
    Token num = expect(Tok::Number, "expected integer bound after '<='");
    if (num.text.find('.') != std::string::npos ||
        num.text.find('/') != std::string::npos)
      fail("bound must be a nonnegative integer", num);
    return std::stol(num.text);
  }

  PathFormulaPtr parse_path() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::OpX:
        lex_.next();
        return p_next(parse_unary());
      case Tok::OpF: {
        lex_.next();
        long bound = parse_bound_opt();
        return p_until(f_true(), parse_unary(), bound);
      }
      case Tok::OpG: {
        lex_.next();
        long bound = parse_bound_opt();
        return p_release(f_false(), parse_unary(), bound);
      }
      case Tok::LParen: {
        // Either a parenthesized path formula or a parenthesized state
        // operand of an infix U/R; try the path reading first.
        size_t m = lex_.mark();
        lex_.next();
        try {
          auto p = parse_path();
          expect(Tok::RParen, "expected ')'");
          return p;
        } catch (const ParseError&) {
          lex_.rewind(m);
        }
        return parse_infix_path();
      }
      default:
        return parse_infix_path();
    }
  }

  PathFormulaPtr parse_infix_path() {
    auto lhs = parse_or();
    Token op = lex_.next();
    if (op.kind != Tok::OpU && op.kind != Tok::OpR)
      fail("expected 'U' or 'R' in path formula", op);
    long bound = parse_bound_opt();
    auto rhs = parse_or();
    return op.kind == Tok::OpU ? p_until(lhs, rhs, bound)
                               : p_release(lhs, rhs, bound);
  }

  Lexer lex_;
};

}  // namespace

StateFormulaPtr parse_state_formula(const std::string& text) {
  return Parser(text).parse_state_top();
}

PathFormulaPtr parse_path_formula(const std::string& text) {
  return Parser(text).parse_path_top();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int prec(const StateFormulaPtr& f) {
  switch (f->kind) {
    case StateFormula::Kind::Or: return 1;
    case StateFormula::Kind::And: return 2;
    default: return 3;
  }
}

void print_state(const StateFormulaPtr& f, std::string& out, int min_prec);

void print_operand(const StateFormulaPtr& f, std::string& out, int min_prec) {
  if (prec(f) < min_prec) {
    out += '(';
    print_state(f, out, 1);
    out += ')';
  } else {
    print_state(f, out, min_prec);
  }
}

void print_path(const PathFormulaPtr& p, std::string& out) {
  auto bound_str = [&](long b) {
    return b >= 0 ? "<=" + std::to_string(b) : std::string();
  };
  switch (p->kind) {
    case PathFormula::Kind::Next:
      out += "X ";
      print_operand(p->rhs, out, 3);
      return;
    case PathFormula::Kind::Until:
    case PathFormula::Kind::Release: {
      out += '(';
      print_state(p->lhs, out, 1);
      out += p->kind == PathFormula::Kind::Until ? " U" : " R";
      out += bound_str(p->bound);
      out += ' ';
      print_state(p->rhs, out, 1);
      out += ')';
      return;
    }
  }
}

void print_state(const StateFormulaPtr& f, std::string& out, int min_prec) {
  switch (f->kind) {
    case StateFormula::Kind::True: out += "true"; return;
    case StateFormula::Kind::False: out += "false"; return;
    case StateFormula::Kind::Prop: out += f->prop; return;
    case StateFormula::Kind::Not:
      out += '!';
      print_operand(f->lhs, out, 3);
      return;
    case StateFormula::Kind::And:
      print_operand(f->lhs, out, 2);
      out += " & ";
      print_operand(f->rhs, out, 2);
      return;
    case StateFormula::Kind::Or:
      print_operand(f->lhs, out, 1);
      out += " | ";
      print_operand(f->rhs, out, 2);
      return;
    case StateFormula::Kind::Strategic:
      out += coalition_str(f->coalition);
      out += '[';
      out += cmp_str(f->cmp);
      out += rat_str(f->threshold);
      out += "] ";
      print_path(f->path, out);
      return;
  }
}

}  // namespace

std::string to_string(const StateFormulaPtr& f) {
  std::string out;
  print_state(f, out, 1);
  return out;
}

std::string to_string(const PathFormulaPtr& p) {
  std::string out;
  print_path(p, out);
  return out;
}

PathFormulaPtr negate_path(const PathFormulaPtr& p) {
  switch (p->kind) {
    case PathFormula::Kind::Next:
      return p_next(f_not(p->rhs));
    case PathFormula::Kind::Until:
      return p_release(f_not(p->lhs), f_not(p->rhs), p->bound);
    case PathFormula::Kind::Release:
      return p_until(f_not(p->lhs), f_not(p->rhs), p->bound);
  }
  throw std::logic_error("bad path kind");
}

Dualized dualize(Cmp cmp, const Rat& threshold, const PathFormulaPtr& path) {
  return {flip_cmp(cmp), Rat(1) - threshold, negate_path(path)};
}

// ---------------------------------------------------------------------------
// Fragments

namespace {

bool is_literal(const StateFormulaPtr& f) {
  return f->kind == StateFormula::Kind::Prop ||
         f->kind == StateFormula::Kind::True ||
         f->kind == StateFormula::Kind::False ||
         (f->kind == StateFormula::Kind::Not &&
          f->lhs->kind == StateFormula::Kind::Prop);
}

bool in_a_patl(const StateFormulaPtr& f, Coalition a) {
  switch (f->kind) {
    case StateFormula::Kind::True:
    case StateFormula::Kind::False:
    case StateFormula::Kind::Prop:
      return true;
    case StateFormula::Kind::Not:
      return is_literal(f);
    case StateFormula::Kind::And:
    case StateFormula::Kind::Or:
      return in_a_patl(f->lhs, a) && in_a_patl(f->rhs, a);
    case StateFormula::Kind::Strategic: {
      if (!coalition_subset(f->coalition, a)) return false;
      if (!cmp_is_lower_bound(f->cmp)) return false;
      const auto& p = *f->path;
      switch (p.kind) {
        case PathFormula::Kind::Next:
          return in_a_patl(p.rhs, a);
        case PathFormula::Kind::Until:
          if (p.bound < 0 && f->cmp != Cmp::Gt) return false;
          return in_a_patl(p.lhs, a) && in_a_patl(p.rhs, a);
        case PathFormula::Kind::Release:
          return false;
      }
      return false;
    }
  }
  return false;
}

bool in_l_i_plus(const StateFormulaPtr& f) {
  switch (f->kind) {
    case StateFormula::Kind::True:
    case StateFormula::Kind::False:
    case StateFormula::Kind::Prop:
      return true;
    case StateFormula::Kind::Not:
      return in_l_i_plus(f->lhs);
    case StateFormula::Kind::And:
    case StateFormula::Kind::Or:
      return in_l_i_plus(f->lhs) && in_l_i_plus(f->rhs);
    case StateFormula::Kind::Strategic: {
      if (!coalition_subset(f->coalition, Coalition::I)) return false;
      const auto& p = *f->path;
      switch (p.kind) {
        case PathFormula::Kind::Next:
          return in_l_i_plus(p.rhs);
        case PathFormula::Kind::Until:
          // Unbounded until needs a lower-bound comparison.
          if (p.bound < 0 && !cmp_is_lower_bound(f->cmp)) return false;
          return in_l_i_plus(p.lhs) && in_l_i_plus(p.rhs);
        case PathFormula::Kind::Release:
          return false;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

std::vector<FragmentTag> classify_fragment(const StateFormulaPtr& f,
                                           Coalition a) {
  std::vector<FragmentTag> tags;
  if (in_a_patl(f, a)) tags.push_back({FragmentTag::Kind::APatl, a});
  if (in_l_i_plus(f)) tags.push_back({FragmentTag::Kind::LIPlus});
  tags.push_back({FragmentTag::Kind::Full});
  return tags;
}

}  // namespace pgs
