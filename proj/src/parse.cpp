#include "cutr/parse.hpp"

#include <cctype>

#include "cutr/errors.hpp"

namespace cutr {

namespace {

enum class Tok { Atom, Top, Bot, And, Or, Imp, Coimp, Neg, Box, LParen, RParen, Comma, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

struct Synonym {
  std::string_view spelling;
  Tok kind;
};

// Longest spellings first so that "|-" wins over "|".
constexpr Synonym kSymbols[] = {
    {"|-", Tok::Turnstile}, {"->", Tok::Imp},     {"-<", Tok::Coimp},      {"[]", Tok::Box},
    {"&", Tok::And},        {"|", Tok::Or},       {"~", Tok::Neg},         {"(", Tok::LParen},
    {")", Tok::RParen},     {",", Tok::Comma},    {"⊃", Tok::Imp},    {"≺", Tok::Coimp},
    {"∧", Tok::And},   {"∨", Tok::Or},  {"¬", Tok::Neg},    {"□", Tok::Box},
    {"⊤", Tok::Top},   {"⊥", Tok::Bot}, {"⇒", Tok::Turnstile}, {"⊢", Tok::Turnstile},
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back({Tok::End, "", src_.size()});
    return out;
  }

 private:
  Token next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {Tok::Atom, std::string(src_.substr(start, pos_ - start)), start};
    }
    if (c == 'T' || c == 'F') {
      ++pos_;
      if (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        throw ParseError("unknown token", start);
      return {c == 'T' ? Tok::Top : Tok::Bot, std::string(1, c), start};
    }
    for (const auto& s : kSymbols) {
      if (src_.substr(pos_, s.spelling.size()) == s.spelling) {
        pos_ += s.spelling.size();
        return {s.kind, std::string(s.spelling), start};
      }
    }
    throw ParseError(std::string("unknown token '") + c + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(Lexer(s).run()) {}

  Formula formula() { return imp(); }

  Formulas list() {
    Formulas out;
    if (at(Tok::End) || at(Tok::Turnstile)) return out;
    out.push_back(formula());
    while (at(Tok::Comma)) {
      ++i_;
      out.push_back(formula());
    }
    return out;
  }

  Sequent sequent() {
    Sequent s;
    s.ante = list();
    expect(Tok::Turnstile, "expected '|-'");
    s.succ = list();
    return s;
  }

  void finish() { expect(Tok::End, "trailing input"); }

 private:
  bool at(Tok k) const { return toks_[i_].kind == k; }
  const Token& peek() const { return toks_[i_]; }

  void expect(Tok k, const char* msg) {
    if (!at(k)) throw ParseError(msg, peek().pos);
    ++i_;
  }

  Formula imp() {
    Formula lhs = disj();
    if (at(Tok::Imp) || at(Tok::Coimp)) {
      const Tok op = peek().kind;
      ++i_;
      return make(op, lhs, chain(op));
    }
    return lhs;
  }

  // Right-associative chain of a single arrow kind.
  Formula chain(Tok op) {
    Formula lhs = disj();
    if (at(op)) {
      ++i_;
      return make(op, lhs, chain(op));
    }
    if (at(Tok::Imp) || at(Tok::Coimp))
      throw ParseError("'->' and '-<' do not mix without parentheses", peek().pos);
    return lhs;
  }

  static Formula make(Tok op, Formula l, Formula r) {
    return op == Tok::Imp ? Formula::imp(std::move(l), std::move(r)) : Formula::coimp(std::move(l), std::move(r));
  }

  Formula disj() {
    Formula f = conj();
    while (at(Tok::Or)) {
      ++i_;
      f = Formula::disj(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (at(Tok::And)) {
      ++i_;
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Neg:
        ++i_;
        return Formula::neg(unary());
      case Tok::Box:
        ++i_;
        return Formula::box(unary());
      case Tok::Atom:
        ++i_;
        return Formula::atom(t.text);
      case Tok::Top:
        ++i_;
        return Formula::top();
      case Tok::Bot:
        ++i_;
        return Formula::bot();
      case Tok::LParen: {
        ++i_;
        Formula f = formula();
        expect(Tok::RParen, "unbalanced parentheses");
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

int level(const Formula& f) {
  switch (f.kind()) {
    case Connective::Imp:
    case Connective::Coimp:
      return 1;
    case Connective::Or:
      return 2;
    case Connective::And:
      return 3;
    default:
      return 4;
  }
}

void print(const Formula& f, std::string& out);

void print_wrapped(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out += f.name();
      return;
    case Connective::Top:
      out += 'T';
      return;
    case Connective::Bot:
      out += 'F';
      return;
    case Connective::Neg:
      out += '~';
      print_wrapped(f.operand(), level(f.operand()) < 4, out);
      return;
    case Connective::Box:
      out += "[]";
      print_wrapped(f.operand(), level(f.operand()) < 4, out);
      return;
    case Connective::And:
      print_wrapped(f.left(), level(f.left()) < 3, out);
      out += " & ";
      print_wrapped(f.right(), level(f.right()) <= 3, out);
      return;
    case Connective::Or:
      print_wrapped(f.left(), level(f.left()) < 2, out);
      out += " | ";
      print_wrapped(f.right(), level(f.right()) <= 2, out);
      return;
    case Connective::Imp:
    case Connective::Coimp:
      print_wrapped(f.left(), level(f.left()) <= 1, out);
      out += f.is(Connective::Imp) ? " -> " : " -< ";
      print_wrapped(f.right(), level(f.right()) == 1 && f.right().kind() != f.kind(), out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.finish();
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(text);
  Sequent s = p.sequent();
  p.finish();
  return s;
}

Formulas parse_formulas(std::string_view text) {
  Parser p(text);
  Formulas fs = p.list();
  p.finish();
  return fs;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string print_formulas(const Formulas& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(fs[i]);
  }
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out = print_formulas(s.ante);
  out += out.empty() ? "|-" : " |-";
  if (!s.succ.empty()) out += " " + print_formulas(s.succ);
  return out;
}

}  // namespace cutr
