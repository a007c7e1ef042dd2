//===- parser.cpp - MiniJ lexer and recursive-descent parser --------------===//
//
// Expression grammar, lowest to highest precedence:
//   ||  &&  == !=  < <= > >=  + -  * / mod  unary(- ! ++ --)  postfix(++ --)
// All binary operators are left associative.
//
//===----------------------------------------------------------------------===//

#include "slicekit/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "slicekit/error.hpp"
#include "slicekit/transform.hpp"

namespace slicekit {
namespace {

enum class Tok {
  Ident,
  Int,
  KwInt,
  KwRead,
  KwPrint,
  KwIf,
  KwElse,
  KwWhile,
  KwFor,
  KwMod,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Semi,
  Comma,
  Assign,
  PlusAssign,
  MinusAssign,
  StarAssign,
  SlashAssign,
  PlusPlus,
  MinusMinus,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  NotEq,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
public:
  Lexer(std::string_view src, std::vector<std::string> &notes)
      : src_(src), notes_(notes) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(peek())))
        advance();
      if (peek() == '/' && peek(1) == '/') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && peek() != '\n')
          advance();
        std::string_view comment = src_.substr(start, pos_ - start);
        constexpr std::string_view pragma = "//@note";
        if (comment.substr(0, pragma.size()) == pragma) {
          std::string_view text = comment.substr(pragma.size());
          while (!text.empty() && text.front() == ' ')
            text.remove_prefix(1);
          while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.remove_suffix(1);
          notes_.emplace_back(text);
        }
        continue;
      }
      return;
    }
  }

  Token next() {
    const int line = line_, col = col_;
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
        advance();
      std::string word(src_.substr(start, pos_ - start));
      return {keyword(word), word, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())))
        advance();
      return {Tok::Int, std::string(src_.substr(start, pos_ - start)), line, col};
    }
    auto two = [&](char second) { return peek(1) == second; };
    auto emit = [&](Tok t, int len) {
      std::string text(src_.substr(pos_, len));
      for (int i = 0; i < len; ++i)
        advance();
      return Token{t, text, line, col};
    };
    switch (c) {
    case '(': return emit(Tok::LParen, 1);
    case ')': return emit(Tok::RParen, 1);
    case '{': return emit(Tok::LBrace, 1);
    case '}': return emit(Tok::RBrace, 1);
    case '[': return emit(Tok::LBracket, 1);
    case ']': return emit(Tok::RBracket, 1);
    case ';': return emit(Tok::Semi, 1);
    case ',': return emit(Tok::Comma, 1);
    case '%': return emit(Tok::Percent, 1);
    case '=': return two('=') ? emit(Tok::EqEq, 2) : emit(Tok::Assign, 1);
    case '!': return two('=') ? emit(Tok::NotEq, 2) : emit(Tok::Bang, 1);
    case '<': return two('=') ? emit(Tok::Le, 2) : emit(Tok::Lt, 1);
    case '>': return two('=') ? emit(Tok::Ge, 2) : emit(Tok::Gt, 1);
    case '*': return two('=') ? emit(Tok::StarAssign, 2) : emit(Tok::Star, 1);
    case '/': return two('=') ? emit(Tok::SlashAssign, 2) : emit(Tok::Slash, 1);
    case '+':
      if (two('+')) return emit(Tok::PlusPlus, 2);
      return two('=') ? emit(Tok::PlusAssign, 2) : emit(Tok::Plus, 1);
    case '-':
      if (two('-')) return emit(Tok::MinusMinus, 2);
      return two('=') ? emit(Tok::MinusAssign, 2) : emit(Tok::Minus, 1);
    case '&':
      if (two('&')) return emit(Tok::AndAnd, 2);
      break;
    case '|':
      if (two('|')) return emit(Tok::OrOr, 2);
      break;
    default:
      break;
    }
    throw ParseError(ParseErrorKind::Syntax, line, col,
                     std::string("unexpected character '") + c + "'");
  }

  static Tok keyword(const std::string &w) {
    if (w == "int") return Tok::KwInt;
    if (w == "read") return Tok::KwRead;
    if (w == "print") return Tok::KwPrint;
    if (w == "if") return Tok::KwIf;
    if (w == "else") return Tok::KwElse;
    if (w == "while") return Tok::KwWhile;
    if (w == "for") return Tok::KwFor;
    if (w == "mod") return Tok::KwMod;
    return Tok::Ident;
  }

  std::string_view src_;
  std::vector<std::string> &notes_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Counts in-expression ++/-- and records which scalars they touch.
void find_incdec(const ExprPtr &e, std::vector<std::string> &targets) {
  if (!e)
    return;
  if (const auto *u = std::get_if<UnaryExpr>(&e->node)) {
    if (u->op != UnaryOp::Neg && u->op != UnaryOp::Not)
      targets.push_back(std::get<VarRef>(u->operand->node).name);
    find_incdec(u->operand, targets);
  } else if (const auto *b = std::get_if<BinaryExpr>(&e->node)) {
    find_incdec(b->lhs, targets);
    find_incdec(b->rhs, targets);
  } else if (const auto *i = std::get_if<IndexRef>(&e->node)) {
    find_incdec(i->index, targets);
  }
}

void count_occurrences(const ExprPtr &e, const std::string &name, int &n) {
  if (!e)
    return;
  std::visit(
      [&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          n += x.name == name;
        } else if constexpr (std::is_same_v<T, IndexRef>) {
          n += x.array == name;
          count_occurrences(x.index, name, n);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          count_occurrences(x.operand, name, n);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          count_occurrences(x.lhs, name, n);
          count_occurrences(x.rhs, name, n);
        }
      },
      e->node);
}

class Parser {
public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run(std::vector<std::string> notes) {
    Program p;
    p.notes = std::move(notes);
    while (at(Tok::KwInt))
      p.decls.push_back(decl());
    while (!at(Tok::End))
      p.body.push_back(statement());
    relabel(p);
    return p;
  }

private:
  const Token &cur() const { return toks_[pos_]; }
  bool at(Tok t) const { return cur().kind == t; }
  const Token &peek_tok(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  [[noreturn]] void fail(const Token &t, const std::string &msg,
                         ParseErrorKind kind = ParseErrorKind::Syntax) const {
    throw ParseError(kind, t.line, t.column, msg);
  }

  [[noreturn]] void unexpected(const std::string &what) const {
    const Token &t = cur();
    fail(t, "expected " + what + ", found " +
                (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"));
  }

  const Token &expect(Tok t, const char *what) {
    if (!at(t))
      unexpected(what);
    return toks_[pos_++];
  }

  bool accept(Tok t) {
    if (!at(t))
      return false;
    ++pos_;
    return true;
  }

  // --- declarations ------------------------------------------------------

  Stmt decl() {
    Stmt s;
    s.line = cur().line;
    expect(Tok::KwInt, "'int'");
    DeclStmt d;
    do {
      const Token &name = expect(Tok::Ident, "identifier");
      if (symbols_.count(name.text))
        fail(name, "duplicate declaration of '" + name.text + "'",
             ParseErrorKind::DuplicateDecl);
      Declarator decl{name.text, std::nullopt};
      if (accept(Tok::LBracket)) {
        const Token &size = expect(Tok::Int, "array size");
        int n = 0;
        auto [ptr, ec] = std::from_chars(size.text.data(), size.text.data() + size.text.size(), n);
        if (ec != std::errc() || n < 1)
          fail(size, "array size must be a positive integer");
        decl.size = n;
        expect(Tok::RBracket, "']'");
      }
      symbols_[decl.name] = decl.size.has_value();
      d.vars.push_back(std::move(decl));
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "';'");
    s.node = std::move(d);
    return s;
  }

  // --- statements --------------------------------------------------------

  Stmt statement() {
    const Token &t = cur();
    switch (t.kind) {
    case Tok::KwIf:
      return if_statement();
    case Tok::KwWhile: {
      Stmt s;
      s.line = t.line;
      ++pos_;
      expect(Tok::LParen, "'('");
      WhileStmt w;
      w.cond = predicate();
      expect(Tok::RParen, "')'");
      w.body = block();
      s.node = std::move(w);
      return s;
    }
    case Tok::KwFor:
      return for_statement();
    case Tok::KwPrint: {
      Stmt s;
      s.line = t.line;
      ++pos_;
      expect(Tok::LParen, "'('");
      PrintStmt pr{expression()};
      expect(Tok::RParen, "')'");
      expect(Tok::Semi, "';'");
      check_side_effects(t, {pr.value});
      s.node = std::move(pr);
      return s;
    }
    case Tok::KwInt:
      fail(t, "declarations must precede statements");
    case Tok::Ident:
    case Tok::PlusPlus:
    case Tok::MinusMinus: {
      Stmt s;
      s.line = t.line;
      s.node = simple_statement();
      expect(Tok::Semi, "';'");
      return s;
    }
    default:
      unexpected("statement");
    }
  }

  Stmt if_statement() {
    Stmt s;
    s.line = cur().line;
    expect(Tok::KwIf, "'if'");
    expect(Tok::LParen, "'('");
    IfStmt i;
    i.cond = predicate();
    expect(Tok::RParen, "')'");
    i.then_block = block();
    if (accept(Tok::KwElse)) {
      i.has_else = true;
      i.else_block = block();
    }
    s.node = std::move(i);
    return s;
  }

  Stmt for_statement() {
    Stmt s;
    s.line = cur().line;
    expect(Tok::KwFor, "'for'");
    expect(Tok::LParen, "'('");
    ForStmt f;
    if (!at(Tok::Semi))
      f.init = assign_list();
    expect(Tok::Semi, "';'");
    f.cond = predicate();
    expect(Tok::Semi, "';'");
    if (!at(Tok::RParen))
      f.update = assign_list();
    expect(Tok::RParen, "')'");
    f.body = block();
    s.node = std::move(f);
    return s;
  }

  std::vector<Assign> assign_list() {
    std::vector<Assign> out;
    do {
      const Token &start = cur();
      StmtNode n = simple_statement();
      if (!std::holds_alternative<Assign>(n))
        fail(start, "read() is not allowed in a for header");
      out.push_back(std::get<Assign>(std::move(n)));
    } while (accept(Tok::Comma));
    return out;
  }

  Block block() {
    Block b;
    if (accept(Tok::LBrace)) {
      while (!at(Tok::RBrace)) {
        if (at(Tok::End))
          unexpected("'}'");
        b.push_back(statement());
      }
      ++pos_;
    } else {
      b.push_back(statement());
    }
    return b;
  }

  // assignment | compound assignment | ++x | x++ | x = read() | chained =
  StmtNode simple_statement() {
    const Token &start = cur();
    if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
      AssignOp op = at(Tok::PlusPlus) ? AssignOp::Inc : AssignOp::Dec;
      ++pos_;
      Assign a{{lvalue()}, op, nullptr};
      check_side_effects(start, {a.target().index});
      return a;
    }
    LValue target = lvalue();
    if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
      AssignOp op = at(Tok::PlusPlus) ? AssignOp::Inc : AssignOp::Dec;
      ++pos_;
      Assign a{{std::move(target)}, op, nullptr};
      check_side_effects(start, {a.target().index});
      return a;
    }
    AssignOp op;
    switch (cur().kind) {
    case Tok::Assign: op = AssignOp::Set; break;
    case Tok::PlusAssign: op = AssignOp::Add; break;
    case Tok::MinusAssign: op = AssignOp::Sub; break;
    case Tok::StarAssign: op = AssignOp::Mul; break;
    case Tok::SlashAssign: op = AssignOp::Div; break;
    default: unexpected("assignment operator");
    }
    ++pos_;
    if (op == AssignOp::Set && at(Tok::KwRead)) {
      ++pos_;
      expect(Tok::LParen, "'('");
      expect(Tok::RParen, "')'");
      check_side_effects(start, {target.index});
      return ReadStmt{std::move(target)};
    }
    Assign a{{std::move(target)}, op, nullptr};
    for (;;) {
      const Token &value_tok = cur();
      if (at(Tok::KwRead))
        fail(value_tok, "read() cannot appear in a chained assignment");
      ExprPtr e = expression();
      if (op == AssignOp::Set && at(Tok::Assign)) {
        ++pos_;
        a.targets.push_back(as_lvalue(e, value_tok));
        continue;
      }
      a.value = std::move(e);
      break;
    }
    std::vector<ExprPtr> parts{a.value};
    for (const LValue &t : a.targets)
      parts.push_back(t.index);
    check_side_effects(start, parts);
    if (a.targets.size() > 1)
      check_chain(a, start);
    return a;
  }

  LValue as_lvalue(const ExprPtr &e, const Token &at_tok) const {
    if (const auto *v = std::get_if<VarRef>(&e->node))
      return LValue{v->name, nullptr};
    if (const auto *i = std::get_if<IndexRef>(&e->node))
      return LValue{i->array, i->index};
    fail(at_tok, "left side of '=' is not assignable");
  }

  // Chains are split target by target during normalization; an index that
  // mentions another target of the same chain would observe the split order.
  void check_chain(const Assign &a, const Token &at_tok) const {
    for (const LValue &t : a.targets) {
      std::set<std::string> idx = expr_vars(t.index);
      for (const LValue &other : a.targets)
        if (idx.count(other.name))
          fail(at_tok, "chained assignment index depends on a chained target");
    }
  }

  // In-expression ++/-- is hoisted by normalization; the touched variable
  // must not appear anywhere else in the statement.
  void check_side_effects(const Token &at_tok, const std::vector<ExprPtr> &parts) const {
    std::vector<std::string> targets;
    for (const ExprPtr &e : parts)
      find_incdec(e, targets);
    for (const std::string &v : targets) {
      int n = 0;
      for (const ExprPtr &e : parts)
        count_occurrences(e, v, n);
      if (n != 1)
        fail(at_tok, "'" + v + "' is incremented and used in the same statement");
    }
  }

  LValue lvalue() {
    const Token &name = expect(Tok::Ident, "identifier");
    LValue lv{name.text, nullptr};
    if (accept(Tok::LBracket)) {
      lv.index = expression();
      expect(Tok::RBracket, "']'");
    }
    resolve(name, lv.is_element());
    return lv;
  }

  void resolve(const Token &name, bool indexed) const {
    auto it = symbols_.find(name.text);
    if (it == symbols_.end())
      fail(name, "use of undeclared variable '" + name.text + "'",
           ParseErrorKind::UseOfUndeclared);
    if (it->second != indexed)
      fail(name,
           indexed ? "'" + name.text + "' is not an array"
                   : "array '" + name.text + "' must be indexed",
           ParseErrorKind::ShapeMismatch);
  }

  // --- expressions -------------------------------------------------------

  ExprPtr predicate() {
    const Token &t = cur();
    ExprPtr e = expression();
    std::vector<std::string> incdec;
    find_incdec(e, incdec);
    if (!incdec.empty())
      fail(t, "++/-- is not allowed in a predicate");
    return e;
  }

  ExprPtr expression() { return binary(0); }

  static std::optional<std::pair<BinaryOp, int>> binary_op(Tok t) {
    switch (t) {
    case Tok::OrOr: return std::pair{BinaryOp::Or, 0};
    case Tok::AndAnd: return std::pair{BinaryOp::And, 1};
    case Tok::EqEq: return std::pair{BinaryOp::Eq, 2};
    case Tok::NotEq: return std::pair{BinaryOp::Ne, 2};
    case Tok::Lt: return std::pair{BinaryOp::Lt, 3};
    case Tok::Le: return std::pair{BinaryOp::Le, 3};
    case Tok::Gt: return std::pair{BinaryOp::Gt, 3};
    case Tok::Ge: return std::pair{BinaryOp::Ge, 3};
    case Tok::Plus: return std::pair{BinaryOp::Add, 4};
    case Tok::Minus: return std::pair{BinaryOp::Sub, 4};
    case Tok::Star: return std::pair{BinaryOp::Mul, 5};
    case Tok::Slash: return std::pair{BinaryOp::Div, 5};
    case Tok::KwMod:
    case Tok::Percent: return std::pair{BinaryOp::Mod, 5};
    default: return std::nullopt;
    }
  }

  ExprPtr binary(int min_prec) {
    ExprPtr lhs = unary();
    for (;;) {
      auto op = binary_op(cur().kind);
      if (!op || op->second < min_prec)
        return lhs;
      ++pos_;
      ExprPtr rhs = binary(op->second + 1);
      lhs = make_binary(op->first, std::move(lhs), std::move(rhs));
    }
  }

  ExprPtr unary() {
    const Token &t = cur();
    if (accept(Tok::Minus)) {
      if (at(Tok::Int))
        return make_int(-literal(toks_[pos_++]));
      return make_unary(UnaryOp::Neg, unary());
    }
    if (accept(Tok::Bang))
      return make_unary(UnaryOp::Not, unary());
    if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
      UnaryOp op = at(Tok::PlusPlus) ? UnaryOp::PreInc : UnaryOp::PreDec;
      ++pos_;
      return make_unary(op, scalar_operand(t));
    }
    return postfix();
  }

  ExprPtr scalar_operand(const Token &op_tok) {
    const Token &name = expect(Tok::Ident, "identifier");
    if (at(Tok::LBracket))
      fail(op_tok, "++/-- inside expressions is only supported on scalars");
    resolve(name, false);
    return make_var(name.text);
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
      if (!std::holds_alternative<VarRef>(e->node))
        fail(cur(), "++/-- inside expressions is only supported on scalars");
      UnaryOp op = at(Tok::PlusPlus) ? UnaryOp::PostInc : UnaryOp::PostDec;
      ++pos_;
      return make_unary(op, e);
    }
    return e;
  }

  std::int64_t literal(const Token &t) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc())
      fail(t, "integer literal out of range");
    return v;
  }

  ExprPtr primary() {
    const Token &t = cur();
    switch (t.kind) {
    case Tok::Int:
      ++pos_;
      return make_int(literal(t));
    case Tok::Ident: {
      ++pos_;
      if (accept(Tok::LBracket)) {
        ExprPtr idx = expression();
        expect(Tok::RBracket, "']'");
        resolve(t, true);
        return make_index(t.text, std::move(idx));
      }
      resolve(t, false);
      return make_var(t.text);
    }
    case Tok::LParen: {
      ++pos_;
      ExprPtr e = expression();
      expect(Tok::RParen, "')'");
      return e;
    }
    default:
      unexpected("expression");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, bool> symbols_; // name -> is_array
};

} // namespace

Program parse(std::string_view source) {
  std::vector<std::string> notes;
  Lexer lexer(source, notes);
  Parser parser(lexer.run());
  return parser.run(std::move(notes));
}

Program parse_normalized(std::string_view source) { return normalize(parse(source)); }

} // namespace slicekit
