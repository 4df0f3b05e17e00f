#include <cctype>
#include <utility>

#include "stagec/surface.hpp"

namespace stagec::surface {

namespace {

enum class Tok : std::uint8_t {
  Ident,
  Number,
  KwDef,
  KwZero,
  KwSucc,
  KwIter,
  KwTrue,
  KwFalse,
  KwIf,
  KwThen,
  KwElse,
  KwFst,
  KwSnd,
  KwNand,
  KwPar,
  KwSeq,
  KwMix,
  KwBase,
  KwNat,
  KwBool,
  KwUp,
  KwCirc,
  Backslash,
  Dot,
  Semi,
  Colon,
  Equal,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Less,
  Greater,
  Tilde,
  Arrow,
  Star,
  At,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  std::uint64_t number = 0;
  Loc loc;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
  std::optional<Diag> failure;

  explicit Lexer(const std::string& text) : src(text) {}

  char peek() const { return pos < src.size() ? src[pos] : '\0'; }

  char take() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skipSpace() {
    while (pos < src.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '-') {
        while (pos < src.size() && peek() != '\n') take();
      } else {
        break;
      }
    }
  }

  static Tok keyword(const std::string& word) {
    if (word == "def") return Tok::KwDef;
    if (word == "zero") return Tok::KwZero;
    if (word == "succ") return Tok::KwSucc;
    if (word == "iter") return Tok::KwIter;
    if (word == "true") return Tok::KwTrue;
    if (word == "false") return Tok::KwFalse;
    if (word == "if") return Tok::KwIf;
    if (word == "then") return Tok::KwThen;
    if (word == "else") return Tok::KwElse;
    if (word == "fst") return Tok::KwFst;
    if (word == "snd") return Tok::KwSnd;
    if (word == "nand") return Tok::KwNand;
    if (word == "par") return Tok::KwPar;
    if (word == "seq") return Tok::KwSeq;
    if (word == "mix") return Tok::KwMix;
    if (word == "Base") return Tok::KwBase;
    if (word == "Nat") return Tok::KwNat;
    if (word == "Bool") return Tok::KwBool;
    if (word == "Up") return Tok::KwUp;
    if (word == "Circ") return Tok::KwCirc;
    return Tok::Ident;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipSpace();
      Loc loc{line, col};
      if (pos >= src.size()) {
        out.push_back({Tok::End, "", 0, loc});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                peek() == '\''))
          word += take();
        out.push_back({keyword(word), word, 0, loc});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t n = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(peek())))
          n = n * 10 + static_cast<std::uint64_t>(take() - '0');
        out.push_back({Tok::Number, "", n, loc});
        continue;
      }
      take();
      switch (c) {
        case '\\': out.push_back({Tok::Backslash, "\\", 0, loc}); break;
        case '.': out.push_back({Tok::Dot, ".", 0, loc}); break;
        case ';': out.push_back({Tok::Semi, ";", 0, loc}); break;
        case ':': out.push_back({Tok::Colon, ":", 0, loc}); break;
        case '=': out.push_back({Tok::Equal, "=", 0, loc}); break;
        case '(': out.push_back({Tok::LParen, "(", 0, loc}); break;
        case ')': out.push_back({Tok::RParen, ")", 0, loc}); break;
        case '[': out.push_back({Tok::LBracket, "[", 0, loc}); break;
        case ']': out.push_back({Tok::RBracket, "]", 0, loc}); break;
        case ',': out.push_back({Tok::Comma, ",", 0, loc}); break;
        case '<': out.push_back({Tok::Less, "<", 0, loc}); break;
        case '>': out.push_back({Tok::Greater, ">", 0, loc}); break;
        case '~': out.push_back({Tok::Tilde, "~", 0, loc}); break;
        case '*': out.push_back({Tok::Star, "*", 0, loc}); break;
        case '@': out.push_back({Tok::At, "@", 0, loc}); break;
        case '-':
          if (peek() == '>') {
            take();
            out.push_back({Tok::Arrow, "->", 0, loc});
          } else {
            failure = Diag{DiagCode::SyntaxError, "stray '-'", "", loc.line, loc.col};
            out.push_back({Tok::End, "", 0, loc});
            return out;
          }
          break;
        default:
          failure = Diag{DiagCode::SyntaxError, std::string("unexpected character '") + c + "'",
                         "", loc.line, loc.col};
          out.push_back({Tok::End, "", 0, loc});
          return out;
      }
    }
  }
};

std::shared_ptr<Expr> mkExpr(Expr::Kind kind, Loc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->loc = loc;
  return e;
}

struct Parser {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::optional<Diag> failure;

  const Token& peek() const { return tokens[pos]; }
  const Token& take() { return tokens[pos++]; }

  bool at(Tok tok) const { return peek().tok == tok; }

  bool expect(Tok tok, const char* what) {
    if (at(tok)) {
      take();
      return true;
    }
    fail(std::string("expected ") + what);
    return false;
  }

  void fail(std::string message) {
    if (!failure) {
      const Token& t = peek();
      failure = Diag{DiagCode::SyntaxError, std::move(message), "", t.loc.line, t.loc.col};
    }
  }

  // --- types ---------------------------------------------------------

  TypeExprPtr parseType() {
    TypeExprPtr lhs = parseProdType();
    if (!lhs) return nullptr;
    if (at(Tok::Arrow)) {
      Loc loc = take().loc;
      TypeExprPtr rhs = parseType();
      if (!rhs) return nullptr;
      auto node = std::make_shared<TypeExpr>();
      node->kind = TypeExpr::Kind::Arrow;
      node->loc = loc;
      node->left = lhs;
      node->right = rhs;
      return node;
    }
    return lhs;
  }

  TypeExprPtr parseProdType() {
    TypeExprPtr lhs = parseUpType();
    if (!lhs) return nullptr;
    if (at(Tok::Star)) {
      Loc loc = take().loc;
      TypeExprPtr rhs = parseProdType();
      if (!rhs) return nullptr;
      auto node = std::make_shared<TypeExpr>();
      node->kind = TypeExpr::Kind::Prod;
      node->loc = loc;
      node->left = lhs;
      node->right = rhs;
      return node;
    }
    return lhs;
  }

  TypeExprPtr parseUpType() {
    if (at(Tok::KwUp)) {
      Loc loc = take().loc;
      TypeExprPtr inner = parseUpType();
      if (!inner) return nullptr;
      auto node = std::make_shared<TypeExpr>();
      node->kind = TypeExpr::Kind::Up;
      node->loc = loc;
      node->left = inner;
      return node;
    }
    return parseAtomType();
  }

  std::optional<kernel::Stage> parseStageMark() {
    if (!expect(Tok::At, "a stage mark '@s' or '@d'")) return std::nullopt;
    if (at(Tok::Ident) && peek().text == "s") {
      take();
      return kernel::Stage::Sta;
    }
    if (at(Tok::Ident) && peek().text == "d") {
      take();
      return kernel::Stage::Dyn;
    }
    fail("expected 's' or 'd' after '@'");
    return std::nullopt;
  }

  TypeExprPtr parseAtomType() {
    Loc loc = peek().loc;
    if (at(Tok::KwBase) || at(Tok::KwNat)) {
      bool isBase = at(Tok::KwBase);
      take();
      auto stage = parseStageMark();
      if (!stage) return nullptr;
      auto node = std::make_shared<TypeExpr>();
      node->kind = isBase ? TypeExpr::Kind::Base : TypeExpr::Kind::Nat;
      node->loc = loc;
      node->stage = *stage;
      return node;
    }
    if (at(Tok::KwBool)) {
      take();
      auto node = std::make_shared<TypeExpr>();
      node->kind = TypeExpr::Kind::Bool;
      node->loc = loc;
      return node;
    }
    if (at(Tok::KwCirc)) {
      take();
      if (!at(Tok::Number)) {
        fail("expected the input arity of Circ");
        return nullptr;
      }
      std::size_t inputs = static_cast<std::size_t>(take().number);
      if (!at(Tok::Number)) {
        fail("expected the output arity of Circ");
        return nullptr;
      }
      std::size_t outputs = static_cast<std::size_t>(take().number);
      auto node = std::make_shared<TypeExpr>();
      node->kind = TypeExpr::Kind::Circ;
      node->loc = loc;
      node->inputs = inputs;
      node->outputs = outputs;
      return node;
    }
    if (at(Tok::LParen)) {
      take();
      TypeExprPtr inner = parseType();
      if (!inner) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      return inner;
    }
    fail("expected a type");
    return nullptr;
  }

  // --- expressions ---------------------------------------------------

  bool startsAtom() const {
    switch (peek().tok) {
      case Tok::Ident:
      case Tok::Number:
      case Tok::KwZero:
      case Tok::KwSucc:
      case Tok::KwIter:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::KwFst:
      case Tok::KwSnd:
      case Tok::KwNand:
      case Tok::KwPar:
      case Tok::KwSeq:
      case Tok::KwMix:
      case Tok::LParen:
      case Tok::Less:
      case Tok::Tilde:
        return true;
      default:
        return false;
    }
  }

  ExprPtr parseExpr() {
    if (at(Tok::Backslash)) {
      Loc loc = take().loc;
      if (!at(Tok::Ident)) {
        fail("expected a binder name after '\\'");
        return nullptr;
      }
      std::string name = take().text;
      if (!expect(Tok::Dot, "'.' after the binder")) return nullptr;
      ExprPtr body = parseExpr();
      if (!body) return nullptr;
      auto node = mkExpr(Expr::Kind::Lam, loc);
      auto& e = *node;
      e.name = std::move(name);
      e.kids = {body};
      return node;
    }
    if (at(Tok::KwIf)) {
      Loc loc = take().loc;
      ExprPtr cond = parseExpr();
      if (!cond) return nullptr;
      if (!expect(Tok::KwThen, "'then'")) return nullptr;
      ExprPtr thenB = parseExpr();
      if (!thenB) return nullptr;
      if (!expect(Tok::KwElse, "'else'")) return nullptr;
      ExprPtr elseB = parseExpr();
      if (!elseB) return nullptr;
      auto node = mkExpr(Expr::Kind::If, loc);
      node->kids = {cond, thenB, elseB};
      return node;
    }
    return parseApp();
  }

  ExprPtr parseApp() {
    ExprPtr head = parseAtom();
    if (!head) return nullptr;
    while (startsAtom()) {
      Loc loc = peek().loc;
      ExprPtr arg = parseAtom();
      if (!arg) return nullptr;
      auto node = mkExpr(Expr::Kind::App, loc);
      node->kids = {head, arg};
      head = node;
    }
    return head;
  }

  ExprPtr leaf(Expr::Kind kind, Loc loc) { return mkExpr(kind, loc); }

  ExprPtr unary(Expr::Kind kind, Loc loc) {
    ExprPtr a = parseAtom();
    if (!a) return nullptr;
    auto node = mkExpr(kind, loc);
    node->kids = {a};
    return node;
  }

  ExprPtr nary(Expr::Kind kind, Loc loc, std::size_t n) {
    std::vector<ExprPtr> kids;
    for (std::size_t i = 0; i < n; ++i) {
      ExprPtr a = parseAtom();
      if (!a) return nullptr;
      kids.push_back(a);
    }
    auto node = mkExpr(kind, loc);
    node->kids = std::move(kids);
    return node;
  }

  ExprPtr parseAtom() {
    Loc loc = peek().loc;
    switch (peek().tok) {
      case Tok::Ident: {
        auto node = mkExpr(Expr::Kind::Ident, loc);
        node->name = take().text;
        return node;
      }
      case Tok::Number: {
        std::uint64_t n = take().number;
        auto stage = parseStageMark();
        if (!stage) return nullptr;
        auto node = mkExpr(Expr::Kind::NumLit, loc);
        auto& e = *node;
        e.number = n;
        e.litStage = *stage;
        return node;
      }
      case Tok::KwZero: take(); return leaf(Expr::Kind::Zero, loc);
      case Tok::KwTrue: take(); return leaf(Expr::Kind::TrueLit, loc);
      case Tok::KwFalse: take(); return leaf(Expr::Kind::FalseLit, loc);
      case Tok::KwNand: take(); return leaf(Expr::Kind::Nand, loc);
      case Tok::KwSucc: take(); return unary(Expr::Kind::Succ, loc);
      case Tok::KwFst: take(); return unary(Expr::Kind::Fst, loc);
      case Tok::KwSnd: take(); return unary(Expr::Kind::Snd, loc);
      case Tok::KwIter: take(); return nary(Expr::Kind::Iter, loc, 3);
      case Tok::KwPar: take(); return nary(Expr::Kind::Par, loc, 2);
      case Tok::KwSeq: take(); return nary(Expr::Kind::Seq, loc, 2);
      case Tok::KwMix: {
        take();
        if (!expect(Tok::LBracket, "'[' after mix")) return nullptr;
        std::vector<std::size_t> wires;
        if (!at(Tok::RBracket)) {
          for (;;) {
            if (!at(Tok::Number)) {
              fail("expected a wire index");
              return nullptr;
            }
            wires.push_back(static_cast<std::size_t>(take().number));
            if (at(Tok::Comma)) {
              take();
              continue;
            }
            break;
          }
        }
        if (!expect(Tok::RBracket, "']'")) return nullptr;
        auto node = mkExpr(Expr::Kind::Mix, loc);
        node->wires = std::move(wires);
        return node;
      }
      case Tok::Tilde: {
        take();
        return unary(Expr::Kind::Splice, loc);
      }
      case Tok::Less: {
        take();
        ExprPtr inner = parseExpr();
        if (!inner) return nullptr;
        if (!expect(Tok::Greater, "'>' closing the quote")) return nullptr;
        auto node = mkExpr(Expr::Kind::Quote, loc);
        node->kids = {inner};
        return node;
      }
      case Tok::LParen: {
        take();
        ExprPtr inner = parseExpr();
        if (!inner) return nullptr;
        if (at(Tok::Comma)) {
          take();
          ExprPtr rhs = parseExpr();
          if (!rhs) return nullptr;
          if (!expect(Tok::RParen, "')'")) return nullptr;
          auto node = mkExpr(Expr::Kind::Pair, loc);
          node->kids = {inner, rhs};
          return node;
        }
        if (at(Tok::Colon)) {
          take();
          TypeExprPtr ty = parseType();
          if (!ty) return nullptr;
          if (!expect(Tok::RParen, "')'")) return nullptr;
          auto node = mkExpr(Expr::Kind::Ascribe, loc);
          auto& e = *node;
          e.kids = {inner};
          e.annotation = ty;
          return node;
        }
        if (!expect(Tok::RParen, "')'")) return nullptr;
        return inner;
      }
      default:
        fail("expected an expression");
        return nullptr;
    }
  }

  // --- programs ------------------------------------------------------

  std::optional<Program> parseProgram() {
    Program program;
    while (!at(Tok::End)) {
      if (!expect(Tok::KwDef, "'def'")) return std::nullopt;
      if (!at(Tok::Ident)) {
        fail("expected a def name");
        return std::nullopt;
      }
      Def def;
      def.loc = peek().loc;
      def.name = take().text;
      if (!expect(Tok::Colon, "':' after the def name")) return std::nullopt;
      def.declaredType = parseType();
      if (!def.declaredType) return std::nullopt;
      if (!expect(Tok::Equal, "'='")) return std::nullopt;
      def.body = parseExpr();
      if (!def.body) return std::nullopt;
      if (!expect(Tok::Semi, "';' terminating the def")) return std::nullopt;
      program.defs.push_back(std::move(def));
    }
    return program;
  }
};

}  // namespace

Expected<Program> parse(const std::string& text) {
  Lexer lexer(text);
  std::vector<Token> tokens = lexer.run();
  if (lexer.failure) return *lexer.failure;
  Parser parser{std::move(tokens), 0, std::nullopt};
  auto program = parser.parseProgram();
  if (parser.failure) return *parser.failure;
  if (!program)
    return Diag{DiagCode::SyntaxError, "could not parse the program", "", 1, 1};
  return *program;
}

}  // namespace stagec::surface
