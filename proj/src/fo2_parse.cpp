#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fo2cis/fo2.hpp"

namespace fo2cis {

int Vocabulary::unary_index(const std::string& name) const {
  auto it = std::find(unary.begin(), unary.end(), name);
  return it == unary.end() ? -1 : static_cast<int>(it - unary.begin());
}

int Vocabulary::binary_index(const std::string& name) const {
  auto it = std::find(binary.begin(), binary.end(), name);
  return it == binary.end() ? -1 : static_cast<int>(it - binary.begin());
}

namespace {

enum class Tok : uint8_t {
  kIdent,
  kLParen,
  kRParen,
  kComma,
  kEquals,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kColon,
  kEnd
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

const std::set<std::string> kReserved = {"fo2",   "noeq",       "eq",    "unary",
                                         "binary", "forall",     "exists", "gamma",
                                         "forall_neq", "exists_neq", "x",     "y",
                                         "true",  "false"};
const std::set<std::string> kSections = {"unary", "binary", "forall", "exists",
                                         "gamma", "forall_neq", "exists_neq"};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> toks;
  int line = 1, col = 1;
  size_t i = 0;
  auto fail = [&](const std::string& msg) { throw Fo2ParseError(msg, line, col); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::string t, int len) {
      toks.push_back({k, std::move(t), tl, tc});
      i += len;
      col += len;
    };
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Tok::kIdent, text.substr(i, j - i), static_cast<int>(j - i));
      continue;
    }
    switch (c) {
      case '(':
        push(Tok::kLParen, "(", 1);
        break;
      case ')':
        push(Tok::kRParen, ")", 1);
        break;
      case ',':
        push(Tok::kComma, ",", 1);
        break;
      case '=':
        push(Tok::kEquals, "=", 1);
        break;
      case '~':
        push(Tok::kNot, "~", 1);
        break;
      case '&':
        push(Tok::kAnd, "&", 1);
        break;
      case '|':
        push(Tok::kOr, "|", 1);
        break;
      case ':':
        push(Tok::kColon, ":", 1);
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>')
          push(Tok::kImplies, "->", 2);
        else
          fail("expected '->'");
        break;
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>')
          push(Tok::kIff, "<->", 3);
        else
          fail("expected '<->'");
        break;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
  toks.push_back({Tok::kEnd, "", line, col});
  return toks;
}

// which section a formula is being parsed for; controls which atoms are legal
enum class Ctx { kNoEqMatrix, kGamma, kEqAlpha };

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  bool eq_mode = false;
  Vocabulary vocab;
  AtomTable atoms;

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Fo2ParseError(msg, peek().line, peek().col);
  }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    ++pos;
  }
  bool at_ident(const std::string& s) const {
    return peek().kind == Tok::kIdent && peek().text == s;
  }
  bool at_section() const {
    return peek().kind == Tok::kIdent && kSections.count(peek().text) > 0;
  }

  void parse_header() {
    if (!at_ident("fo2")) fail("expected 'fo2' header");
    ++pos;
    if (at_ident("noeq"))
      eq_mode = false;
    else if (at_ident("eq"))
      eq_mode = true;
    else
      fail("expected 'noeq' or 'eq'");
    ++pos;
  }

  void parse_decls() {
    std::set<std::string> seen;
    auto read_names = [&](std::vector<std::string>& into) {
      while (peek().kind == Tok::kIdent && !at_section()) {
        const Token& t = peek();
        if (kReserved.count(t.text)) fail("'" + t.text + "' is a reserved word");
        if (eq_mode && t.text.rfind("__", 0) == 0)
          fail("predicate names may not start with the reserved prefix '__'");
        if (!seen.insert(t.text).second) fail("duplicate predicate '" + t.text + "'");
        into.push_back(t.text);
        ++pos;
      }
    };
    if (at_ident("unary")) {
      ++pos;
      read_names(vocab.unary);
    }
    if (at_ident("binary")) {
      ++pos;
      read_names(vocab.binary);
    }
  }

  FormulaPtr parse_formula(Ctx ctx) { return parse_iff(ctx); }

  FormulaPtr parse_iff(Ctx ctx) {
    FormulaPtr f = parse_implies(ctx);
    while (peek().kind == Tok::kIff) {
      ++pos;
      f = mk_iff(f, parse_implies(ctx));
    }
    return f;
  }

  FormulaPtr parse_implies(Ctx ctx) {
    FormulaPtr f = parse_or(ctx);
    if (peek().kind == Tok::kImplies) {
      ++pos;
      return mk_implies(f, parse_implies(ctx));
    }
    return f;
  }

  FormulaPtr parse_or(Ctx ctx) {
    std::vector<FormulaPtr> kids{parse_and(ctx)};
    while (peek().kind == Tok::kOr) {
      ++pos;
      kids.push_back(parse_and(ctx));
    }
    return mk_or(std::move(kids));
  }

  FormulaPtr parse_and(Ctx ctx) {
    std::vector<FormulaPtr> kids{parse_not(ctx)};
    while (peek().kind == Tok::kAnd) {
      ++pos;
      kids.push_back(parse_not(ctx));
    }
    return mk_and(std::move(kids));
  }

  FormulaPtr parse_not(Ctx ctx) {
    if (peek().kind == Tok::kNot) {
      ++pos;
      return mk_not(parse_not(ctx));
    }
    return parse_primary(ctx);
  }

  char parse_var() {
    if (at_ident("x") || at_ident("y")) return take().text[0];
    fail("expected variable x or y");
  }

  FormulaPtr parse_primary(Ctx ctx) {
    if (peek().kind == Tok::kLParen) {
      ++pos;
      FormulaPtr f = parse_formula(ctx);
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (peek().kind != Tok::kIdent) fail("expected a formula");
    const Token& t = peek();
    if (t.text == "true") {
      ++pos;
      return mk_true();
    }
    if (t.text == "false") {
      ++pos;
      return mk_false();
    }
    if (t.text == "x" || t.text == "y") {
      // equality atom; report at the atom, not at whatever follows it
      int eline = t.line, ecol = t.col;
      if (t.text == "y") fail("equality atoms are written 'x = y'");
      ++pos;
      expect(Tok::kEquals, "'='");
      if (!at_ident("y")) fail("equality atoms are written 'x = y'");
      ++pos;
      if (!eq_mode) throw Fo2ParseError("equality atom in no-eq mode", eline, ecol);
      throw Fo2ParseError("equality atoms may not appear here; the x != y guard is implicit",
                          eline, ecol);
    }
    if (at_section()) fail("unexpected keyword '" + t.text + "'");
    if (kReserved.count(t.text)) fail("'" + t.text + "' is a reserved word");
    std::string name = take().text;
    expect(Tok::kLParen, "'('");
    char v1 = parse_var();
    char v2 = 0;
    if (peek().kind == Tok::kComma) {
      ++pos;
      v2 = parse_var();
    }
    expect(Tok::kRParen, "')'");

    int up = vocab.unary_index(name);
    int bp = vocab.binary_index(name);
    if (up < 0 && bp < 0) fail("undeclared predicate '" + name + "'");
    AtomKind kind;
    int pred;
    if (v2 == 0) {
      if (up < 0) fail("binary predicate '" + name + "' needs two arguments");
      pred = up;
      kind = v1 == 'x' ? AtomKind::kUnaryX : AtomKind::kUnaryY;
    } else {
      if (bp < 0) fail("unary predicate '" + name + "' takes one argument");
      pred = bp;
      if (v1 == 'x' && v2 == 'x') kind = AtomKind::kDiagXX;
      else if (v1 == 'y' && v2 == 'y') kind = AtomKind::kDiagYY;
      else if (v1 == 'x') kind = AtomKind::kCrossXY;
      else kind = AtomKind::kCrossYX;
    }
    switch (ctx) {
      case Ctx::kNoEqMatrix:
        break;
      case Ctx::kGamma:
        if (kind != AtomKind::kUnaryX) fail("gamma admits only unary atoms over x");
        break;
      case Ctx::kEqAlpha:
        if (kind == AtomKind::kDiagXX || kind == AtomKind::kDiagYY)
          fail("diagonal binary atom in eq mode");
        break;
    }
    return mk_atom(atoms.intern({kind, pred}));
  }

  SnfFormula parse_file() {
    parse_header();
    parse_decls();
    if (!eq_mode) {
      SnfNoEq phi;
      if (!at_ident("forall")) fail("expected 'forall:'");
      ++pos;
      expect(Tok::kColon, "':'");
      phi.alpha = parse_formula(Ctx::kNoEqMatrix);
      while (at_ident("exists")) {
        ++pos;
        expect(Tok::kColon, "':'");
        phi.betas.push_back(parse_formula(Ctx::kNoEqMatrix));
      }
      if (phi.betas.empty()) fail("expected at least one 'exists:' conjunct");
      if (peek().kind != Tok::kEnd) fail("trailing input after formula");
      phi.vocab = std::move(vocab);
      phi.atoms = std::move(atoms);
      return phi;
    }
    SnfWithEq psi;
    if (!at_ident("gamma")) fail("expected 'gamma:'");
    ++pos;
    expect(Tok::kColon, "':'");
    psi.gamma = parse_formula(Ctx::kGamma);
    if (!at_ident("forall_neq")) fail("expected 'forall_neq:'");
    ++pos;
    expect(Tok::kColon, "':'");
    psi.alpha = parse_formula(Ctx::kEqAlpha);
    while (at_ident("exists_neq")) {
      ++pos;
      expect(Tok::kColon, "':'");
      if (peek().kind != Tok::kIdent) fail("expected a binary predicate name");
      int bp = vocab.binary_index(peek().text);
      if (bp < 0) fail("'" + peek().text + "' is not a declared binary predicate");
      ++pos;
      psi.witnesses.push_back(bp);
    }
    if (psi.witnesses.empty()) fail("expected at least one 'exists_neq:' conjunct");
    if (peek().kind != Tok::kEnd) fail("trailing input after formula");
    psi.vocab = std::move(vocab);
    psi.atoms = std::move(atoms);
    return psi;
  }
};

int level_of(const FormulaPtr& f) {
  switch (f->kind) {
    case Connective::kIff:
      return 0;
    case Connective::kImplies:
      return 1;
    case Connective::kOr:
      return 2;
    case Connective::kAnd:
      return 3;
    case Connective::kNot:
      return 4;
    default:
      return 5;
  }
}

void fmt(std::ostream& os, const FormulaPtr& f, const Vocabulary& vocab, const AtomTable& table,
         int min_level) {
  int lvl = level_of(f);
  bool paren = lvl < min_level;
  if (paren) os << "(";
  switch (f->kind) {
    case Connective::kTrue:
      os << "true";
      break;
    case Connective::kFalse:
      os << "false";
      break;
    case Connective::kAtom: {
      const Atom& a = table.atom(f->atom);
      switch (a.kind) {
        case AtomKind::kUnaryX:
          os << vocab.unary[a.pred] << "(x)";
          break;
        case AtomKind::kUnaryY:
          os << vocab.unary[a.pred] << "(y)";
          break;
        case AtomKind::kDiagXX:
          os << vocab.binary[a.pred] << "(x,x)";
          break;
        case AtomKind::kDiagYY:
          os << vocab.binary[a.pred] << "(y,y)";
          break;
        case AtomKind::kCrossXY:
          os << vocab.binary[a.pred] << "(x,y)";
          break;
        case AtomKind::kCrossYX:
          os << vocab.binary[a.pred] << "(y,x)";
          break;
        case AtomKind::kEquality:
          os << "x = y";
          break;
      }
      break;
    }
    case Connective::kNot:
      os << "~";
      fmt(os, f->kids[0], vocab, table, 4);
      break;
    case Connective::kAnd:
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << " & ";
        fmt(os, f->kids[i], vocab, table, 4);
      }
      break;
    case Connective::kOr:
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << " | ";
        fmt(os, f->kids[i], vocab, table, 3);
      }
      break;
    case Connective::kImplies:
      fmt(os, f->kids[0], vocab, table, 2);
      os << " -> ";
      fmt(os, f->kids[1], vocab, table, 1);
      break;
    case Connective::kIff:
      fmt(os, f->kids[0], vocab, table, 0);
      os << " <-> ";
      fmt(os, f->kids[1], vocab, table, 1);
      break;
  }
  if (paren) os << ")";
}

void print_decls(std::ostream& os, const Vocabulary& v) {
  if (!v.unary.empty()) {
    os << "unary";
    for (const auto& n : v.unary) os << " " << n;
    os << "\n";
  }
  if (!v.binary.empty()) {
    os << "binary";
    for (const auto& n : v.binary) os << " " << n;
    os << "\n";
  }
}

}  // namespace

SnfFormula parse_fo2(const std::string& text) {
  Parser p;
  p.toks = lex(text);
  return p.parse_file();
}

SnfFormula parse_fo2_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_fo2(ss.str());
}

std::string print_fo2(const SnfNoEq& phi, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  os << "fo2 noeq\n";
  print_decls(os, phi.vocab);
  os << "forall: ";
  fmt(os, phi.alpha, phi.vocab, phi.atoms, 0);
  os << "\n";
  for (const auto& b : phi.betas) {
    os << "exists: ";
    fmt(os, b, phi.vocab, phi.atoms, 0);
    os << "\n";
  }
  return os.str();
}

std::string print_fo2(const SnfWithEq& psi, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  os << "fo2 eq\n";
  print_decls(os, psi.vocab);
  os << "gamma: ";
  fmt(os, psi.gamma, psi.vocab, psi.atoms, 0);
  os << "\n";
  os << "forall_neq: ";
  fmt(os, psi.alpha, psi.vocab, psi.atoms, 0);
  os << "\n";
  for (int w : psi.witnesses) os << "exists_neq: " << psi.vocab.binary[w] << "\n";
  return os.str();
}

std::string print_fo2(const SnfFormula& f, const std::vector<std::string>& comments) {
  if (std::holds_alternative<SnfNoEq>(f)) return print_fo2(std::get<SnfNoEq>(f), comments);
  return print_fo2(std::get<SnfWithEq>(f), comments);
}

bool snf_equal(const SnfNoEq& a, const SnfNoEq& b) {
  if (!(a.vocab == b.vocab) || a.betas.size() != b.betas.size()) return false;
  if (!formula_equal(a.alpha, a.atoms, b.alpha, b.atoms)) return false;
  for (size_t i = 0; i < a.betas.size(); ++i)
    if (!formula_equal(a.betas[i], a.atoms, b.betas[i], b.atoms)) return false;
  return true;
}

bool snf_equal(const SnfWithEq& a, const SnfWithEq& b) {
  return a.vocab == b.vocab && a.witnesses == b.witnesses &&
         formula_equal(a.gamma, a.atoms, b.gamma, b.atoms) &&
         formula_equal(a.alpha, a.atoms, b.alpha, b.atoms);
}

}  // namespace fo2cis
