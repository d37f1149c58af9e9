#include "atomspec/dsl.hpp"

#include <map>
#include <set>

#include "atomspec/errors.hpp"
#include "lexer.hpp"

namespace atomspec {

namespace {

using detail::Tok;
using detail::Token;

const std::set<std::string> kKeywords = {"vertices", "arrows", "relations",
                                         "ring"};

bool is_name(const Token& t) {
  return t.kind == Tok::Ident || t.kind == Tok::Int;
}

long long to_int(const Token& t) {
  try {
    return std::stoll(t.text);
  } catch (const std::exception&) {
    throw ParseError("integer literal too large", t.line, t.col);
  }
}

// Canonical spelling of a captured fragment: tight around '*' and '^',
// spaced around '+' and '-'.
std::string render_fragment(const std::vector<Token>& toks) {
  std::string out;
  for (const Token& t : toks) {
    if (t.kind == Tok::Plus)
      out += " + ";
    else if (t.kind == Tok::Minus)
      out += " - ";
    else
      out += t.text;
  }
  return out;
}

}  // namespace

ParsedInput parse_quiver(const std::string& text) {
  auto toks = detail::lex(text);
  std::size_t pos = 0;
  auto peek = [&]() -> const Token& { return toks[pos]; };
  auto next = [&]() -> const Token& { return toks[pos++]; };
  auto expect = [&](Tok k, const std::string& what) -> const Token& {
    if (toks[pos].kind != k)
      throw ParseError("expected " + what, toks[pos].line, toks[pos].col);
    return toks[pos++];
  };
  auto name_token = [&](const std::string& what) -> const Token& {
    if (!is_name(peek()))
      throw ParseError("expected " + what, peek().line, peek().col);
    const Token& t = next();
    if (kKeywords.count(t.text))
      throw ParseError("\"" + t.text + "\" is a reserved word", t.line, t.col);
    return t;
  };

  std::vector<std::string> vertices;
  std::map<std::string, Token> declared;  // joint vertex/arrow namespace
  auto declare = [&](const Token& t) {
    if (!declared.emplace(t.text, t).second)
      throw ParseError("duplicate identifier \"" + t.text + "\"", t.line,
                       t.col);
  };

  struct PendingArrow {
    Token id, source, target;
  };
  std::vector<PendingArrow> arrows;
  std::vector<RelationSource> relations;
  BaseRing ring = BaseRing::integers();
  bool ring_declared = false;

  while (peek().kind != Tok::End) {
    const Token& head = expect(Tok::Ident, "a statement keyword");
    if (head.text == "vertices") {
      if (!is_name(peek()))
        throw ParseError("expected a vertex name", peek().line, peek().col);
      while (is_name(peek())) {
        const Token& t = name_token("a vertex name");
        declare(t);
        vertices.push_back(t.text);
      }
      expect(Tok::Semi, "';'");
    } else if (head.text == "arrows") {
      while (true) {
        const Token& id = name_token("an arrow name");
        declare(id);
        expect(Tok::Colon, "':'");
        const Token& s = name_token("a source vertex");
        expect(Tok::Arrow, "'->'");
        const Token& t = name_token("a target vertex");
        arrows.push_back(PendingArrow{id, s, t});
        if (peek().kind != Tok::Comma) break;
        next();
      }
      expect(Tok::Semi, "';'");
    } else if (head.text == "relations") {
      while (true) {
        std::vector<Token> frag;
        while (peek().kind == Tok::Ident || peek().kind == Tok::Int ||
               peek().kind == Tok::Plus || peek().kind == Tok::Minus ||
               peek().kind == Tok::Star || peek().kind == Tok::Caret) {
          frag.push_back(next());
        }
        if (frag.empty())
          throw ParseError("expected a relation expression", peek().line,
                           peek().col);
        relations.push_back(
            RelationSource{render_fragment(frag), frag[0].line, frag[0].col});
        if (peek().kind != Tok::Comma) break;
        next();
      }
      expect(Tok::Semi, "';'");
    } else if (head.text == "ring") {
      if (ring_declared)
        throw ParseError("duplicate ring statement", head.line, head.col);
      const Token& r = expect(Tok::Ident, "a ring descriptor (F<p>, Z, Z/<n>)");
      try {
        if (r.text == "Z" && peek().kind == Tok::Slash) {
          next();
          const Token& n = expect(Tok::Int, "a modulus");
          ring = BaseRing::integers_mod(to_int(n));
        } else {
          ring = parse_ring_descriptor(r.text);
        }
      } catch (const UsageError& e) {
        throw ParseError(e.what(), r.line, r.col);
      }
      ring_declared = true;
      expect(Tok::Semi, "';'");
    } else {
      throw ParseError("unknown statement \"" + head.text + "\"", head.line,
                       head.col);
    }
  }

  std::set<std::string> vertex_set(vertices.begin(), vertices.end());
  std::vector<ArrowDecl> decls;
  for (const auto& a : arrows) {
    for (const Token* end : {&a.source, &a.target}) {
      if (!vertex_set.count(end->text))
        throw ParseError("unknown vertex \"" + end->text + "\"", end->line,
                         end->col);
    }
    decls.push_back(ArrowDecl{a.id.text, a.source.text, a.target.text});
  }
  if (vertices.empty())
    throw ParseError("input declares no vertices", 1, 1);

  ParsedInput out;
  out.quiver = Quiver::make(std::move(vertices), std::move(decls));
  out.ring = ring;
  out.ring_declared = ring_declared;
  out.relations = std::move(relations);
  return out;
}

std::string to_dsl(const ParsedInput& input) {
  std::string out = "vertices";
  for (const auto& v : input.quiver.vertices()) out += " " + v;
  out += ";\n";
  if (input.quiver.arrow_count() > 0) {
    out += "arrows ";
    for (int a = 0; a < input.quiver.arrow_count(); ++a) {
      const Arrow& ar = input.quiver.arrow(a);
      if (a > 0) out += ", ";
      out += ar.id + ": " + input.quiver.vertex(ar.source) + " -> " +
             input.quiver.vertex(ar.target);
    }
    out += ";\n";
  }
  if (!input.relations.empty()) {
    out += "relations ";
    for (std::size_t i = 0; i < input.relations.size(); ++i) {
      if (i > 0) out += ", ";
      out += input.relations[i].text;
    }
    out += ";\n";
  }
  if (input.ring_declared) out += "ring " + input.ring.display() + ";\n";
  return out;
}

Relation parse_relation(const PathAlgebra& alg, const RelationSource& src) {
  auto toks = detail::lex(src.text, src.line > 0 ? src.line : 1,
                          src.col > 0 ? src.col : 1);
  std::size_t pos = 0;
  auto peek = [&]() -> const Token& { return toks[pos]; };

  auto parse_factor = [&]() -> AlgebraElement {
    const Token& t = peek();
    // numerals may name vertices ("vertices 1 2;"), so accept them here;
    // only a leading integer is a coefficient
    if (t.kind != Tok::Ident && t.kind != Tok::Int)
      throw ParseError("expected an arrow or vertex name", t.line, t.col);
    ++pos;
    AlgebraElement base;
    if (auto a = alg.quiver().arrow_index(t.text))
      base = alg.arrow_elem(*a);
    else if (auto v = alg.quiver().vertex_index(t.text))
      base = alg.e(*v);
    else
      throw ParseError("unknown identifier \"" + t.text + "\"", t.line, t.col);
    if (peek().kind == Tok::Caret) {
      ++pos;
      const Token& n = peek();
      if (n.kind != Tok::Int)
        throw ParseError("expected an exponent", n.line, n.col);
      ++pos;
      long long k = to_int(n);
      if (k < 1) throw ParseError("exponent must be >= 1", n.line, n.col);
      AlgebraElement out = base;
      for (long long i = 1; i < k; ++i) out = alg.multiply(out, base);
      return out;
    }
    return base;
  };

  auto parse_term = [&]() -> AlgebraElement {
    long long coeff = 1;
    bool have_coeff = false;
    if (peek().kind == Tok::Int) {
      coeff = to_int(peek());
      have_coeff = true;
      ++pos;
      if (peek().kind != Tok::Star)
        return alg.scalar_mul(coeff, alg.one());  // bare integer term
      ++pos;
    }
    AlgebraElement prod = parse_factor();
    while (peek().kind == Tok::Star) {
      ++pos;
      prod = alg.multiply(prod, parse_factor());
    }
    return have_coeff ? alg.scalar_mul(coeff, prod) : prod;
  };

  AlgebraElement sum = parse_term();
  while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
    bool minus = peek().kind == Tok::Minus;
    ++pos;
    AlgebraElement term = parse_term();
    sum = minus ? alg.sub(sum, term) : alg.add(sum, term);
  }
  if (peek().kind != Tok::End)
    throw ParseError("unexpected token \"" + peek().text + "\" in relation",
                     peek().line, peek().col);

  try {
    return make_relation(alg, std::move(sum), src.text, src.line, src.col);
  } catch (const UsageError& e) {
    throw ParseError(e.what(), src.line > 0 ? src.line : 1,
                     src.col > 0 ? src.col : 1);
  }
}

std::vector<Relation> resolve_relations(const PathAlgebra& alg,
                                        const ParsedInput& input) {
  std::vector<Relation> out;
  for (const auto& src : input.relations) out.push_back(parse_relation(alg, src));
  return out;
}

LoadedInput load_input(const std::string& text) {
  ParsedInput parsed = parse_quiver(text);
  PathAlgebra algebra(parsed.quiver, parsed.ring);
  std::vector<Relation> relations = resolve_relations(algebra, parsed);
  return LoadedInput{std::move(parsed), std::move(algebra),
                     std::move(relations)};
}

}  // namespace atomspec
