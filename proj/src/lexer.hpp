#pragma once

#include <string>
#include <vector>

#include "atomspec/errors.hpp"

namespace atomspec::detail {

enum class Tok {
  Ident,  // letter or underscore, then letters/digits/underscores
  Int,    // digit run
  Semi,
  Colon,
  Comma,
  Arrow,  // ->
  Plus,
  Minus,
  Star,
  Caret,
  Slash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

// '#' starts a comment running to end of line.  Throws ParseError on any
// unexpected character.
inline std::vector<Token> lex(const std::string& text, int base_line = 1,
                              int base_col = 1) {
  std::vector<Token> out;
  int line = base_line, col = base_col;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(text[i++]);
      continue;
    }
    if (isspace(static_cast<unsigned char>(c))) {
      bump(c);
      ++i;
      continue;
    }
    int tl = line, tc = col;
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < text.size() &&
             (isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        s += text[i];
        bump(text[i++]);
      }
      out.push_back({Tok::Ident, std::move(s), tl, tc});
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
        s += text[i];
        bump(text[i++]);
      }
      out.push_back({Tok::Int, std::move(s), tl, tc});
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      bump(text[i++]);
      bump(text[i++]);
      out.push_back({Tok::Arrow, "->", tl, tc});
      continue;
    }
    Tok kind;
    switch (c) {
      case ';': kind = Tok::Semi; break;
      case ':': kind = Tok::Colon; break;
      case ',': kind = Tok::Comma; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '/': kind = Tok::Slash; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
    bump(text[i++]);
    out.push_back({kind, std::string(1, c), tl, tc});
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

}  // namespace atomspec::detail
