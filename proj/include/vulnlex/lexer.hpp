#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vulnlex {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Operator,
    Punctuation,
    Newline,
    Indent,
    Dedent,
    Comment,
};

std::string_view kind_name(TokenKind k);

struct Token {
    TokenKind kind;
    std::string lexeme;

    bool operator==(const Token&) const = default;
};

struct TokenStream {
    std::vector<Token> tokens;
    std::string source_id;
};

// Python-flavored lexical scan, tolerant of fragments. Comments are dropped,
// string literals collapse to "<str>", numeric literals to "<num>";
// identifiers and keywords are kept verbatim. Indentation is tracked with
// explicit indent/dedent tokens (placeholder lexemes "<ind>", "<ded>");
// logical line ends emit newline tokens ("<nl>"). Newlines inside brackets
// and after a backslash continuation do not end the logical line, and blank
// or comment-only lines produce nothing, so streams match how the language's
// own tokenizer segments code. Unrecognized characters become
// single-character operator tokens. Throws only on invalid UTF-8.
TokenStream tokenize(std::string_view code, std::string source_id = "");

// Renders a stream back to text such that tokenize(detokenize(s)) produces
// the same kind/lexeme sequence for any tokenize-produced s.
std::string detokenize(const TokenStream& stream);

bool is_python_keyword(std::string_view word);

}  // namespace vulnlex
