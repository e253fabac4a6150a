#include "vulnlex/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

#include "vulnlex/util.hpp"

namespace vulnlex {

std::string_view kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Number: return "number";
        case TokenKind::String: return "string";
        case TokenKind::Operator: return "operator";
        case TokenKind::Punctuation: return "punctuation";
        case TokenKind::Newline: return "newline";
        case TokenKind::Indent: return "indent";
        case TokenKind::Dedent: return "dedent";
        case TokenKind::Comment: return "comment";
    }
    return "unknown";
}

bool is_python_keyword(std::string_view word) {
    static const std::unordered_set<std::string_view> kKeywords = {
        "False",  "None",   "True",    "and",   "as",       "assert", "async",
        "await",  "break",  "class",   "continue", "def",   "del",    "elif",
        "else",   "except", "finally", "for",   "from",     "global", "if",
        "import", "in",     "is",      "lambda", "nonlocal", "not",   "or",
        "pass",   "raise",  "return",  "try",   "while",    "with",   "yield",
    };
    return kKeywords.contains(word);
}

namespace {

bool is_ident_start(unsigned char c) { return c == '_' || std::isalpha(c) || c >= 0x80; }
bool is_ident_cont(unsigned char c) { return c == '_' || std::isalnum(c) || c >= 0x80; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Delimiters that structure code rather than compute.
bool is_punctuation(std::string_view op) {
    static const std::unordered_set<std::string_view> kPunct = {
        "(", ")", "[", "]", "{", "}", ",", ":", ";", ".", "->", "...",
    };
    return kPunct.contains(op);
}

const std::array<std::string_view, 5> kOps3 = {"**=", "//=", ">>=", "<<=", "..."};
const std::array<std::string_view, 19> kOps2 = {"**", "//", ">>", "<<", "<=", ">=", "==",
                                                "!=", "->", ":=", "+=", "-=", "*=", "/=",
                                                "%=", "@=", "&=", "|=", "^="};
const std::string_view kOps1 = "+-*/%@&|^~<>=()[]{},:;.";

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        std::size_t extra;
        unsigned cp_min;
        if (c < 0x80) {
            i += 1;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp_min = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp_min = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp_min = 0x10000;
        } else {
            return false;
        }
        if (i + extra >= s.size()) return false;
        unsigned cp = c & (0x3F >> extra);
        for (std::size_t k = 1; k <= extra; ++k) {
            unsigned char cc = s[i + k];
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (cp < cp_min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += extra + 1;
    }
    return true;
}

bool is_string_prefix(std::string_view word) {
    if (word.size() > 2) return false;
    std::string lower;
    for (char c : word) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    static const std::unordered_set<std::string_view> kPrefixes = {"r",  "b",  "u",  "f",
                                                                   "rb", "br", "fr", "rf"};
    return kPrefixes.contains(lower);
}

class Scanner {
public:
    Scanner(std::string_view code, std::string source_id) : src_(normalize_newlines(code)) {
        out_.source_id = std::move(source_id);
    }

    TokenStream run() {
        indent_stack_.push_back(0);
        while (pos_ < src_.size()) {
            if (at_line_start_ && paren_depth_ == 0) {
                handle_line_start();
                continue;
            }
            scan_token();
        }
        finish();
        return std::move(out_);
    }

private:
    static std::string normalize_newlines(std::string_view code) {
        std::string s;
        s.reserve(code.size());
        for (std::size_t i = 0; i < code.size(); ++i) {
            if (code[i] == '\r') {
                s.push_back('\n');
                if (i + 1 < code.size() && code[i + 1] == '\n') ++i;
            } else {
                s.push_back(code[i]);
            }
        }
        return s;
    }

    char peek(std::size_t off = 0) const {
        return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
    }

    void emit(TokenKind kind, std::string lexeme) { out_.tokens.push_back({kind, std::move(lexeme)}); }

    // Measures indentation of the upcoming line (tab stops of 8) and emits
    // indent/dedent tokens. Blank and comment-only lines are skipped whole.
    void handle_line_start() {
        std::size_t p = pos_;
        int col = 0;
        while (p < src_.size()) {
            char c = src_[p];
            if (c == ' ') {
                ++col;
            } else if (c == '\t') {
                col = (col / 8 + 1) * 8;
            } else if (c == '\f') {
                col = 0;
            } else {
                break;
            }
            ++p;
        }
        if (p >= src_.size()) {
            pos_ = p;
            return;
        }
        if (src_[p] == '\n') {
            pos_ = p + 1;
            return;
        }
        if (src_[p] == '#') {
            while (p < src_.size() && src_[p] != '\n') ++p;
            pos_ = p < src_.size() ? p + 1 : p;
            return;
        }
        pos_ = p;
        at_line_start_ = false;
        if (col > indent_stack_.back()) {
            indent_stack_.push_back(col);
            emit(TokenKind::Indent, "<ind>");
        } else {
            while (col < indent_stack_.back()) {
                indent_stack_.pop_back();
                emit(TokenKind::Dedent, "<ded>");
            }
            // A level between stack entries closes to the nearest enclosing
            // level; strict interpreters reject this, we stay total.
        }
    }

    void scan_token() {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\f') {
            ++pos_;
            return;
        }
        if (c == '\n') {
            ++pos_;
            if (paren_depth_ == 0) {
                emit(TokenKind::Newline, "<nl>");
                at_line_start_ = true;
            }
            return;
        }
        if (c == '\\' && peek(1) == '\n') {
            pos_ += 2;  // explicit line joining
            return;
        }
        if (c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            return;
        }
        if (c == '<' && try_placeholder()) return;
        unsigned char uc = static_cast<unsigned char>(c);
        if (is_ident_start(uc)) {
            scan_word();
            return;
        }
        if (is_digit(uc) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
            scan_number();
            return;
        }
        if (c == '\'' || c == '"') {
            scan_string();
            return;
        }
        scan_operator();
    }

    // "<str>" and "<num>" are this lexer's own literal placeholders; they are
    // recognized back so detokenized text re-tokenizes to the same stream.
    bool try_placeholder() {
        std::string_view rest(src_.data() + pos_, std::min<std::size_t>(5, src_.size() - pos_));
        if (rest.starts_with("<str>")) {
            emit(TokenKind::String, "<str>");
            pos_ += 5;
            return true;
        }
        if (rest.starts_with("<num>")) {
            emit(TokenKind::Number, "<num>");
            pos_ += 5;
            return true;
        }
        return false;
    }

    void scan_word() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_cont(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string_view word(src_.data() + start, pos_ - start);
        char q = peek();
        if ((q == '\'' || q == '"') && is_string_prefix(word)) {
            scan_string();  // the word was a literal prefix (r, b, f, ...)
            return;
        }
        if (is_python_keyword(word)) {
            emit(TokenKind::Keyword, std::string(word));
        } else {
            emit(TokenKind::Identifier, std::string(word));
        }
    }

    void scan_number() {
        auto digits = [&](auto pred) {
            while (pos_ < src_.size() &&
                   (pred(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
        };
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            pos_ += 2;
            digits([](unsigned char c) { return std::isxdigit(c) != 0; });
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            pos_ += 2;
            digits([](unsigned char c) { return c == '0' || c == '1'; });
        } else if (peek() == '0' && (peek(1) == 'o' || peek(1) == 'O')) {
            pos_ += 2;
            digits([](unsigned char c) { return c >= '0' && c <= '7'; });
        } else {
            digits([](unsigned char c) { return is_digit(c); });
            if (peek() == '.') {
                ++pos_;
                digits([](unsigned char c) { return is_digit(c); });
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (is_digit(static_cast<unsigned char>(peek(1))) ||
                 ((peek(1) == '+' || peek(1) == '-') && is_digit(static_cast<unsigned char>(peek(2)))))) {
                pos_ += (peek(1) == '+' || peek(1) == '-') ? 2 : 1;
                digits([](unsigned char c) { return is_digit(c); });
            }
        }
        if (peek() == 'j' || peek() == 'J') ++pos_;
        emit(TokenKind::Number, "<num>");
    }

    // pos_ is at the opening quote; any prefix has already been consumed.
    void scan_string() {
        char quote = src_[pos_];
        bool triple = peek(1) == quote && peek(2) == quote;
        pos_ += triple ? 3 : 1;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\\' && pos_ + 1 < src_.size()) {
                pos_ += 2;
                continue;
            }
            if (triple) {
                if (c == quote && peek(1) == quote && peek(2) == quote) {
                    pos_ += 3;
                    break;
                }
                ++pos_;
            } else {
                if (c == quote) {
                    ++pos_;
                    break;
                }
                if (c == '\n') break;  // unterminated; the line still ends
                ++pos_;
            }
        }
        emit(TokenKind::String, "<str>");
    }

    void scan_operator() {
        std::string_view rest(src_.data() + pos_, src_.size() - pos_);
        for (std::string_view op : kOps3) {
            if (rest.starts_with(op)) {
                emit(is_punctuation(op) ? TokenKind::Punctuation : TokenKind::Operator, std::string(op));
                pos_ += 3;
                return;
            }
        }
        for (std::string_view op : kOps2) {
            if (rest.starts_with(op)) {
                emit(is_punctuation(op) ? TokenKind::Punctuation : TokenKind::Operator, std::string(op));
                pos_ += 2;
                return;
            }
        }
        char c = src_[pos_];
        std::string op(1, c);
        if (c == '(' || c == '[' || c == '{') ++paren_depth_;
        if ((c == ')' || c == ']' || c == '}') && paren_depth_ > 0) --paren_depth_;
        ++pos_;
        if (kOps1.find(c) != std::string_view::npos) {
            emit(is_punctuation(op) ? TokenKind::Punctuation : TokenKind::Operator, std::move(op));
        } else {
            // Anything unrecognized degrades to a one-character operator.
            emit(TokenKind::Operator, std::move(op));
        }
    }

    void finish() {
        if (!out_.tokens.empty() && out_.tokens.back().kind != TokenKind::Newline &&
            out_.tokens.back().kind != TokenKind::Dedent) {
            emit(TokenKind::Newline, "<nl>");
        }
        while (indent_stack_.size() > 1) {
            indent_stack_.pop_back();
            emit(TokenKind::Dedent, "<ded>");
        }
    }

    std::string src_;
    std::size_t pos_ = 0;
    bool at_line_start_ = true;
    int paren_depth_ = 0;
    std::vector<int> indent_stack_;
    TokenStream out_;
};

}  // namespace

TokenStream tokenize(std::string_view code, std::string source_id) {
    if (!valid_utf8(code)) throw Error("tokenize: input is not valid UTF-8");
    Scanner scanner(code, std::move(source_id));
    return scanner.run();
}

std::string detokenize(const TokenStream& stream) {
    std::string out;
    int level = 0;
    bool at_line_start = true;
    for (const Token& t : stream.tokens) {
        switch (t.kind) {
            case TokenKind::Newline:
                // A trailing backslash would re-scan as a line continuation
                // and swallow this newline; pad it apart.
                if (!out.empty() && out.back() == '\\') out.push_back(' ');
                out.push_back('\n');
                at_line_start = true;
                break;
            case TokenKind::Indent:
                ++level;
                break;
            case TokenKind::Dedent:
                if (level > 0) --level;
                break;
            case TokenKind::Comment:
                break;
            default:
                if (at_line_start) {
                    out.append(static_cast<std::size_t>(level) * 4, ' ');
                    at_line_start = false;
                } else {
                    out.push_back(' ');
                }
                out.append(t.lexeme);
                break;
        }
    }
    return out;
}

}  // namespace vulnlex
