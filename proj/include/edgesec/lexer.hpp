#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "edgesec/diagnostics.hpp"

namespace edgesec {

enum class TokenKind {
    Ident,
    String,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
    Comma,
    PathSep,     // --
    Arrow,       // ->
    StereoOpen,  // <<
    StereoClose, // >>
    End,
    Invalid,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // identifier spelling or decoded string value
    std::string error; // set for Invalid tokens
    SourceSpan span;
};

// Hand-rolled scanner for the edgesec DSL. '#' starts a line comment;
// strings are double-quoted, single-line, with \" and \\ escapes.
class Lexer {
public:
    Lexer(std::string_view source, std::string file)
        : src_(source), file_(std::move(file)) {}

    Token next() {
        skip_trivia();
        Token tok;
        tok.span.file = file_;
        tok.span.start_line = tok.span.end_line = line_;
        tok.span.start_col = tok.span.end_col = col_;
        if (eof()) return tok;

        char c = peek();
        if (is_word_char(c)) {
            while (!eof() && is_word_char(peek()))
                tok.text.push_back(take());
            tok.kind = TokenKind::Ident;
            return close(tok);
        }
        switch (c) {
        case '{': take(); tok.kind = TokenKind::LBrace; return close(tok);
        case '}': take(); tok.kind = TokenKind::RBrace; return close(tok);
        case '[': take(); tok.kind = TokenKind::LBracket; return close(tok);
        case ']': take(); tok.kind = TokenKind::RBracket; return close(tok);
        case '=': take(); tok.kind = TokenKind::Equals; return close(tok);
        case ',': take(); tok.kind = TokenKind::Comma; return close(tok);
        case '-':
            take();
            if (!eof() && peek() == '-') {
                take();
                tok.kind = TokenKind::PathSep;
            } else if (!eof() && peek() == '>') {
                take();
                tok.kind = TokenKind::Arrow;
            } else {
                tok.kind = TokenKind::Invalid;
                tok.error = "expected '--' or '->' after '-'";
            }
            return close(tok);
        case '<':
            take();
            if (!eof() && peek() == '<') {
                take();
                tok.kind = TokenKind::StereoOpen;
            } else {
                tok.kind = TokenKind::Invalid;
                tok.error = "stray '<' (stereotypes are written <<Name>>)";
            }
            return close(tok);
        case '>':
            take();
            if (!eof() && peek() == '>') {
                take();
                tok.kind = TokenKind::StereoClose;
            } else {
                tok.kind = TokenKind::Invalid;
                tok.error = "stray '>' (stereotypes are written <<Name>>)";
            }
            return close(tok);
        case '"':
            return lex_string(tok);
        default:
            take();
            tok.kind = TokenKind::Invalid;
            tok.error = std::string("unexpected character '") + c + "'";
            return close(tok);
        }
    }

private:
    static bool is_word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    Token& close(Token& tok) {
        tok.span.end_line = line_;
        tok.span.end_col = col_ > 1 ? col_ - 1 : 1;
        return tok;
    }

    void skip_trivia() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n')
                    take();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                take();
            } else {
                break;
            }
        }
    }

    Token& lex_string(Token& tok) {
        take(); // opening quote
        for (;;) {
            if (eof() || peek() == '\n') {
                tok.kind = TokenKind::Invalid;
                tok.error = "unterminated string";
                return close(tok);
            }
            char c = take();
            if (c == '"') break;
            if (c == '\\') {
                if (eof() || peek() == '\n') {
                    tok.kind = TokenKind::Invalid;
                    tok.error = "unterminated string";
                    return close(tok);
                }
                char esc = take();
                if (esc == '"' || esc == '\\') {
                    tok.text.push_back(esc);
                } else {
                    tok.kind = TokenKind::Invalid;
                    tok.error = std::string("unsupported escape '\\") + esc + "'";
                    return close(tok);
                }
            } else {
                tok.text.push_back(c);
            }
        }
        tok.kind = TokenKind::String;
        return close(tok);
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace edgesec
