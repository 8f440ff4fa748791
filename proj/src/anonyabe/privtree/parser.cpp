#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "anonyabe/errors.hpp"
#include "anonyabe/privtree/tree.hpp"

namespace anonyabe {

namespace {

// Attribute names follow the "Category:Value" convention; the permitted
// punctuation keeps ':' and friends available without colliding with the
// grammar's own tokens.
bool attr_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '.' ||
           c == '@' || c == '/' || c == '+' || c == '-';
}

struct Token {
    enum Kind { attr, number, kw_and, kw_or, kw_of, lparen, rparen, comma, end };
    Kind kind;
    std::string text;
    uint64_t value = 0;
    size_t pos = 0;
};

[[noreturn]] void parse_fail(const std::string& msg, size_t pos) {
    fail(Errc::format, "policy: " + msg + " at offset " + std::to_string(pos));
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '(') {
            tokens.push_back({Token::lparen, "(", 0, i++});
            continue;
        }
        if (c == ')') {
            tokens.push_back({Token::rparen, ")", 0, i++});
            continue;
        }
        if (c == ',') {
            tokens.push_back({Token::comma, ",", 0, i++});
            continue;
        }
        if (!attr_char(c)) parse_fail(std::string("stray character '") + c + "'", i);

        const size_t start = i;
        while (i < text.size() && attr_char(text[i])) ++i;
        std::string word(text.substr(start, i - start));
        if (word == "and") {
            tokens.push_back({Token::kw_and, word, 0, start});
        } else if (word == "or") {
            tokens.push_back({Token::kw_or, word, 0, start});
        } else if (word == "of") {
            tokens.push_back({Token::kw_of, word, 0, start});
        } else if (std::all_of(word.begin(), word.end(),
                               [](char d) { return d >= '0' && d <= '9'; })) {
            if (word.size() > 7) parse_fail("threshold too large", start);
            tokens.push_back({Token::number, word, std::stoull(word), start});
        } else {
            tokens.push_back({Token::attr, word, 0, start});
        }
    }
    tokens.push_back({Token::end, "", 0, text.size()});
    return tokens;
}

constexpr size_t kMaxParseDepth = 64;

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    TreeNode parse() {
        TreeNode root = parse_or(0);
        if (peek().kind != Token::end) parse_fail("unexpected '" + peek().text + "'", peek().pos);
        return root;
    }

private:
    const Token& peek() const { return tokens_[at_]; }
    Token take() { return tokens_[at_++]; }

    TreeNode parse_or(size_t depth) {
        TreeNode first = parse_and(depth);
        if (peek().kind != Token::kw_or) return first;
        TreeNode gate;
        gate.threshold = 1;
        gate.children.push_back(std::move(first));
        while (peek().kind == Token::kw_or) {
            take();
            gate.children.push_back(parse_and(depth));
        }
        return gate;
    }

    TreeNode parse_and(size_t depth) {
        TreeNode first = parse_primary(depth);
        if (peek().kind != Token::kw_and) return first;
        TreeNode gate;
        gate.children.push_back(std::move(first));
        while (peek().kind == Token::kw_and) {
            take();
            gate.children.push_back(parse_primary(depth));
        }
        gate.threshold = static_cast<uint32_t>(gate.children.size());
        return gate;
    }

    TreeNode parse_primary(size_t depth) {
        if (depth > kMaxParseDepth) parse_fail("nesting too deep", peek().pos);
        const Token t = take();
        switch (t.kind) {
        case Token::attr: {
            TreeNode leaf;
            leaf.attribute = t.text;
            return leaf;
        }
        case Token::lparen: {
            TreeNode inner = parse_or(depth + 1);
            if (peek().kind != Token::rparen) parse_fail("expected ')'", peek().pos);
            take();
            return inner;
        }
        case Token::number: {
            if (peek().kind != Token::kw_of) parse_fail("expected 'of' after threshold", peek().pos);
            take();
            if (peek().kind != Token::lparen) parse_fail("expected '(' after 'of'", peek().pos);
            take();
            TreeNode gate;
            gate.children.push_back(parse_or(depth + 1));
            while (peek().kind == Token::comma) {
                take();
                gate.children.push_back(parse_or(depth + 1));
            }
            if (peek().kind != Token::rparen) parse_fail("expected ')'", peek().pos);
            take();
            if (gate.children.size() < 2) parse_fail("threshold gate needs at least two branches", t.pos);
            if (t.value < 1 || t.value > gate.children.size())
                parse_fail("threshold " + t.text + " out of range for " +
                               std::to_string(gate.children.size()) + " branches",
                           t.pos);
            gate.threshold = static_cast<uint32_t>(t.value);
            return gate;
        }
        case Token::end:
            parse_fail("unexpected end of policy", t.pos);
        default:
            parse_fail("unexpected '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> tokens_;
    size_t at_ = 0;
};

// Rendering inverts the precedence rules: children of an n-of-n gate that
// are themselves gates need parentheses, children of a 1-of-n gate only
// when they are or-gates, and explicit "k of (...)" branches never do.
void render_node(const TreeNode& n, std::string& out) {
    if (n.is_leaf()) {
        out += n.attribute;
        return;
    }
    const bool is_or = n.threshold == 1;
    const bool is_and = n.threshold == n.children.size();
    if (is_or || is_and) {
        const char* joiner = is_or ? " or " : " and ";
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += joiner;
            const TreeNode& c = n.children[i];
            const bool paren =
                !c.is_leaf() && (is_and ? (c.threshold == 1 || c.threshold == c.children.size())
                                        : c.threshold == 1);
            if (paren) out += '(';
            render_node(c, out);
            if (paren) out += ')';
        }
        return;
    }
    out += std::to_string(n.threshold);
    out += " of (";
    for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ", ";
        render_node(n.children[i], out);
    }
    out += ')';
}

} // namespace

TreeNode parse_policy(std::string_view text) {
    Parser parser(lex(text));
    TreeNode root = parser.parse();
    validate_node(root);
    return root;
}

std::string render_policy(const TreeNode& root) {
    validate_node(root);
    std::string out;
    render_node(root, out);
    return out;
}

} // namespace anonyabe
