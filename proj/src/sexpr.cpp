#include "passcast/sexpr.hpp"

#include <cctype>

#include "passcast/error.hpp"

namespace passcast {

namespace {

// Destroying a tree is recursive, so depth is bounded.
constexpr std::size_t kMaxDepth = 256;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

SExpr scan_sexpr(std::string_view text, std::size_t line_no) {
    std::size_t i = 0;
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size() || text[i] != '(') {
        throw ParseError(line_no, i, "expected '('");
    }

    std::vector<SExpr> stack;
    SExpr root;
    bool done = false;
    while (i < text.size()) {
        const char c = text[i];
        if (done) {
            if (!is_space(c)) throw ParseError(line_no, i, "trailing characters after expression");
            ++i;
            continue;
        }
        if (is_space(c)) {
            ++i;
        } else if (c == '(') {
            if (stack.size() >= kMaxDepth) throw ParseError(line_no, i, "nesting too deep");
            SExpr list = SExpr::make_list();
            list.offset = i;
            stack.push_back(std::move(list));
            ++i;
        } else if (c == ')') {
            if (stack.empty()) throw ParseError(line_no, i, "unbalanced ')'");
            SExpr finished = std::move(stack.back());
            stack.pop_back();
            if (stack.empty()) {
                root = std::move(finished);
                done = true;
            } else {
                stack.back().items.push_back(std::move(finished));
            }
            ++i;
        } else {
            const std::size_t start = i;
            while (i < text.size() && !is_space(text[i]) && text[i] != '(' && text[i] != ')') ++i;
            SExpr atom = SExpr::make_atom(text.substr(start, i - start));
            atom.offset = start;
            stack.back().items.push_back(std::move(atom));
        }
    }
    if (!done) throw ParseError(line_no, text.size(), "unbalanced '(': missing ')'");
    return root;
}

}  // namespace passcast
