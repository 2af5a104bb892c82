#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace passcast {

/// Node of an s-expression token tree: either an atom or a list.
struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    /// Byte offset of the node in the scanned text (ignored by ==).
    std::size_t offset = 0;

    static SExpr make_atom(std::string_view text) { return {false, std::string(text), {}, 0}; }
    static SExpr make_list(std::vector<SExpr> children = {}) { return {true, {}, std::move(children), 0}; }

    bool operator==(const SExpr& o) const {
        return is_list == o.is_list && atom == o.atom && items == o.items;
    }
};

/// Parses one parenthesized expression. Atoms are runs of characters other
/// than whitespace and parentheses. Trailing whitespace is allowed; anything
/// else after the closing parenthesis, unbalanced parentheses, or nesting
/// deeper than 256 levels throws
/// ParseError (line reported as `line_no`, offset as the byte in `text`).
SExpr scan_sexpr(std::string_view text, std::size_t line_no = 1);

}  // namespace passcast
