#include <gtest/gtest.h>

#include "passcast/error.hpp"
#include "passcast/sexpr.hpp"

using namespace passcast;

namespace {

SExpr A(const char* s) { return SExpr::make_atom(s); }
SExpr L(std::vector<SExpr> v) { return SExpr::make_list(std::move(v)); }

}  // namespace

TEST(ScanSexpr, Examples) {
    EXPECT_EQ(scan_sexpr("(a (b c) d)"), L({A("a"), L({A("b"), A("c")}), A("d")}));
    EXPECT_EQ(scan_sexpr("()"), L({}));
    EXPECT_EQ(scan_sexpr("(a (b (c)))"), L({A("a"), L({A("b"), L({A("c")})})}));
}

TEST(ScanSexpr, WhitespaceAndOffsets) {
    const SExpr e = scan_sexpr("  (x\t( y )  z)  \r\n");
    ASSERT_EQ(e.items.size(), 3u);
    EXPECT_EQ(e.offset, 2u);
    EXPECT_EQ(e.items[1].offset, 5u);
    EXPECT_EQ(e.items[2].atom, "z");
}

TEST(ScanSexpr, UnbalancedInputReportsPosition) {
    try {
        scan_sexpr("(a (b c)", 7);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 7u);
        EXPECT_EQ(e.offset(), 8u);
    }
    try {
        scan_sexpr("(a))");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 3u);
    }
    EXPECT_THROW(scan_sexpr(""), ParseError);
    EXPECT_THROW(scan_sexpr("abc"), ParseError);
    EXPECT_THROW(scan_sexpr("(a) (b)"), ParseError);
}

TEST(ScanSexpr, NestingDepthIsBounded) {
    EXPECT_TRUE(scan_sexpr(std::string(200, '(') + std::string(200, ')')).is_list);
    EXPECT_THROW(scan_sexpr(std::string(100000, '(') + std::string(100000, ')')), ParseError);
}
