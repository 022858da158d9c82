#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "iolb/annotation_io.hpp"
#include "iolb/cdag.hpp"
#include "iolb/cdag_io.hpp"
#include "iolb/rational.hpp"
#include "support/oracles.hpp"

using namespace iolb;

namespace {

Cdag diamond() {
    CdagBuilder b;
    auto a = b.add_vertex(true);
    auto l = b.add_vertex();
    auto r = b.add_vertex();
    auto t = b.add_vertex(false, true);
    b.add_edge(a, l);
    b.add_edge(a, r);
    b.add_edge(l, t);
    b.add_edge(r, t);
    return b.build();
}

bool has_kind(const std::vector<Violation>& vs, const std::string& kind) {
    for (const auto& v : vs)
        if (v.kind == kind) return true;
    return false;
}

}  // namespace

TEST(Cdag, BuilderBasics) {
    const Cdag g = diamond();
    EXPECT_EQ(g.size(), 4u);
    EXPECT_EQ(g.edge_count(), 4u);
    EXPECT_TRUE(g.is_input(0));
    EXPECT_TRUE(g.is_output(3));
    EXPECT_EQ(g.in_degree(3), 2u);
    EXPECT_EQ(g.max_in_degree(), 2u);
    EXPECT_TRUE(g.is_acyclic());
    EXPECT_TRUE(is_valid(g, Convention::hk));
}

TEST(Cdag, DuplicateEdgeRejected) {
    CdagBuilder b;
    b.add_vertex();
    b.add_vertex();
    b.add_edge(0, 1);
    EXPECT_THROW(b.add_edge(0, 1), Error);
}

TEST(Cdag, CycleReported) {
    CdagBuilder b;
    b.add_vertex();
    b.add_vertex();
    b.add_edge(0, 1);
    b.add_edge(1, 0);
    const auto vs = validate(b.build(), Convention::rbw);
    EXPECT_TRUE(has_kind(vs, "cycle"));
}

TEST(Cdag, SelfLoopReported) {
    CdagBuilder b;
    b.add_vertex();
    b.add_edge(0, 0);
    EXPECT_TRUE(has_kind(validate(b.build(), Convention::rbw), "self-loop"));
}

TEST(Cdag, InputWithPredecessor) {
    CdagBuilder b;
    b.add_vertex();
    b.add_vertex(true);
    b.add_edge(0, 1);
    const auto vs = validate(b.build(), Convention::rbw);
    ASSERT_TRUE(has_kind(vs, "input-has-predecessor"));
}

TEST(Cdag, HkNeedsTaggedSourcesAndSinks) {
    const Cdag g = untagged(diamond());
    EXPECT_TRUE(is_valid(g, Convention::rbw));
    const auto vs = validate(g, Convention::hk);
    EXPECT_TRUE(has_kind(vs, "source-not-input"));
    EXPECT_TRUE(has_kind(vs, "sink-not-output"));
    EXPECT_THROW(require_valid(g, Convention::hk), Error);
}

TEST(Cdag, InducedSubcdagRenumbers) {
    const Cdag g = diamond();
    const auto sub = induced_subcdag(g, {1, 3});
    EXPECT_EQ(sub.cdag.size(), 2u);
    EXPECT_EQ(sub.original, (std::vector<VertexId>{1, 3}));
    EXPECT_TRUE(sub.cdag.has_edge(0, 1));
    EXPECT_TRUE(sub.cdag.is_output(1));
    EXPECT_EQ(sub.local_of(3), 1);
    EXPECT_EQ(sub.local_of(0), -1);
}

TEST(Cdag, RetagAndUntag) {
    const Cdag g = diamond();
    const Cdag t = retag(g, {}, {1});
    EXPECT_TRUE(t.is_output(1));
    EXPECT_EQ(t.output_count(), 2u);
    const Cdag u = untagged(g);
    EXPECT_EQ(u.input_count(), 0u);
    EXPECT_EQ(u.output_count(), 0u);
}

TEST(Cdag, AncestorsDescendantsExcludeSelf) {
    const Cdag g = diamond();
    const auto anc = ancestors(g, 3);
    EXPECT_TRUE(anc[0] && anc[1] && anc[2]);
    EXPECT_FALSE(anc[3]);
    const auto desc = descendants(g, 0);
    EXPECT_FALSE(desc[0]);
    EXPECT_TRUE(desc[3]);
}

TEST(Cdag, AncestorsMatchClosure) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const Cdag g = ref::random_dag(rng, 10, 0.3);
        const auto reach = ref::reachability(g);
        for (std::size_t v = 0; v < g.size(); ++v) {
            const auto anc = ancestors(g, static_cast<VertexId>(v));
            const auto desc = descendants(g, static_cast<VertexId>(v));
            for (std::size_t u = 0; u < g.size(); ++u) {
                EXPECT_EQ(anc[u], (reach[u] & ref::bit(v)) != 0);
                EXPECT_EQ(desc[u], (reach[v] & ref::bit(u)) != 0);
            }
        }
    }
}

TEST(CdagIo, RoundTrip) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Cdag g = ref::random_dag(rng, 12, 0.25, 3, trial % 2 == 0);
        EXPECT_EQ(cdag_from_text(to_text(g)), g);
    }
}

TEST(CdagIo, LabelsSurvive) {
    CdagBuilder b;
    b.add_vertex(true, false, "x.0");
    b.add_vertex(false, true, "y");
    b.add_edge(0, 1);
    const Cdag g = cdag_from_text(to_text(b.build()));
    EXPECT_EQ(g.label(0), "x.0");
    EXPECT_EQ(g.label(1), "y");
}

TEST(CdagIo, ErrorsCarryLineNumbers) {
    try {
        cdag_from_text("cdag 1\nv 0 in\nv 2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(cdag_from_text("v 0\n"), ParseError);
    EXPECT_THROW(cdag_from_text("cdag 1\nv 0\ne 0 4\n"), ParseError);
    EXPECT_THROW(cdag_from_text("cdag 1\nv 0\nv 1\ne 0 1\ne 0 1\n"), ParseError);
    EXPECT_THROW(cdag_from_text("cdag 1\nv 0 blue\n"), ParseError);
}

TEST(CdagIo, CommentsAndBlankLines) {
    const Cdag g = cdag_from_text("# a comment\n\ncdag 1\nv 0 in\n  # more\nv 1 out\ne 0 1\n");
    EXPECT_EQ(g.size(), 2u);
    EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(AnnotationIo, ParsesAllRecords) {
    const auto a = annotations_from_text(
        "slab s0 1 2 3\nslab s1 3 4\nfrontier s0 s1 3\nanchor 2\nanchor 4 5\nsubslab s0.x 1 2\n"
        "subfrontier s0.x s0.y 2\ntail 7 8\n");
    ASSERT_EQ(a.slabs.size(), 2u);
    EXPECT_EQ(a.slabs[0].vertices, (VertexSet{1, 2, 3}));
    ASSERT_EQ(a.frontiers.size(), 1u);
    EXPECT_EQ(a.frontiers[0].slab_b, "s1");
    EXPECT_EQ(a.anchors, (std::vector<VertexId>{2, 4, 5}));
    EXPECT_EQ(a.subslabs.size(), 1u);
    EXPECT_EQ(a.subfrontiers.size(), 1u);
    EXPECT_EQ(a.tail, (VertexSet{7, 8}));
    EXPECT_THROW(annotations_from_text("bogus 1\n"), ParseError);
    EXPECT_THROW(annotations_from_text("frontier a\n"), ParseError);
}

TEST(Rational, Arithmetic) {
    const Rational a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
    EXPECT_EQ(Rational(-3, 2).floor(), -2);
    EXPECT_EQ(Rational(-3, 2).ceil(), -1);
    EXPECT_EQ(Rational(7, 2).floor(), 3);
    EXPECT_EQ(Rational(3, 10).str(), "3/10");
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_THROW(a / Rational(0), Error);
    EXPECT_THROW(Rational(1, 0), Error);
}

TEST(Rational, ParsesDecimalsExactly) {
    EXPECT_EQ(Rational::parse("0.052"), Rational(52, 1000));
    EXPECT_EQ(Rational::parse("-3/4"), Rational(-3, 4));
    EXPECT_EQ(Rational::parse("12"), Rational(12));
    EXPECT_EQ(Rational::parse("-0.5"), Rational(-1, 2));
    EXPECT_THROW(Rational::parse("1.2.3"), Error);
    EXPECT_THROW(Rational::parse(""), Error);
}

TEST(Rational, OverflowThrows) {
    const Rational big(INT64_MAX / 2);
    EXPECT_THROW(big * big, Error);
}

TEST(Rational, FieldLawsOnRandomValues) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 30);
    for (int i = 0; i < 500; ++i) {
        const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, Rational(0));
        EXPECT_LE(Rational(a.floor()), a);
        EXPECT_GE(Rational(a.ceil()), a);
    }
}
