#include <gtest/gtest.h>

#include <random>

#include "iolb/bounds.hpp"
#include "iolb/decomposition.hpp"
#include "iolb/generators.hpp"
#include "support/oracles.hpp"

using namespace iolb;

namespace {

VertexSet non_io(const Cdag& g) {
    VertexSet s;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!g.is_input(static_cast<VertexId>(v)) && !g.is_output(static_cast<VertexId>(v))) s.insert(static_cast<VertexId>(v));
    return s;
}

AlgorithmParams params(Algorithm a, std::int64_t n, int d, std::int64_t T = 1, std::int64_t m = 1, int pts = 0) {
    AlgorithmParams p;
    p.algorithm = a;
    p.n = n;
    p.d = d;
    p.T = T;
    p.m = m;
    p.stencil_points = pts;
    return p;
}

}  // namespace

TEST(Mincut, RequiresInputFreeGraph) {
    EXPECT_THROW(mincut_lower_bound(gen_chain(3).cdag, 1), Error);
}

TEST(Mincut, DeletedBoundNeverExceedsOptimum) {
    std::mt19937 rng(101);
    int nontrivial = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Cdag g = ref::random_dag(rng, 6 + trial % 4, 0.45, 3);
        const auto inner = non_io(g);
        if (inner.empty()) continue;
        const std::int64_t S = static_cast<std::int64_t>(g.max_in_degree()) + 1;
        const auto sub = induced_subcdag(g, inner);
        const auto lb = transfer_bound(mincut_lower_bound(sub.cdag, S), TransferRule::deletion,
                                       static_cast<std::int64_t>(g.input_count()),
                                       outputs_not_inputs(g));
        const auto opt = ref::naive_optimal_io(g, S, Game::rbw);
        ASSERT_GE(opt, 0);
        EXPECT_TRUE(lb.value.le(opt)) << "trial " << trial << " lb " << lb.value.str() << " opt " << opt;
        nontrivial += lb.value.exact && *lb.value.exact > Rational(static_cast<std::int64_t>(g.input_count()) + outputs_not_inputs(g));
    }
    SUCCEED() << nontrivial << " cases above |I|+|O|";
}

TEST(Mincut, DivideBoundNeverExceedsOptimum) {
    std::mt19937 rng(202);
    for (int trial = 0; trial < 60; ++trial) {
        const Cdag g = ref::random_dag(rng, 6 + trial % 4, 0.45, 3);
        const std::int64_t S = static_cast<std::int64_t>(g.max_in_degree()) + 1;
        Partition part;
        part.blocks.resize(2);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t v = 0; v < g.size(); ++v) part.blocks[coin(rng) ? 1 : 0].insert(static_cast<VertexId>(v));
        if (trial % 2 == 1) {
            // Overlap: copy a few vertices into the other block.
            part.mode = PartitionKind::non_disjoint;
            for (std::size_t v = 0; v < g.size(); ++v)
                if (coin(rng) && coin(rng)) {
                    part.blocks[0].insert(static_cast<VertexId>(v));
                    part.blocks[1].insert(static_cast<VertexId>(v));
                }
        }
        const auto lb = mincut_divide_bound(g, part, S);
        const auto opt = ref::naive_optimal_io(g, S, Game::rbw);
        ASSERT_GE(opt, 0);
        EXPECT_TRUE(lb.value.le(opt)) << "trial " << trial << " lb " << lb.value.str() << " opt " << opt;
        EXPECT_GE(lb.value.exact, Rational(static_cast<std::int64_t>(g.input_count()) + outputs_not_inputs(g)));
    }
}

TEST(Mincut, DivideRejectsBadPartitions) {
    const Cdag g = gen_chain(4).cdag;
    Partition p;
    p.blocks = {{0, 1}, {1, 2, 3}};
    EXPECT_THROW(mincut_divide_bound(g, p, 1), Error);  // overlap in disjoint mode
    p.blocks = {{0, 1}, {3}};
    EXPECT_THROW(mincut_divide_bound(g, p, 1), Error);  // 2 uncovered
    p.blocks = {{0, 1}, {2, 3}};
    const auto r = mincut_divide_bound(g, p, 1);
    EXPECT_EQ(r.value.exact, Rational(2));
    EXPECT_EQ(r.provenance.at(2).rfind("deletion: +|I|+|O|", 0), 0u);
}

TEST(Transfer, TaggingUntaggingAndDeletionAgainstOracle) {
    std::mt19937 rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        const Cdag g = ref::random_dag(rng, 5 + trial % 4, 0.4, 2, false);
        const std::int64_t S = static_cast<std::int64_t>(g.max_in_degree()) + 1;
        VertexSet dI, dO;
        for (std::size_t v = 0; v < g.size(); ++v) {
            const auto id = static_cast<VertexId>(v);
            if (g.in_degree(id) == 0 && !g.is_input(id) && rng() % 2) dI.insert(id);
            if (!g.is_output(id) && rng() % 3 == 0) dO.insert(id);
        }
        const Cdag tagged = retag(g, dI, dO);
        const auto opt_g = ref::naive_optimal_io(g, S, Game::rbw);
        const auto opt_t = ref::naive_optimal_io(tagged, S, Game::rbw);
        ASSERT_GE(opt_g, 0);
        ASSERT_GE(opt_t, 0);

        BoundReport exact_t;
        exact_t.kind = BoundKind::exact;
        exact_t.value = BoundValue(opt_t);
        const auto down = transfer_bound(exact_t, TransferRule::tagging, static_cast<std::int64_t>(dI.size()),
                                         static_cast<std::int64_t>(dO.size()));
        EXPECT_TRUE(down.value.le(opt_g)) << "tagging, trial " << trial;

        BoundReport exact_g;
        exact_g.kind = BoundKind::exact;
        exact_g.value = BoundValue(opt_g);
        const auto up = transfer_bound(exact_g, TransferRule::untagging, 0, 0);
        EXPECT_TRUE(up.value.le(opt_t)) << "untagging, trial " << trial;
    }
}

TEST(Transfer, DeletionOfTaggedVertices) {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const Cdag g = ref::random_dag(rng, 6 + trial % 4, 0.4, 2);
        const std::int64_t S = static_cast<std::int64_t>(g.max_in_degree()) + 1;
        const auto sub = induced_subcdag(g, non_io(g));
        if (sub.cdag.size() == 0) continue;
        BoundReport inner;
        inner.kind = BoundKind::exact;
        inner.value = BoundValue(ref::naive_optimal_io(sub.cdag, S, Game::rbw));
        const auto lb = transfer_bound(inner, TransferRule::deletion, static_cast<std::int64_t>(g.input_count()),
                                       outputs_not_inputs(g));
        EXPECT_EQ(lb.kind, BoundKind::lower);
        EXPECT_TRUE(lb.value.le(ref::naive_optimal_io(g, S, Game::rbw))) << "trial " << trial;
    }
}

TEST(Transfer, RejectsUpperBounds) {
    BoundReport ub;
    ub.kind = BoundKind::upper;
    EXPECT_THROW(transfer_bound(ub, TransferRule::deletion, 1, 1), Error);
    EXPECT_THROW(compose_decomposition({ub}), Error);
    EXPECT_THROW(compose_decomposition({}), Error);
}

TEST(Transfer, TaggingClampsAtZero) {
    BoundReport r;
    r.value = BoundValue(3);
    EXPECT_EQ(transfer_bound(r, TransferRule::tagging, 2, 2).value.exact, Rational(0));
    EXPECT_EQ(transfer_bound(r, TransferRule::tagging, 1, 0).provenance.back().rfind("tagging: -|dI|-|dO|", 0), 0u);
}

TEST(Decomposition, DisjointSumNeverExceedsOptimum) {
    std::mt19937 rng(505);
    for (int trial = 0; trial < 50; ++trial) {
        const Cdag g = ref::random_dag(rng, 6 + trial % 4, 0.4, 2, trial % 2 == 0);
        const std::int64_t S = static_cast<std::int64_t>(g.max_in_degree()) + 1;
        std::vector<VertexSet> blocks(2 + trial % 2);
        for (std::size_t v = 0; v < g.size(); ++v) blocks[rng() % blocks.size()].insert(static_cast<VertexId>(v));
        std::vector<BoundReport> parts;
        for (const auto& b : blocks) {
            if (b.empty()) continue;
            BoundReport r;
            r.kind = BoundKind::exact;
            r.value = BoundValue(ref::naive_optimal_io(induced_subcdag(g, b).cdag, S, Game::rbw));
            parts.push_back(r);
        }
        EXPECT_TRUE(compose_decomposition(parts).value.le(ref::naive_optimal_io(g, S, Game::rbw)))
            << "trial " << trial;
    }
}

TEST(Decomposition, NondisjointChecklistAndCompose) {
    // 0 -> 1 -> 2 -> 3 and 1 -> 3: taking Dx = {2} with x = 3 closes the split.
    CdagBuilder b;
    b.add_vertex(true);
    b.add_vertex();
    b.add_vertex();
    b.add_vertex(false, true);
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(2, 3);
    b.add_edge(1, 3);
    const Cdag g = b.build();
    const auto ok = nondisjoint_decompose(g, 3, {2});
    EXPECT_TRUE(ok.checklist.empty());
    EXPECT_EQ(ok.c1.cdag.size(), 3u);
    EXPECT_EQ(ok.c2.cdag.size(), 1u);
    const auto bad = nondisjoint_decompose(g, 2, {1});
    EXPECT_FALSE(bad.checklist.empty());  // 1 -> 3 bypasses x
    EXPECT_THROW(nondisjoint_decompose(g, 2, {2}), Error);

    BoundReport c1, c2;
    c1.value = BoundValue(ref::naive_optimal_io(ok.c1.cdag, 4, Game::rbw));
    c2.value = BoundValue(ref::naive_optimal_io(ok.c2.cdag, 3, Game::rbw));
    const auto lb = compose_nondisjoint(c1, c2);
    EXPECT_TRUE(lb.value.le(ref::naive_optimal_io(g, 3, Game::rbw)));
}

TEST(Decomposition, NondisjointOnRandomDescendantSplits) {
    std::mt19937 rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        const Cdag g = ref::random_dag(rng, 6 + trial % 4, 0.4, 2);
        const std::int64_t S = static_cast<std::int64_t>(g.max_in_degree()) + 1;
        const auto x = static_cast<VertexId>(rng() % g.size());
        const auto desc = descendants(g, x);
        VertexSet Dx;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (desc[v]) Dx.insert(static_cast<VertexId>(v));
        if (Dx.empty()) continue;
        const auto split = nondisjoint_decompose(g, x, Dx);
        EXPECT_TRUE(split.checklist.empty());
        BoundReport c1, c2;
        c1.value = BoundValue(ref::naive_optimal_io(split.c1.cdag, S + 1, Game::rbw));
        c2.value = BoundValue(ref::naive_optimal_io(split.c2.cdag, S, Game::rbw));
        EXPECT_TRUE(compose_nondisjoint(c1, c2).value.le(ref::naive_optimal_io(g, S, Game::rbw)))
            << "trial " << trial;
    }
}

TEST(Analytic, ConjugateGradient) {
    const auto r = analytic_lb(params(Algorithm::cg, 1000, 3), 1, 1024);
    EXPECT_EQ(r.value.exact, Rational(2 * (3'000'000'000LL - 2048)));
    ASSERT_TRUE(r.asymptotic);
    EXPECT_EQ(r.asymptotic->exact, Rational(6'000'000'000LL));
    EXPECT_EQ(r.symbolic, "T*2*(3n^d - 2S)/P");
    // Divided over processors, clamped when S dominates.
    EXPECT_EQ(analytic_lb(params(Algorithm::cg, 10, 2, 3), 4, 5).value.exact, Rational(3 * 2 * 290, 4));
    EXPECT_EQ(analytic_lb(params(Algorithm::cg, 2, 1), 1, 100).value.exact, Rational(0));
}

TEST(Analytic, Gmres) {
    const auto r = analytic_lb(params(Algorithm::gmres, 10, 2, 1, 3), 2, 5);
    EXPECT_EQ(r.value.exact, Rational(885));
    EXPECT_EQ(r.asymptotic->exact, Rational(900));
}

TEST(Analytic, JacobiAndMatmul) {
    EXPECT_EQ(analytic_lb(params(Algorithm::jacobi, 8, 1, 4), 1, 2).value.exact, Rational(2));
    EXPECT_EQ(analytic_lb(params(Algorithm::jacobi, 8, 2, 1), 1, 8).value.exact, Rational(4));
    const auto irr = analytic_lb(params(Algorithm::jacobi, 8, 2, 1), 1, 3);
    EXPECT_FALSE(irr.value.is_exact());
    EXPECT_NEAR(irr.value.approx, 64.0 / (4.0 * std::sqrt(6.0)), 1e-12);
    EXPECT_EQ(analytic_lb(params(Algorithm::matmul, 4, 1), 1, 8).value.exact, Rational(8));
    EXPECT_THROW(analytic_lb(params(Algorithm::composite, 2, 1), 1, 8), Error);
    EXPECT_THROW(analytic_lb(params(Algorithm::cg, 2, 1), 0, 8), Error);
}

TEST(Analytic, HorizontalGhostCells) {
    const auto cg = analytic_horizontal_ub(params(Algorithm::cg, 8, 3, 2), 8);
    EXPECT_EQ(cg.kind, BoundKind::upper);
    EXPECT_EQ(cg.value.exact, Rational(304));  // (6^3 - 4^3) * 2
    EXPECT_EQ(cg.asymptotic->exact, Rational(192));
    EXPECT_EQ(analytic_horizontal_ub(params(Algorithm::jacobi, 8, 2, 3), 4).value.exact, Rational(48));
    EXPECT_EQ(analytic_horizontal_ub(params(Algorithm::jacobi, 8, 3, 1, 1, 7), 8).value.exact, Rational(96));
    EXPECT_EQ(analytic_horizontal_ub(params(Algorithm::gmres, 8, 3, 1, 5), 8).value.exact, Rational(760));
    EXPECT_FALSE(analytic_horizontal_ub(params(Algorithm::cg, 9, 2), 3).value.is_exact());
    EXPECT_THROW(analytic_horizontal_ub(params(Algorithm::cg, 2, 1), 4), Error);
    EXPECT_THROW(analytic_horizontal_ub(params(Algorithm::matmul, 8, 1), 2), Error);
}

TEST(Parallel, SpartitionForms) {
    const auto v = vertical_bound_spart(1000, 10, 4, 8, 16);
    EXPECT_EQ(v.value.exact, Rational(368));
    EXPECT_EQ(v.asymptotic->exact, Rational(400));
    EXPECT_EQ(horizontal_bound_spart(1000, 10, 16, 4).value.exact, Rational(384));
    EXPECT_EQ(horizontal_bound_spart(10, 10, 16, 4).value.exact, Rational(0));
    EXPECT_THROW(vertical_bound_spart(0, 10, 4, 8, 16), Error);
}

TEST(Parallel, VerticalFromSequential) {
    BoundReport seq;
    seq.value = BoundValue(10);
    seq.asymptotic = BoundValue(12);
    const auto r = vertical_bound_from_sequential(seq, 3);
    EXPECT_EQ(r.value.exact, Rational(3));
    EXPECT_EQ(r.asymptotic->exact, Rational(4));
    EXPECT_THROW(vertical_bound_from_sequential(seq, 0), Error);
}
