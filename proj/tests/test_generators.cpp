#include <gtest/gtest.h>

#include <sstream>

#include "iolb/annotation_io.hpp"
#include "iolb/generators.hpp"

using namespace iolb;

namespace {

std::int64_t non_inputs(const Cdag& g) { return static_cast<std::int64_t>(g.size() - g.input_count()); }

// Number of box-stencil neighbours of point idx with clamped boundaries.
std::size_t box_degree(std::int64_t idx, std::int64_t n, int d) {
    std::size_t deg = 1;
    for (int k = 0; k < d; ++k) {
        const std::int64_t c = idx % n;
        idx /= n;
        deg *= (c > 0 ? 1 : 0) + 1 + (c < n - 1 ? 1 : 0);
    }
    return deg;
}

}  // namespace

TEST(Generators, ChainCounts) {
    for (std::int64_t k = 1; k <= 7; ++k) {
        const auto a = gen_chain(k);
        EXPECT_EQ(a.cdag.size(), static_cast<std::size_t>(k));
        EXPECT_EQ(a.cdag.input_count(), 1u);
        EXPECT_EQ(a.cdag.output_count(), 1u);
        EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
    }
}

TEST(Generators, OuterProductCounts) {
    for (std::int64_t N = 1; N <= 4; ++N) {
        const auto a = gen_outer_product(N);
        EXPECT_EQ(a.cdag.size(), static_cast<std::size_t>(2 * N + N * N));
        EXPECT_EQ(a.cdag.input_count(), static_cast<std::size_t>(2 * N));
        EXPECT_EQ(a.cdag.output_count(), static_cast<std::size_t>(N * N));
        EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
    }
}

TEST(Generators, MatmulCounts) {
    for (std::int64_t N = 1; N <= 3; ++N) {
        const auto a = gen_matmul(N);
        EXPECT_EQ(a.cdag.size(), static_cast<std::size_t>(2 * N * N + 2 * N * N * N - N * N));
        EXPECT_EQ(a.cdag.output_count(), static_cast<std::size_t>(N * N));
        EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
    }
}

TEST(Generators, CompositeCounts) {
    // 4N inputs, 2N^2 outer products, N^3 + N^3 - N^2 matmul, sum tree N^2 - 1
    // (a single copy vertex when N = 1).
    for (std::int64_t N = 1; N <= 3; ++N) {
        const auto a = gen_composite(N);
        const std::int64_t sum = N == 1 ? 1 : N * N - 1;
        EXPECT_EQ(non_inputs(a.cdag), 2 * N * N + 2 * N * N * N - N * N + sum);
        EXPECT_EQ(a.cdag.input_count(), static_cast<std::size_t>(4 * N));
        EXPECT_EQ(a.cdag.output_count(), 1u);
        EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
        EXPECT_EQ(a.slabs.size(), 4u);
    }
}

TEST(Generators, JacobiCountsAndDegrees) {
    for (int d = 1; d <= 3; ++d)
        for (std::int64_t n : {3, 4})
            for (std::int64_t T : {2, 3}) {
                const auto a = gen_jacobi(n, d, T);
                const auto nd = detail::ipow(n, d);
                EXPECT_EQ(a.cdag.size(), static_cast<std::size_t>(nd * T));
                EXPECT_EQ(a.cdag.input_count(), static_cast<std::size_t>(nd));
                EXPECT_EQ(a.cdag.output_count(), static_cast<std::size_t>(nd));
                EXPECT_EQ(a.slabs.size(), static_cast<std::size_t>(T));
                for (std::int64_t i = 0; i < nd; ++i)
                    EXPECT_EQ(a.cdag.in_degree(static_cast<VertexId>(nd + i)), box_degree(i, n, d));
                EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
            }
}

TEST(Generators, JacobiStarStencil) {
    const auto a = gen_jacobi(3, 2, 2, 5);
    // Centre point of a 3x3 grid has all four axis neighbours.
    EXPECT_EQ(a.cdag.in_degree(9 + 4), 5u);
    EXPECT_EQ(a.cdag.in_degree(9 + 0), 3u);
    EXPECT_THROW(gen_jacobi(3, 2, 2, 7), Error);
    EXPECT_THROW(gen_jacobi(2, 1, 2), Error);
}

TEST(Generators, CgCounts) {
    for (int d = 1; d <= 2; ++d)
        for (std::int64_t n : {2, 3})
            for (std::int64_t T : {1, 2}) {
                const auto a = gen_cg(n, d, T);
                const auto N = detail::ipow(n, d);
                EXPECT_EQ(non_inputs(a.cdag), (10 * N - 1) * T);
                EXPECT_EQ(a.cdag.input_count(), static_cast<std::size_t>(3 * N));
                EXPECT_EQ(a.cdag.output_count(), static_cast<std::size_t>(3 * N));
                EXPECT_EQ(a.anchors.size(), static_cast<std::size_t>(2 * T));
                EXPECT_EQ(a.slabs.size(), static_cast<std::size_t>(T));
                EXPECT_EQ(a.subslabs.size(), static_cast<std::size_t>(2 * T));
                EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
            }
}

TEST(Generators, CgAnchorsAreDotProductScalars) {
    const auto a = gen_cg(2, 1, 1);
    ASSERT_EQ(a.anchors.size(), 2u);
    EXPECT_EQ(a.cdag.label(a.anchors[0]), "cg.t0.a");
    EXPECT_EQ(a.cdag.label(a.anchors[1]), "cg.t0.g");
}

TEST(Generators, CgSlabsCoverNonInputs) {
    const auto a = gen_cg(2, 2, 2);
    std::vector<int> seen(a.cdag.size(), 0);
    for (const auto& s : a.slabs)
        for (VertexId v : s.vertices) ++seen[static_cast<std::size_t>(v)];
    for (std::size_t v = 0; v < a.cdag.size(); ++v) {
        if (a.cdag.is_input(static_cast<VertexId>(v))) continue;
        EXPECT_GE(seen[v], 1) << a.cdag.label(static_cast<VertexId>(v));
    }
    // The second slab re-lists the first slab's p_new as its frontier.
    ASSERT_EQ(a.frontiers.size(), 1u);
    EXPECT_EQ(a.frontiers[0].vertices.size(), 4u);
}

TEST(Generators, GmresCounts) {
    // Iteration i: w (N), i+1 dot products (2N-1 each), i+1 update steps per
    // point, norm (2N-1), v_{i+1} (N), one rotation. Tail: m + N*m.
    for (std::int64_t n : {2, 3})
        for (std::int64_t m : {1, 2, 3}) {
            const auto a = gen_gmres(n, 1, m);
            const std::int64_t N = n;
            std::int64_t expect = m + N * m;
            for (std::int64_t i = 0; i < m; ++i) expect += N + (i + 1) * (2 * N - 1) + N * (i + 1) + (2 * N - 1) + N + 1;
            EXPECT_EQ(non_inputs(a.cdag), expect);
            EXPECT_EQ(a.cdag.input_count(), static_cast<std::size_t>(2 * N));
            EXPECT_EQ(a.cdag.output_count(), static_cast<std::size_t>(2 * N));
            EXPECT_EQ(a.tail.size(), static_cast<std::size_t>(m + N * m));
            EXPECT_EQ(a.anchors.size(), static_cast<std::size_t>(2 * m));
            EXPECT_TRUE(is_valid(a.cdag, Convention::hk));
        }
}

TEST(Generators, RejectsBadParameters) {
    EXPECT_THROW(gen_chain(0), Error);
    EXPECT_THROW(gen_cg(1, 1, 1), Error);
    EXPECT_THROW(gen_gmres(2, 1, 0), Error);
    EXPECT_THROW(parse_algorithm("qr"), Error);
    EXPECT_EQ(parse_algorithm("outer-product"), Algorithm::outer_product);
}

TEST(Generators, Deterministic) {
    const AlgorithmParams p{Algorithm::cg, 3, 2, 2, 1, 0};
    EXPECT_EQ(generate(p).cdag, generate(p).cdag);
}

TEST(Generators, SidecarRoundTrip) {
    const auto a = gen_gmres(2, 1, 2);
    std::ostringstream os;
    write_annotations(os, a);
    const auto back = annotations_from_text(os.str());
    ASSERT_EQ(back.slabs.size(), a.slabs.size());
    for (std::size_t i = 0; i < a.slabs.size(); ++i) {
        EXPECT_EQ(back.slabs[i].name, a.slabs[i].name);
        EXPECT_EQ(back.slabs[i].vertices, a.slabs[i].vertices);
    }
    EXPECT_EQ(back.anchors, a.anchors);
    EXPECT_EQ(back.tail, a.tail);
    EXPECT_EQ(back.frontiers.size(), a.frontiers.size());
    EXPECT_EQ(back.subslabs.size(), a.subslabs.size());
}
