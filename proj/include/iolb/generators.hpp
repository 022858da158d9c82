#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "iolb/cdag.hpp"
#include "iolb/error.hpp"

namespace iolb {

struct Slab {
    std::string name;
    VertexSet vertices;
};

struct Frontier {
    std::string slab_a;
    std::string slab_b;
    VertexSet vertices;
};

// A generated CDAG plus the structure the bound engines consume.
struct AnnotatedCdag {
    Cdag cdag;
    std::vector<Slab> slabs;          // per outer iteration / per sub-computation
    std::vector<Frontier> frontiers;  // vertices shared by two slabs
    std::vector<VertexId> anchors;    // wavefront anchors (dot-product scalars)
    std::vector<Slab> subslabs;       // slabs split at their anchors (cg, gmres)
    std::vector<Frontier> subfrontiers;
    VertexSet tail;                   // non-input vertices outside every slab

    [[nodiscard]] const Slab* find_slab(const std::string& name) const {
        for (const auto& s : slabs)
            if (s.name == name) return &s;
        for (const auto& s : subslabs)
            if (s.name == name) return &s;
        return nullptr;
    }
};

enum class Algorithm { outer_product, matmul, composite, cg, gmres, jacobi, chain };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::outer_product: return "outer_product";
        case Algorithm::matmul: return "matmul";
        case Algorithm::composite: return "composite";
        case Algorithm::cg: return "cg";
        case Algorithm::gmres: return "gmres";
        case Algorithm::jacobi: return "jacobi";
        case Algorithm::chain: return "chain";
    }
    return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "outer_product" || s == "outer-product" || s == "outer") return Algorithm::outer_product;
    if (s == "matmul") return Algorithm::matmul;
    if (s == "composite") return Algorithm::composite;
    if (s == "cg") return Algorithm::cg;
    if (s == "gmres") return Algorithm::gmres;
    if (s == "jacobi") return Algorithm::jacobi;
    if (s == "chain") return Algorithm::chain;
    throw Error("unknown algorithm '" + s + "' (outer_product, matmul, composite, cg, gmres, jacobi, chain)");
}

struct AlgorithmParams {
    Algorithm algorithm = Algorithm::chain;
    std::int64_t n = 1;  // grid extent, matrix/vector size N, or chain length k
    int d = 1;
    std::int64_t T = 1;
    std::int64_t m = 1;
    int stencil_points = 0;  // jacobi; 0 selects 3^d
};

namespace detail {

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Row-major grid helpers for n^d points.
struct Grid {
    std::int64_t n;
    int d;

    [[nodiscard]] std::int64_t points() const { return ipow(n, d); }

    [[nodiscard]] std::vector<std::int64_t> coords(std::int64_t idx) const {
        std::vector<std::int64_t> c(static_cast<std::size_t>(d));
        for (int k = d - 1; k >= 0; --k) {
            c[static_cast<std::size_t>(k)] = idx % n;
            idx /= n;
        }
        return c;
    }

    [[nodiscard]] std::int64_t index(const std::vector<std::int64_t>& c) const {
        std::int64_t idx = 0;
        for (auto x : c) idx = idx * n + x;
        return idx;
    }

    // Clamped neighbourhood of a point, self included, in increasing index order.
    // box: all offsets in {-1,0,1}^d; otherwise the 2d+1 axis star.
    [[nodiscard]] std::vector<std::int64_t> neighbours(std::int64_t idx, bool box) const {
        const auto c = coords(idx);
        std::vector<std::int64_t> out;
        if (box) {
            const std::int64_t combos = ipow(3, d);
            for (std::int64_t k = 0; k < combos; ++k) {
                auto q = c;
                std::int64_t rem = k;
                bool inside = true;
                for (int a = d - 1; a >= 0; --a) {
                    q[static_cast<std::size_t>(a)] += (rem % 3) - 1;
                    rem /= 3;
                    if (q[static_cast<std::size_t>(a)] < 0 || q[static_cast<std::size_t>(a)] >= n) inside = false;
                }
                if (inside) out.push_back(index(q));
            }
        } else {
            out.push_back(idx);
            for (int a = 0; a < d; ++a) {
                for (int delta : {-1, 1}) {
                    auto q = c;
                    q[static_cast<std::size_t>(a)] += delta;
                    if (q[static_cast<std::size_t>(a)] >= 0 && q[static_cast<std::size_t>(a)] < n) out.push_back(index(q));
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

class Emitter {
  public:
    VertexId input(const std::string& label) { return b_.add_vertex(true, false, label); }
    VertexId op(const std::string& label, const std::vector<VertexId>& preds) {
        VertexId v = b_.add_vertex(false, false, label);
        for (VertexId p : preds) b_.add_edge(p, v);
        return v;
    }
    void mark_output(VertexId v) { b_.set_output(v); }

    // Balanced binary reduction over leaves; a single leaf is its own root.
    VertexId tree(const std::string& label, std::vector<VertexId> level, std::vector<VertexId>* internal = nullptr) {
        if (level.empty()) throw Error("reduction over no leaves");
        int depth = 0;
        while (level.size() > 1) {
            std::vector<VertexId> next;
            for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
                VertexId v = op(label + ".r" + std::to_string(depth) + "." + std::to_string(i / 2), {level[i], level[i + 1]});
                next.push_back(v);
                if (internal) internal->push_back(v);
            }
            if (level.size() % 2 == 1) next.push_back(level.back());
            level = std::move(next);
            ++depth;
        }
        return level.front();
    }

    Cdag build() && { return std::move(b_).build(); }

  private:
    CdagBuilder b_;
};

inline void add_all(VertexSet& s, const std::vector<VertexId>& vs) { s.insert(vs.begin(), vs.end()); }

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error(what);
}

}  // namespace detail

// Path of k vertices; first is the input, last the output.
inline AnnotatedCdag gen_chain(std::int64_t k) {
    detail::require(k >= 1, "chain length must be >= 1");
    detail::Emitter e;
    std::vector<VertexId> vs;
    vs.push_back(e.input("chain.0"));
    for (std::int64_t i = 1; i < k; ++i) vs.push_back(e.op("chain." + std::to_string(i), {vs.back()}));
    e.mark_output(vs.back());
    AnnotatedCdag out;
    out.cdag = std::move(e).build();
    Slab s{"chain", {}};
    for (std::size_t i = 1; i < vs.size(); ++i) s.vertices.insert(vs[i]);
    out.slabs.push_back(std::move(s));
    return out;
}

// c_ij = p_i * q_j for all i, j; every product is an output.
inline AnnotatedCdag gen_outer_product(std::int64_t N) {
    detail::require(N >= 1, "outer product size must be >= 1");
    detail::Emitter e;
    std::vector<VertexId> p, q;
    for (std::int64_t i = 0; i < N; ++i) p.push_back(e.input("p." + std::to_string(i)));
    for (std::int64_t j = 0; j < N; ++j) q.push_back(e.input("q." + std::to_string(j)));
    Slab s{"outer", {}};
    for (std::int64_t i = 0; i < N; ++i)
        for (std::int64_t j = 0; j < N; ++j) {
            VertexId c = e.op("c." + std::to_string(i) + "." + std::to_string(j),
                              {p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]});
            e.mark_output(c);
            s.vertices.insert(c);
        }
    AnnotatedCdag out;
    out.cdag = std::move(e).build();
    out.slabs.push_back(std::move(s));
    return out;
}

namespace detail {

// C = A*B with per-(i,j) addition chains over k. Returns the N^2 result vertices.
inline std::vector<VertexId> emit_matmul(Emitter& e, const std::string& pfx, const std::vector<VertexId>& A,
                                         const std::vector<VertexId>& B, std::int64_t N, VertexSet& mul,
                                         VertexSet& acc) {
    std::vector<VertexId> C;
    const auto at = [N](const std::vector<VertexId>& M, std::int64_t r, std::int64_t c) {
        return M[static_cast<std::size_t>(r * N + c)];
    };
    for (std::int64_t i = 0; i < N; ++i)
        for (std::int64_t j = 0; j < N; ++j) {
            const std::string ij = std::to_string(i) + "." + std::to_string(j);
            VertexId run = -1;
            for (std::int64_t k = 0; k < N; ++k) {
                VertexId m = e.op(pfx + "mul." + ij + "." + std::to_string(k), {at(A, i, k), at(B, k, j)});
                mul.insert(m);
                if (run < 0) {
                    run = m;
                } else {
                    run = e.op(pfx + "acc." + ij + "." + std::to_string(k), {run, m});
                    acc.insert(run);
                }
            }
            C.push_back(run);
        }
    return C;
}

}  // namespace detail

// 2N^2 inputs, N^3 multiplies, N^3 - N^2 accumulations, N^2 outputs.
inline AnnotatedCdag gen_matmul(std::int64_t N) {
    detail::require(N >= 1, "matrix size must be >= 1");
    detail::Emitter e;
    std::vector<VertexId> A, B;
    for (std::int64_t i = 0; i < N; ++i)
        for (std::int64_t k = 0; k < N; ++k) A.push_back(e.input("A." + std::to_string(i) + "." + std::to_string(k)));
    for (std::int64_t k = 0; k < N; ++k)
        for (std::int64_t j = 0; j < N; ++j) B.push_back(e.input("B." + std::to_string(k) + "." + std::to_string(j)));
    Slab mul{"mul", {}}, acc{"acc", {}};
    auto C = detail::emit_matmul(e, "", A, B, N, mul.vertices, acc.vertices);
    for (VertexId c : C) e.mark_output(c);
    AnnotatedCdag out;
    out.cdag = std::move(e).build();
    out.slabs.push_back(std::move(mul));
    if (!acc.vertices.empty()) out.slabs.push_back(std::move(acc));
    return out;
}

// A = p q^T, B = r s^T, C = A B, sum over all C_ij.
// The sum is always its own vertex (a unary copy when N = 1).
inline AnnotatedCdag gen_composite(std::int64_t N) {
    detail::require(N >= 1, "composite size must be >= 1");
    detail::Emitter e;
    auto vec = [&](const char* name) {
        std::vector<VertexId> v;
        for (std::int64_t i = 0; i < N; ++i) v.push_back(e.input(std::string(name) + "." + std::to_string(i)));
        return v;
    };
    auto p = vec("p"), q = vec("q"), r = vec("r"), s = vec("s");
    Slab sa{"A", {}}, sb{"B", {}}, sm{"matmul", {}}, ss{"sum", {}};
    auto outer = [&](const std::string& name, const std::vector<VertexId>& x, const std::vector<VertexId>& y, Slab& slab) {
        std::vector<VertexId> M;
        for (std::int64_t i = 0; i < N; ++i)
            for (std::int64_t j = 0; j < N; ++j) {
                VertexId v = e.op(name + "." + std::to_string(i) + "." + std::to_string(j),
                                  {x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)]});
                M.push_back(v);
                slab.vertices.insert(v);
            }
        return M;
    };
    auto A = outer("A", p, q, sa);
    auto B = outer("B", r, s, sb);
    auto C = detail::emit_matmul(e, "C.", A, B, N, sm.vertices, sm.vertices);
    VertexId sum;
    if (C.size() == 1) {
        sum = e.op("sum", {C.front()});
    } else {
        std::vector<VertexId> internal;
        sum = e.tree("sum", C, &internal);
        detail::add_all(ss.vertices, internal);
    }
    ss.vertices.insert(sum);
    e.mark_output(sum);
    AnnotatedCdag out;
    out.cdag = std::move(e).build();
    out.slabs = {std::move(sa), std::move(sb), std::move(sm), std::move(ss)};
    return out;
}

// T time levels of n^d points; level 0 are the inputs, level T-1 the outputs.
// stencil_points: 2d+1 (axis star) or 3^d (box); 0 selects 3^d.
inline AnnotatedCdag gen_jacobi(std::int64_t n, int d, std::int64_t T, int stencil_points = 0) {
    detail::require(n >= 3, "jacobi needs n >= 3");
    detail::require(d >= 1, "jacobi needs d >= 1");
    detail::require(T >= 2, "jacobi needs T >= 2");
    const auto box_pts = detail::ipow(3, d);
    if (stencil_points == 0) stencil_points = static_cast<int>(box_pts);
    if (stencil_points != 2 * d + 1 && stencil_points != box_pts)
        throw Error("stencil_points must be 2d+1 (" + std::to_string(2 * d + 1) + ") or 3^d (" +
                    std::to_string(box_pts) + ")");
    const bool box = stencil_points == box_pts;
    detail::Grid g{n, d};
    const auto P = g.points();
    detail::Emitter e;
    AnnotatedCdag out;
    std::vector<VertexId> prev, cur;
    for (std::int64_t t = 0; t < T; ++t) {
        Slab s{"time" + std::to_string(t), {}};
        cur.clear();
        for (std::int64_t i = 0; i < P; ++i) {
            const std::string l = "jacobi.t" + std::to_string(t) + "." + std::to_string(i);
            VertexId v;
            if (t == 0) {
                v = e.input(l);
            } else {
                std::vector<VertexId> preds;
                for (auto q : g.neighbours(i, box)) preds.push_back(prev[static_cast<std::size_t>(q)]);
                v = e.op(l, preds);
            }
            if (t == T - 1) e.mark_output(v);
            cur.push_back(v);
            s.vertices.insert(v);
        }
        out.slabs.push_back(std::move(s));
        prev = cur;
    }
    out.cdag = std::move(e).build();
    return out;
}

// Conjugate gradient, T iterations on an n^d grid with a 3^d-point SpMV.
// Per iteration (N = n^d): v = A p (N), <r,r> (N products + N-1 tree),
// <p,v> (N + N-1), a, x' = x + a p (N), r' = r - a v (N), <r',r'> (N + N-1), g,
// p' = r' + g p (N): 10N - 1 vertices. Inputs are x, r, p; outputs the last x', r', p'.
// Against the 20 n^3 T FLOP model for d = 3: the SpMV here is one vertex per
// point rather than 27 multiply-adds, so vertex count is (10N-1)T, not 20NT.
inline AnnotatedCdag gen_cg(std::int64_t n, int d, std::int64_t T) {
    detail::require(n >= 2, "cg needs n >= 2");
    detail::require(d >= 1, "cg needs d >= 1");
    detail::require(T >= 1, "cg needs T >= 1");
    detail::Grid grid{n, d};
    const auto N = static_cast<std::size_t>(grid.points());
    detail::Emitter e;
    AnnotatedCdag out;
    std::vector<VertexId> x(N), r(N), p(N);
    for (std::size_t i = 0; i < N; ++i) x[i] = e.input("cg.x." + std::to_string(i));
    for (std::size_t i = 0; i < N; ++i) r[i] = e.input("cg.r." + std::to_string(i));
    for (std::size_t i = 0; i < N; ++i) p[i] = e.input("cg.p." + std::to_string(i));

    for (std::int64_t t = 0; t < T; ++t) {
        const std::string pf = "cg.t" + std::to_string(t) + ".";
        VertexSet part_x, part_y;
        std::vector<VertexId> v(N), rr(N), pv(N), xn(N), rn(N), rnrn(N), pn(N), internal;
        for (std::size_t i = 0; i < N; ++i) {
            std::vector<VertexId> preds;
            for (auto q : grid.neighbours(static_cast<std::int64_t>(i), true)) preds.push_back(p[static_cast<std::size_t>(q)]);
            v[i] = e.op(pf + "v." + std::to_string(i), preds);
        }
        for (std::size_t i = 0; i < N; ++i) rr[i] = e.op(pf + "rr." + std::to_string(i), {r[i]});
        VertexId rr_root = e.tree(pf + "rr", rr, &internal);
        for (std::size_t i = 0; i < N; ++i) pv[i] = e.op(pf + "pv." + std::to_string(i), {p[i], v[i]});
        VertexId pv_root = e.tree(pf + "pv", pv, &internal);
        VertexId a = e.op(pf + "a", {rr_root, pv_root});
        for (std::size_t i = 0; i < N; ++i) xn[i] = e.op(pf + "x_new." + std::to_string(i), {x[i], a, p[i]});
        for (std::size_t i = 0; i < N; ++i) rn[i] = e.op(pf + "r_new." + std::to_string(i), {r[i], a, v[i]});
        detail::add_all(part_x, v);
        detail::add_all(part_x, rr);
        detail::add_all(part_x, pv);
        detail::add_all(part_x, internal);
        part_x.insert(a);
        detail::add_all(part_x, xn);
        detail::add_all(part_x, rn);

        internal.clear();
        for (std::size_t i = 0; i < N; ++i) rnrn[i] = e.op(pf + "rnrn." + std::to_string(i), {rn[i]});
        VertexId rn_root = e.tree(pf + "rnrn", rnrn, &internal);
        VertexId g = e.op(pf + "g", {rn_root, rr_root});
        for (std::size_t i = 0; i < N; ++i) pn[i] = e.op(pf + "p_new." + std::to_string(i), {rn[i], g, p[i]});
        detail::add_all(part_y, rn);
        detail::add_all(part_y, rnrn);
        detail::add_all(part_y, internal);
        part_y.insert(g);
        detail::add_all(part_y, pn);

        const std::string slab = "iter" + std::to_string(t);
        VertexSet shared_p;
        if (t > 0) {
            shared_p.insert(p.begin(), p.end());
            part_x.insert(p.begin(), p.end());
            out.frontiers.push_back({"iter" + std::to_string(t - 1), slab, shared_p});
            out.subfrontiers.push_back({"iter" + std::to_string(t - 1) + ".y", slab + ".x", shared_p});
        }
        Slab whole{slab, part_x};
        whole.vertices.insert(part_y.begin(), part_y.end());
        out.slabs.push_back(std::move(whole));
        out.subslabs.push_back({slab + ".x", part_x});
        out.subslabs.push_back({slab + ".y", part_y});
        out.subfrontiers.push_back({slab + ".x", slab + ".y", VertexSet(rn.begin(), rn.end())});
        out.anchors.push_back(a);
        out.anchors.push_back(g);
        x = xn;
        r = rn;
        p = pn;
    }
    for (VertexId v : x) e.mark_output(v);
    for (VertexId v : r) e.mark_output(v);
    for (VertexId v : p) e.mark_output(v);
    out.cdag = std::move(e).build();
    return out;
}

// GMRES (modified Gram-Schmidt), m outer iterations on an n^d grid.
// Iteration i: w = A v_i; h_{j,i} = <w, v_j> for j = 0..i (product + tree);
// v' = w - sum_j h_{j,i} v_j as a per-point chain of i+1 updates; norm = <v',v'>;
// v_{i+1} = v' / norm; one Givens vertex rot_i (rot_{i-1}, h_{i,i}, norm).
// After the loop: y_j (rot_j, rot_{m-1}) and x = x0 + sum_j y_j v_j as per-point
// chains; these final vertices are the tail, outside every slab.
// Inputs v_0, x0; outputs x and v_m.
inline AnnotatedCdag gen_gmres(std::int64_t n, int d, std::int64_t m) {
    detail::require(n >= 2, "gmres needs n >= 2");
    detail::require(d >= 1, "gmres needs d >= 1");
    detail::require(m >= 1, "gmres needs m >= 1");
    detail::Grid grid{n, d};
    const auto N = static_cast<std::size_t>(grid.points());
    detail::Emitter e;
    AnnotatedCdag out;
    std::vector<std::vector<VertexId>> V;
    V.emplace_back(N);
    for (std::size_t k = 0; k < N; ++k) V[0][k] = e.input("gmres.v0." + std::to_string(k));
    std::vector<VertexId> x0(N);
    for (std::size_t k = 0; k < N; ++k) x0[k] = e.input("gmres.x0." + std::to_string(k));
    std::vector<VertexId> rot;

    for (std::int64_t i = 0; i < m; ++i) {
        const std::string pf = "gmres.i" + std::to_string(i) + ".";
        const auto& vi = V[static_cast<std::size_t>(i)];
        VertexSet part_x, part_y;
        std::vector<VertexId> w(N), internal;
        for (std::size_t k = 0; k < N; ++k) {
            std::vector<VertexId> preds;
            for (auto q : grid.neighbours(static_cast<std::int64_t>(k), true)) preds.push_back(vi[static_cast<std::size_t>(q)]);
            w[k] = e.op(pf + "w." + std::to_string(k), preds);
        }
        detail::add_all(part_x, w);
        std::vector<VertexId> h;
        for (std::int64_t j = 0; j <= i; ++j) {
            std::vector<VertexId> prod(N);
            const std::string hj = pf + "h" + std::to_string(j);
            for (std::size_t k = 0; k < N; ++k)
                prod[k] = e.op(hj + "." + std::to_string(k), {w[k], V[static_cast<std::size_t>(j)][k]});
            detail::add_all(part_x, prod);
            internal.clear();
            h.push_back(e.tree(hj, prod, &internal));
            detail::add_all(part_x, internal);
            part_x.insert(h.back());
        }
        std::vector<VertexId> vp(N);
        for (std::size_t k = 0; k < N; ++k) {
            VertexId run = w[k];
            for (std::int64_t j = 0; j <= i; ++j) {
                run = e.op(pf + "vp." + std::to_string(k) + "." + std::to_string(j),
                           {run, h[static_cast<std::size_t>(j)], V[static_cast<std::size_t>(j)][k]});
                part_x.insert(run);
            }
            vp[k] = run;
        }
        std::vector<VertexId> sq(N);
        for (std::size_t k = 0; k < N; ++k) sq[k] = e.op(pf + "nrm." + std::to_string(k), {vp[k]});
        internal.clear();
        VertexId norm = e.tree(pf + "nrm", sq, &internal);
        std::vector<VertexId> vn(N);
        for (std::size_t k = 0; k < N; ++k) vn[k] = e.op(pf + "v." + std::to_string(k), {vp[k], norm});
        std::vector<VertexId> rpreds;
        if (!rot.empty()) rpreds.push_back(rot.back());
        rpreds.push_back(h.back());
        rpreds.push_back(norm);
        rot.push_back(e.op(pf + "rot", rpreds));
        detail::add_all(part_y, vp);
        detail::add_all(part_y, sq);
        detail::add_all(part_y, internal);
        part_y.insert(norm);
        detail::add_all(part_y, vn);
        part_y.insert(rot.back());

        const std::string slab = "iter" + std::to_string(i);
        if (i > 0) {
            VertexSet shared(vi.begin(), vi.end());
            part_x.insert(vi.begin(), vi.end());
            out.frontiers.push_back({"iter" + std::to_string(i - 1), slab, shared});
            out.subfrontiers.push_back({"iter" + std::to_string(i - 1) + ".y", slab + ".x", shared});
        }
        Slab whole{slab, part_x};
        whole.vertices.insert(part_y.begin(), part_y.end());
        out.slabs.push_back(std::move(whole));
        out.subslabs.push_back({slab + ".x", part_x});
        out.subslabs.push_back({slab + ".y", part_y});
        out.subfrontiers.push_back({slab + ".x", slab + ".y", VertexSet(vp.begin(), vp.end())});
        out.anchors.push_back(h.back());
        out.anchors.push_back(norm);
        V.push_back(vn);
    }

    std::vector<VertexId> y;
    for (std::int64_t j = 0; j < m; ++j) {
        std::vector<VertexId> preds{rot[static_cast<std::size_t>(j)]};
        if (j != m - 1) preds.push_back(rot.back());
        y.push_back(e.op("gmres.y." + std::to_string(j), preds));
        out.tail.insert(y.back());
    }
    for (std::size_t k = 0; k < N; ++k) {
        VertexId run = x0[k];
        for (std::int64_t j = 0; j < m; ++j) {
            run = e.op("gmres.x." + std::to_string(k) + "." + std::to_string(j),
                       {run, y[static_cast<std::size_t>(j)], V[static_cast<std::size_t>(j)][k]});
            out.tail.insert(run);
        }
        e.mark_output(run);
    }
    for (VertexId v : V.back()) e.mark_output(v);
    out.cdag = std::move(e).build();
    return out;
}

inline AnnotatedCdag generate(const AlgorithmParams& p) {
    switch (p.algorithm) {
        case Algorithm::outer_product: return gen_outer_product(p.n);
        case Algorithm::matmul: return gen_matmul(p.n);
        case Algorithm::composite: return gen_composite(p.n);
        case Algorithm::cg: return gen_cg(p.n, p.d, p.T);
        case Algorithm::gmres: return gen_gmres(p.n, p.d, p.m);
        case Algorithm::jacobi: return gen_jacobi(p.n, p.d, p.T, p.stencil_points);
        case Algorithm::chain: return gen_chain(p.n);
    }
    throw Error("unknown algorithm");
}

}  // namespace iolb
