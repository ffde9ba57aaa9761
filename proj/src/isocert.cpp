#include "twtree/isocert.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "twtree/talgebra.hpp"

namespace twtree {

namespace {

// Per-vertex subtree certificates, bottom-up over the levels.
std::vector<std::string> vertex_certificates(const RootedTree& t) {
    std::vector<std::string> cert(t.n());
    for (int i = t.depth(); i >= 0; --i)
        for (int v : t.base.levels[i]) {
            std::vector<std::string> parts;
            parts.reserve(t.children[v].size());
            for (int c : t.children[v]) parts.push_back(cert[c]);
            std::sort(parts.begin(), parts.end());
            std::string s = "(";
            for (const std::string& p : parts) s += p;
            s += ")";
            cert[v] = std::move(s);
        }
    return cert;
}

}  // namespace

CertificateResult certificate(const RootedTree& t) {
    std::vector<std::string> cert = vertex_certificates(t);
    CertificateResult res{cert[t.root()], t};
    for (auto& kids : res.canonical.children)
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            return std::tie(cert[a], a) < std::tie(cert[b], b);
        });
    return res;
}

bool rooted_isomorphic(const RootedTree& t1, const RootedTree& t2) {
    return certificate(t1).text == certificate(t2).text;
}

bool brute_force_rooted_iso(const RootedTree& t1, const RootedTree& t2) {
    if (t1.n() > 10 || t2.n() > 10)
        throw SizeGuard("brute_force_rooted_iso: instances must have n <= 10");
    if (t1.n() != t2.n()) return false;

    // memo[u][v]: 0 unknown, 1 match, 2 no match
    std::vector<std::vector<char>> memo(t1.n(), std::vector<char>(t2.n(), 0));
    auto match = [&](auto&& self, int u, int v) -> bool {
        char& m = memo[u][v];
        if (m) return m == 1;
        const auto& cu = t1.children[u];
        const auto& cv = t2.children[v];
        bool ok = false;
        if (cu.size() == cv.size()) {
            std::vector<char> used(cv.size(), 0);
            auto assign = [&](auto&& rec, size_t i) -> bool {
                if (i == cu.size()) return true;
                for (size_t j = 0; j < cv.size(); ++j) {
                    if (used[j] || !self(self, cu[i], cv[j])) continue;
                    used[j] = 1;
                    if (rec(rec, i + 1)) return true;
                    used[j] = 0;
                }
                return false;
            };
            ok = assign(assign, 0);
        }
        m = ok ? 1 : 2;
        return ok;
    };
    return match(match, t1.root(), t2.root());
}

RootedTree reconstruct(const std::string& cert) {
    if (cert.empty() || cert.front() != '(') throw Malformed("certificate must start with '('");
    std::vector<int> stack;
    std::vector<std::pair<int, int>> edges;
    int next = 0;
    for (size_t pos = 0; pos < cert.size(); ++pos) {
        char c = cert[pos];
        if (c == '(') {
            if (next > 0 && stack.empty())
                throw Malformed("certificate has more than one top-level group");
            int v = next++;
            if (!stack.empty()) edges.push_back({stack.back(), v});
            stack.push_back(v);
        } else if (c == ')') {
            if (stack.empty()) throw Malformed("unbalanced ')'");
            stack.pop_back();
        } else {
            throw Malformed("unexpected character in certificate");
        }
    }
    if (!stack.empty()) throw Malformed("unbalanced '('");
    return as_tree(bfs_levels(make_graph(next, std::move(edges)), 0));
}

std::vector<RootedTree> enumerate_rooted_trees(int n) {
    if (n < 1) throw Error("enumerate_rooted_trees: n must be at least 1");
    if (n > 12) throw SizeGuard("enumerate_rooted_trees: n = " + std::to_string(n) + " exceeds 12");
    std::vector<RootedTree> reps{as_tree(bfs_levels(make_graph(1, {}), 0))};
    for (int k = 2; k <= n; ++k) {
        std::vector<RootedTree> next;
        std::set<std::string> seen;
        for (const RootedTree& rep : reps)
            for (int v = 0; v < k - 1; ++v) {
                auto edges = rep.base.graph.edges;
                edges.push_back({v, k - 1});
                RootedTree t = as_tree(bfs_levels(make_graph(k, std::move(edges)), 0));
                if (seen.insert(certificate(t).text).second) next.push_back(std::move(t));
            }
        reps = std::move(next);
    }
    return reps;
}

mpz_class aut_order(const RootedTree& t) {
    std::vector<std::string> cert = vertex_certificates(t);
    mpz_class order = 1;
    for (int v = 0; v < t.n(); ++v) {
        std::map<std::string, int> mult;
        for (int c : t.children[v]) ++mult[cert[c]];
        for (const auto& [key, m] : mult) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), m);
            order *= f;
        }
    }
    return order;
}

bool InvariantBundle::operator==(const InvariantBundle& o) const {
    return depth == o.depth && lambda_sizes == o.lambda_sizes && children == o.children;
}

namespace {

nlohmann::json bundle_json(const InvariantBundle& b) {
    nlohmann::json j;
    j["D"] = b.depth;
    j["lambda"] = b.lambda_sizes;
    j["children"] = nlohmann::json::array();
    for (const auto& [size, sub] : b.children)
        j["children"].push_back({{"size", size}, {"module", bundle_json(sub)}});
    return j;
}

}  // namespace

std::string InvariantBundle::str() const { return bundle_json(*this).dump(); }

namespace {

// Everything below runs purely on principal-module data: the restricted
// generator matrices, the Gram matrix of the module basis, and the
// coordinates of the base vertex. Vertex sets never appear.
struct ModuleCtx {
    const RatMatrix& a;
    const std::vector<RatMatrix>& projectors;
    const RatMatrix& gram;
    int dim;

    int top_level() const { return int(projectors.size()) - 1; }
    Rat form(const Vec& u, const Vec& v) const { return dot(u, gram.apply(v)); }
};

// Orthogonal projection (w.r.t. the module form) onto the span of the rows.
Vec project_onto(const ModuleCtx& ctx, const std::vector<Vec>& rows, const Vec& v) {
    const int k = int(rows.size());
    std::vector<Vec> weighted(k);
    for (int i = 0; i < k; ++i) weighted[i] = ctx.gram.apply(rows[i]);
    RatMatrix gm(k, k);
    Vec rhs(k);
    for (int i = 0; i < k; ++i) {
        rhs[i] = dot(weighted[i], v);
        for (int j = 0; j < k; ++j) gm.at(i, j) = dot(weighted[i], rows[j]);
    }
    auto coeffs = solve_linear(gm, rhs);
    if (!coeffs) throw Mismatch("module_invariants: degenerate class Gram system");
    Vec out(ctx.dim);
    for (int i = 0; i < k; ++i)
        if (!is_zero((*coeffs)[i]))
            for (int c = 0; c < ctx.dim; ++c) out[c] += (*coeffs)[i] * rows[i][c];
    return out;
}

struct ModuleClass {
    SubspaceBasis space;
    std::vector<long long> counts;  // eigenvalues over the classes one level up
};

// M_{j,beta}-style operator: project to the level, step with A, project onto
// the class subspace one level up, step back, land on the level again.
Vec class_step(const ModuleCtx& ctx, const SubspaceBasis& cls, int level, const Vec& v) {
    Vec up = ctx.a.apply(v);
    Vec proj = project_onto(ctx, cls.rows(), up);
    return ctx.projectors[level].apply(ctx.a.apply(proj));
}

// Splits each part into common eigenspaces of the class-step operators; the
// eigenvalues are the child counts, which are nonnegative integers.
std::vector<ModuleClass> split_level(const ModuleCtx& ctx, const SubspaceBasis& level_space,
                                     int level, const std::vector<ModuleClass>& upper) {
    std::vector<ModuleClass> parts{{level_space, {}}};
    for (const ModuleClass& beta : upper) {
        std::vector<ModuleClass> refined;
        for (ModuleClass& part : parts) {
            const int pd = part.space.dim();
            RatMatrix f(pd, pd);
            for (int j = 0; j < pd; ++j) {
                auto coords =
                    part.space.coordinates(class_step(ctx, beta.space, level, part.space.rows()[j]));
                if (!coords)
                    throw Mismatch("module_invariants: class operator leaves its level part");
                for (int i = 0; i < pd; ++i) f.at(i, j) = (*coords)[i];
            }
            Rat trace = f.trace();
            if (trace.get_den() != 1 || sgn(trace) < 0)
                throw Mismatch("module_invariants: non-integral operator trace");
            long bound = trace.get_num().get_si();
            int found = 0;
            for (long e = 0; e <= bound && found < pd; ++e) {
                RatMatrix shifted = f;
                for (int i = 0; i < pd; ++i) shifted.at(i, i) -= e;
                std::vector<Vec> kernel = nullspace(shifted);
                if (kernel.empty()) continue;
                std::vector<Vec> rows;
                for (const Vec& k : kernel) {
                    Vec w(ctx.dim);
                    for (int i = 0; i < pd; ++i)
                        if (!is_zero(k[i]))
                            for (int c = 0; c < ctx.dim; ++c)
                                w[c] += k[i] * part.space.rows()[i][c];
                    rows.push_back(std::move(w));
                }
                ModuleClass sub{row_basis(rows, ctx.dim), part.counts};
                sub.counts.push_back(e);
                found += sub.space.dim();
                refined.push_back(std::move(sub));
            }
            if (found != pd)
                throw Mismatch("module_invariants: eigenvalues do not exhaust the level part");
        }
        parts = std::move(refined);
    }
    std::sort(parts.begin(), parts.end(),
              [](const ModuleClass& a, const ModuleClass& b) { return a.counts < b.counts; });
    return parts;
}

InvariantBundle bundle_of_module(const ModuleCtx& ctx, const Vec& seed, int base) {
    std::vector<RatMatrix> gens;
    if (base == 0) {
        gens.push_back(ctx.a);
    } else {
        RatMatrix s(ctx.dim, ctx.dim);
        for (int j = base; j <= ctx.top_level(); ++j) s = s + ctx.projectors[j];
        gens.push_back(s * ctx.a * s);
    }
    for (int j = base; j <= ctx.top_level(); ++j) gens.push_back(ctx.projectors[j]);
    SubspaceBasis module = span_closure({seed}, gens, ctx.dim);

    std::vector<SubspaceBasis> level_space;
    int top = base - 1;
    for (int j = base; j <= ctx.top_level(); ++j) {
        std::vector<Vec> rows;
        for (const Vec& r : module.rows()) rows.push_back(ctx.projectors[j].apply(r));
        level_space.push_back(row_basis(rows, ctx.dim));
        if (level_space.back().dim() > 0) top = j;
    }
    for (int j = base; j <= top; ++j)
        if (level_space[j - base].dim() == 0)
            throw Mismatch("module_invariants: empty level inside the module");

    // Classes per level, from the top shell downward.
    std::vector<std::vector<ModuleClass>> classes(top - base + 1);
    classes[top - base].push_back({level_space[top - base], {}});
    for (int j = top - 1; j >= base; --j)
        classes[j - base] = split_level(ctx, level_space[j - base], j, classes[j - base + 1]);

    InvariantBundle bundle;
    bundle.depth = top - base;
    for (const auto& level : classes) bundle.lambda_sizes.push_back(int(level.size()));

    if (top > base) {
        Rat seed_norm = ctx.form(seed, seed);
        Vec children_vec = ctx.projectors[base + 1].apply(ctx.a.apply(seed));
        for (const ModuleClass& alpha : classes[1]) {
            Vec u = project_onto(ctx, alpha.space.rows(), children_vec);
            Rat ratio = ctx.form(u, u) / seed_norm;
            if (ratio.get_den() != 1 || sgn(ratio) <= 0)
                throw Mismatch("module_invariants: class size is not a positive integer");
            long long mult = ratio.get_num().get_si();
            // Eq-13-style consistency: stepping back down scales the seed by
            // exactly the class size.
            Vec back = ctx.projectors[base].apply(ctx.a.apply(u));
            Vec expected(ctx.dim);
            for (int c = 0; c < ctx.dim; ++c) expected[c] = ratio * seed[c];
            if (back != expected)
                throw Mismatch("module_invariants: norm ratio disagrees with the count operator");
            bundle.children.push_back({mult, bundle_of_module(ctx, u, base + 1)});
        }
    }
    return bundle;
}

}  // namespace

InvariantBundle module_invariants(const RootedTree& t, int cap) {
    TOperators ops = build_operators(t.base);
    PrincipalModule pm = principal_module(ops, cap);
    ModuleCtx ctx{pm.a_restricted, pm.projectors_restricted, pm.gram, pm.dim()};
    Vec seed = pm.root_coords;
    InvariantBundle bundle = bundle_of_module(ctx, seed, 0);
    return bundle;
}

}  // namespace twtree
