#include "twtree/talgebra.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <sstream>
#include <thread>

#include "twtree/isocert.hpp"
#include "twtree/orbits.hpp"

namespace twtree {

std::vector<RatMatrix> TOperators::generators() const {
    std::vector<RatMatrix> g{A};
    g.insert(g.end(), projectors.begin(), projectors.end());
    return g;
}

TOperators build_operators(const RootedGraph& rg) {
    TOperators ops;
    ops.n = rg.n();
    ops.root = rg.root;
    ops.A = RatMatrix(ops.n, ops.n);
    for (auto [u, v] : rg.graph.edges) {
        ops.A.at(u, v) = 1;
        ops.A.at(v, u) = 1;
    }
    for (const auto& level : rg.levels) {
        RatMatrix p(ops.n, ops.n);
        for (int v : level) p.at(v, v) = 1;
        ops.projectors.push_back(std::move(p));
    }
    return ops;
}

PrincipalModule principal_module(const TOperators& ops, int cap) {
    if (ops.n > cap)
        throw SizeGuard("principal_module: n = " + std::to_string(ops.n) + " exceeds cap " +
                        std::to_string(cap));
    Vec seed(ops.n);
    seed[ops.root] = 1;
    PrincipalModule pm;
    pm.basis = span_closure({seed}, ops.generators(), ops.n);
    pm.a_restricted = restrict_to(ops.A, pm.basis);
    for (const RatMatrix& p : ops.projectors)
        pm.projectors_restricted.push_back(restrict_to(p, pm.basis));
    const int d = pm.basis.dim();
    pm.gram = RatMatrix(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            pm.gram.at(i, j) = dot(pm.basis.rows()[i], pm.basis.rows()[j]);
            pm.gram.at(j, i) = pm.gram.at(i, j);
        }
    auto coords = pm.basis.coordinates(seed);
    if (!coords) throw Mismatch("principal_module: base vertex missing from its own module");
    pm.root_coords = *coords;
    return pm;
}

int dim_T(const TOperators& ops, int cap) { return algebra_closure(ops.generators(), cap).dim(); }

bool is_full_endomorphism(const TOperators& ops, int cap) {
    return dim_T(ops, cap) == ops.n * ops.n;
}

bool verify_prop1(const TOperators& ops, int cap) {
    PrincipalModule pm = principal_module(ops, cap);
    std::vector<RatMatrix> restricted{pm.a_restricted};
    restricted.insert(restricted.end(), pm.projectors_restricted.begin(),
                      pm.projectors_restricted.end());
    return commutant_dim_restricted(restricted) == 1;
}

bool verify_rigidity_equivalence(const RootedTree& t, int cap) {
    bool trivial = aut_order(t) == 1;
    bool full = is_full_endomorphism(build_operators(t.base), cap);
    return trivial == full;
}

bool verify_centralizer_containment(const RootedTree& t, int cap) {
    auto perms = brute_force_aut(t);
    AlgebraBasis algebra = algebra_closure(build_operators(t.base).generators(), cap);
    const int n = t.n();
    for (const RatMatrix& m : algebra.basis())
        for (const auto& perm : perms)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (m.at(perm[i], perm[j]) != m.at(i, j)) return false;
    return true;
}

namespace {

Vec apply_power(const RatMatrix& a, Vec v, int times) {
    for (int k = 0; k < times; ++k) v = a.apply(v);
    return v;
}

Vec project_level(const TOperators& ops, const Vec& v, int level) {
    Vec r(v.size());
    for (size_t x = 0; x < v.size(); ++x)
        if (!is_zero(ops.projectors[level].at(int(x), int(x)))) r[x] = v[x];
    return r;
}

}  // namespace

std::pair<Rat, Rat> eval_eq17(const TOperators& ops, int i) {
    if (i < 0 || i > ops.depth()) throw Error("eval_eq17: level out of range");
    Vec seed(ops.n);
    seed[ops.root] = 1;
    Vec u = project_level(ops, apply_power(ops.A, seed, i), i);
    Rat s = dot(u, u);
    Rat c = apply_power(ops.A, u, i)[ops.root];
    return {c, s};
}

Rat eval_eq18(const TOperators& ops, int i) {
    if (i < 0 || i > ops.depth()) throw Error("eval_eq18: level out of range");
    Vec seed(ops.n);
    seed[ops.root] = 1;
    Vec u = project_level(ops, apply_power(ops.A, seed, i), i);
    Vec w = project_level(ops, ops.A.apply(u), i);
    return apply_power(ops.A, w, i)[ops.root];
}

TreenessVerdict treeness_check(const RootedGraph& rg) {
    TOperators ops = build_operators(rg);
    for (int i = 0; i <= ops.depth(); ++i)
        if (!is_zero(eval_eq18(ops, i)))
            return {TreenessVerdict::Kind::intra_level_edge, i, -1};
    for (int v = 0; v < rg.n(); ++v)
        if (int(rg.parents[v].size()) > 1) return {TreenessVerdict::Kind::multi_parent, -1, v};
    return {};
}

HatOperators hat_operators(const TOperators& ops) {
    if (ops.depth() < 1) throw Degenerate("hat_operators: depth 0 leaves no hat module");
    HatOperators hat;
    for (int v = 0; v < ops.n; ++v)
        if (is_zero(ops.projectors[0].at(v, v))) hat.vertex.push_back(v);
    hat.m = int(hat.vertex.size());
    hat.A = RatMatrix(hat.m, hat.m);
    for (int i = 0; i < hat.m; ++i)
        for (int j = 0; j < hat.m; ++j) hat.A.at(i, j) = ops.A.at(hat.vertex[i], hat.vertex[j]);
    for (int level = 1; level <= ops.depth(); ++level) {
        RatMatrix p(hat.m, hat.m);
        for (int i = 0; i < hat.m; ++i) p.at(i, i) = ops.projectors[level].at(hat.vertex[i], hat.vertex[i]);
        hat.projectors.push_back(std::move(p));
    }
    return hat;
}

bool verify_eq20(const RootedTree& t, const ClassPartition& cp, int alpha, int cap) {
    if (t.n() > cap)
        throw SizeGuard("verify_eq20: n = " + std::to_string(t.n()) + " exceeds cap " +
                        std::to_string(cap));
    if (t.depth() < 1 || alpha < 0 || alpha >= cp.classes_at(1))
        throw Error("verify_eq20: no such level-1 class");
    TOperators ops = build_operators(t.base);
    HatOperators hat = hat_operators(ops);
    std::vector<RatMatrix> gens{hat.A};
    gens.insert(gens.end(), hat.projectors.begin(), hat.projectors.end());

    std::vector<int> coord_of(t.n(), -1);
    for (int i = 0; i < hat.m; ++i) coord_of[hat.vertex[i]] = i;
    const auto& cls = cp.classes[1][alpha];
    Vec class_sum(hat.m);
    for (int v : cls) class_sum[coord_of[v]] = 1;
    Vec member(hat.m);
    member[coord_of[cls.front()]] = 1;

    // Walk the two closures in lockstep over the same generator words. Each
    // new basis direction on the class-sum side pins the image of that word;
    // every linear dependence must be mirrored exactly on the member side,
    // which makes the word correspondence a well-defined intertwiner.
    std::vector<std::pair<Vec, Vec>> pairs{{class_sum, member}};
    detail::Echelon span(hat.m);
    span.insert(class_sum);
    for (size_t k = 0; k < pairs.size(); ++k)
        for (const RatMatrix& g : gens) {
            Vec u = g.apply(pairs[k].first);
            Vec v = g.apply(pairs[k].second);
            if (span.insert(u)) {
                pairs.push_back({std::move(u), std::move(v)});
                continue;
            }
            std::vector<Vec> basis_u;
            basis_u.reserve(pairs.size());
            for (const auto& p : pairs) basis_u.push_back(p.first);
            auto coeffs = express_in(basis_u, u);
            if (!coeffs) throw Mismatch("verify_eq20: reduced vector not in the walked span");
            Vec expected(hat.m);
            for (size_t j = 0; j < pairs.size(); ++j)
                if (!is_zero((*coeffs)[j]))
                    for (int c = 0; c < hat.m; ++c) expected[c] += (*coeffs)[j] * pairs[j].second[c];
            if (expected != v) return false;
        }

    // Module dimensions must agree (the correspondence is injective).
    std::vector<Vec> images;
    images.reserve(pairs.size());
    for (const auto& p : pairs) images.push_back(p.second);
    if (row_basis(images, hat.m).dim() != int(pairs.size())) return false;
    SubspaceBasis member_module = span_closure({member}, gens, hat.m);
    return member_module.dim() == int(pairs.size());
}

std::string ScanModel::str() const {
    if (kind == Kind::tree) return "tree";
    std::ostringstream out;
    out << "gnp:" << p;
    return out.str();
}

ScanModel ScanModel::parse(const std::string& text) {
    if (text == "tree") return {Kind::tree, 0.0};
    if (text.rfind("gnp:", 0) == 0) {
        ScanModel m{Kind::gnp, 0.0};
        try {
            size_t pos = 0;
            m.p = std::stod(text.substr(4), &pos);
            if (pos != text.size() - 4) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("scan model: bad probability in \"" + text + "\"");
        }
        if (m.p < 0.0 || m.p > 1.0) throw ParseError("scan model: probability out of [0, 1]");
        return m;
    }
    throw ParseError("scan model: expected \"tree\" or \"gnp:<p>\"");
}

namespace {

struct TrialOutcome {
    bool failed = false;
    std::string reason;
    std::string hash;
    int n = 0;
    bool hit = false;
};

}  // namespace

ScanStatistics conjecture_scan(const ScanModel& model, int n, int trials, std::uint64_t seed,
                               bool all_roots, int cap) {
    if (n < 1) throw Error("conjecture_scan: n must be at least 1");
    if (n > cap)
        throw SizeGuard("conjecture_scan: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));

    // Trials are pure given their derived seed, so they fan out across
    // workers; merging by trial index keeps the statistics byte-identical
    // regardless of scheduling.
    std::vector<TrialOutcome> outcomes(std::max(0, trials));
    auto run_trial = [&](int trial) {
        TrialOutcome& out = outcomes[trial];
        std::uint64_t derived = seed + std::uint64_t(trial);
        try {
            Graph g = model.kind == ScanModel::Kind::tree
                          ? random_tree(n, derived).base.graph
                          : random_connected_graph(n, model.p, derived);
            out.hash = content_hash(g);
            out.n = g.n;
            out.hit = true;
            for (int root = 0; root < (all_roots ? g.n : 1) && out.hit; ++root)
                out.hit = is_full_endomorphism(build_operators(bfs_levels(g, root)), cap);
        } catch (const Error& e) {
            out.failed = true;
            out.reason = e.what();
        }
    };
    unsigned workers = std::min(std::thread::hardware_concurrency(), 8u);
    if (trials >= 16 && workers > 1) {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int trial = next.fetch_add(1); trial < trials; trial = next.fetch_add(1))
                    run_trial(trial);
            });
        for (std::thread& th : pool) th.join();
    } else {
        for (int trial = 0; trial < trials; ++trial) run_trial(trial);
    }

    ScanStatistics stats;
    stats.model = model.str();
    stats.n = n;
    stats.trials = trials;
    stats.seed = seed;
    stats.all_roots = all_roots;
    for (int trial = 0; trial < trials; ++trial) {
        const TrialOutcome& out = outcomes[trial];
        if (out.failed) {
            stats.failures.push_back({trial, out.reason});
            continue;
        }
        stats.instance_hashes.push_back(out.hash);
        ++stats.completed;
        auto& bucket = stats.per_n[out.n];
        ++bucket.first;
        if (out.hit) {
            ++stats.hits;
            ++bucket.second;
        }
    }
    stats.fraction = stats.completed > 0 ? double(stats.hits) / double(stats.completed) : 0.0;
    return stats;
}

}  // namespace twtree
