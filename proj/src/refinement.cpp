#include "twtree/refinement.hpp"

#include <algorithm>
#include <map>

#include "twtree/linalg.hpp"
#include "twtree/talgebra.hpp"

namespace twtree {

ClassPartition level_classes(const RootedTree& t) {
    const int n = t.n();
    const int depth = t.depth();
    ClassPartition cp;
    cp.classes.assign(depth + 1, {});
    cp.class_cert.assign(depth + 1, {});
    cp.counts.assign(depth + 1, {});
    cp.label_of.assign(n, -1);

    // Deepest shell: all leaves, one class.
    cp.classes[depth].push_back(t.base.levels[depth]);
    cp.class_cert[depth].push_back("()");
    cp.counts[depth].push_back({});
    for (int v : t.base.levels[depth]) cp.label_of[v] = 0;

    for (int i = depth - 1; i >= 0; --i) {
        const int next_classes = cp.classes_at(i + 1);
        // Group by the child-class count vector.
        std::map<std::vector<int>, std::vector<int>> groups;
        for (int x : t.base.levels[i]) {
            std::vector<int> cnt(next_classes, 0);
            for (int c : t.children[x]) ++cnt[cp.label_of[c]];
            groups[cnt].push_back(x);
        }
        // Class certificate from the child-class certificates.
        struct Entry {
            std::string cert;
            std::vector<int> cnt;
            std::vector<int> members;
        };
        std::vector<Entry> entries;
        for (auto& [cnt, members] : groups) {
            std::vector<std::string> parts;
            for (int b = 0; b < next_classes; ++b)
                for (int k = 0; k < cnt[b]; ++k) parts.push_back(cp.class_cert[i + 1][b]);
            std::sort(parts.begin(), parts.end());
            std::string cert = "(";
            for (const std::string& p : parts) cert += p;
            cert += ")";
            entries.push_back({std::move(cert), cnt, std::move(members)});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.cert < b.cert; });
        for (int a = 0; a < int(entries.size()); ++a) {
            Entry& e = entries[a];
            std::sort(e.members.begin(), e.members.end());
            for (int x : e.members) cp.label_of[x] = a;
            cp.classes[i].push_back(std::move(e.members));
            cp.class_cert[i].push_back(std::move(e.cert));
            cp.counts[i].push_back(std::move(e.cnt));
        }
    }
    return cp;
}

std::vector<std::vector<RatMatrix>> class_projectors(const ClassPartition& cp, int n) {
    std::vector<std::vector<RatMatrix>> out(cp.levels());
    for (int i = 0; i < cp.levels(); ++i)
        for (const auto& cls : cp.classes[i]) {
            RatMatrix p(n, n);
            for (int v : cls) p.at(v, v) = 1;
            out[i].push_back(std::move(p));
        }
    return out;
}

namespace {

std::string offending(int i, int beta) {
    return " (i = " + std::to_string(i) + ", beta = " + std::to_string(beta) + ")";
}

}  // namespace

Lemma6Report verify_lemma6(const RootedTree& t) {
    const int n = t.n();
    const int depth = t.depth();
    ClassPartition cp = level_classes(t);
    TOperators ops = build_operators(t.base);
    auto projectors = class_projectors(cp, n);
    Lemma6Report report;

    for (int i = 0; i + 1 <= depth; ++i) {
        const auto& level = t.base.levels[i];
        const int nclasses = cp.classes_at(i);
        const int nbeta = cp.classes_at(i + 1);

        // Explicit operator products, checked against the counting form.
        std::vector<std::vector<int>> eigenvalue_of(n);  // per vertex on the level
        for (int beta = 0; beta < nbeta; ++beta) {
            RatMatrix m = ops.projectors[i] * ops.A * projectors[i + 1][beta] * ops.A *
                          ops.projectors[i];
            ++report.operators_checked;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    if (r != c && !is_zero(m.at(r, c)))
                        throw Mismatch("lemma6: operator not diagonal" + offending(i, beta));
            for (int x : level) {
                if (m.at(x, x) != cp.counts[i][cp.label_of[x]][beta])
                    throw Mismatch("lemma6: diagonal entry differs from count" +
                                   offending(i, beta));
                eigenvalue_of[x].push_back(int(m.at(x, x).get_num().get_si()));
            }
        }

        // Common-eigenspace partition of the level must equal the classes.
        std::map<std::vector<int>, std::vector<int>> eigen_classes;
        for (int x : level) eigen_classes[eigenvalue_of[x]].push_back(x);
        if (int(eigen_classes.size()) != nclasses)
            throw Mismatch("lemma6: eigenspace class count differs at level " + std::to_string(i));
        for (auto& [key, members] : eigen_classes) {
            std::sort(members.begin(), members.end());
            bool found = false;
            for (const auto& cls : cp.classes[i])
                if (cls == members) {
                    found = true;
                    break;
                }
            if (!found)
                throw Mismatch("lemma6: eigenspace class not a counting class at level " +
                               std::to_string(i));
        }

        // Each class projector must lie in the algebra the operators generate
        // on the level, with E*_i playing the unit. All of these matrices are
        // simultaneously diagonal and constant on classes, so work with value
        // vectors over the classes and close the span under pointwise products.
        std::vector<Vec> generators;
        for (int beta = 0; beta < nbeta; ++beta) {
            Vec v(nclasses);
            for (int a = 0; a < nclasses; ++a) v[a] = cp.counts[i][a][beta];
            generators.push_back(std::move(v));
        }
        detail::Echelon span(nclasses);
        std::vector<Vec> work;
        Vec ones(nclasses, Rat(1));  // E*_i on the level
        if (span.insert(ones)) work.push_back(ones);
        for (const Vec& g : generators)
            if (span.insert(g)) work.push_back(g);
        while (!work.empty()) {
            Vec v = std::move(work.back());
            work.pop_back();
            for (const Vec& g : generators) {
                Vec prod(nclasses);
                for (int a = 0; a < nclasses; ++a) prod[a] = v[a] * g[a];
                if (span.insert(prod)) work.push_back(std::move(prod));
            }
        }
        for (int a = 0; a < nclasses; ++a) {
            Vec indicator(nclasses);
            indicator[a] = 1;
            if (!span.contains(indicator))
                throw Mismatch("lemma6: class projector outside the generated algebra" +
                               offending(i, a));
            ++report.projectors_checked;
        }
        ++report.levels_checked;
    }
    return report;
}

}  // namespace twtree
