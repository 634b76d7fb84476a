#include "hsi/hsi_calc.hpp"

#include <algorithm>
#include <numeric>

#include "hsi/error.hpp"

namespace hsi {

std::vector<std::uint64_t> prime_power_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::uint64_t q = 1;
        while (n % p == 0) {
            n /= p;
            q *= p;
        }
        out.push_back(q);
    }
    if (n > 1) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

GradedGroup GradedGroup::free_at(int degree, std::uint64_t rank) {
    GradedGroup g;
    g.add_free(degree, rank);
    return g;
}

void GradedGroup::add_free(int degree, std::uint64_t rank) { parts_[mod(degree)].free += rank; }

void GradedGroup::add_torsion(int degree, std::uint64_t n) {
    if (n <= 1) return;
    auto& t = parts_[mod(degree)].torsion;
    for (auto q : prime_power_factors(n)) t.push_back(q);
    std::sort(t.begin(), t.end());
}

std::uint64_t GradedGroup::total_rank() const {
    std::uint64_t r = 0;
    for (const auto& p : parts_) r += p.free;
    return r;
}

std::vector<std::uint64_t> GradedGroup::torsion_multiset() const {
    std::vector<std::uint64_t> t;
    for (const auto& p : parts_) t.insert(t.end(), p.torsion.begin(), p.torsion.end());
    std::sort(t.begin(), t.end());
    return t;
}

bool GradedGroup::is_zero() const { return total_rank() == 0 && torsion_free(); }

bool GradedGroup::torsion_free() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const DegreePart& p) { return p.torsion.empty(); });
}

GradedGroup GradedGroup::shifted(int k) const {
    GradedGroup g;
    for (int d = 0; d < kPeriod; ++d) g.parts_[mod(d + k)] = parts_[d];
    return g;
}

GradedGroup GradedGroup::canonical() const {
    GradedGroup best = *this;
    for (int k = 1; k < kPeriod; ++k) {
        GradedGroup s = shifted(k);
        if (s.parts_ < best.parts_) best = s;
    }
    return best;
}

HsiResult lens_hsi(std::int64_t p, std::int64_t q, int cls) {
    if (p < 1) fail(Errc::InvalidParams, "lens space needs p >= 1");
    if (std::gcd(p, q) != 1) fail(Errc::InvalidParams, "lens space needs gcd(p, q) = 1");
    if (cls != 0 && cls != 1) fail(Errc::InvalidParams, "class must be 0 or 1");
    if (cls == 1 && p % 2 != 0)
        fail(Errc::InvalidParams, "H1(L(p,q); Z/2) vanishes for odd p, so the class must be 0");
    // free of rank p; all generators in one degree (parity is the only known constraint)
    return {GradedGroup::free_at(0, static_cast<std::uint64_t>(p)), p == 1};
}

HsiResult s2s1_hsi(int cls) {
    if (cls != 0 && cls != 1) fail(Errc::InvalidParams, "class must be 0 or 1");
    GradedGroup g;
    if (cls == 0) {
        g.add_free(0, 1);
        g.add_free(3, 1);
    }
    return {g, true};
}

GradedGroup kunneth(const GradedGroup& a, const GradedGroup& b) {
    GradedGroup out;
    for (int i = 0; i < GradedGroup::kPeriod; ++i) {
        const auto& x = a.at(i);
        for (int j = 0; j < GradedGroup::kPeriod; ++j) {
            const auto& y = b.at(j);
            out.add_free(i + j, x.free * y.free);
            for (auto t : y.torsion)
                for (std::uint64_t k = 0; k < x.free; ++k) out.add_torsion(i + j, t);
            for (auto t : x.torsion)
                for (std::uint64_t k = 0; k < y.free; ++k) out.add_torsion(i + j, t);
            for (auto s : x.torsion)
                for (auto t : y.torsion) {
                    auto g = std::gcd(s, t);
                    out.add_torsion(i + j, g);
                    out.add_torsion(i + j + 1, g);
                }
        }
    }
    return out;
}

TriadResult triad_propagate(const std::array<std::uint64_t, 3>& o, const std::array<bool, 3>& minimal) {
    bool any = o[0] == o[1] + o[2] || o[1] == o[0] + o[2] || o[2] == o[0] + o[1];
    if (!any) fail(Errc::AdditivityFails, "no ordering of the triad satisfies |H1| additivity");
    if (o[0] == o[1] + o[2] && minimal[1] && minimal[2]) return {TriadVerdict::Minimal, o[0]};
    return {};
}

IntMatrix PlumbingTree::intersection_matrix() const {
    const std::size_t n = weights.size();
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = weights[i];
    for (auto [a, b] : edges) {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    return m;
}

PlumbingResult plumbing_minimal(const PlumbingTree& tree) {
    const int n = static_cast<int>(tree.weights.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::int64_t> degree(n, 0);
    for (auto [a, b] : tree.edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            fail(Errc::NotATree, "edge (" + std::to_string(a) + "," + std::to_string(b) + ") names a missing vertex");
        if (a == b) fail(Errc::NotATree, "self-loop at vertex " + std::to_string(a));
        int ra = find(a), rb = find(b);
        if (ra == rb) fail(Errc::NotATree, "edge (" + std::to_string(a) + "," + std::to_string(b) + ") closes a cycle");
        parent[ra] = rb;
        ++degree[a];
        ++degree[b];
    }
    if (n == 0) return {false, 0, "empty plumbing graph"};
    for (int v = 0; v < n; ++v)
        if (tree.weights[v] < degree[v])
            return {false, 0, "weight below degree at vertex " + std::to_string(v)};
    std::vector<bool> strict(n, false);
    for (int v = 0; v < n; ++v)
        if (tree.weights[v] > degree[v]) strict[find(v)] = true;
    for (int v = 0; v < n; ++v)
        if (find(v) == v && !strict[v]) return {false, 0, "S2xS1 degeneration"};
    auto h = h1_order(tree.intersection_matrix());
    if (h.infinite) return {false, 0, "intersection form is degenerate"};
    return {true, h.order, ""};
}

namespace {

bool verify_node(const QANode& n, const std::string& path, std::vector<std::string>& trace) {
    const std::string label = path + (n.name.empty() ? "" : " (" + n.name + ")");
    if (n.det == 0) {
        trace.push_back(label + ": determinant is zero");
        return false;
    }
    if (n.det < 0) {
        trace.push_back(label + ": determinant must be a natural number");
        return false;
    }
    switch (n.leaf) {
        case QANode::Leaf::Unknot:
            if (n.det != 1) {
                trace.push_back(label + ": unknot leaf has det " + std::to_string(n.det) + ", expected 1");
                return false;
            }
            trace.push_back(label + ": unknot leaf, det 1");
            return true;
        case QANode::Leaf::QAKnown:
            trace.push_back(label + ": accepted as previously verified quasi-alternating, det " +
                            std::to_string(n.det));
            return true;
        case QANode::Leaf::Internal:
            break;
    }
    if (n.children.size() != 2) {
        trace.push_back(label + ": internal node needs exactly two resolutions");
        return false;
    }
    bool ok = verify_node(n.children[0], path + ".0", trace);
    ok = verify_node(n.children[1], path + ".1", trace) && ok;
    std::int64_t sum = n.children[0].det + n.children[1].det;
    if (sum != n.det) {
        trace.push_back(label + ": det L = " + std::to_string(n.det) + " but det L0 + det L1 = " +
                        std::to_string(n.children[0].det) + " + " + std::to_string(n.children[1].det) +
                        " = " + std::to_string(sum));
        return false;
    }
    if (ok) trace.push_back(label + ": det " + std::to_string(n.det) + " = " + std::to_string(n.children[0].det) +
                            " + " + std::to_string(n.children[1].det));
    return ok;
}

}  // namespace

QAResult qa_verify(const QANode& cert) {
    QAResult r;
    r.verified = verify_node(cert, "root", r.trace);
    return r;
}

}  // namespace hsi
