#include "dmeq/dm_basis.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace dmeq {

namespace {

std::uint32_t full_mask(int n)
{
    return n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
}

std::uint32_t rotate_labels(std::uint32_t mask, int n)
{
    return ((mask << 1) | (mask >> (n - 1))) & full_mask(n);
}

void check_n(int n)
{
    if (n < 1 || n > kMaxMarkedPoints)
        throw InvalidPrime("number of marked points must lie in [1, " + std::to_string(kMaxMarkedPoints) +
                           "], got " + std::to_string(n));
}

} // namespace

MarkedSet::MarkedSet(std::vector<int> labels)
{
    for (int l : labels) {
        if (l < 1 || l > kMaxMarkedPoints)
            throw MalformedMonomial("marked label " + std::to_string(l) + " out of range");
        mask_ |= 1u << (l - 1);
    }
}

int MarkedSet::size() const
{
    return std::popcount(mask_);
}

std::vector<int> MarkedSet::members() const
{
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask_ & (1u << i))
            out.push_back(i + 1);
    return out;
}

int MarkedSet::max_label() const
{
    return mask_ ? 32 - std::countl_zero(mask_) : 0;
}

bool operator<(const MarkedSet& a, const MarkedSet& b)
{
    std::uint32_t x = a.mask_, y = b.mask_;
    while (x && y) {
        std::uint32_t lx = x & (~x + 1), ly = y & (~y + 1);
        if (lx != ly)
            return lx < ly;
        x ^= lx;
        y ^= ly;
    }
    return !x && y;
}

std::string to_string(const MarkedSet& s)
{
    std::string out = "{";
    bool first = true;
    for (int l : s.members()) {
        out += (first ? "" : ",") + std::to_string(l);
        first = false;
    }
    return out + "}";
}

int Monomial::degree() const
{
    int d = 0;
    for (const auto& [s, e] : exponents_)
        d += e;
    return 2 * d;
}

bool operator<(const Monomial& a, const Monomial& b)
{
    if (a.n_ != b.n_)
        return a.n_ < b.n_;
    auto key_less = [](const auto& x, const auto& y) { return x.first < y.first; };
    const auto& ea = a.exponents_;
    const auto& eb = b.exponents_;
    if (std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(), key_less))
        return true;
    if (std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end(), key_less))
        return false;
    // Same support.
    for (auto ia = ea.begin(), ib = eb.begin(); ia != ea.end(); ++ia, ++ib)
        if (ia->second != ib->second)
            return ia->second < ib->second;
    return false;
}

std::string to_string(const Monomial& m)
{
    if (m.is_identity())
        return "1";
    std::string out;
    for (const auto& [s, e] : m.exponents()) {
        if (!out.empty())
            out += "*";
        out += "P" + to_string(s);
        if (e != 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

Monomial pi_x_power(int n, int k)
{
    if (k == 0)
        return Monomial(n, {});
    return Monomial(n, {{MarkedSet::from_mask(full_mask(n)), k}});
}

int exponent_bound(const Monomial& m, const MarkedSet& s)
{
    const auto& ex = m.exponents();
    int k = 0;
    int covered = 0;
    for (const auto& [t, e] : ex) {
        if (t == s || !s.contains(t))
            continue;
        bool maximal = true;
        for (const auto& [u, f] : ex) {
            if (u == s || u == t)
                continue;
            if (s.contains(u) && u.contains(t)) {
                maximal = false;
                break;
            }
        }
        if (maximal) {
            ++k;
            covered += t.size();
        }
    }
    return k - 1 + s.size() - covered;
}

bool is_admissible(const Monomial& m)
{
    const auto full = full_mask(m.n());
    for (const auto& [s, e] : m.exponents()) {
        if (s.size() < 3)
            throw MalformedMonomial("set " + to_string(s) + " has fewer than 3 members");
        if ((s.mask() & ~full) != 0)
            throw MalformedMonomial("set " + to_string(s) + " is not contained in {1.." + std::to_string(m.n()) + "}");
        if (e <= 0)
            throw MalformedMonomial("nonpositive exponent on " + to_string(s));
    }
    const auto& ex = m.exponents();
    for (auto a = ex.begin(); a != ex.end(); ++a)
        for (auto b = std::next(a); b != ex.end(); ++b) {
            const auto& s = a->first;
            const auto& t = b->first;
            if (!(s.disjoint(t) || s.contains(t) || t.contains(s)))
                return false;
        }
    for (const auto& [s, e] : ex)
        if (e >= exponent_bound(m, s))
            return false;
    return true;
}

std::size_t GradedBasis::total_size() const
{
    std::size_t total = 0;
    for (const auto& [d, v] : by_degree)
        total += v.size();
    return total;
}

std::size_t GradedBasis::dim(int degree) const
{
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? 0 : it->second.size();
}

int GradedBasis::top_degree() const
{
    int top = 0;
    for (const auto& [d, v] : by_degree)
        if (!v.empty())
            top = std::max(top, d);
    return top;
}

namespace {

// Recursive construction: candidate sets are visited largest first, so a set's
// parent in the laminar forest is always chosen before the set itself. Adding
// a set only lowers the bound of its parent, which lets infeasible families be
// cut as soon as the parent's bound drops below 2 (no room for d >= 1).
class LaminarEnumerator {
public:
    LaminarEnumerator(int n, int max_sets) : n_(n), max_sets_(max_sets)
    {
        for (std::uint32_t mask = 1; mask <= full_mask(n) && mask != 0; ++mask)
            if (std::popcount(mask) >= 3)
                candidates_.push_back(mask);
        std::stable_sort(candidates_.begin(), candidates_.end(), [](std::uint32_t a, std::uint32_t b) {
            return std::popcount(a) > std::popcount(b);
        });
    }

    template <typename Visit>
    void run(Visit&& visit)
    {
        recurse(0, visit);
    }

private:
    struct Node {
        std::uint32_t mask;
        int bound;
    };

    template <typename Visit>
    void recurse(std::size_t idx, Visit& visit)
    {
        if (idx == candidates_.size()) {
            visit(chosen_);
            return;
        }
        recurse(idx + 1, visit);

        if (static_cast<int>(chosen_.size()) >= max_sets_)
            return;
        const std::uint32_t t = candidates_[idx];
        // Parent: smallest chosen set containing t. Chosen sets are at least as
        // large, so laminarity means each is disjoint from t or contains it.
        int parent = -1;
        for (std::size_t i = 0; i < chosen_.size(); ++i) {
            std::uint32_t s = chosen_[i].mask;
            if ((s & t) == 0)
                continue;
            if ((s & t) != t)
                return;
            if (parent < 0 || std::popcount(s) < std::popcount(chosen_[parent].mask))
                parent = static_cast<int>(i);
        }
        if (parent >= 0) {
            // t becomes a new maximal subset of its parent: k grows by 1, coverage by |t|.
            int new_bound = chosen_[parent].bound + 1 - std::popcount(t);
            if (new_bound < 2)
                return;
            chosen_[parent].bound = new_bound;
        }
        chosen_.push_back({t, std::popcount(t) - 1});
        recurse(idx + 1, visit);
        chosen_.pop_back();
        if (parent >= 0)
            chosen_[parent].bound += std::popcount(t) - 1;
    }

    int n_;
    int max_sets_;
    std::vector<std::uint32_t> candidates_;
    std::vector<Node> chosen_;
};

} // namespace

GradedBasis enumerate_monomial_basis(int n, std::optional<int> max_degree)
{
    check_n(n);
    if (max_degree && *max_degree < 0)
        throw Error("max degree must be nonnegative");
    const int max_total = max_degree ? *max_degree / 2 : 1 << 30;

    GradedBasis basis;
    basis.n = n;
    std::vector<std::pair<std::uint32_t, int>> family;
    std::vector<int> exps;

    LaminarEnumerator en(n, max_total);
    en.run([&](const auto& chosen) {
        for (const auto& node : chosen)
            if (node.bound < 2)
                return;
        // Exponent vectors within 1 <= d_S <= bound - 1, odometer style.
        exps.assign(chosen.size(), 1);
        int total = static_cast<int>(chosen.size());
        if (total > max_total)
            return;
        while (true) {
            Monomial::Exponents ex;
            for (std::size_t i = 0; i < chosen.size(); ++i)
                ex.emplace(MarkedSet::from_mask(chosen[i].mask), exps[i]);
            basis.by_degree[2 * total].emplace_back(n, std::move(ex));

            std::size_t i = 0;
            for (; i < chosen.size(); ++i) {
                if (exps[i] + 1 < chosen[i].bound && total + 1 <= max_total) {
                    ++exps[i];
                    ++total;
                    break;
                }
                total -= exps[i] - 1;
                exps[i] = 1;
            }
            if (i == chosen.size())
                break;
        }
    });
    for (auto& [d, v] : basis.by_degree)
        std::sort(v.begin(), v.end());
    return basis;
}

GradedBasis enumerate_basis(int p, std::optional<int> max_degree)
{
    require_prime(p);
    return enumerate_monomial_basis(p, max_degree);
}

Monomial sigma(const Monomial& m)
{
    Monomial::Exponents out;
    for (const auto& [s, e] : m.exponents())
        out.emplace(MarkedSet::from_mask(rotate_labels(s.mask(), m.n())), e);
    return Monomial(m.n(), std::move(out));
}

std::map<int, std::size_t> OrbitDecomposition::fixed_by_degree() const
{
    std::map<int, std::size_t> out;
    for (const auto& m : fixed)
        ++out[m.degree()];
    return out;
}

std::map<int, std::size_t> OrbitDecomposition::cycles_by_degree() const
{
    std::map<int, std::size_t> out;
    for (const auto& c : cycles)
        ++out[c.front().degree()];
    return out;
}

OrbitDecomposition orbit_decomposition(const GradedBasis& b)
{
    const int p = b.n;
    OrbitDecomposition out;
    out.p = p;
    for (const auto& [degree, monomials] : b.by_degree) {
        std::set<Monomial> members(monomials.begin(), monomials.end());
        std::set<Monomial> seen;
        for (const auto& m : monomials) {
            if (seen.count(m))
                continue;
            std::vector<Monomial> orbit{m};
            seen.insert(m);
            for (Monomial next = sigma(m); !(next == m); next = sigma(next)) {
                if (!members.count(next))
                    throw InternalInconsistency("sigma(" + to_string(orbit.back()) + ") = " + to_string(next) +
                                                " is not a basis element");
                if (static_cast<int>(orbit.size()) >= p)
                    throw InternalInconsistency("orbit of " + to_string(m) + " is longer than " + std::to_string(p));
                orbit.push_back(next);
                seen.insert(next);
            }
            const auto len = static_cast<int>(orbit.size());
            if (len == 1)
                out.fixed.push_back(m);
            else if (len == p)
                out.cycles.push_back(std::move(orbit));
            else
                throw InternalInconsistency("orbit of " + to_string(m) + " has size " + std::to_string(len) +
                                            ", expected 1 or " + std::to_string(p));
        }
    }
    return out;
}

std::vector<std::size_t> sigma_permutation(const GradedBasis& b, int degree)
{
    auto it = b.by_degree.find(degree);
    if (it == b.by_degree.end())
        return {};
    const auto& v = it->second;
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < v.size(); ++i)
        index.emplace(v[i], i);
    std::vector<std::size_t> perm(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto found = index.find(sigma(v[i]));
        if (found == index.end())
            throw InternalInconsistency("sigma leaves the degree-" + std::to_string(degree) + " basis");
        perm[i] = found->second;
    }
    return perm;
}

} // namespace dmeq
