#include "gromolab/graph_space.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "gromolab/common.hpp"

namespace gromolab {
namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 narrow_count(i128 v) {
    if (v > std::numeric_limits<i64>::max())
        throw resource_error("ball count exceeds the 64-bit range");
    return static_cast<i64>(v);
}

}  // namespace

GroupDescriptor GroupDescriptor::parse(const std::string& text) {
    GroupDescriptor d;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "free" || head == "abelian") {
        d.kind = head == "free" ? GroupKind::Free : GroupKind::Abelian;
        try {
            d.generators = std::stoi(tail);
        } catch (...) {
            throw domain_error("bad group descriptor: " + text);
        }
        if (d.generators < 1 || d.generators > 64)
            throw domain_error("generator count out of range in: " + text);
    } else if (head == "table") {
        if (tail.empty()) throw domain_error("table descriptor needs a file: " + text);
        d.kind = GroupKind::Table;
        d.table_path = tail;
    } else {
        throw domain_error("unknown group descriptor: " + text);
    }
    return d;
}

std::string GroupDescriptor::str() const {
    switch (kind) {
        case GroupKind::Free: return "free:" + std::to_string(generators);
        case GroupKind::Abelian: return "abelian:" + std::to_string(generators);
        case GroupKind::Table: return "table:" + table_path;
    }
    return "?";
}

CayleySpace::CayleySpace(const GroupDescriptor& desc, std::size_t vertex_budget)
    : desc_(desc), budget_(vertex_budget) {
    if (desc_.kind == GroupKind::Table) {
        std::ifstream in(desc_.table_path);
        if (!in) throw domain_error("cannot open table file: " + desc_.table_path);
        load_table(in);
    }
}

void CayleySpace::load_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw domain_error("table file: missing header");
    int n = 0, k = 0;
    if (std::sscanf(header.c_str(), "n=%d k=%d", &n, &k) != 2 || n < 1 || k < 1)
        throw domain_error("table file: header must be \"n=<order> k=<generators>\"");
    table_.assign(n, std::vector<int>(n, -1));
    std::string line;
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw domain_error("table file: truncated table");
        std::stringstream ss(line);
        std::string cell;
        for (int j = 0; j < n; ++j) {
            if (!std::getline(ss, cell, ','))
                throw domain_error("table file: row " + std::to_string(i) + " is short");
            int v = std::stoi(cell);
            if (v < 0 || v >= n) throw domain_error("table file: entry out of range");
            table_[i][j] = v;
        }
    }
    if (!std::getline(in, line)) throw domain_error("table file: missing generator line");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell.find_first_not_of(" \t") == std::string::npos) continue;
            int v = std::stoi(cell);
            if (v < 0 || v >= n) throw domain_error("table file: generator index out of range");
            gen_elem_.push_back(v);
        }
    }
    if (static_cast<int>(gen_elem_.size()) != k)
        throw domain_error("table file: generator line does not match k");
    desc_.generators = k;
    order_ = static_cast<std::size_t>(n);

    // identity, latin-square property, inverses
    identity_elem_ = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = table_[e][j] == j && table_[j][e] == j;
        if (ok) {
            identity_elem_ = e;
            break;
        }
    }
    if (identity_elem_ < 0) throw domain_error("table file: no identity element");
    for (int i = 0; i < n; ++i) {
        std::vector<bool> row(n, false), col(n, false);
        for (int j = 0; j < n; ++j) {
            row[table_[i][j]] = true;
            col[table_[j][i]] = true;
        }
        for (int j = 0; j < n; ++j)
            if (!row[j] || !col[j]) throw domain_error("table file: not a latin square");
    }
    if (n <= 256) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    if (table_[table_[i][j]][l] != table_[i][table_[j][l]])
                        throw domain_error("table file: multiplication is not associative");
    }
    inverse_elem_.assign(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (table_[i][j] == identity_elem_) inverse_elem_[i] = j;

    // distances and shortest representative words by BFS from the identity
    dist_id_.assign(n, -1);
    rep_.assign(n, Word());
    dist_id_[identity_elem_] = 0;
    std::deque<int> queue{identity_elem_};
    auto letters = expansion_letters();
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (std::int32_t g : letters) {
            int ge = g > 0 ? gen_elem_[g - 1] : inverse_elem_[gen_elem_[-g - 1]];
            int w = table_[v][ge];
            if (dist_id_[w] < 0) {
                dist_id_[w] = dist_id_[v] + 1;
                rep_[w] = rep_[v] * Word::letter(g);
                queue.push_back(w);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (dist_id_[i] < 0)
            throw domain_error("table file: generators do not generate the group");
}

std::vector<std::int32_t> CayleySpace::expansion_letters() const {
    std::vector<std::int32_t> ls;
    ls.reserve(2 * desc_.generators);
    for (int i = 1; i <= desc_.generators; ++i) {
        ls.push_back(i);
        ls.push_back(-i);
    }
    return ls;
}

int CayleySpace::elem_of(const Word& w) const {
    int e = identity_elem_;
    for (std::int32_t g : w.letters()) {
        int ge = g > 0 ? gen_elem_[g - 1] : inverse_elem_[gen_elem_[-g - 1]];
        e = table_[e][ge];
    }
    return e;
}

std::vector<std::int64_t> CayleySpace::abelian_exponents(const Word& w) const {
    std::vector<i64> exp(desc_.generators, 0);
    for (std::int32_t g : w.letters()) {
        int i = g > 0 ? g : -g;
        if (i > desc_.generators) throw domain_error("generator index out of range for this group");
        exp[i - 1] += g > 0 ? 1 : -1;
    }
    return exp;
}

Word CayleySpace::canonical(const Word& w) const {
    switch (desc_.kind) {
        case GroupKind::Free: {
            for (std::int32_t g : w.letters())
                if (std::abs(g) > desc_.generators)
                    throw domain_error("generator index out of range for this group");
            return w;
        }
        case GroupKind::Abelian: {
            auto exp = abelian_exponents(w);
            std::vector<std::int32_t> letters;
            for (int i = 0; i < desc_.generators; ++i)
                for (i64 c = 0; c < std::abs(exp[i]); ++c)
                    letters.push_back(exp[i] > 0 ? i + 1 : -(i + 1));
            return Word::from_letters(letters);
        }
        case GroupKind::Table: return rep_[elem_of(w)];
    }
    return w;
}

Word CayleySpace::mul(const Word& g, const Word& h) const { return canonical(g * h); }

Word CayleySpace::inv(const Word& g) const { return canonical(g.inverse()); }

Word CayleySpace::power(const Word& g, std::int64_t n) const { return canonical(g.pow(n)); }

bool CayleySpace::is_identity(const Word& w) const { return canonical(w).empty(); }

std::int64_t CayleySpace::distance(const Word& u, const Word& v) const {
    switch (desc_.kind) {
        case GroupKind::Free:
            return static_cast<i64>((canonical(u).inverse() * canonical(v)).length());
        case GroupKind::Abelian: {
            auto eu = abelian_exponents(u), ev = abelian_exponents(v);
            i64 s = 0;
            for (int i = 0; i < desc_.generators; ++i) s += std::abs(ev[i] - eu[i]);
            return s;
        }
        case GroupKind::Table: {
            int e = table_[inverse_elem_[elem_of(u)]][elem_of(v)];
            return dist_id_[e];
        }
    }
    return 0;
}

std::int64_t CayleySpace::bfs_distance(const Word& u, const Word& v) const {
    Word cu = canonical(u), cv = canonical(v);
    if (cu == cv) return 0;
    auto letters = expansion_letters();
    std::unordered_map<std::string, i64> da{{cu.key(), 0}}, db{{cv.key(), 0}};
    std::deque<Word> qa{cu}, qb{cv};
    i64 depth_a = 0, depth_b = 0;
    while (!qa.empty() && !qb.empty()) {
        bool expand_a = qa.size() <= qb.size();
        auto& q = expand_a ? qa : qb;
        auto& mine = expand_a ? da : db;
        auto& other = expand_a ? db : da;
        i64& depth = expand_a ? depth_a : depth_b;
        std::deque<Word> next;
        for (const Word& w : q) {
            for (std::int32_t g : letters) {
                Word n = mul(w, Word::letter(g));
                std::string k = n.key();
                if (mine.count(k)) continue;
                auto hit = other.find(k);
                if (hit != other.end()) return depth + 1 + hit->second;
                mine.emplace(std::move(k), depth + 1);
                next.push_back(std::move(n));
                if (da.size() + db.size() > budget_)
                    throw resource_error("bidirectional BFS exceeded the vertex budget");
            }
        }
        q = std::move(next);
        ++depth;
    }
    throw domain_error("BFS found no path (disconnected input?)");
}

std::vector<Word> CayleySpace::geodesic(const Word& u, const Word& v) const {
    Word cu = canonical(u), cv = canonical(v);
    std::vector<Word> path{cu};
    switch (desc_.kind) {
        case GroupKind::Free: {
            Word w = cu.inverse() * cv;
            Word cur = cu;
            for (std::int32_t g : w.letters()) {
                cur = cur * Word::letter(g);
                path.push_back(cur);
            }
            return path;
        }
        case GroupKind::Abelian: {
            auto eu = abelian_exponents(cu), ev = abelian_exponents(cv);
            Word cur = cu;
            for (int i = 0; i < desc_.generators; ++i) {
                i64 diff = ev[i] - eu[i];
                for (i64 s = 0; s < std::abs(diff); ++s) {
                    cur = mul(cur, Word::letter(diff > 0 ? i + 1 : -(i + 1)));
                    path.push_back(cur);
                }
            }
            return path;
        }
        case GroupKind::Table: {
            if (cu == cv) return path;
            auto letters = expansion_letters();
            std::unordered_map<int, std::pair<int, std::int32_t>> parent;  // elem -> (prev, letter)
            int src = elem_of(cu), dst = elem_of(cv);
            parent[src] = {src, 0};
            std::deque<int> queue{src};
            while (!queue.empty()) {
                int e = queue.front();
                queue.pop_front();
                if (e == dst) break;
                for (std::int32_t g : letters) {
                    int ge = g > 0 ? gen_elem_[g - 1] : inverse_elem_[gen_elem_[-g - 1]];
                    int w = table_[e][ge];
                    if (!parent.count(w)) {
                        parent[w] = {e, g};
                        queue.push_back(w);
                    }
                }
            }
            std::vector<std::int32_t> rev;
            for (int e = dst; e != src; e = parent[e].first) rev.push_back(parent[e].second);
            Word cur = cu;
            for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
                cur = mul(cur, Word::letter(*it));
                path.push_back(cur);
            }
            return path;
        }
    }
    return path;
}

Word CayleySpace::geodesic_point(const Word& u, const Word& v, double t) const {
    auto k = static_cast<std::int64_t>(std::llround(t));
    if (std::abs(t - static_cast<double>(k)) > 1e-9)
        throw unsupported_error("graph geodesics have vertices at integer arclengths only");
    auto path = geodesic(u, v);
    if (k < 0 || k >= static_cast<std::int64_t>(path.size()))
        throw domain_error("arclength outside [0, d(u,v)]");
    return path[static_cast<std::size_t>(k)];
}

std::int64_t CayleySpace::ball_count(const Word& /*center*/, std::int64_t R) const {
    if (R < 0) throw domain_error("ball radius must be nonnegative");
    switch (desc_.kind) {
        case GroupKind::Free: {
            int k = desc_.generators;
            i128 total = 1, level = 1;
            for (i64 r = 1; r <= R; ++r) {
                level = r == 1 ? i128(2 * k) : level * (2 * k - 1);
                total += level;
                narrow_count(total);
            }
            return narrow_count(total);
        }
        case GroupKind::Abelian: {
            int k = desc_.generators;
            std::vector<i128> dp(static_cast<std::size_t>(R) + 1, 1);  // dimension 0
            for (int d = 1; d <= k; ++d) {
                std::vector<i128> pre(dp.size() + 1, 0);
                for (std::size_t r = 0; r < dp.size(); ++r) pre[r + 1] = pre[r] + dp[r];
                std::vector<i128> next(dp.size());
                for (std::size_t r = 0; r < dp.size(); ++r) {
                    next[r] = dp[r] + 2 * pre[r];  // t = 0 plus both signs of t = 1..r
                    narrow_count(next[r]);
                }
                dp = std::move(next);
            }
            return narrow_count(dp.back());
        }
        case GroupKind::Table: {
            i64 n = 0;
            for (int d : dist_id_)
                if (d <= R) ++n;
            return n;
        }
    }
    return 0;
}

void CayleySpace::grow_identity_ball(std::int64_t R) const {
    if (id_ball_.empty()) {
        id_ball_.push_back(Word());
        level_end_.assign(1, 1);  // radius 0
    }
    i64 have = static_cast<i64>(level_end_.size()) - 1;
    if (R <= have) return;
    if (frozen_) throw unsupported_error("space is frozen; cannot grow past the frozen radius");
    auto letters = expansion_letters();
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(id_ball_.size() * 2);
    for (std::size_t i = 0; i < id_ball_.size(); ++i) index.emplace(id_ball_[i].key(), i);
    for (i64 r = have + 1; r <= R; ++r) {
        std::size_t lo = r == 1 ? 0 : level_end_[static_cast<std::size_t>(r) - 2];
        std::size_t hi = level_end_[static_cast<std::size_t>(r) - 1];
        for (std::size_t i = lo; i < hi; ++i) {
            Word v = id_ball_[i];
            for (std::int32_t g : letters) {
                Word n = mul(v, Word::letter(g));
                auto [it, fresh] = index.emplace(n.key(), id_ball_.size());
                if (fresh) {
                    id_ball_.push_back(std::move(n));
                    if (id_ball_.size() > budget_)
                        throw resource_error("ball enumeration exceeded the vertex budget (" +
                                             std::to_string(budget_) + " vertices)");
                }
            }
        }
        level_end_.push_back(id_ball_.size());
    }
}

std::vector<Word> CayleySpace::ball(const Word& center, std::int64_t R) const {
    if (R < 0) throw domain_error("ball radius must be nonnegative");
    grow_identity_ball(R);
    std::size_t n = level_end_[static_cast<std::size_t>(std::min<i64>(
        R, static_cast<i64>(level_end_.size()) - 1))];
    Word c = canonical(center);
    std::vector<Word> out;
    out.reserve(n);
    if (c.empty()) {
        out.assign(id_ball_.begin(), id_ball_.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
        for (std::size_t i = 0; i < n; ++i) out.push_back(mul(c, id_ball_[i]));
    }
    return out;
}

std::vector<Word> CayleySpace::bfs_ball(const Word& center, std::int64_t R) const {
    if (R < 0) throw domain_error("ball radius must be nonnegative");
    auto letters = expansion_letters();
    Word c = canonical(center);
    std::vector<Word> out{c};
    std::unordered_map<std::string, std::size_t> index{{c.key(), 0}};
    std::vector<std::size_t> parent{0};
    std::size_t lo = 0, hi = 1;
    for (i64 r = 1; r <= R; ++r) {
        for (std::size_t i = lo; i < hi; ++i) {
            Word v = out[i];
            for (std::int32_t g : letters) {
                Word n = mul(v, Word::letter(g));
                auto [it, fresh] = index.emplace(n.key(), out.size());
                if (fresh) {
                    out.push_back(std::move(n));
                    parent.push_back(i);
                    if (out.size() > budget_)
                        throw resource_error("ball enumeration exceeded the vertex budget");
                } else if (desc_.kind == GroupKind::Free && it->second != parent[i] && parent[it->second] != i) {
                    throw domain_error("free-group growth encountered a cycle");
                }
            }
        }
        lo = hi;
        hi = out.size();
        if (lo == hi) break;  // finite group exhausted
    }
    return out;
}

void CayleySpace::freeze(std::int64_t R_max) {
    grow_identity_ball(R_max);
    frozen_ = true;
}

}  // namespace gromolab
