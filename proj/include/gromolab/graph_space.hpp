#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "gromolab/word.hpp"

namespace gromolab {

enum class GroupKind { Free, Abelian, Table };

struct GroupDescriptor {
    GroupKind kind = GroupKind::Free;
    int generators = 2;
    std::string table_path;

    // "free:k" | "abelian:k" | "table:FILE"
    static GroupDescriptor parse(const std::string& text);
    std::string str() const;
};

/// Cayley graph of a free group, a free abelian group, or a finite group
/// given by its multiplication table, with unit edges over the symmetrized
/// generator set. Vertices are canonical words; distances are exact.
class CayleySpace {
public:
    using point_type = Word;
    using dist_type = std::int64_t;
    static constexpr bool has_geodesic = true;  // vertex paths, integer arclengths only

    explicit CayleySpace(const GroupDescriptor& desc, std::size_t vertex_budget = 10'000'000);

    GroupKind kind() const { return desc_.kind; }
    int generator_count() const { return desc_.generators; }
    std::size_t group_order() const { return order_; }  // 0 when infinite
    const GroupDescriptor& descriptor() const { return desc_; }

    Word identity() const { return Word(); }
    Word canonical(const Word& w) const;
    Word mul(const Word& g, const Word& h) const;  // canonical(g h)
    Word inv(const Word& g) const;
    Word power(const Word& g, std::int64_t n) const;
    bool is_identity(const Word& w) const;

    /// Exact word-metric distance d(u, v) = |u^-1 v|.
    std::int64_t distance(const Word& u, const Word& v) const;

    /// Bidirectional breadth-first search over the graph itself; used to
    /// cross-check the algebraic distance.
    std::int64_t bfs_distance(const Word& u, const Word& v) const;

    /// Vertex path of length distance(u, v); deterministic tie-breaks by
    /// generator index.
    std::vector<Word> geodesic(const Word& u, const Word& v) const;

    /// Vertex at integer arclength t on the geodesic from u to v; fractional
    /// arclengths have no vertex and raise unsupported_error.
    Word geodesic_point(const Word& u, const Word& v, double t) const;

    /// Exact number of vertices within distance R of center. Computed by the
    /// backend's exact count (tree level recursion, L1 lattice count, or
    /// table distances); center-independent by vertex transitivity.
    std::int64_t ball_count(const Word& center, std::int64_t R) const;

    /// Ball contents in breadth-first discovery order (served from the
    /// lazily grown identity ball, translated to the center).
    std::vector<Word> ball(const Word& center, std::int64_t R) const;

    /// Direct BFS from the given center, no cache; the enumeration oracle.
    std::vector<Word> bfs_ball(const Word& center, std::int64_t R) const;

    /// Materializes the identity ball to R_max and refuses further growth;
    /// afterwards all queries are read-only.
    void freeze(std::int64_t R_max);

private:
    GroupDescriptor desc_;
    std::size_t budget_;
    std::size_t order_ = 0;

    // table backend
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_elem_;
    std::vector<int> gen_elem_;       // element index per generator
    std::vector<int> dist_id_;        // word-metric distance from identity
    std::vector<Word> rep_;           // shortest representative word per element
    int identity_elem_ = 0;

    // lazily grown identity ball (BFS discovery order) and per-radius sizes
    mutable std::vector<Word> id_ball_;
    mutable std::vector<std::size_t> level_end_;  // id_ball_[0 .. level_end_[r]) = ball of radius r
    mutable bool frozen_ = false;

    void load_table(std::istream& in);
    int elem_of(const Word& w) const;
    std::vector<std::int64_t> abelian_exponents(const Word& w) const;
    void grow_identity_ball(std::int64_t R) const;
    std::vector<std::int32_t> expansion_letters() const;
};

}  // namespace gromolab
