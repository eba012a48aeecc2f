#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckq/pimenov.hpp"
#include "ckq/report.hpp"

namespace ckq {

using Word = std::vector<std::uint8_t>;

constexpr int kDegreeCap = 3;

struct AlphabetMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InconsistentIdeal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegreeCapExceeded : std::length_error {
    using std::length_error::length_error;
};

// Basis element ι^mask · word of the free algebra over D_n.
struct Mono {
    unsigned mask = 0;
    Word word;
    bool operator==(const Mono&) const = default;
};

// Monomial order: degree, then lexicographic on generator ids; for equal words fewer ι tags rank
// larger, then the smaller bitmask. Comparator sorts descending so begin() is the leading term.
int mono_compare(const Mono& a, const Mono& b);
struct MonoGreater {
    bool operator()(const Mono& a, const Mono& b) const { return mono_compare(a, b) > 0; }
};

class FreeElement {
public:
    using Terms = std::map<Mono, cplx, MonoGreater>;

    FreeElement() = default;
    FreeElement(int alphabet, int tags) : G_(alphabet), n_(tags) {}
    static FreeElement constant(int alphabet, int tags, const Pim& c);
    static FreeElement generator(int alphabet, int tags, int id, cplx c = 1.0);

    int alphabet() const { return G_; }
    int tags() const { return n_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const;
    double max_abs() const;
    const Mono& leading() const { return t_.begin()->first; }

    void add_term(unsigned mask, const Word& w, cplx c);
    FreeElement& operator+=(const FreeElement& o);
    FreeElement& operator-=(const FreeElement& o);
    FreeElement& operator*=(cplx s);
    // drop terms with |c| <= eps
    FreeElement& prune(double eps);

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    int G_ = 0, n_ = 0;
    Terms t_;
};

FreeElement free_add(const FreeElement& a, const FreeElement& b);
FreeElement free_mul(const FreeElement& a, const FreeElement& b);
FreeElement operator*(const Pim& c, const FreeElement& x);
inline FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
inline FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
inline FreeElement operator*(const FreeElement& a, const FreeElement& b) { return free_mul(a, b); }
inline FreeElement operator*(cplx s, FreeElement a) { return a *= s; }

// Tensor product over the doubled alphabet: ids < G are the left bank, ids >= G the right bank.
// Words are stored as (left word)(right word).
FreeElement free_tensor(const FreeElement& a, const FreeElement& b);
FreeElement tensor_mul(const FreeElement& a, const FreeElement& b);
std::pair<Word, Word> split_banks(const Word& w, int G);

enum class Provenance { RTT, Orthogonality, Derived };
std::string to_string(Provenance p);

struct RelationSet {
    int alphabet = 0, tags = 0;
    std::vector<FreeElement> relations;
    Provenance provenance = Provenance::Derived;
    bool homogeneous = true;
    int max_degree = 0;
    // tags whose ι-multiples enter the closure (the nilpotent slots of a signature)
    unsigned iota_mask = ~0u;

    void add(FreeElement r);
    void refresh_metadata();
};
RelationSet merge(const RelationSet& a, const RelationSet& b);

// ι^S·r for every relation r and every subset S of `mask` that does not annihilate r.
RelationSet iota_closure(const RelationSet& rs, unsigned mask);
// closure over rs.iota_mask
RelationSet iota_closure(const RelationSet& rs);

enum class Strategy { Leftmost, Rightmost };

class ReductionSystem {
public:
    int alphabet = 0, tags = 0;
    int closure_degree = 2;
    unsigned iota_mask = 0;
    double pivot_threshold = 1e-8;
    // minimal heads: no other head divides them
    std::map<Mono, FreeElement, MonoGreater> rules;
    // every pivot of the closed relation space, head -> normal form (= -tail)
    std::map<Mono, FreeElement, MonoGreater> pivots;

    int rank() const { return static_cast<int>(pivots.size()); }
    // irreducible monomials ι^mask·w with |w| <= degree
    long normal_word_count(unsigned mask, int degree) const;
    // summed over every subset of iota_mask
    long normal_word_count(int degree) const;
};

// Row-reduces the ι-closure (and, for closure degree 3, its products with one generator on either side)
// in the (subset, word) basis.
ReductionSystem build_reduction(const RelationSet& rs, int closure_degree = 3, double pivot_threshold = 1e-8);

FreeElement reduce(const FreeElement& x, const ReductionSystem& sys, Strategy s = Strategy::Leftmost);
// one-step lookup in the pivot table; exact for |w| <= closure degree
FreeElement normal_form(const FreeElement& x, const ReductionSystem& sys);
// alternately reduces the left and right banks until both are irreducible
FreeElement reduce_tensor(const FreeElement& x, const ReductionSystem& sys);

struct ConfluenceResult {
    double max_discrepancy = 0;
    long words = 0;
    std::vector<std::pair<Word, double>> failing;
};
ConfluenceResult confluence_check(const ReductionSystem& sys, int degree = 3, double tol = 1e-9);

// relation JSON: {"relations":[{"terms":[{"iota":[1],"word":["t12","t21"],"re":..,"im":..}]}]}
json relations_to_json(const RelationSet& rs, const std::vector<std::string>& names);
RelationSet relations_from_json(const json& j, const std::vector<std::string>& names, int tags);

}  // namespace ckq
