#include "ckq/free_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace ckq {

int mono_compare(const Mono& a, const Mono& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.word.size(); ++i)
        if (a.word[i] != b.word[i]) return a.word[i] < b.word[i] ? -1 : 1;
    const int pa = std::popcount(a.mask), pb = std::popcount(b.mask);
    if (pa != pb) return pa > pb ? -1 : 1;
    if (a.mask != b.mask) return a.mask > b.mask ? -1 : 1;
    return 0;
}

FreeElement FreeElement::constant(int alphabet, int tags, const Pim& c) {
    if (c.n() != tags) throw TagMismatch("constant has " + std::to_string(c.n()) + " tags, expected " + std::to_string(tags));
    FreeElement e(alphabet, tags);
    for (unsigned s = 0; s < c.size(); ++s) e.add_term(s, {}, c[s]);
    return e;
}

FreeElement FreeElement::generator(int alphabet, int tags, int id, cplx c) {
    if (id < 0 || id >= alphabet) throw AlphabetMismatch("generator id out of range");
    FreeElement e(alphabet, tags);
    e.add_term(0, Word{static_cast<std::uint8_t>(id)}, c);
    return e;
}

int FreeElement::degree() const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m.word.size()));
    return d;
}

double FreeElement::max_abs() const {
    double m = 0;
    for (const auto& [k, c] : t_) m = std::max(m, std::abs(c));
    return m;
}

void FreeElement::add_term(unsigned mask, const Word& w, cplx c) {
    if (c == cplx(0)) return;
    auto [it, inserted] = t_.try_emplace(Mono{mask, w}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0)) t_.erase(it);
    }
}

static void check_same(const FreeElement& a, const FreeElement& b) {
    if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("alphabet sizes differ");
    if (a.tags() != b.tags()) throw TagMismatch("tag counts differ");
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
    check_same(*this, o);
    for (const auto& [m, c] : o.t_) add_term(m.mask, m.word, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
    check_same(*this, o);
    for (const auto& [m, c] : o.t_) add_term(m.mask, m.word, -c);
    return *this;
}

FreeElement& FreeElement::operator*=(cplx s) {
    if (s == cplx(0)) {
        t_.clear();
        return *this;
    }
    for (auto& [m, c] : t_) c *= s;
    return *this;
}

FreeElement& FreeElement::prune(double eps) {
    for (auto it = t_.begin(); it != t_.end();) it = std::abs(it->second) <= eps ? t_.erase(it) : std::next(it);
    return *this;
}

std::string FreeElement::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << format_complex(c, 6) << ")";
        for (int k = 0; k < n_; ++k)
            if (m.mask >> k & 1u) os << "*i" << k + 1;
        for (auto g : m.word) os << "*" << (g < names.size() ? names[g] : "g" + std::to_string(g));
    }
    return os.str();
}

FreeElement free_add(const FreeElement& a, const FreeElement& b) { return a + b; }

FreeElement free_mul(const FreeElement& a, const FreeElement& b) {
    check_same(a, b);
    FreeElement r(a.alphabet(), a.tags());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.mask & mb.mask) continue;
            Word w = ma.word;
            w.insert(w.end(), mb.word.begin(), mb.word.end());
            r.add_term(ma.mask | mb.mask, w, ca * cb);
        }
    return r;
}

FreeElement operator*(const Pim& c, const FreeElement& x) {
    if (c.n() != x.tags()) throw TagMismatch("coefficient tag count differs from element");
    FreeElement r(x.alphabet(), x.tags());
    for (unsigned s = 0; s < c.size(); ++s) {
        if (c[s] == cplx(0)) continue;
        for (const auto& [m, v] : x.terms())
            if (!(m.mask & s)) r.add_term(m.mask | s, m.word, c[s] * v);
    }
    return r;
}

std::pair<Word, Word> split_banks(const Word& w, int G) {
    auto it = std::find_if(w.begin(), w.end(), [G](std::uint8_t g) { return g >= G; });
    Word left(w.begin(), it), right(it, w.end());
    for (auto& g : right) g = static_cast<std::uint8_t>(g - G);
    return {left, right};
}

static Word join_banks(const Word& l, const Word& r, int G) {
    Word w = l;
    for (auto g : r) w.push_back(static_cast<std::uint8_t>(g + G));
    return w;
}

FreeElement free_tensor(const FreeElement& a, const FreeElement& b) {
    check_same(a, b);
    const int G = a.alphabet();
    FreeElement r(2 * G, a.tags());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (!(ma.mask & mb.mask)) r.add_term(ma.mask | mb.mask, join_banks(ma.word, mb.word, G), ca * cb);
    return r;
}

FreeElement tensor_mul(const FreeElement& a, const FreeElement& b) {
    check_same(a, b);
    const int G = a.alphabet() / 2;
    FreeElement r(a.alphabet(), a.tags());
    for (const auto& [ma, ca] : a.terms()) {
        auto [al, ar] = split_banks(ma.word, G);
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.mask & mb.mask) continue;
            auto [bl, br] = split_banks(mb.word, G);
            Word l = al, rr = ar;
            l.insert(l.end(), bl.begin(), bl.end());
            rr.insert(rr.end(), br.begin(), br.end());
            r.add_term(ma.mask | mb.mask, join_banks(l, rr, G), ca * cb);
        }
    }
    return r;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::RTT: return "RTT";
        case Provenance::Orthogonality: return "orthogonality";
        default: return "derived";
    }
}

void RelationSet::add(FreeElement r) {
    if (relations.empty() && alphabet == 0) {
        alphabet = r.alphabet();
        tags = r.tags();
    }
    if (r.alphabet() != alphabet) throw AlphabetMismatch("relation alphabet differs from set");
    if (r.tags() != tags) throw TagMismatch("relation tag count differs from set");
    if (r.is_zero()) return;
    relations.push_back(std::move(r));
    refresh_metadata();
}

void RelationSet::refresh_metadata() {
    max_degree = 0;
    homogeneous = true;
    int common = -1;
    for (const auto& r : relations)
        for (const auto& [m, c] : r.terms()) {
            const int d = static_cast<int>(m.word.size());
            max_degree = std::max(max_degree, d);
            if (common < 0) common = d;
            homogeneous = homogeneous && d == common;
        }
}

RelationSet merge(const RelationSet& a, const RelationSet& b) {
    RelationSet r = a;
    if (a.provenance != b.provenance) r.provenance = Provenance::Derived;
    r.iota_mask = a.iota_mask | b.iota_mask;
    for (const auto& x : b.relations) r.add(x);
    r.refresh_metadata();
    return r;
}

RelationSet iota_closure(const RelationSet& rs, unsigned mask) {
    RelationSet out;
    out.alphabet = rs.alphabet;
    out.tags = rs.tags;
    out.provenance = rs.provenance;
    out.iota_mask = mask;
    for (const auto& r : rs.relations)
        for (unsigned S = mask;; S = (S - 1) & mask) {
            FreeElement e = Pim::monomial(rs.tags, S) * r;
            if (!e.is_zero()) out.relations.push_back(std::move(e));
            if (S == 0) break;
        }
    out.refresh_metadata();
    return out;
}

RelationSet iota_closure(const RelationSet& rs) { return iota_closure(rs, rs.iota_mask & ((1u << rs.tags) - 1)); }

// ---- row reduction ----

namespace {

using SparseRow = std::vector<std::pair<int, cplx>>;

class Eliminator {
public:
    Eliminator(int ncols, double rel) : rel_(rel), piv_(ncols), acc_(ncols, 0.0) {}

    void insert(const SparseRow& row) {
        double scale = 0;
        int lo = static_cast<int>(acc_.size());
        for (const auto& [k, x] : row) {
            scale = std::max(scale, std::abs(x));
            lo = std::min(lo, k);
            acc_[k] += x;
        }
        if (scale == 0) return;
        const double thr = rel_ * scale;
        int lead = -1;
        SparseRow keep;
        for (int c = lo; c < static_cast<int>(acc_.size()); ++c) {
            const cplx f = acc_[c];
            if (f == cplx(0)) continue;
            acc_[c] = 0;
            if (!piv_[c].empty()) {
                for (const auto& [k, x] : piv_[c])
                    if (k != c) acc_[k] -= f * x;
            } else if (std::abs(f) > thr) {
                if (lead < 0) lead = c;
                keep.emplace_back(c, f);
            }
        }
        if (lead < 0) return;
        const cplx inv = 1.0 / keep.front().second;
        for (auto& [k, x] : keep) x *= inv;
        keep.front().second = 1.0;
        piv_[lead] = std::move(keep);
    }

    // Gauss-Jordan: clear pivot columns from every pivot row, smallest heads first
    void back_substitute() {
        for (int c = static_cast<int>(piv_.size()) - 1; c >= 0; --c) {
            if (piv_[c].empty()) continue;
            bool dirty = false;
            for (const auto& [k, x] : piv_[c])
                if (k != c && !piv_[k].empty()) dirty = true;
            if (!dirty) continue;
            std::map<int, cplx> acc;
            for (const auto& [k, x] : piv_[c]) acc[k] += x;
            for (const auto& [k, x] : piv_[c]) {
                if (k == c || piv_[k].empty()) continue;
                const cplx f = acc[k];
                for (const auto& [kk, xx] : piv_[k]) acc[kk] -= f * xx;
                acc.erase(k);
            }
            SparseRow r;
            for (const auto& [k, x] : acc)
                if (x != cplx(0)) r.emplace_back(k, x);
            piv_[c] = std::move(r);
        }
    }

    const std::vector<SparseRow>& pivots() const { return piv_; }

private:
    double rel_;
    std::vector<SparseRow> piv_;
    std::vector<cplx> acc_;
};

}  // namespace

long ReductionSystem::normal_word_count(unsigned mask, int degree) const {
    long total = 0, pw = 1;
    for (int d = 0; d <= degree; ++d, pw *= alphabet) total += pw;
    for (const auto& [h, nf] : pivots)
        if (h.mask == mask && static_cast<int>(h.word.size()) <= degree) --total;
    return total;
}

long ReductionSystem::normal_word_count(int degree) const {
    long total = 0;
    for (unsigned m = iota_mask;; m = (m - 1) & iota_mask) {
        total += normal_word_count(m, degree);
        if (m == 0) break;
    }
    return total;
}

ReductionSystem build_reduction(const RelationSet& rs, int closure_degree, double pivot_threshold) {
    if (rs.max_degree > 2) throw DegreeCapExceeded("relations must have degree <= 2");
    if (closure_degree < rs.max_degree || closure_degree > kDegreeCap)
        throw DegreeCapExceeded("closure degree must lie between the relation degree and 3");
    const RelationSet cl = iota_closure(rs);
    const int G = rs.alphabet, n = rs.tags;

    std::vector<FreeElement> rows;
    for (const auto& r : cl.relations) {
        rows.push_back(r);
        const int room = closure_degree - r.degree();
        if (room <= 0) continue;
        std::vector<Word> pre{{}};
        for (int d = 1; d <= room; ++d) {
            std::vector<Word> next;
            for (const auto& w : pre)
                if (static_cast<int>(w.size()) == d - 1)
                    for (int g = 0; g < G; ++g) {
                        Word x = w;
                        x.push_back(static_cast<std::uint8_t>(g));
                        next.push_back(x);
                    }
            pre.insert(pre.end(), next.begin(), next.end());
        }
        for (const auto& a : pre)
            for (const auto& b : pre) {
                if (a.empty() && b.empty()) continue;
                if (static_cast<int>(a.size() + b.size()) > room) continue;
                FreeElement e(G, n);
                for (const auto& [m, c] : r.terms()) {
                    Word w = a;
                    w.insert(w.end(), m.word.begin(), m.word.end());
                    w.insert(w.end(), b.begin(), b.end());
                    e.add_term(m.mask, w, c);
                }
                rows.push_back(std::move(e));
            }
    }

    std::map<Mono, int, MonoGreater> index;
    for (const auto& r : rows)
        for (const auto& [m, c] : r.terms()) index.emplace(m, 0);
    std::vector<Mono> cols;
    cols.reserve(index.size());
    for (auto& [m, i] : index) {
        i = static_cast<int>(cols.size());
        cols.push_back(m);
    }

    Eliminator el(static_cast<int>(cols.size()), pivot_threshold);
    for (const auto& r : rows) {
        SparseRow sr;
        for (const auto& [m, c] : r.terms()) sr.emplace_back(index.at(m), c);
        el.insert(sr);
    }
    el.back_substitute();

    ReductionSystem sys;
    sys.alphabet = G;
    sys.tags = n;
    sys.closure_degree = closure_degree;
    sys.iota_mask = cl.iota_mask;
    sys.pivot_threshold = pivot_threshold;
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        const auto& row = el.pivots()[c];
        if (row.empty()) continue;
        if (cols[c].mask == 0 && cols[c].word.empty()) throw InconsistentIdeal("the relations generate the unit ideal");
        FreeElement nf(G, n);
        for (const auto& [k, x] : row)
            if (k != c) nf.add_term(cols[k].mask, cols[k].word, -x);
        sys.pivots.emplace(cols[c], std::move(nf));
    }
    for (const auto& [h, nf] : sys.pivots) {
        bool minimal = true;
        const int L = static_cast<int>(h.word.size());
        for (int len = 0; len <= L && minimal; ++len)
            for (int p = 0; p + len <= L && minimal; ++p)
                for (unsigned H = h.mask;; H = (H - 1) & h.mask) {
                    Mono sub{H, Word(h.word.begin() + p, h.word.begin() + p + len)};
                    if (!(sub == h) && sys.pivots.count(sub)) {
                        minimal = false;
                        break;
                    }
                    if (H == 0) break;
                }
        if (minimal) sys.rules.emplace(h, nf);
    }
    return sys;
}

namespace {

struct Match {
    int pos = -1, len = 0;
    unsigned H = 0;
    const FreeElement* tail = nullptr;
};

Match find_rule(const Mono& m, const ReductionSystem& sys, Strategy s) {
    const int L = static_cast<int>(m.word.size());
    for (int i = 0; i <= L; ++i) {
        const int p = s == Strategy::Leftmost ? i : L - i;
        for (int len = 0; p + len <= L; ++len) {
            if (len == 0 && L > 0 && p != 0) continue;
            Mono sub{0, Word(m.word.begin() + p, m.word.begin() + p + len)};
            for (unsigned H = 0;; H = (H - m.mask) & m.mask) {
                sub.mask = H;
                auto it = sys.rules.find(sub);
                if (it != sys.rules.end()) return {p, len, H, &it->second};
                if (H == m.mask) break;
            }
        }
    }
    return {};
}

}  // namespace

FreeElement reduce(const FreeElement& x, const ReductionSystem& sys, Strategy s) {
    if (x.degree() > kDegreeCap) throw DegreeCapExceeded("reduce: word degree exceeds 3");
    if (x.alphabet() != sys.alphabet) throw AlphabetMismatch("element and reduction system alphabets differ");
    FreeElement work = x, out(x.alphabet(), x.tags());
    while (!work.is_zero()) {
        const auto it = work.terms().begin();
        const Mono m = it->first;
        const cplx c = it->second;
        work.add_term(m.mask, m.word, -c);
        const Match r = find_rule(m, sys, s);
        if (!r.tail) {
            out.add_term(m.mask, m.word, c);
            continue;
        }
        const unsigned rest = m.mask & ~r.H;
        for (const auto& [tm, tc] : r.tail->terms()) {
            if (tm.mask & rest) continue;
            Word w(m.word.begin(), m.word.begin() + r.pos);
            w.insert(w.end(), tm.word.begin(), tm.word.end());
            w.insert(w.end(), m.word.begin() + r.pos + r.len, m.word.end());
            work.add_term(tm.mask | rest, w, c * tc);
        }
    }
    return out;
}

FreeElement normal_form(const FreeElement& x, const ReductionSystem& sys) {
    FreeElement out(x.alphabet(), x.tags());
    for (const auto& [m, c] : x.terms()) {
        if (static_cast<int>(m.word.size()) > sys.closure_degree)
            throw DegreeCapExceeded("normal_form: word degree exceeds the closure degree");
        // tags outside the closure mask ride along as a scalar factor
        const unsigned outside = m.mask & ~sys.iota_mask;
        auto it = sys.pivots.find(Mono{m.mask & sys.iota_mask, m.word});
        if (it == sys.pivots.end()) {
            out.add_term(m.mask, m.word, c);
            continue;
        }
        for (const auto& [tm, tc] : it->second.terms())
            if ((tm.mask & outside) == 0) out.add_term(tm.mask | outside, tm.word, c * tc);
    }
    return out;
}

FreeElement reduce_tensor(const FreeElement& x, const ReductionSystem& sys) {
    const int G = sys.alphabet;
    if (x.alphabet() != 2 * G) throw AlphabetMismatch("tensor element must use the doubled alphabet");
    FreeElement cur = x;
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (int bank = 0; bank < 2; ++bank) {
            FreeElement next(2 * G, x.tags());
            for (const auto& [m, c] : cur.terms()) {
                auto [l, r] = split_banks(m.word, G);
                const Word& mine = bank == 0 ? l : r;
                if (!find_rule(Mono{m.mask, mine}, sys, Strategy::Leftmost).tail) {
                    next.add_term(m.mask, m.word, c);
                    continue;
                }
                changed = true;
                FreeElement single(G, x.tags());
                single.add_term(m.mask, mine, c);
                const FreeElement red = reduce(single, sys);
                for (const auto& [rm, rc] : red.terms())
                    next.add_term(rm.mask, bank == 0 ? join_banks(rm.word, r, G) : join_banks(l, rm.word, G), rc);
            }
            cur = std::move(next);
        }
        if (!changed) return cur;
    }
    throw std::runtime_error("reduce_tensor: bank reductions did not stabilize");
}

ConfluenceResult confluence_check(const ReductionSystem& sys, int degree, double tol) {
    if (degree > kDegreeCap) throw DegreeCapExceeded("confluence_check: degree exceeds 3");
    ConfluenceResult res;
    const int G = sys.alphabet;
    Word w(degree, 0);
    while (true) {
        FreeElement e(G, sys.tags);
        e.add_term(0, w, 1.0);
        const double d = (reduce(e, sys, Strategy::Leftmost) - reduce(e, sys, Strategy::Rightmost)).max_abs();
        ++res.words;
        res.max_discrepancy = std::max(res.max_discrepancy, d);
        if (d > tol) res.failing.emplace_back(w, d);
        int k = degree - 1;
        while (k >= 0 && w[k] == G - 1) w[k--] = 0;
        if (k < 0) break;
        ++w[k];
    }
    return res;
}

json relations_to_json(const RelationSet& rs, const std::vector<std::string>& names) {
    json rels = json::array();
    for (const auto& r : rs.relations) {
        json terms = json::array();
        for (const auto& [m, c] : r.terms()) {
            json iota = json::array(), word = json::array();
            for (int k = 0; k < rs.tags; ++k)
                if (m.mask >> k & 1u) iota.push_back(k + 1);
            for (auto g : m.word) word.push_back(g < names.size() ? names[g] : "g" + std::to_string(g));
            terms.push_back({{"iota", iota}, {"word", word}, {"re", c.real()}, {"im", c.imag()}});
        }
        rels.push_back({{"terms", terms}});
    }
    return {{"provenance", to_string(rs.provenance)}, {"relations", rels}};
}

RelationSet relations_from_json(const json& j, const std::vector<std::string>& names, int tags) {
    RelationSet rs;
    rs.alphabet = static_cast<int>(names.size());
    rs.tags = tags;
    const std::string prov = j.value("provenance", "derived");
    rs.provenance = prov == "RTT" ? Provenance::RTT : prov == "orthogonality" ? Provenance::Orthogonality : Provenance::Derived;
    for (const auto& r : j.at("relations")) {
        FreeElement e(rs.alphabet, tags);
        for (const auto& t : r.at("terms")) {
            unsigned mask = 0;
            for (int k : t.at("iota")) {
                if (k < 1 || k > tags) throw std::invalid_argument("iota index out of range: " + std::to_string(k));
                mask |= 1u << (k - 1);
            }
            Word w;
            for (const auto& g : t.at("word")) {
                auto it = std::find(names.begin(), names.end(), g.get<std::string>());
                if (it == names.end()) throw AlphabetMismatch("unknown generator '" + g.get<std::string>() + "'");
                w.push_back(static_cast<std::uint8_t>(it - names.begin()));
            }
            e.add_term(mask, w, cplx(t.value("re", 0.0), t.value("im", 0.0)));
        }
        rs.add(std::move(e));
    }
    rs.refresh_metadata();
    return rs;
}

}  // namespace ckq
