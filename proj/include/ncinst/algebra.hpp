#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncinst/scalar.hpp"

namespace ncinst {

// Doubled torus weight: a generator of weight (h1, h2) in (1/2)Z x (1/2)Z is
// stored as (2*h1, 2*h2). Every commutation scalar and twist exponent is then
// an integer power of q.
struct Weight {
    int d1 = 0;
    int d2 = 0;
    friend Weight operator+(Weight a, Weight b) { return {a.d1 + b.d1, a.d2 + b.d2}; }
    friend Weight operator-(Weight a) { return {-a.d1, -a.d2}; }
    friend bool operator==(Weight a, Weight b) { return a.d1 == b.d1 && a.d2 == b.d2; }
    friend bool operator!=(Weight a, Weight b) { return !(a == b); }
};

struct GeneratorDecl {
    std::string name;
    Weight w;
    int degree = 0;        // form degree, 0 or 1
    int conj = -1;         // index of the conjugate generator (may be self)
    int differential = -1; // degree-0 only: index of its 1-form, or -1 if composite
    int base = -1;         // degree-1 only: the degree-0 generator it differentiates
};

constexpr int kMaxGen0 = 10;

// Canonical monomial: exponent vector over the degree-0 generators followed by
// an ordered subset of 1-form generators (a bitmask; no 1-form repeats since
// dg dg = 0).
struct Monomial {
    std::array<std::int16_t, kMaxGen0> e{};
    std::uint16_t forms = 0;

    bool is_unit() const {
        if (forms)
            return false;
        for (auto x : e)
            if (x)
                return false;
        return true;
    }
    int form_degree() const { return __builtin_popcount(forms); }

    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.e != b.e)
            return a.e < b.e;
        return a.forms < b.forms;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.e == b.e && a.forms == b.forms;
    }
};

using Word = std::vector<std::uint8_t>;
using TermList = std::vector<std::pair<Scalar, Word>>;

// A quotient rule centered on an exactly-commuting (weight-zero) product of
// degree-0 generators: any monomial containing the pattern is reduced.
struct RewriteRule {
    std::array<std::int16_t, kMaxGen0> pattern{};
    TermList replacement; // canonical degree-0 words
    std::string measure;  // the well-founded quantity the rule strictly decreases
};

class Element;

// A declared twisted algebra with differential calculus: generators carrying
// Z^2 half-integer weights, the commutation scalars derived from them, and the
// sphere/ideal rewrite rules. Immutable once built.
class Presentation {
  public:
    const std::string& name() const { return name_; }
    int num_gens() const { return int(gens_.size()); }
    int num_gen0() const { return n0_; }
    const GeneratorDecl& gen(int i) const { return gens_[size_t(i)]; }
    const std::vector<RewriteRule>& rules() const { return rules_; }

    int index_of(const std::string& nm) const {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == nm)
                return int(i);
        return -1;
    }

    // q-exponent of the commutation scalar c(a, b) in a.b = c(a,b) b.a,
    // c(a,b) = q^{4(h1 h2' - h2 h1')}; with doubled weights d = 2h this is
    // d1(a) d2(b) - d2(a) d1(b).
    int commute_qexp(int a, int b) const {
        const Weight& x = gens_[size_t(a)].w;
        const Weight& y = gens_[size_t(b)].w;
        return x.d1 * y.d2 - x.d2 * y.d1;
    }

    Weight word_weight(const Word& w) const {
        Weight s{};
        for (auto g : w)
            s = s + gens_[g].w;
        return s;
    }

    const TermList& differential_terms(int gen0) const {
        return dterms_[size_t(gen0)];
    }

    class Builder;

  private:
    friend class Element;
    friend class Builder;

    std::string name_;
    std::vector<GeneratorDecl> gens_;
    int n0_ = 0;
    std::vector<RewriteRule> rules_;
    std::map<int, TermList> dcomposite_;
    std::vector<TermList> dterms_;
};

class Presentation::Builder {
  public:
    explicit Builder(std::string nm) { p.name_ = std::move(nm); }

    int gen0(const std::string& nm, int d1, int d2) {
        GeneratorDecl g;
        g.name = nm;
        g.w = {d1, d2};
        g.degree = 0;
        p.gens_.push_back(g);
        return int(p.gens_.size()) - 1;
    }
    void conj_pair(int a, int b) {
        p.gens_[size_t(a)].conj = b;
        p.gens_[size_t(b)].conj = a;
    }
    void self_conj(int a) { p.gens_[size_t(a)].conj = a; }

    const GeneratorDecl& gen(int i) const { return p.gens_[size_t(i)]; }

    // Creates 1-form partners, in declaration order, for the listed
    // degree-0 generators.
    void make_forms(const std::vector<int>& which) {
        p.n0_ = int(p.gens_.size());
        for (int b : which) {
            GeneratorDecl g;
            g.name = "d(" + p.gens_[size_t(b)].name + ")";
            g.w = p.gens_[size_t(b)].w;
            g.degree = 1;
            g.base = b;
            p.gens_.push_back(g);
            p.gens_[size_t(b)].differential = int(p.gens_.size()) - 1;
        }
        // conjugate of d(g) is d(g*)
        for (int i = p.n0_; i < int(p.gens_.size()); ++i) {
            int b = p.gens_[size_t(i)].base;
            int bc = p.gens_[size_t(b)].conj;
            p.gens_[size_t(i)].conj = p.gens_[size_t(bc)].differential;
        }
    }

    void rule(const std::vector<std::pair<int, int>>& pat, TermList rep, std::string measure) {
        RewriteRule r;
        for (auto [g, k] : pat)
            r.pattern[size_t(g)] = std::int16_t(k);
        r.replacement = std::move(rep);
        r.measure = std::move(measure);
        p.rules_.push_back(std::move(r));
    }

    // Composite differential for a degree-0 generator without a 1-form
    // partner (chart rho and sigma).
    void composite_differential(int g, TermList terms) { p.dcomposite_[g] = std::move(terms); }

    // Declared commutation table as q-exponents, indexed (i, j) over
    // degree-0 generators; validated against the weight-derived scalars.
    Presentation finish(const std::function<int(int, int)>& declared_qexp) {
        if (p.n0_ == 0)
            p.n0_ = int(p.gens_.size());
        for (int i = 0; i < int(p.gens_.size()); ++i) {
            const auto& g = p.gens_[size_t(i)];
            if (g.conj < 0)
                throw std::logic_error("presentation: missing conjugate for " + g.name);
            if (p.gens_[size_t(g.conj)].conj != i)
                throw std::logic_error("presentation: conjugation not involutive");
            if (!(p.gens_[size_t(g.conj)].w == -g.w))
                throw std::logic_error("presentation: conj weight mismatch for " + g.name);
        }
        for (int i = 0; i < p.n0_; ++i)
            for (int j = 0; j < p.n0_; ++j)
                if (p.commute_qexp(i, j) != declared_qexp(i, j))
                    throw std::logic_error("presentation " + p.name_ +
                                           ": derived commutation scalar differs from the "
                                           "declared table at (" +
                                           p.gens_[size_t(i)].name + ", " +
                                           p.gens_[size_t(j)].name + ")");
        for (const auto& r : p.rules_) {
            Weight lhs{};
            for (int g = 0; g < p.n0_; ++g) {
                lhs.d1 += r.pattern[size_t(g)] * p.gens_[size_t(g)].w.d1;
                lhs.d2 += r.pattern[size_t(g)] * p.gens_[size_t(g)].w.d2;
            }
            if (lhs != Weight{})
                throw std::logic_error("presentation: rewrite pattern is not weight-zero");
            for (const auto& [s, w] : r.replacement)
                if (!(p.word_weight(w) == Weight{}))
                    throw std::logic_error("presentation: rewrite replacement not weight-zero");
        }
        // materialize per-generator differential term lists
        p.dterms_.resize(size_t(p.n0_));
        for (int g = 0; g < p.n0_; ++g) {
            if (p.gens_[size_t(g)].differential >= 0) {
                TermList tl;
                tl.emplace_back(Scalar(1), Word{std::uint8_t(p.gens_[size_t(g)].differential)});
                p.dterms_[size_t(g)] = std::move(tl);
            } else if (auto it = p.dcomposite_.find(g); it != p.dcomposite_.end()) {
                p.dterms_[size_t(g)] = it->second;
            }
        }
        return std::move(p);
    }

  private:
    Presentation p;
};

// Normal-form twisted polynomial / differential form over a Presentation:
// a finite Scalar-linear combination of canonical monomials, always fully
// rewritten. Value type; all operations are pure.
class Element {
  public:
    Element() = default;
    explicit Element(const Presentation* p) : p_(p) {}

    static Element zero(const Presentation& p) { return Element(&p); }
    static Element unit(const Presentation& p, Scalar s = Scalar(1)) {
        return from_terms(p, {{std::move(s), {}}});
    }
    static Element generator(const Presentation& p, int g, Scalar s = Scalar(1)) {
        return from_terms(p, {{std::move(s), Word{std::uint8_t(g)}}});
    }
    static Element generator(const Presentation& p, const std::string& nm,
                             Scalar s = Scalar(1)) {
        int g = p.index_of(nm);
        if (g < 0)
            throw std::invalid_argument("unknown generator: " + nm);
        return generator(p, g, std::move(s));
    }
    static Element from_terms(const Presentation& p, const TermList& terms) {
        Element e(&p);
        e.absorb(terms);
        return e;
    }

    const Presentation* presentation() const { return p_; }
    const std::map<Monomial, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    friend bool operator==(const Element& a, const Element& b) {
        return a.p_ == b.p_ && a.t_ == b.t_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    friend Element operator+(const Element& a, const Element& b) {
        a.check_same(b);
        Element r = a;
        for (const auto& [m, s] : b.t_)
            r.add_term(m, s);
        return r;
    }
    friend Element operator-(const Element& a, const Element& b) {
        a.check_same(b);
        Element r = a;
        for (const auto& [m, s] : b.t_)
            r.add_term(m, -s);
        return r;
    }
    Element operator-() const {
        Element r(p_);
        for (const auto& [m, s] : t_)
            r.t_.emplace(m, -s);
        return r;
    }
    friend Element operator*(const Element& a, const Element& b) {
        a.check_same(b);
        Element r(a.p_);
        for (const auto& [ma, sa] : a.t_) {
            Word wa = a.word_of(ma);
            for (const auto& [mb, sb] : b.t_) {
                Word w = wa;
                const Word wb = b.word_of(mb);
                w.insert(w.end(), wb.begin(), wb.end());
                r.absorb({{sa * sb, std::move(w)}});
            }
        }
        return r;
    }
    friend Element operator*(const Scalar& s, const Element& a) {
        Element r(a.p_);
        for (const auto& [m, c] : a.t_)
            r.add_term(m, s * c);
        return r;
    }
    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    // Graded differential: d on a canonical word hits every degree-0 factor
    // (all of which sit left of the 1-form part, so no graded signs arise),
    // replacing it by its differential terms.
    Element differential() const {
        Element r(p_);
        for (const auto& [m, s] : t_) {
            Word w = word_of(m);
            for (size_t k = 0; k < w.size(); ++k) {
                int g = w[k];
                if (p_->gen(g).degree != 0)
                    break; // 1-form tail: d of a generator 1-form vanishes
                for (const auto& [ds, dw] : p_->differential_terms(g)) {
                    Word nw(w.begin(), w.begin() + long(k));
                    nw.insert(nw.end(), dw.begin(), dw.end());
                    nw.insert(nw.end(), w.begin() + long(k) + 1, w.end());
                    r.absorb({{s * ds, std::move(nw)}});
                }
            }
        }
        return r;
    }

    // Graded involution: (ab)* = (-1)^{|a||b|} b* a*, scalars conjugated,
    // (dg)* = d(g*). On a word of form degree k the accumulated sign is
    // (-1)^{k(k-1)/2}.
    Element involution() const {
        Element r(p_);
        for (const auto& [m, s] : t_) {
            Word w = word_of(m);
            Word rw;
            rw.reserve(w.size());
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                rw.push_back(std::uint8_t(p_->gen(*it).conj));
            int k = m.form_degree();
            Scalar cs = s.conj();
            if ((k * (k - 1) / 2) % 2)
                cs = -cs;
            r.absorb({{std::move(cs), std::move(rw)}});
        }
        return r;
    }

    // Common weight of all monomials, or nullopt when inhomogeneous.
    std::optional<Weight> weight() const {
        std::optional<Weight> w;
        for (const auto& [m, s] : t_) {
            Weight mw = monomial_weight(m);
            if (!w)
                w = mw;
            else if (!(*w == mw))
                return std::nullopt;
        }
        if (!w)
            w = Weight{};
        return w;
    }

    // Common form degree, or nullopt when mixed.
    std::optional<int> form_degree() const {
        std::optional<int> d;
        for (const auto& [m, s] : t_) {
            int md = m.form_degree();
            if (!d)
                d = md;
            else if (*d != md)
                return std::nullopt;
        }
        if (!d)
            d = 0;
        return d;
    }

    // Scales each monomial of doubled weight (d1, d2) by q^{a*d1 + b*d2}.
    Element scale_by_weight(int a, int b) const {
        Element r(p_);
        for (const auto& [m, s] : t_) {
            Weight w = monomial_weight(m);
            r.add_term(m, Scalar::q_power(a * w.d1 + b * w.d2) * s);
        }
        return r;
    }

    // The twisted-symmetry weight operator: monomials of weight h scaled by
    // q^{+-2(r1 h2 - r2 h1)}.
    Element twist(int r1, int r2, int sign) const {
        return scale_by_weight(-sign * r2, sign * r1);
    }

    Element specialize_q1() const {
        Element r(p_);
        for (const auto& [m, s] : t_)
            r.add_term(m, Scalar(s.specialize_q1()));
        return r;
    }

    // Exact quotient c with x = c * y, when one exists.
    static std::optional<Scalar> exact_ratio(const Element& x, const Element& y) {
        if (y.is_zero())
            return x.is_zero() ? std::optional<Scalar>(Scalar()) : std::nullopt;
        const auto& [m0, s0] = *y.t_.begin();
        auto it = x.t_.find(m0);
        if (it == x.t_.end())
            return std::nullopt;
        auto c = Scalar::divide_exact(it->second, s0);
        if (!c)
            return std::nullopt;
        if (x == *c * y)
            return c;
        return std::nullopt;
    }

    Weight monomial_weight(const Monomial& m) const {
        Weight s{};
        for (int g = 0; g < p_->num_gen0(); ++g) {
            s.d1 += m.e[size_t(g)] * p_->gen(g).w.d1;
            s.d2 += m.e[size_t(g)] * p_->gen(g).w.d2;
        }
        for (int k = 0; k < p_->num_gens() - p_->num_gen0(); ++k)
            if (m.forms & (1u << k)) {
                const auto& g = p_->gen(p_->num_gen0() + k);
                s.d1 += g.w.d1;
                s.d2 += g.w.d2;
            }
        return s;
    }

    Word word_of(const Monomial& m) const {
        Word w;
        for (int g = 0; g < p_->num_gen0(); ++g)
            for (int c = 0; c < m.e[size_t(g)]; ++c)
                w.push_back(std::uint8_t(g));
        for (int k = 0; k < p_->num_gens() - p_->num_gen0(); ++k)
            if (m.forms & (1u << k))
                w.push_back(std::uint8_t(p_->num_gen0() + k));
        return w;
    }

    std::string str() const;

  private:
    void check_same(const Element& o) const {
        if (p_ != o.p_)
            throw std::invalid_argument("elements over different presentations");
    }

    void add_term(const Monomial& m, const Scalar& s) {
        if (s.is_zero())
            return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, s);
            return;
        }
        it->second += s;
        if (it->second.is_zero())
            t_.erase(it);
    }

    // Sort a word into canonical order, accumulating commutation scalars and
    // graded signs; returns false when the term vanishes (repeated 1-form).
    bool sort_word(Scalar& s, Word& w) const {
        for (size_t i = 1; i < w.size(); ++i) {
            size_t j = i;
            while (j > 0 && w[j - 1] > w[j]) {
                int a = w[j - 1], b = w[j];
                s *= Scalar::q_power(p_->commute_qexp(a, b));
                if (p_->gen(a).degree == 1 && p_->gen(b).degree == 1)
                    s = -s;
                std::swap(w[j - 1], w[j]);
                --j;
            }
            if (j > 0 && w[j - 1] == w[j] && p_->gen(w[j]).degree == 1)
                return false;
        }
        return true;
    }

    // Worklist normalization: sort, then apply the first matching quotient
    // rule and requeue. Each rule strictly decreases its documented measure.
    void absorb(TermList pending) {
        while (!pending.empty()) {
            auto [s, w] = std::move(pending.back());
            pending.pop_back();
            if (s.is_zero())
                continue;
            if (!sort_word(s, w))
                continue;
            Monomial m{};
            bool dead = false;
            for (auto g : w) {
                if (p_->gen(g).degree == 0) {
                    m.e[size_t(g)]++;
                } else {
                    std::uint16_t bit = std::uint16_t(1u << (g - p_->num_gen0()));
                    if (m.forms & bit) {
                        dead = true;
                        break;
                    }
                    m.forms |= bit;
                }
            }
            if (dead)
                continue;
            const RewriteRule* hit = nullptr;
            for (const auto& r : p_->rules()) {
                bool ok = true;
                for (int g = 0; g < p_->num_gen0(); ++g)
                    if (m.e[size_t(g)] < r.pattern[size_t(g)]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    hit = &r;
                    break;
                }
            }
            if (!hit) {
                add_term(m, s);
                continue;
            }
            Monomial rest = m;
            for (int g = 0; g < p_->num_gen0(); ++g)
                rest.e[size_t(g)] = std::int16_t(rest.e[size_t(g)] - hit->pattern[size_t(g)]);
            Word rw = word_of(rest);
            for (const auto& [rs, rep] : hit->replacement) {
                Word nw = rep;
                nw.insert(nw.end(), rw.begin(), rw.end());
                pending.emplace_back(s * rs, std::move(nw));
            }
        }
    }

    const Presentation* p_ = nullptr;
    std::map<Monomial, Scalar> t_;
};

inline std::string Element::str() const {
    if (t_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, s] : t_) {
        std::string cs = s.str();
        bool composite = cs.find(" + ") != std::string::npos;
        std::string mono;
        for (int g = 0; g < p_->num_gen0(); ++g) {
            if (!m.e[size_t(g)])
                continue;
            if (!mono.empty())
                mono += " * ";
            mono += p_->gen(g).name;
            if (m.e[size_t(g)] > 1)
                mono += "^" + std::to_string(m.e[size_t(g)]);
        }
        for (int k = 0; k < p_->num_gens() - p_->num_gen0(); ++k)
            if (m.forms & (1u << k)) {
                if (!mono.empty())
                    mono += " * ";
                mono += p_->gen(p_->num_gen0() + k).name;
            }
        std::string term;
        if (mono.empty())
            term = composite ? "(" + cs + ")" : cs;
        else if (s.is_one())
            term = mono;
        else
            term = (composite ? "(" + cs + ")" : cs) + " * " + mono;
        out += first ? term : " + " + term;
        first = false;
    }
    return out;
}

} // namespace ncinst
