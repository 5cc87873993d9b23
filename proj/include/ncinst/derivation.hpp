#pragma once

#include "ncinst/matrix.hpp"

namespace ncinst {

// Twisted derivation attached to a root r in Z^2: values on the degree-0
// generators, extended to products by
//
//   delta(a b) = delta(a) . q^{-4 r1 h2(b)} b  +  q^{-4 r2 h1(a)} a . delta(b)
//
// (the Cartan-twisted Leibniz rule; plain Leibniz when r = 0), and to forms by
// delta(dg) = d(delta g). Weight bookkeeping: delta maps weight-h elements to
// weight-(h + r) elements, which is asserted for the generator table.
class TwistedDerivation {
  public:
    TwistedDerivation() = default;
    TwistedDerivation(std::string name, int r1, int r2, const Presentation& p,
                      std::vector<Element> table)
        : name_(std::move(name)), r1_(r1), r2_(r2), p_(&p), table_(std::move(table)) {
        if (int(table_.size()) != p.num_gen0())
            throw std::invalid_argument("derivation: wrong table size");
        for (int g = 0; g < p.num_gen0(); ++g) {
            const Element& v = table_[size_t(g)];
            if (v.is_zero())
                continue;
            auto w = v.weight();
            Weight want{p.gen(g).w.d1 + 2 * r1, p.gen(g).w.d2 + 2 * r2};
            if (!w || !(*w == want))
                throw std::logic_error("derivation " + name_ + ": value on " + p.gen(g).name +
                                       " is not homogeneous of weight(g) + root");
        }
        dtable_.reserve(table_.size());
        for (const auto& e : table_)
            dtable_.push_back(e.differential());
    }

    const std::string& name() const { return name_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    const Presentation& presentation() const { return *p_; }
    const Element& value(int gen0) const { return table_[size_t(gen0)]; }

    Element apply(const Element& e) const {
        if (e.presentation() != p_)
            throw std::invalid_argument("derivation " + name_ + ": presentation mismatch");
        Element out = Element::zero(*p_);
        TermList batch;
        for (const auto& [m, s] : e.terms()) {
            Word w = e.word_of(m);
            // prefix sums of doubled weights for the left/right twist factors
            std::vector<int> pre_d1(w.size() + 1, 0), suf_d2(w.size() + 1, 0);
            for (size_t i = 0; i < w.size(); ++i)
                pre_d1[i + 1] = pre_d1[i] + p_->gen(w[i]).w.d1;
            for (size_t i = w.size(); i-- > 0;)
                suf_d2[i] = suf_d2[i + 1] + p_->gen(w[i]).w.d2;
            for (size_t k = 0; k < w.size(); ++k) {
                const auto& decl = p_->gen(w[k]);
                const Element& val =
                    decl.degree == 0 ? table_[size_t(w[k])] : dtable_[size_t(decl.base)];
                if (val.is_zero())
                    continue;
                Scalar f = s * Scalar::q_power(-2 * r2_ * pre_d1[k] - 2 * r1_ * suf_d2[k + 1]);
                for (const auto& [vm, vs] : val.terms()) {
                    Word nw(w.begin(), w.begin() + long(k));
                    const Word vw = val.word_of(vm);
                    nw.insert(nw.end(), vw.begin(), vw.end());
                    nw.insert(nw.end(), w.begin() + long(k) + 1, w.end());
                    batch.emplace_back(f * vs, std::move(nw));
                }
            }
        }
        out += Element::from_terms(*p_, batch);
        return out;
    }

    MatrixForm apply(const MatrixForm& m) const {
        MatrixForm r(*p_, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                r.at(i, j) = apply(m.at(i, j));
        return r;
    }

    // The conjugate derivation (root -r), defined on generators by
    // delta*(g) = (delta(g*))^*.
    TwistedDerivation adjoint(const std::string& name) const {
        std::vector<Element> t(size_t(p_->num_gen0()), Element::zero(*p_));
        for (int g = 0; g < p_->num_gen0(); ++g)
            t[size_t(g)] = table_[size_t(p_->gen(g).conj)].involution();
        return TwistedDerivation(name, -r1_, -r2_, *p_, std::move(t));
    }

    // The left/right twist operators this derivation pairs generators with.
    Element twist_left(const Element& e) const { return e.scale_by_weight(-2 * r2_, 0); }
    Element twist_right(const Element& e) const { return e.scale_by_weight(0, -2 * r1_); }

  private:
    std::string name_;
    int r1_ = 0, r2_ = 0;
    const Presentation* p_ = nullptr;
    std::vector<Element> table_;
    std::vector<Element> dtable_;
};

inline Element bracket_apply(const TwistedDerivation& a, const TwistedDerivation& b,
                             const Element& x) {
    return a.apply(b.apply(x)) - b.apply(a.apply(x));
}

} // namespace ncinst
