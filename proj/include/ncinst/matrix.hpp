#pragma once

#include <vector>

#include "ncinst/algebra.hpp"

namespace ncinst {

// Rectangular matrix with Element entries over one Presentation. Used for
// Psi, the projection p, gauge potentials/curvatures and the scalar gamma
// matrices alike.
class MatrixForm {
  public:
    MatrixForm() = default;
    MatrixForm(const Presentation& p, int rows, int cols)
        : p_(&p), rows_(rows), cols_(cols),
          a_(size_t(rows) * size_t(cols), Element::zero(p)) {}

    static MatrixForm identity(const Presentation& p, int n) {
        MatrixForm m(p, n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = Element::unit(p);
        return m;
    }
    static MatrixForm diag_scalars(const Presentation& p, const std::vector<Scalar>& d) {
        MatrixForm m(p, int(d.size()), int(d.size()));
        for (size_t i = 0; i < d.size(); ++i)
            m.at(int(i), int(i)) = Element::unit(p, d[i]);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Presentation* presentation() const { return p_; }

    Element& at(int r, int c) { return a_[size_t(r) * size_t(cols_) + size_t(c)]; }
    const Element& at(int r, int c) const {
        return a_[size_t(r) * size_t(cols_) + size_t(c)];
    }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!e.is_zero())
                return false;
        return true;
    }

    friend MatrixForm operator+(const MatrixForm& x, const MatrixForm& y) {
        x.check_shape(y);
        MatrixForm r = x;
        for (size_t i = 0; i < r.a_.size(); ++i)
            r.a_[i] += y.a_[i];
        return r;
    }
    friend MatrixForm operator-(const MatrixForm& x, const MatrixForm& y) {
        x.check_shape(y);
        MatrixForm r = x;
        for (size_t i = 0; i < r.a_.size(); ++i)
            r.a_[i] -= y.a_[i];
        return r;
    }
    MatrixForm operator-() const {
        MatrixForm r = *this;
        for (auto& e : r.a_)
            e = -e;
        return r;
    }
    friend MatrixForm operator*(const MatrixForm& x, const MatrixForm& y) {
        if (x.p_ != y.p_ || x.cols_ != y.rows_)
            throw std::invalid_argument("matmul: shape or presentation mismatch");
        MatrixForm r(*x.p_, x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const Element& xik = x.at(i, k);
                if (xik.is_zero())
                    continue;
                for (int j = 0; j < y.cols_; ++j) {
                    const Element& ykj = y.at(k, j);
                    if (!ykj.is_zero())
                        r.at(i, j) += xik * ykj;
                }
            }
        return r;
    }
    friend bool operator==(const MatrixForm& x, const MatrixForm& y) {
        return x.p_ == y.p_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const MatrixForm& x, const MatrixForm& y) { return !(x == y); }

    // e * A and A * e with an algebra element (order matters).
    friend MatrixForm operator*(const Element& e, const MatrixForm& x) {
        MatrixForm r = x;
        for (auto& v : r.a_)
            v = e * v;
        return r;
    }
    friend MatrixForm operator*(const MatrixForm& x, const Element& e) {
        MatrixForm r = x;
        for (auto& v : r.a_)
            v = v * e;
        return r;
    }
    friend MatrixForm operator*(const Scalar& s, const MatrixForm& x) {
        MatrixForm r = x;
        for (auto& v : r.a_)
            v = s * v;
        return r;
    }

    // Graded dagger: transpose with entrywise involution.
    MatrixForm dagger() const {
        MatrixForm r(*p_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r.at(j, i) = at(i, j).involution();
        return r;
    }

    MatrixForm d() const {
        MatrixForm r = *this;
        for (auto& e : r.a_)
            e = e.differential();
        return r;
    }

    Element trace() const {
        if (rows_ != cols_)
            throw std::invalid_argument("trace of a non-square matrix");
        Element t = Element::zero(*p_);
        for (int i = 0; i < rows_; ++i)
            t += at(i, i);
        return t;
    }

    MatrixForm specialize_q1() const {
        MatrixForm r = *this;
        for (auto& e : r.a_)
            e = e.specialize_q1();
        return r;
    }

    MatrixForm map_entries(const std::function<Element(const Element&)>& f) const {
        MatrixForm r = *this;
        for (auto& e : r.a_)
            e = f(e);
        return r;
    }

  private:
    void check_shape(const MatrixForm& o) const {
        if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape or presentation mismatch");
    }

    const Presentation* p_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<Element> a_;
};

// Hermitian pairing of column vectors: sum_i eta_i^* xi_i.
inline Element hermitian_pairing(const MatrixForm& eta, const MatrixForm& xi) {
    if (eta.cols() != 1 || xi.cols() != 1 || eta.rows() != xi.rows() ||
        eta.presentation() != xi.presentation())
        throw std::invalid_argument("hermitian_pairing: shape mismatch");
    Element s = Element::zero(*eta.presentation());
    for (int i = 0; i < eta.rows(); ++i)
        s += eta.at(i, 0).involution() * xi.at(i, 0);
    return s;
}

inline MatrixForm column(const MatrixForm& m, int j) {
    MatrixForm c(*m.presentation(), m.rows(), 1);
    for (int i = 0; i < m.rows(); ++i)
        c.at(i, 0) = m.at(i, j);
    return c;
}

// First-order jet a + t b with t a formal nilpotent (t^2 = 0); used for the
// linear perturbation checks.
struct DualMatrix {
    MatrixForm val;
    MatrixForm eps;

    friend DualMatrix operator+(const DualMatrix& x, const DualMatrix& y) {
        return {x.val + y.val, x.eps + y.eps};
    }
    friend DualMatrix operator*(const DualMatrix& x, const DualMatrix& y) {
        return {x.val * y.val, x.val * y.eps + x.eps * y.val};
    }
    DualMatrix d() const { return {val.d(), eps.d()}; }
};

} // namespace ncinst
