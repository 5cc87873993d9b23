#pragma once

#include "ncinst/matrix.hpp"

namespace ncinst {

// ---------------------------------------------------------------------------
// The three concrete presentations.
//
// Doubled torus weights: z1 ~ (2,0), z2 ~ (0,2), z0 central; the spinorial
// generators carry half-integer weights, doubled to (+-1, +-1). Commutation
// scalars are always derived from weights; the declared tables below restate
// the defining relations and are asserted equal at construction.
// ---------------------------------------------------------------------------

namespace detail {

// q-exponents of the lambda' table for psi_a psi_b = lambda'_ab psi_b psi_a:
// lambda'_13 = mu^-1, lambda'_14 = mu, lambda'_23 = mu, lambda'_24 = mu^-1.
inline int s7_lambda_exp(int a, int b) {
    static const int E[4][4] = {{0, 0, -2, 2}, {0, 0, 2, -2}, {2, -2, 0, 0}, {-2, 2, 0, 0}};
    return E[a][b];
}

} // namespace detail

inline const Presentation& s4() {
    static const Presentation p = [] {
        Presentation::Builder b("s4");
        int z0 = b.gen0("z0", 0, 0);
        int z1 = b.gen0("z1", 2, 0);
        int z1c = b.gen0("z1'", -2, 0);
        int z2 = b.gen0("z2", 0, 2);
        int z2c = b.gen0("z2'", 0, -2);
        b.self_conj(z0);
        b.conj_pair(z1, z1c);
        b.conj_pair(z2, z2c);
        b.make_forms({z0, z1, z1c, z2, z2c});
        // spherical relation z0^2 + z1' z1 + z2' z2 = 1, solved for the
        // central pair z2 z2'. Measure: the z2-exponent strictly decreases.
        b.rule({{z2, 1}, {z2c, 1}},
               {{Scalar(1), {}},
                {Scalar(-1), {std::uint8_t(z0), std::uint8_t(z0)}},
                {Scalar(-1), {std::uint8_t(z1), std::uint8_t(z1c)}}},
               "z2-exponent decreases; no rule reintroduces z2");
        static const int T[5][5] = {{0, 0, 0, 0, 0},
                                    {0, 0, 0, 4, -4},
                                    {0, 0, 0, -4, 4},
                                    {0, -4, 4, 0, 0},
                                    {0, 4, -4, 0, 0}};
        return b.finish([](int i, int j) { return T[i][j]; });
    }();
    return p;
}

inline const Presentation& s7() {
    static const Presentation p = [] {
        Presentation::Builder b("s7");
        int idx[8];
        static const int W[4][2] = {{1, -1}, {-1, 1}, {-1, -1}, {1, 1}};
        for (int a = 0; a < 4; ++a) {
            idx[2 * a] = b.gen0("psi" + std::to_string(a + 1), W[a][0], W[a][1]);
            idx[2 * a + 1] = b.gen0("psi" + std::to_string(a + 1) + "'", -W[a][0], -W[a][1]);
            b.conj_pair(idx[2 * a], idx[2 * a + 1]);
        }
        b.make_forms({idx[0], idx[1], idx[2], idx[3], idx[4], idx[5], idx[6], idx[7]});
        // spherical relation sum_a psi_a' psi_a = 1 solved for the central
        // pair psi4 psi4'. Measure: the psi4-exponent strictly decreases.
        TermList rep{{Scalar(1), {}}};
        for (int a = 0; a < 3; ++a)
            rep.push_back({Scalar(-1), {std::uint8_t(idx[2 * a]), std::uint8_t(idx[2 * a + 1])}});
        b.rule({{idx[6], 1}, {idx[7], 1}}, std::move(rep),
               "psi4-exponent decreases; no rule reintroduces psi4");
        return b.finish([](int i, int j) {
            int a = i / 2, sa = i % 2 ? -1 : 1;
            int bb = j / 2, sb = j % 2 ? -1 : 1;
            return sa * sb * detail::s7_lambda_exp(a, bb);
        });
    }();
    return p;
}

inline const Presentation& chart() {
    static const Presentation p = [] {
        Presentation::Builder b("chart");
        int sg = b.gen0("sigma", 0, 0);
        int rh = b.gen0("rho", 0, 0);
        int w1 = b.gen0("zeta1", 2, 0);
        int w1c = b.gen0("zeta1'", -2, 0);
        int w2 = b.gen0("zeta2", 0, 2);
        int w2c = b.gen0("zeta2'", 0, -2);
        int u1 = b.gen0("u1", 1, -1);
        int u1c = b.gen0("u1'", -1, 1);
        int u2 = b.gen0("u2", -1, 1);
        int u2c = b.gen0("u2'", 1, -1);
        b.self_conj(sg);
        b.self_conj(rh);
        b.conj_pair(w1, w1c);
        b.conj_pair(w2, w2c);
        b.conj_pair(u1, u1c);
        b.conj_pair(u2, u2c);
        b.make_forms({w1, w1c, w2, w2c, u1, u1c, u2, u2c});

        auto WW = [](int g, int h) { return Word{std::uint8_t(g), std::uint8_t(h)}; };

        // rho sigma = 1. Measure: total degree decreases.
        b.rule({{sg, 1}, {rh, 1}}, {{Scalar(1), {}}}, "total degree decreases");
        // sigma^2 = 1 + |zeta|^2. Measure: sigma-exponent decreases; the
        // replacement is sigma- and rho-free.
        b.rule({{sg, 2}},
               {{Scalar(1), {}}, {Scalar(1), WW(w1, w1c)}, {Scalar(1), WW(w2, w2c)}},
               "sigma-exponent decreases");
        // rho^2 (1 + |zeta|^2) = 1 solved for the zeta2 pair. Measure: the
        // zeta2-exponent decreases; replacement is zeta2- and sigma-free.
        b.rule({{rh, 2}, {w2, 1}, {w2c, 1}},
               {{Scalar(1), {}}, {Scalar(-1), WW(rh, rh)},
                {Scalar(-1), Word{std::uint8_t(rh), std::uint8_t(rh), std::uint8_t(w1), std::uint8_t(w1c)}}},
               "zeta2-exponent decreases");
        // u-sphere u1' u1 + u2' u2 = 1 solved for the central pair u2 u2'.
        b.rule({{u2, 1}, {u2c, 1}}, {{Scalar(1), {}}, {Scalar(-1), WW(u1, u1c)}},
               "u2-exponent decreases");

        // d rho = -1/2 rho^3 (zeta1 d(zeta1') + zeta1' d(zeta1) + zeta2 d(zeta2') + zeta2' d(zeta2))
        // from rho d rho = 1/2 d(rho^2) = -1/2 rho^4 d(1+|zeta|^2); d sigma is
        // its sigma-counterpart from sigma^2 = 1 + |zeta|^2. Both eliminate
        // the radial 1-forms so chart 2-forms live in the d(zeta) basis.
        auto radial = [&](int pre, int npre, Scalar c) {
            TermList t;
            int pairs[4][2] = {{w1, w1c}, {w1c, w1}, {w2, w2c}, {w2c, w2}};
            for (auto& pr : pairs) {
                Word w;
                for (int k = 0; k < npre; ++k)
                    w.push_back(std::uint8_t(pre));
                w.push_back(std::uint8_t(pr[0]));
                w.push_back(std::uint8_t(b.gen(pr[1]).differential));
                t.push_back({c, std::move(w)});
            }
            return t;
        };
        b.composite_differential(rh, radial(rh, 3, -Scalar::half()));
        b.composite_differential(sg, radial(rh, 1, Scalar::half()));

        return b.finish([&](int i, int j) {
            auto cls = [](int g) { // 0 = central, 1..4 = zeta1,zeta1',zeta2,zeta2', 5..8 = u1,u1',u2,u2'
                if (g < 2)
                    return 0;
                return g - 1;
            };
            int a = cls(i), c = cls(j);
            if (a == 0 || c == 0)
                return 0;
            // u1 zeta_j = mu zeta_j u1 and u2 zeta_j = mu^-1 zeta_j u2, with
            // the starred versions forced by the involution.
            static const int T[8][8] = {
                {0, 0, 4, -4, -2, 2, 2, -2},   // zeta1
                {0, 0, -4, 4, 2, -2, -2, 2},   // zeta1'
                {-4, 4, 0, 0, -2, 2, 2, -2},   // zeta2
                {4, -4, 0, 0, 2, -2, -2, 2},   // zeta2'
                {2, -2, 2, -2, 0, 0, 0, 0},    // u1
                {-2, 2, -2, 2, 0, 0, 0, 0},    // u1'
                {-2, 2, -2, 2, 0, 0, 0, 0},    // u2
                {2, -2, 2, -2, 0, 0, 0, 0}};   // u2'
            return T[a - 1][c - 1];
        });
    }();
    return p;
}

// Spherical relation of a presentation, as an element that must normalize to 0.
inline Element sphere_relation(const Presentation& p) {
    Element s = Element::unit(p, Scalar(-1));
    if (p.name() == "s4") {
        Element z0 = Element::generator(p, "z0");
        s += z0 * z0;
        s += Element::generator(p, "z1'") * Element::generator(p, "z1");
        s += Element::generator(p, "z2'") * Element::generator(p, "z2");
    } else if (p.name() == "s7") {
        for (int a = 1; a <= 4; ++a)
            s += Element::generator(p, "psi" + std::to_string(a) + "'") *
                 Element::generator(p, "psi" + std::to_string(a));
    } else {
        s += Element::generator(p, "u1'") * Element::generator(p, "u1");
        s += Element::generator(p, "u2'") * Element::generator(p, "u2");
    }
    return s;
}

// All defining relations of the chart ideal beyond the generic commutations.
inline std::vector<Element> ideal_relations(const Presentation& p) {
    std::vector<Element> v;
    if (p.name() == "chart") {
        Element rho = Element::generator(p, "rho");
        Element sig = Element::generator(p, "sigma");
        Element one = Element::unit(p);
        Element z2n = one + Element::generator(p, "zeta1'") * Element::generator(p, "zeta1") +
                      Element::generator(p, "zeta2'") * Element::generator(p, "zeta2");
        v.push_back(rho * sig - one);
        v.push_back(sig * rho - one);
        v.push_back(sig * sig - z2n);
        v.push_back(rho * rho * z2n - one);
        v.push_back(z2n * rho * rho - one);
        v.push_back(sphere_relation(p));
    } else {
        v.push_back(sphere_relation(p));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Twisted Dirac matrices and the spin conjugator, over any presentation.
// ---------------------------------------------------------------------------

struct CliffordSet {
    MatrixForm gamma0, gamma1, gamma2, gamma1d, gamma2d;
    MatrixForm sigma, sigma_inv;
    MatrixForm lamH1, lamH1_inv, lamH2, lamH2_inv; // lambda^{+-H_j} in the spin rep

    const MatrixForm& gamma(int i) const {
        switch (i) {
        case 0: return gamma0;
        case 1: return gamma1;
        case 2: return gamma2;
        case 3: return gamma1d;
        default: return gamma2d;
        }
    }
};

inline CliffordSet clifford(const Presentation& p) {
    auto unit = [&](Scalar s) { return Element::unit(p, std::move(s)); };
    CliffordSet c;
    Scalar mu = Scalar::mu(), mub = Scalar::mu_bar();

    c.gamma0 = MatrixForm::diag_scalars(p, {Scalar(1), Scalar(1), Scalar(-1), Scalar(-1)});
    c.gamma1 = MatrixForm(p, 4, 4);
    c.gamma1.at(1, 3) = unit(Scalar(2));
    c.gamma1.at(2, 0) = unit(Scalar(2) * mu);
    c.gamma2 = MatrixForm(p, 4, 4);
    c.gamma2.at(0, 3) = unit(Scalar(-2));
    c.gamma2.at(2, 1) = unit(Scalar(2) * mub);
    c.gamma1d = c.gamma1.dagger();
    c.gamma2d = c.gamma2.dagger();

    c.sigma = MatrixForm(p, 4, 4);
    c.sigma.at(0, 1) = unit(Scalar(-1));
    c.sigma.at(1, 0) = unit(Scalar(1));
    c.sigma.at(2, 3) = unit(Scalar(-1));
    c.sigma.at(3, 2) = unit(Scalar(1));
    c.sigma_inv = -c.sigma;

    c.lamH1 = MatrixForm::diag_scalars(p, {mu, mub, mub, mu});
    c.lamH1_inv = MatrixForm::diag_scalars(p, {mub, mu, mu, mub});
    c.lamH2 = MatrixForm::diag_scalars(p, {mub, mu, mub, mu});
    c.lamH2_inv = MatrixForm::diag_scalars(p, {mu, mub, mu, mub});
    return c;
}

// ---------------------------------------------------------------------------
// Psi, the projection, and the substitution homomorphisms.
// ---------------------------------------------------------------------------

inline MatrixForm build_psi() {
    const Presentation& p = s7();
    MatrixForm m(p, 4, 2);
    auto g = [&](const std::string& nm) { return Element::generator(p, nm); };
    m.at(0, 0) = g("psi1");
    m.at(1, 0) = g("psi2");
    m.at(2, 0) = g("psi3");
    m.at(3, 0) = g("psi4");
    m.at(0, 1) = -g("psi2'");
    m.at(1, 1) = g("psi1'");
    m.at(2, 1) = -g("psi4'");
    m.at(3, 1) = g("psi3'");
    return m;
}

inline MatrixForm build_projection() {
    const Presentation& p = s4();
    auto g = [&](const std::string& nm, Scalar s = Scalar(1)) {
        return Element::generator(p, nm, std::move(s));
    };
    Element one = Element::unit(p);
    Element z0 = g("z0");
    Scalar h = Scalar::half();
    MatrixForm m(p, 4, 4);
    m.at(0, 0) = h * (one + z0);
    m.at(1, 1) = h * (one + z0);
    m.at(2, 2) = h * (one - z0);
    m.at(3, 3) = h * (one - z0);
    m.at(0, 2) = h * g("z1");
    m.at(0, 3) = -(h * Scalar::mu_bar()) * g("z2'");
    m.at(1, 2) = h * g("z2");
    m.at(1, 3) = (h * Scalar::mu()) * g("z1'");
    m.at(2, 0) = h * g("z1'");
    m.at(2, 1) = h * g("z2'");
    m.at(3, 0) = -(h * Scalar::mu()) * g("z2");
    m.at(3, 1) = (h * Scalar::mu_bar()) * g("z1");
    return m;
}

// Substitution homomorphism between presentations: degree-0 generators map to
// the given elements, 1-forms to the differentials of the images (so the map
// commutes with d by construction). Relation preservation is a separate
// verified property.
class AlgebraMap {
  public:
    AlgebraMap(const Presentation& src, const Presentation& dst,
               std::vector<Element> images, std::string name)
        : src_(&src), dst_(&dst), images_(std::move(images)), name_(std::move(name)) {
        if (int(images_.size()) != src.num_gen0())
            throw std::invalid_argument("algebra map: wrong image count");
        for (int g = 0; g < src.num_gen0(); ++g) {
            int gc = src.gen(g).conj;
            if (!(images_[size_t(gc)] == images_[size_t(g)].involution()))
                throw std::logic_error("algebra map " + name_ +
                                       ": images not involution-compatible");
        }
        dimages_.reserve(images_.size());
        for (const auto& e : images_)
            dimages_.push_back(e.differential());
    }

    const std::string& name() const { return name_; }
    const Presentation& source() const { return *src_; }
    const Presentation& target() const { return *dst_; }
    const Element& image(int gen0) const { return images_[size_t(gen0)]; }

    Element apply(const Element& e) const {
        if (e.presentation() != src_)
            throw std::invalid_argument("algebra map: wrong source presentation");
        Element r = Element::zero(*dst_);
        for (const auto& [m, s] : e.terms()) {
            Element t = Element::unit(*dst_, s);
            for (auto g : e.word_of(m)) {
                const auto& decl = src_->gen(g);
                t *= decl.degree == 0 ? images_[size_t(g)] : dimages_[size_t(decl.base)];
            }
            r += t;
        }
        return r;
    }

    MatrixForm apply(const MatrixForm& m) const {
        MatrixForm r(*dst_, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                r.at(i, j) = apply(m.at(i, j));
        return r;
    }

    // Every defining relation of the source must map to zero: the generic
    // commutation relations (derived from weights) and the sphere/ideal ones.
    bool preserves_relations(std::string* why = nullptr) const {
        for (int i = 0; i < src_->num_gen0(); ++i)
            for (int j = i + 1; j < src_->num_gen0(); ++j) {
                Element lhs = images_[size_t(i)] * images_[size_t(j)];
                Element rhs = Scalar::q_power(src_->commute_qexp(i, j)) *
                              (images_[size_t(j)] * images_[size_t(i)]);
                if (!(lhs == rhs)) {
                    if (why)
                        *why = "commutation (" + src_->gen(i).name + ", " +
                               src_->gen(j).name + ") not preserved";
                    return false;
                }
            }
        for (const auto& rel : ideal_relations(*src_)) {
            if (!apply(rel).is_zero()) {
                if (why)
                    *why = "ideal relation not mapped to zero";
                return false;
            }
        }
        return true;
    }

  private:
    const Presentation* src_;
    const Presentation* dst_;
    std::vector<Element> images_;
    std::vector<Element> dimages_;
    std::string name_;
};

// z-generators inside the 7-sphere algebra (the quadratic spinor expressions).
inline const AlgebraMap& subalgebra_map() {
    static const AlgebraMap m = [] {
        const Presentation& s = s4();
        const Presentation& t = s7();
        auto g = [&](const std::string& nm, Scalar c = Scalar(1)) {
            return Element::generator(t, nm, std::move(c));
        };
        Element z0 = g("psi1'") * g("psi1") + g("psi2'") * g("psi2") -
                     g("psi3'") * g("psi3") - g("psi4'") * g("psi4");
        Element z1 = Scalar(2) * (g("psi3'", Scalar::mu()) * g("psi1") + g("psi2'") * g("psi4"));
        Element z2 = Scalar(2) * (-(g("psi1'") * g("psi4")) + g("psi3'", Scalar::mu_bar()) * g("psi2"));
        std::vector<Element> img(size_t(s.num_gen0()));
        img[size_t(s.index_of("z0"))] = z0;
        img[size_t(s.index_of("z1"))] = z1;
        img[size_t(s.index_of("z1'"))] = z1.involution();
        img[size_t(s.index_of("z2"))] = z2;
        img[size_t(s.index_of("z2'"))] = z2.involution();
        return AlgebraMap(s, t, std::move(img), "subalgebra");
    }();
    return m;
}

// Inverse stereographic projection onto the chart.
inline const AlgebraMap& stereographic() {
    static const AlgebraMap m = [] {
        const Presentation& s = s4();
        const Presentation& t = chart();
        auto g = [&](const std::string& nm) { return Element::generator(t, nm); };
        Element rho2 = g("rho") * g("rho");
        Element zeta2n = Element::unit(t) - g("zeta1'") * g("zeta1") - g("zeta2'") * g("zeta2");
        std::vector<Element> img(size_t(s.num_gen0()));
        img[size_t(s.index_of("z0"))] = zeta2n * rho2;
        img[size_t(s.index_of("z1"))] = Scalar(2) * (g("zeta1") * rho2);
        img[size_t(s.index_of("z1'"))] = Scalar(2) * (g("zeta1'") * rho2);
        img[size_t(s.index_of("z2"))] = Scalar(2) * (g("zeta2") * rho2);
        img[size_t(s.index_of("z2'"))] = Scalar(2) * (g("zeta2'") * rho2);
        return AlgebraMap(s, t, std::move(img), "stereographic");
    }();
    return m;
}

// Local section of the principal fibration over the chart.
inline const AlgebraMap& local_section() {
    static const AlgebraMap m = [] {
        const Presentation& s = s7();
        const Presentation& t = chart();
        auto g = [&](const std::string& nm, Scalar c = Scalar(1)) {
            return Element::generator(t, nm, std::move(c));
        };
        Element rho = g("rho");
        Element p1 = rho * g("u1");
        Element p2 = rho * g("u2");
        Element p3 = rho * (g("zeta1'") * g("u1") + g("zeta2'") * g("u2"));
        Element p4 = rho * (g("zeta2", -Scalar::mu()) * g("u1") + g("zeta1", Scalar::mu_bar()) * g("u2"));
        std::vector<Element> img(size_t(s.num_gen0()));
        auto put = [&](const std::string& nm, const Element& e) {
            img[size_t(s.index_of(nm))] = e;
            img[size_t(s.index_of(nm + "'"))] = e.involution();
        };
        put("psi1", p1);
        put("psi2", p2);
        put("psi3", p3);
        put("psi4", p4);
        return AlgebraMap(s, t, std::move(img), "local-section");
    }();
    return m;
}

// The SU(2) spinor as a matrix over the chart, and the stereographic
// coordinate block.
inline MatrixForm chart_u_matrix() {
    const Presentation& p = chart();
    auto g = [&](const std::string& nm) { return Element::generator(p, nm); };
    MatrixForm u(p, 2, 2);
    u.at(0, 0) = g("u1");
    u.at(0, 1) = -g("u2'");
    u.at(1, 0) = g("u2");
    u.at(1, 1) = g("u1'");
    return u;
}

inline MatrixForm chart_zeta_block() {
    const Presentation& p = chart();
    auto g = [&](const std::string& nm, Scalar c = Scalar(1)) {
        return Element::generator(p, nm, std::move(c));
    };
    MatrixForm z(p, 2, 2);
    z.at(0, 0) = g("zeta1'");
    z.at(0, 1) = g("zeta2'");
    z.at(1, 0) = g("zeta2", -Scalar::mu());
    z.at(1, 1) = g("zeta1", Scalar::mu_bar());
    return z;
}

// ---------------------------------------------------------------------------
// Flat Hodge star on chart 2-forms.
//
// The three defining values are *d(z1)d(z2) = -d(z1)d(z2),
// *d(z1)d(z1') = -d(z2)d(z2'), *d(z1)d(z2') = +d(z1)d(z2'); the remaining
// basis values follow from *^2 = id and compatibility with the involution.
// ---------------------------------------------------------------------------

struct UnsupportedForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Element hodge2(const Element& e) {
    const Presentation& p = chart();
    if (e.presentation() != &p)
        throw std::invalid_argument("hodge2: chart elements only");
    // 1-form bit positions: d(zeta1)=0, d(zeta1')=1, d(zeta2)=2, d(zeta2')=3,
    // then the du's.
    struct Entry {
        std::uint16_t mask;
        int sign;
        std::uint16_t image;
    };
    static const Entry table[] = {
        {0b0011, -1, 0b1100}, {0b1100, -1, 0b0011}, {0b0101, -1, 0b0101},
        {0b1010, -1, 0b1010}, {0b1001, +1, 0b1001}, {0b0110, +1, 0b0110},
    };
    const int u1_idx = p.index_of("u1");
    Element r = Element::zero(p);
    for (const auto& [m, s] : e.terms()) {
        if (m.forms & 0xFFF0u)
            throw UnsupportedForm("hodge2: du-generators present");
        for (int g = u1_idx; g < u1_idx + 4; ++g)
            if (m.e[size_t(g)])
                throw UnsupportedForm("hodge2: u-generators present");
        const Entry* hit = nullptr;
        for (const auto& t : table)
            if (t.mask == m.forms) {
                hit = &t;
                break;
            }
        if (!hit)
            throw UnsupportedForm("hodge2: not a 2-form in the d(zeta) basis");
        Monomial im = m;
        im.forms = hit->image;
        Element piece = Element::from_terms(p, {{hit->sign > 0 ? s : -s, Element(&p).word_of(im)}});
        // word_of needs an element bound to p; build via from_terms on the word
        r += piece;
    }
    return r;
}

inline Element antiselfdual_projector(const Element& e) {
    return Scalar::half() * (e - hodge2(e));
}

} // namespace ncinst
