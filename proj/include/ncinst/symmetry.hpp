#pragma once

#include <random>

#include "ncinst/derivation.hpp"
#include "ncinst/geometry.hpp"

namespace ncinst {

struct Root {
    int r1, r2;
    friend bool operator==(Root a, Root b) { return a.r1 == b.r1 && a.r2 == b.r2; }
};

inline const std::vector<Root>& so5_roots() {
    static const std::vector<Root> r = {{1, 1}, {1, -1}, {1, 0}, {0, 1},
                                        {-1, -1}, {-1, 1}, {-1, 0}, {0, -1}};
    return r;
}
inline const std::vector<Root>& conf_roots() {
    static const std::vector<Root> r = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return r;
}
inline std::string root_suffix(Root r) {
    auto s = [](int k) { return k < 0 ? std::to_string(k) : "+" + std::to_string(k); };
    return s(r.r1) + s(r.r2);
}

// A family of twisted derivations acting on one presentation, keyed by name:
// H1, H2, E<r> for so(5); additionally H0, G<r> for so(5,1).
struct DerivationFamily {
    const Presentation* pres = nullptr;
    std::map<std::string, TwistedDerivation> ops;

    const TwistedDerivation& op(const std::string& nm) const {
        auto it = ops.find(nm);
        if (it == ops.end())
            throw std::invalid_argument("no derivation named " + nm);
        return it->second;
    }
    bool has(const std::string& nm) const { return ops.count(nm) != 0; }
};

namespace detail {

// Derivation from a spin matrix: psi_a |-> sum_b G_ab psi_b and
// psi_a^* |-> sum_b (sigma G sigma^-1)_ab psi_b^*, matrix entries multiplying
// from the left.
inline TwistedDerivation spin_derivation(const std::string& name, int r1, int r2,
                                         const MatrixForm& G) {
    const Presentation& p = s7();
    CliffordSet c = clifford(p);
    MatrixForm Gt = c.sigma * G * c.sigma_inv;
    std::vector<Element> table(size_t(p.num_gen0()), Element::zero(p));
    for (int a = 0; a < 4; ++a) {
        int ga = p.index_of("psi" + std::to_string(a + 1));
        int gac = p.gen(ga).conj;
        Element va = Element::zero(p), vac = Element::zero(p);
        for (int b = 0; b < 4; ++b) {
            int gb = p.index_of("psi" + std::to_string(b + 1));
            va += G.at(a, b) * Element::generator(p, gb);
            vac += Gt.at(a, b) * Element::generator(p, p.gen(gb).conj);
        }
        table[size_t(ga)] = va;
        table[size_t(gac)] = vac;
    }
    return TwistedDerivation(name, r1, r2, p, std::move(table));
}

// Reads off the 4x4 scalar matrix of a linear derivation on the psi's.
inline MatrixForm spin_matrix_of(const TwistedDerivation& d) {
    const Presentation& p = s7();
    MatrixForm G(p, 4, 4);
    for (int a = 0; a < 4; ++a) {
        Element v = d.value(p.index_of("psi" + std::to_string(a + 1)));
        for (const auto& [m, s] : v.terms()) {
            Word w = v.word_of(m);
            if (w.size() != 1)
                throw std::logic_error("spin_matrix_of: nonlinear derivation");
            const std::string& nm = p.gen(w[0]).name;
            int b = nm[3] - '1';
            G.at(a, b) = Element::unit(p, s);
        }
    }
    return G;
}

} // namespace detail

// so(5) acting on the 4-sphere by twisted vector fields.
inline const DerivationFamily& so5_s4() {
    static const DerivationFamily fam = [] {
        const Presentation& p = s4();
        DerivationFamily f;
        f.pres = &p;
        auto g = [&](const std::string& nm, Scalar c = Scalar(1)) {
            return Element::generator(p, nm, std::move(c));
        };
        auto zero = Element::zero(p);
        auto tab = [&](std::initializer_list<std::pair<const char*, Element>> vals) {
            std::vector<Element> t(size_t(p.num_gen0()), zero);
            for (const auto& [nm, e] : vals)
                t[size_t(p.index_of(nm))] = e;
            return t;
        };
        f.ops.emplace("H1", TwistedDerivation("H1", 0, 0, p,
                                              tab({{"z1", g("z1")}, {"z1'", -g("z1'")}})));
        f.ops.emplace("H2", TwistedDerivation("H2", 0, 0, p,
                                              tab({{"z2", g("z2")}, {"z2'", -g("z2'")}})));
        auto add_pair = [&](Root r, std::vector<Element> table) {
            std::string nm = "E" + root_suffix(r);
            TwistedDerivation d(nm, r.r1, r.r2, p, std::move(table));
            std::string nmc = "E" + root_suffix({-r.r1, -r.r2});
            f.ops.emplace(nmc, d.adjoint(nmc));
            f.ops.emplace(nm, std::move(d));
        };
        add_pair({1, 1}, tab({{"z1'", g("z2")}, {"z2'", -g("z1")}}));
        add_pair({1, -1}, tab({{"z1'", g("z2'")}, {"z2", -g("z1")}}));
        add_pair({1, 0}, tab({{"z0", -g("z1", Scalar::inv_sqrt2())},
                              {"z1'", g("z0", Scalar::sqrt2())}}));
        add_pair({0, 1}, tab({{"z0", -g("z2", Scalar::inv_sqrt2())},
                              {"z2'", g("z0", Scalar::sqrt2())}}));
        return f;
    }();
    return fam;
}

// so(5) lifted to the 7-sphere in the spin representation.
inline const DerivationFamily& so5_s7() {
    static const DerivationFamily fam = [] {
        const Presentation& p = s7();
        DerivationFamily f;
        f.pres = &p;
        auto unit = [&](Scalar s) { return Element::unit(p, std::move(s)); };
        Scalar is2 = Scalar::inv_sqrt2();

        MatrixForm H1 = MatrixForm::diag_scalars(
            p, {Rational(1, 2), Rational(-1, 2), Rational(-1, 2), Rational(1, 2)});
        MatrixForm H2 = MatrixForm::diag_scalars(
            p, {Rational(-1, 2), Rational(1, 2), Rational(-1, 2), Rational(1, 2)});
        f.ops.emplace("H1", detail::spin_derivation("H1", 0, 0, H1));
        f.ops.emplace("H2", detail::spin_derivation("H2", 0, 0, H2));

        auto add_pair = [&](Root r, const MatrixForm& G) {
            std::string nm = "E" + root_suffix(r);
            TwistedDerivation d = detail::spin_derivation(nm, r.r1, r.r2, G);
            std::string nmc = "E" + root_suffix({-r.r1, -r.r2});
            f.ops.emplace(nmc, d.adjoint(nmc));
            f.ops.emplace(nm, std::move(d));
        };
        MatrixForm Epp(p, 4, 4);
        Epp.at(2, 3) = unit(Scalar(-1));
        add_pair({1, 1}, Epp);
        MatrixForm Epm(p, 4, 4);
        Epm.at(1, 0) = unit(-Scalar::mu());
        add_pair({1, -1}, Epm);
        MatrixForm Ep0(p, 4, 4);
        Ep0.at(1, 3) = unit(-is2);
        Ep0.at(2, 0) = unit(Scalar::mu() * is2);
        add_pair({1, 0}, Ep0);
        MatrixForm E0p(p, 4, 4);
        E0p.at(0, 3) = unit(Scalar::mu_bar() * is2);
        E0p.at(2, 1) = unit(is2);
        add_pair({0, 1}, E0p);
        return f;
    }();
    return fam;
}

// so(5,1): the so(5) family plus the dilation H0 and the four conformal
// generators G_r.
inline const DerivationFamily& so51_s4() {
    static const DerivationFamily fam = [] {
        const Presentation& p = s4();
        DerivationFamily f = so5_s4();
        auto g = [&](const std::string& nm, Scalar c = Scalar(1)) {
            return Element::generator(p, nm, std::move(c));
        };
        Element one = Element::unit(p);
        auto tab = [&](std::initializer_list<std::pair<const char*, Element>> vals) {
            std::vector<Element> t(size_t(p.num_gen0()), Element::zero(p));
            for (const auto& [nm, e] : vals)
                t[size_t(p.index_of(nm))] = e;
            return t;
        };
        Element z0 = g("z0"), z1 = g("z1"), z1c = g("z1'"), z2 = g("z2"), z2c = g("z2'");
        f.ops.emplace("H0", TwistedDerivation("H0", 0, 0, p,
                                              tab({{"z0", one - z0 * z0},
                                                   {"z1", -(z0 * z1)},
                                                   {"z1'", -(z0 * z1c)},
                                                   {"z2", -(z0 * z2)},
                                                   {"z2'", -(z0 * z2c)}})));
        // The lambda factors on the z2-column make the conformal brackets
        // close; they mirror the defining commutations with z1.
        TwistedDerivation g10("G+1+0", 1, 0, p,
                              tab({{"z0", -(z1 * z0)},
                                   {"z1", -(z1 * z1)},
                                   {"z1'", Scalar(2) * one - z1 * z1c},
                                   {"z2", -(Scalar::lambda_bar() * (z1 * z2))},
                                   {"z2'", -(Scalar::lambda() * (z1 * z2c))}}));
        TwistedDerivation g01("G+0+1", 0, 1, p,
                              tab({{"z0", -(z2 * z0)},
                                   {"z1", -(z2 * z1)},
                                   {"z1'", -(z2 * z1c)},
                                   {"z2", -(z2 * z2)},
                                   {"z2'", Scalar(2) * one - z2 * z2c}}));
        f.ops.emplace("G-1+0", g10.adjoint("G-1+0"));
        f.ops.emplace("G+0-1", g01.adjoint("G+0-1"));
        f.ops.emplace("G+1+0", std::move(g10));
        f.ops.emplace("G+0+1", std::move(g01));
        return f;
    }();
    return fam;
}

inline const DerivationFamily& so51_s7() {
    static const DerivationFamily fam = [] {
        const Presentation& p = s7();
        DerivationFamily f = so5_s7();
        CliffordSet c = clifford(p);
        const AlgebraMap& sub = subalgebra_map();
        Element Z0 = sub.image(s4().index_of("z0"));
        Element Z1 = sub.image(s4().index_of("z1"));
        Element Z2 = sub.image(s4().index_of("z2"));
        Scalar h = Scalar::half();

        MatrixForm H0 = h * (-(Z0 * MatrixForm::identity(p, 4)) + c.gamma0);
        MatrixForm G10 = h * (-(Z1 * c.lamH2_inv) + c.gamma1);
        MatrixForm G01 = h * (-(Z2 * MatrixForm::identity(p, 4)) + c.lamH1_inv * c.gamma2);
        f.ops.emplace("H0", detail::spin_derivation("H0", 0, 0, H0));
        TwistedDerivation g10 = detail::spin_derivation("G+1+0", 1, 0, G10);
        TwistedDerivation g01 = detail::spin_derivation("G+0+1", 0, 1, G01);
        f.ops.emplace("G-1+0", g10.adjoint("G-1+0"));
        f.ops.emplace("G+0-1", g01.adjoint("G+0-1"));
        f.ops.emplace("G+1+0", std::move(g10));
        f.ops.emplace("G+0+1", std::move(g01));
        return f;
    }();
    return fam;
}

// ---------------------------------------------------------------------------
// Bracket table verification.
// ---------------------------------------------------------------------------

struct BracketRow {
    std::string left, right;
    enum Kind { Zero, Combo, Extract } kind = Zero;
    std::vector<std::pair<Scalar, std::string>> combo; // expected sum c * op
    std::string target;                                // Extract: proportional to this op
    std::string key;                                   // Extract: registry key
};

// The so(5) rows; when `conformal` also the so(5,1) rows.
inline std::vector<BracketRow> bracket_rows(bool conformal) {
    std::vector<BracketRow> rows;
    auto E = [](Root r) { return "E" + root_suffix(r); };
    auto G = [](Root r) { return "G" + root_suffix(r); };
    auto is_so5_root = [](Root r) {
        for (auto s : so5_roots())
            if (s == r)
                return true;
        return false;
    };
    auto is_conf_root = [](Root r) {
        for (auto s : conf_roots())
            if (s == r)
                return true;
        return false;
    };

    rows.push_back({"H1", "H2", BracketRow::Zero, {}, "", ""});
    for (auto r : so5_roots()) {
        rows.push_back({"H1", E(r), BracketRow::Combo, {{Scalar(r.r1), E(r)}}, "", ""});
        rows.push_back({"H2", E(r), BracketRow::Combo, {{Scalar(r.r2), E(r)}}, "", ""});
    }
    for (size_t i = 0; i < so5_roots().size(); ++i)
        for (size_t j = i + 1; j < so5_roots().size(); ++j) {
            Root a = so5_roots()[i], b = so5_roots()[j];
            Root s{a.r1 + b.r1, a.r2 + b.r2};
            if (s == Root{0, 0}) {
                // [E_{-r}, E_r] = r1 H1 + r2 H2 with r = b
                rows.push_back({E(a), E(b), BracketRow::Combo,
                                {{Scalar(b.r1), "H1"}, {Scalar(b.r2), "H2"}}, "", ""});
            } else if (is_so5_root(s)) {
                rows.push_back({E(a), E(b), BracketRow::Extract, {}, E(s),
                                "N[" + root_suffix(a) + "," + root_suffix(b) + "]"});
            } else {
                rows.push_back({E(a), E(b), BracketRow::Zero, {}, "", ""});
            }
        }
    if (!conformal)
        return rows;

    rows.push_back({"H0", "H1", BracketRow::Zero, {}, "", ""});
    rows.push_back({"H0", "H2", BracketRow::Zero, {}, "", ""});
    for (auto r : so5_roots()) {
        if (is_conf_root(r))
            rows.push_back({"H0", E(r), BracketRow::Combo, {{Scalar::inv_sqrt2(), G(r)}}, "", ""});
        else
            rows.push_back({"H0", E(r), BracketRow::Zero, {}, "", ""});
    }
    for (auto r : conf_roots()) {
        rows.push_back({"H0", G(r), BracketRow::Combo, {{Scalar::sqrt2(), E(r)}}, "", ""});
        rows.push_back({"H1", G(r), BracketRow::Combo, {{Scalar(r.r1), G(r)}}, "", ""});
        rows.push_back({"H2", G(r), BracketRow::Combo, {{Scalar(r.r2), G(r)}}, "", ""});
    }
    for (auto a : so5_roots())
        for (auto b : conf_roots()) {
            Root s{a.r1 + b.r1, a.r2 + b.r2};
            if (s == Root{0, 0})
                rows.push_back({E(a), G(b), BracketRow::Combo, {{Scalar::sqrt2(), "H0"}}, "", ""});
            else if (is_conf_root(s))
                rows.push_back({E(a), G(b), BracketRow::Extract, {}, G(s),
                                "Nt[" + root_suffix(a) + "," + root_suffix(b) + "]"});
            else
                rows.push_back({E(a), G(b), BracketRow::Zero, {}, "", ""});
        }
    for (size_t i = 0; i < conf_roots().size(); ++i)
        for (size_t j = i + 1; j < conf_roots().size(); ++j) {
            Root a = conf_roots()[i], b = conf_roots()[j];
            Root s{a.r1 + b.r1, a.r2 + b.r2};
            if (s == Root{0, 0}) {
                // [G_{-r}, G_r] = 2 r1 H1 + 2 r2 H2 with r = b
                rows.push_back({G(a), G(b), BracketRow::Combo,
                                {{Scalar(2 * b.r1), "H1"}, {Scalar(2 * b.r2), "H2"}}, "", ""});
            } else if (is_so5_root(s)) {
                rows.push_back({G(a), G(b), BracketRow::Extract, {}, E(s),
                                "NG[" + root_suffix(a) + "," + root_suffix(b) + "]"});
            } else {
                rows.push_back({G(a), G(b), BracketRow::Zero, {}, "", ""});
            }
        }
    return rows;
}

// Deterministic random degree-0 monomials used as the bracket test panel.
inline std::vector<Element> random_monomials(const Presentation& p, int count, int max_len,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> pick(0, p.num_gen0() - 1);
    std::vector<Element> out;
    out.reserve(size_t(count));
    for (int i = 0; i < count; ++i) {
        Word w;
        int n = len(rng);
        for (int k = 0; k < n; ++k)
            w.push_back(std::uint8_t(pick(rng)));
        out.push_back(Element::from_terms(p, {{Scalar(1), w}}));
    }
    return out;
}

struct BracketReport {
    bool ok = true;
    std::string detail;
    std::map<std::string, Scalar> constants; // extracted N / Ntilde values
};

// Verifies every row on all degree-0 generators plus a random monomial panel;
// proportionality constants of root-sum rows are extracted, never assumed.
inline BracketReport verify_brackets(const DerivationFamily& fam, bool conformal,
                                     int panel_size, std::uint64_t seed) {
    BracketReport rep;
    const Presentation& p = *fam.pres;
    std::vector<Element> probes;
    for (int g = 0; g < p.num_gen0(); ++g)
        probes.push_back(Element::generator(p, g));
    auto panel = random_monomials(p, panel_size, 4, seed);
    probes.insert(probes.end(), panel.begin(), panel.end());

    for (const auto& row : bracket_rows(conformal)) {
        const TwistedDerivation& L = fam.op(row.left);
        const TwistedDerivation& R = fam.op(row.right);
        if (row.kind == BracketRow::Extract) {
            const TwistedDerivation& T = fam.op(row.target);
            std::optional<Scalar> n;
            for (int g = 0; g < p.num_gen0(); ++g) {
                Element tg = T.apply(probes[size_t(g)]);
                if (tg.is_zero())
                    continue;
                Element bg = bracket_apply(L, R, probes[size_t(g)]);
                auto c = Element::exact_ratio(bg, tg);
                if (c) {
                    n = c;
                    break;
                }
            }
            if (!n) {
                rep.ok = false;
                rep.detail += "[" + row.left + "," + row.right + "]: no proportionality constant; ";
                continue;
            }
            for (const auto& x : probes) {
                if (!(bracket_apply(L, R, x) == *n * T.apply(x))) {
                    rep.ok = false;
                    rep.detail += "[" + row.left + "," + row.right + "] != " + n->str() + " * " +
                                  row.target + "; ";
                    break;
                }
            }
            rep.constants[row.key] = *n;
            continue;
        }
        for (const auto& x : probes) {
            Element want = Element::zero(p);
            for (const auto& [c, nm] : row.combo)
                want += c * fam.op(nm).apply(x);
            if (!(bracket_apply(L, R, x) == want)) {
                rep.ok = false;
                rep.detail += "[" + row.left + "," + row.right + "] mismatch; ";
                break;
            }
        }
    }
    return rep;
}

// Every derivation must annihilate the sphere relation and its differential
// (well-definedness on the quotient).
inline bool annihilates_ideal(const DerivationFamily& fam, std::string* why = nullptr) {
    for (const auto& rel : ideal_relations(*fam.pres)) {
        Element drel = rel.differential();
        for (const auto& [nm, d] : fam.ops) {
            if (!d.apply(rel).is_zero() || !d.apply(drel).is_zero()) {
                if (why)
                    *why = nm + " does not annihilate a defining relation";
                return false;
            }
        }
    }
    return true;
}

// The invariance identity of the gauge potential, as scalar 4x4 matrices:
// Gt^t lambda^{-r1 H2} + lambda^{r2 H1} G = 0 for every so(5) generator.
inline bool gamma_invariance_identity(std::string* why = nullptr) {
    const Presentation& p = s7();
    CliffordSet c = clifford(p);
    auto powH = [&](const MatrixForm& pos, const MatrixForm& neg, int e) {
        if (e > 0)
            return pos;
        if (e < 0)
            return neg;
        return MatrixForm::identity(p, 4);
    };
    for (const auto& [nm, d] : so5_s7().ops) {
        MatrixForm G = detail::spin_matrix_of(d);
        MatrixForm Gt = c.sigma * G * c.sigma_inv;
        MatrixForm GtT(p, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                GtT.at(i, j) = Gt.at(j, i);
        MatrixForm lhs =
            GtT * powH(c.lamH2_inv, c.lamH2, d.r1()) + powH(c.lamH1, c.lamH1_inv, d.r2()) * G;
        if (!lhs.is_zero()) {
            if (why)
                *why = "identity fails for " + nm;
            return false;
        }
    }
    return true;
}

} // namespace ncinst
