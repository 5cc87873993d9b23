#include <iostream>
#include "ncinst/symmetry.hpp"

using namespace ncinst;

int main() {
    const Presentation& p4 = s4();
    Element z1 = Element::generator(p4, "z1");
    Element z2 = Element::generator(p4, "z2");
    std::cout << "z2*z1 = " << (z2 * z1).str() << "\n";
    std::cout << "z1*z2 = " << (z1 * z2).str() << "\n";
    std::cout << "sphere s4 -> " << sphere_relation(p4).str() << "\n";
    std::cout << "sphere s7 -> " << sphere_relation(s7()).str() << "\n";
    std::cout << "sphere chart -> " << sphere_relation(chart()).str() << "\n";
    std::cout << "d(z1 z2) = " << (z1 * z2).differential().str() << "\n";

    const Presentation& pc = chart();
    Element rho = Element::generator(pc, "rho");
    std::cout << "d(rho^2) = " << (rho * rho).differential().str() << "\n";
    std::cout << "stereo(z0) = " << stereographic().apply(Element::generator(p4, "z0")).str() << "\n";

    std::string why;
    std::cout << "stereo preserves: " << stereographic().preserves_relations(&why) << " " << why << "\n";
    why.clear();
    std::cout << "locsec preserves: " << local_section().preserves_relations(&why) << " " << why << "\n";
    why.clear();
    std::cout << "subalg preserves: " << subalgebra_map().preserves_relations(&why) << " " << why << "\n";

    MatrixForm Psi = build_psi();
    MatrixForm PdP = Psi.dagger() * Psi;
    std::cout << "Psi†Psi == I2: " << (PdP == MatrixForm::identity(s7(), 2)) << "\n";
    MatrixForm p = build_projection();
    std::cout << "p2==p: " << (p * p == p) << " p†==p: " << (p.dagger() == p) << "\n";
    MatrixForm PPd = Psi * Psi.dagger();
    std::cout << "map(p) == PsiPsi†: " << (subalgebra_map().apply(p) == PPd) << "\n";

    // twist examples
    std::cout << "twist(z2,(1,0),+) = " << z2.twist(1, 0, +1).str() << "\n";
    std::cout << "twist(psi1,(1,0),+) = "
              << Element::generator(s7(), "psi1").twist(1, 0, +1).str() << "\n";

    why.clear();
    std::cout << "gamma invariance identity: " << gamma_invariance_identity(&why) << " " << why << "\n";
    std::cout << "so5_s4 annihilates: " << annihilates_ideal(so5_s4(), &why) << " " << why << "\n";
    why.clear();
    std::cout << "so5_s7 annihilates: " << annihilates_ideal(so5_s7(), &why) << " " << why << "\n";
    why.clear();
    std::cout << "so51_s4 annihilates: " << annihilates_ideal(so51_s4(), &why) << " " << why << "\n";
    why.clear();
    std::cout << "so51_s7 annihilates: " << annihilates_ideal(so51_s7(), &why) << " " << why << "\n";

    auto rep4 = verify_brackets(so5_s4(), false, 10, 42);
    std::cout << "so5_s4 brackets: " << rep4.ok << " " << rep4.detail << "\n";
    auto rep7 = verify_brackets(so5_s7(), false, 10, 42);
    std::cout << "so5_s7 brackets: " << rep7.ok << " " << rep7.detail << "\n";
    for (auto& [k, v] : rep4.constants)
        std::cout << "  s4 " << k << " = " << v.str() << "\n";
    auto repc4 = verify_brackets(so51_s4(), true, 10, 42);
    std::cout << "so51_s4 brackets: " << repc4.ok << " " << repc4.detail << "\n";
    auto repc7 = verify_brackets(so51_s7(), true, 10, 42);
    std::cout << "so51_s7 brackets: " << repc7.ok << " " << repc7.detail << "\n";

    // worked example
    const auto& fam = so51_s4();
    Element lhs = bracket_apply(fam.op("E-1-1"), fam.op("G+1+0"), z2);
    Element want = Scalar(2) * Element::unit(p4) -
                   Element::generator(p4, "z2'") * z2;
    std::cout << "worked example: " << (lhs == want) << " lhs=" << lhs.str() << "\n";
    return 0;
}
