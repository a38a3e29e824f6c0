#include "qh/pole_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "qh/parallel.hpp"

namespace qh {

namespace {

DenseMatrix psd_sqrt(const DenseMatrix& G) {
    const DenseMatrix H = (G + G.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(H);
    if (es.info() != Eigen::Success) throw Error("svd", "eigendecomposition did not converge");
    const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

cplx atom_gram(PoleAtom::Kind k1, cplx a, PoleAtom::Kind k2, cplx b) {
    using K = PoleAtom::Kind;
    const cplx ab = a * b;
    const cplx t = 1.0 / (1.0 - ab);
    const cplx t2 = t * t, t3 = t2 * t;
    if (k1 == K::P && k2 == K::P) return t;
    if (k1 == K::P && k2 == K::D) return a * t2;
    if (k1 == K::D && k2 == K::P) return b * t2;
    if (k1 == K::D && k2 == K::D) return (1.0 + ab) * t3;
    if (k1 == K::P && k2 == K::DD) return 2.0 * a * a * t3;
    if (k1 == K::DD && k2 == K::P) return 2.0 * b * b * t3;
    if (k1 == K::D && k2 == K::DD) return a * (4.0 + 2.0 * ab) * t3 * t;
    if (k1 == K::DD && k2 == K::D) return b * (4.0 + 2.0 * ab) * t3 * t;
    return (4.0 + 16.0 * ab + 4.0 * ab * ab) * t3 * t2;
}

std::vector<PoleAtom> pole_atoms(const FactorSpec& spec, const PoleTruncation& truncation) {
    using K = PoleAtom::Kind;
    std::vector<PoleAtom> atoms;
    for (const auto& pole : product_poles(spec, truncation)) {
        const cplx x = psi_inv(pole.location);
        const auto D = disk_principal_part(pole);
        atoms.push_back({K::P, K::P, x, D[0]});
        if (pole.order >= 2) {
            // D2 (i+j) x^{i+j-1}
            atoms.push_back({K::D, K::P, x, D[1]});
            atoms.push_back({K::P, K::D, x, D[1]});
        }
        if (pole.order >= 3) {
            // D3 (i+j)(i+j-1)/2 x^{i+j-2}
            atoms.push_back({K::DD, K::P, x, D[2] / 2.0});
            atoms.push_back({K::D, K::D, x, D[2]});
            atoms.push_back({K::P, K::DD, x, D[2] / 2.0});
        }
        if (pole.order >= 4) throw Error("domain", "poles of order above 3 are not supported");
    }
    return atoms;
}

double pole_height(const FactorSpec& spec, int n) {
    const auto primes = primes_of(spec);
    if (primes.empty()) return -1.0;
    return 2.0 * pi * n / std::log(static_cast<double>(primes.front()));
}

SpectralProfile pole_space_profile(const std::vector<PoleAtom>& atoms, int truncation_size) {
    const int n = static_cast<int>(atoms.size());
    if (n == 0) return make_profile({}, truncation_size, 0, 0);
    DenseMatrix Gu(n, n), Gw(n, n);
    parallel_for(n, [&](int a) {
        for (int b = 0; b < n; ++b) {
            // range vectors carry the coefficients
            Gu(a, b) = std::conj(atoms[a].coeff) * atoms[b].coeff *
                       atom_gram(atoms[a].range, std::conj(atoms[a].x), atoms[b].range, atoms[b].x);
            // domain vectors enter as eta(j) = conj(v(x)(j))
            Gw(a, b) = atom_gram(atoms[a].domain, atoms[a].x, atoms[b].domain, std::conj(atoms[b].x));
        }
    });
    const DenseMatrix M = psd_sqrt(Gu) * psd_sqrt(Gw);
    Eigen::BDCSVD<DenseMatrix> svd(M);
    if (svd.info() != Eigen::Success) throw Error("svd", "singular value decomposition did not converge");
    const auto& s = svd.singularValues();
    return make_profile(std::vector<double>(s.data(), s.data() + s.size()), truncation_size, n, n);
}

SpectralProfile pole_space_profile(const FactorSpec& spec, int n, int arch_terms) {
    PoleTruncation t;
    t.arch_terms = arch_terms;
    t.height = pole_height(spec, n);
    if (t.height < 0) t.prime_terms = 0;
    return pole_space_profile(pole_atoms(spec, t), n);
}

}  // namespace qh
