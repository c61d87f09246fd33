#include "ebr/su_generators.hpp"

#include <cmath>
#include <string>

namespace ebr {

namespace {
constexpr double kOrthonormalTol = 1e-10;

CMatrix outer(const Ket& a, const Ket& b) {
    return a.amplitudes() * b.amplitudes().adjoint();
}
} // namespace

double bloch_scale(int n_outcomes) {
    return std::sqrt(0.5 * n_outcomes * (n_outcomes - 1));
}

GeneratorBasis build_generators(const std::vector<Ket>& outcome_kets) {
    const int n = static_cast<int>(outcome_kets.size());
    if (n < 2) {
        throw Error("build_generators: need at least 2 outcome kets, got " + std::to_string(n));
    }
    const Eigen::Index dim = outcome_kets[0].dim();
    for (const Ket& k : outcome_kets) {
        if (k.dim() != dim) {
            throw DimMismatchError("build_generators: outcome kets have mixed dimensions");
        }
    }
    if (dim < n) {
        throw DimMismatchError("build_generators: ambient dim smaller than outcome count");
    }

    double gram_defect = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Complex g = outcome_kets[i].amplitudes().dot(outcome_kets[j].amplitudes());
            gram_defect = std::max(gram_defect, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    if (gram_defect > kOrthonormalTol) {
        throw NotOrthonormalError("build_generators: Gram defect " + std::to_string(gram_defect));
    }

    GeneratorBasis gb;
    gb.n_outcomes = n;
    gb.ambient_dim = dim;
    gb.generators.reserve(static_cast<std::size_t>(n) * n - 1);

    const Complex minus_i(0.0, -1.0);
    for (int k = 2; k <= n; ++k) {
        for (int j = 1; j < k; ++j) {
            const CMatrix jk = outer(outcome_kets[j - 1], outcome_kets[k - 1]);
            const CMatrix kj = outer(outcome_kets[k - 1], outcome_kets[j - 1]);
            gb.generators.push_back(jk + kj);             // U_jk
            gb.generators.push_back(minus_i * (jk - kj)); // V_jk
        }
        const int l = k - 1;
        CMatrix w = CMatrix::Zero(dim, dim);
        for (int m = 0; m < l; ++m) {
            w += outer(outcome_kets[m], outcome_kets[m]);
        }
        w -= static_cast<double>(l) * outer(outcome_kets[l], outcome_kets[l]);
        gb.generators.push_back(std::sqrt(2.0 / (l * (l + 1.0))) * w); // W_l
    }

    gb.sub_identity = CMatrix::Zero(dim, dim);
    for (const Ket& k : outcome_kets) {
        gb.sub_identity += outer(k, k);
    }
    return gb;
}

RMatrix generator_gram(const GeneratorBasis& gb) {
    const auto m = static_cast<Eigen::Index>(gb.generators.size());
    RMatrix gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const double t = trace_product(gb.generators[static_cast<std::size_t>(i)],
                                           gb.generators[static_cast<std::size_t>(j)]);
            gram(i, j) = t;
            gram(j, i) = t;
        }
    }
    return gram;
}

} // namespace ebr
