#include "dpplab/freeprob.hpp"

#include "dpplab/error.hpp"

#include <algorithm>
#include <cmath>

namespace dpplab {

FormalSeries r_transform(const MomentSequence& m) {
    const int L = m.order();
    require(L >= 1, "r_transform: need at least m_1");
    // g(u) = G(1/u) = sum_k m_k u^{k+1}; h = g^{-1}; 1/h(w) - 1/w = R(w).
    FormalSeries g{std::vector<double>(m.values().begin(), m.values().end()), 1};
    const FormalSeries h = series_compose_inverse(g);
    FormalSeries s = reciprocal(shift(h, -1));  // 1 + kappa_1 w + ... + kappa_L w^L
    s.coeffs.erase(s.coeffs.begin());
    s.offset = 0;
    return s;
}

MomentSequence moments_from_r(const FormalSeries& r, int L) {
    require(L >= 0, "moments_from_r: L must be >= 0");
    require(r.offset == 0 && static_cast<int>(r.coeffs.size()) >= L, "moments_from_r: R-transform too short");
    // h(w) = w / (1 + w R(w)), g = h^{-1}, m_k = [u^{k+1}] g.
    FormalSeries one_plus{std::vector<double>(L + 1, 0.0), 0};
    one_plus.coeffs[0] = 1.0;
    for (int k = 1; k <= L; ++k) one_plus.coeffs[k] = r.coeffs[k - 1];
    const FormalSeries h = shift(reciprocal(one_plus), 1);
    const FormalSeries g = series_compose_inverse(h);
    std::vector<double> m(L + 1);
    for (int k = 0; k <= L; ++k) m[k] = g.coeffs[k];
    m[0] = 1.0;
    return MomentSequence(std::move(m));
}

FormalSeries s_transform(const MomentSequence& m) {
    const int L = m.order();
    require(L >= 1, "s_transform: need at least m_1");
    require(m[1] != 0.0, "s_transform: m_1 must be nonzero");
    FormalSeries psi{std::vector<double>(m.values().begin() + 1, m.values().end()), 1};
    const FormalSeries chi = series_compose_inverse(psi);
    FormalSeries one_plus_z{std::vector<double>(L, 0.0), 0};
    one_plus_z.coeffs[0] = 1.0;
    if (L > 1) one_plus_z.coeffs[1] = 1.0;
    return one_plus_z * shift(chi, -1);
}

MomentSequence moments_from_s(const FormalSeries& s, int L) {
    require(L >= 0, "moments_from_s: L must be >= 0");
    if (L == 0) return MomentSequence();
    require(s.offset == 0 && static_cast<int>(s.coeffs.size()) >= L, "moments_from_s: S-transform too short");
    FormalSeries one_plus_z{std::vector<double>(L, 0.0), 0};
    one_plus_z.coeffs[0] = 1.0;
    if (L > 1) one_plus_z.coeffs[1] = 1.0;
    const FormalSeries chi = shift(truncate(s, L) * reciprocal(one_plus_z), 1);
    const FormalSeries psi = series_compose_inverse(chi);
    std::vector<double> m(L + 1);
    m[0] = 1.0;
    for (int k = 1; k <= L; ++k) m[k] = psi.coeffs[k - 1];
    return MomentSequence(std::move(m));
}

MomentSequence free_add(const MomentSequence& mu, const MomentSequence& nu) {
    const int L = std::min(mu.order(), nu.order());
    require(L >= 1, "free_add: need at least one moment beyond m_0");
    const FormalSeries r = r_transform(mu.truncated(L)) + r_transform(nu.truncated(L));
    return moments_from_r(r, L);
}

namespace {

MomentSequence unit_mean(const MomentSequence& m) {
    std::vector<double> v(m.values().begin(), m.values().end());
    double scale = 1.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        scale *= m[1];
        v[k] /= scale;
    }
    v[1] = 1.0;
    return MomentSequence(std::move(v));
}

}  // namespace

MomentSequence free_mul(const MomentSequence& mu, const MomentSequence& nu) {
    const int L = std::min(mu.order(), nu.order());
    require(L >= 1, "free_mul: need at least one moment beyond m_0");
    require(mu[1] > 0.0 && nu[1] > 0.0, "free_mul: both first moments must be > 0");
    const FormalSeries s = s_transform(unit_mean(mu.truncated(L))) * s_transform(unit_mean(nu.truncated(L)));
    const MomentSequence unit = moments_from_s(s, L);
    const double c = mu[1] * nu[1];
    std::vector<double> v(unit.values().begin(), unit.values().end());
    double scale = 1.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        scale *= c;
        v[k] *= scale;
    }
    return MomentSequence(std::move(v));
}

}  // namespace dpplab
