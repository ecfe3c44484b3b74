#include "dpplab/rmt.hpp"

#include "dpplab/error.hpp"
#include "dpplab/mop.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/summation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace dpplab {

MatrixModelKind matrix_model_from_name(const std::string& name) {
    if (name == "gue") return MatrixModelKind::Gue;
    if (name == "wishart") return MatrixModelKind::Wishart;
    if (name == "gue_source") return MatrixModelKind::GueSource;
    if (name == "wishart_cov") return MatrixModelKind::WishartCov;
    throw InvalidArgument("unknown matrix model '" + name + "'");
}

std::string to_string(MatrixModelKind kind) {
    switch (kind) {
        case MatrixModelKind::Gue: return "gue";
        case MatrixModelKind::Wishart: return "wishart";
        case MatrixModelKind::GueSource: return "gue_source";
        case MatrixModelKind::WishartCov: return "wishart_cov";
    }
    return "?";
}

namespace {

long wishart_columns(const MatrixModelSpec& spec) {
    const double M = static_cast<double>(spec.N) * (1.0 + spec.alpha);
    const double rounded = std::round(M);
    require(std::abs(M - rounded) <= 1e-9 * std::max(1.0, M), "sample: N*alpha must be an integer for Wishart sampling");
    return static_cast<long>(rounded);
}

class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : gen_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // Uniforms in (0, 1] and [0, 1) from the top 53 bits.
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

void validate(const MatrixModelSpec& spec) {
    require(spec.N >= 1, "sample: N must be >= 1");
    switch (spec.kind) {
        case MatrixModelKind::Gue: break;
        case MatrixModelKind::GueSource:
            require(static_cast<long>(spec.source.size()) == spec.N, "sample: source diagonal must have length N");
            break;
        case MatrixModelKind::WishartCov:
            require(static_cast<long>(spec.source.size()) == spec.N, "sample: source diagonal must have length N");
            for (double x : spec.source) require(x >= 0.0, "sample: wishart_cov source must be nonnegative");
            [[fallthrough]];
        case MatrixModelKind::Wishart:
            require(spec.alpha >= 0.0, "sample: alpha must be >= 0");
            wishart_columns(spec);
            break;
    }
}

std::vector<double> source_diagonal(const AtomicMeasure& atoms, long N) {
    require(N >= 1, "source_diagonal: N must be >= 1");
    const auto list = atoms.atoms();
    if (list.size() == 1) return std::vector<double>(N, list[0].location);
    std::vector<double> weights;
    for (const Atom& a : list) weights.push_back(a.weight);
    const MultiIndexPath path = path_from_ratios(weights, N);
    const auto n = path.at(N);
    std::vector<double> diag;
    diag.reserve(N);
    for (std::size_t d = 0; d < list.size(); ++d) diag.insert(diag.end(), n[d], list[d].location);
    return diag;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    // Hashing the seed first keeps nearby seeds from producing permutations of the same streams.
    return splitmix64(splitmix64(seed) ^ counter);
}

SpectralMeasure sample_spectrum(const MatrixModelSpec& spec, std::uint64_t seed) {
    validate(spec);
    const long N = spec.N;
    const double Nd = static_cast<double>(N);
    Gaussian gauss(seed);
    Eigen::MatrixXcd X(N, N);

    if (spec.kind == MatrixModelKind::Gue || spec.kind == MatrixModelKind::GueSource) {
        const double sd_diag = std::sqrt(1.0 / Nd);
        const double sd_off = std::sqrt(1.0 / (2.0 * Nd));
        for (long i = 0; i < N; ++i) {
            X(i, i) = sd_diag * gauss();
            for (long j = i + 1; j < N; ++j) {
                const double re = sd_off * gauss();
                const double im = sd_off * gauss();
                X(i, j) = {re, im};
                X(j, i) = {re, -im};
            }
        }
        if (spec.kind == MatrixModelKind::GueSource)
            for (long i = 0; i < N; ++i) X(i, i) += spec.source[i];
    } else {
        const long M = wishart_columns(spec);
        Eigen::MatrixXcd G(N, M);
        const double sd = std::sqrt(0.5);
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < M; ++j) {
                const double re = sd * gauss();
                G(i, j) = {re, sd * gauss()};
            }
        X = (G * G.adjoint()) / Nd;
        if (spec.kind == MatrixModelKind::WishartCov) {
            Eigen::VectorXd root(N);
            for (long i = 0; i < N; ++i) root(i) = std::sqrt(spec.source[i]);
            X = root.asDiagonal() * X * root.asDiagonal();
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("sample: Hermitian eigensolver failed");
    SpectralMeasure out;
    out.points.reserve(N);
    for (long i = 0; i < N; ++i) out.points.emplace_back(es.eigenvalues()(i), 0.0);
    return out;
}

std::vector<std::vector<double>> sample_moments(const MatrixModelSpec& spec, int L, long samples,
                                                std::uint64_t seed) {
    validate(spec);
    require(L >= 0, "sample: L must be >= 0");
    require(samples >= 1, "sample: samples must be >= 1");
    std::vector<std::vector<double>> rows(samples);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t s) {
        const SpectralMeasure sm = sample_spectrum(spec, derive_seed(seed, s));
        std::vector<double> powers(sm.points.size(), 1.0);
        std::vector<double> row(L + 1);
        for (int l = 0; l <= L; ++l) {
            row[l] = pairwise_sum(powers) / static_cast<double>(spec.N);
            for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= sm.points[i].real();
        }
        rows[s] = std::move(row);
    });
    return rows;
}

McMoments mc_moments(const MatrixModelSpec& spec, int L, long samples, std::uint64_t seed) {
    require(samples >= 2, "mc_moments: need at least 2 samples");
    const auto rows = sample_moments(spec, L, samples, seed);
    const double S = static_cast<double>(samples);
    std::vector<double> mean(L + 1), var(L + 1), se(L + 1), column(samples);
    for (int l = 0; l <= L; ++l) {
        for (long s = 0; s < samples; ++s) column[s] = rows[s][l];
        mean[l] = pairwise_sum(column) / S;
        for (long s = 0; s < samples; ++s) column[s] = (rows[s][l] - mean[l]) * (rows[s][l] - mean[l]);
        var[l] = pairwise_sum(column) / (S - 1.0);
        se[l] = std::sqrt(var[l] / S);
    }
    mean[0] = 1.0;
    return {MomentSequence(std::move(mean)), std::move(var), std::move(se)};
}

}  // namespace dpplab
