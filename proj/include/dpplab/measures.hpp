#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dpplab {

/// Moments m_0..m_L of a probability measure, with m_0 = 1.
class MomentSequence {
public:
    MomentSequence() : values_{1.0} {}
    explicit MomentSequence(std::vector<double> values);

    double operator[](std::size_t ell) const { return values_.at(ell); }
    std::size_t size() const { return values_.size(); }
    /// Highest moment index L.
    int order() const { return static_cast<int>(values_.size()) - 1; }
    std::span<const double> values() const { return values_; }

    /// Keeps m_0..m_L.
    MomentSequence truncated(int L) const;

private:
    std::vector<double> values_;
};

struct Atom {
    double location;
    double weight;
};

/// Equilibrium (arcsine) measure of [alpha, beta]; a point mass when alpha == beta.
struct ArcsineLaw {
    double alpha;
    double beta;
};

/// Standard semicircle on [-2, 2].
struct SemicircleLaw {};

/// Free Poisson law with rate alpha: atom max(1 - alpha, 0) at the origin and
/// continuous part on [(1 - sqrt(alpha))^2, (1 + sqrt(alpha))^2].
struct MarchenkoPasturLaw {
    double alpha;
};

/// Mixture of arcsine laws on [b(s) - 2a(s), b(s) + 2a(s)], s uniform on [0, 1].
struct KVAMixture {
    std::function<double(double)> a;
    std::function<double(double)> b;
    int quadrature_order = 200;
};

/// Finite sum of weighted point masses.
class AtomicMeasure {
public:
    explicit AtomicMeasure(std::vector<Atom> atoms);
    /// Convenience: locations and weights given separately.
    AtomicMeasure(std::span<const double> locations, std::span<const double> weights);

    std::span<const Atom> atoms() const { return atoms_; }
    MomentSequence moments(int L) const;

private:
    std::vector<Atom> atoms_;
};

double arcsine_moment(const ArcsineLaw& law, int ell);
double semicircle_moment(int ell);
double mp_moment(double alpha, int ell);
double kva_moment(const KVAMixture& mix, int ell);

MomentSequence arcsine_moments(const ArcsineLaw& law, int L);
MomentSequence semicircle_moments(int L);
MomentSequence mp_moments(double alpha, int L);
MomentSequence kva_moments(const KVAMixture& mix, int L);

// Pointwise density of the continuous part. Point masses are never folded in;
// they are reported by the matching atoms() overload.
double density_eval(const SemicircleLaw& law, double x);
double density_eval(const ArcsineLaw& law, double x);
double density_eval(const MarchenkoPasturLaw& law, double x);
double density_eval(const KVAMixture& mix, double x);

std::vector<Atom> atoms(const SemicircleLaw& law);
std::vector<Atom> atoms(const ArcsineLaw& law);
std::vector<Atom> atoms(const MarchenkoPasturLaw& law);

}  // namespace dpplab
