#pragma once

#include "subres/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subres {

/// A finite orbit record: base points and the matrix of the cocycle along
/// each step (matrices[k] maps the fiber at points[k] to the fiber at
/// points[k+1]).
struct CocycleTrace {
    std::vector<Eigen::VectorXd> points;
    std::vector<Eigen::MatrixXd> matrices;

    std::size_t steps() const { return matrices.size(); }

    std::size_t fiber_dim() const { return matrices.empty() ? 0 : static_cast<std::size_t>(matrices[0].rows()); }

    void validate() const {
        if (matrices.empty()) throw std::invalid_argument("CocycleTrace: needs at least one step");
        const auto d = matrices[0].rows();
        for (const auto& m : matrices)
            if (m.rows() != d || m.cols() != d) throw std::invalid_argument("CocycleTrace: matrix shape mismatch");
        if (!points.empty() && points.size() != matrices.size() + 1)
            throw std::invalid_argument("CocycleTrace: point count must be steps + 1");
    }
};

// ---------------------------------------------------------------------------
// Lyapunov exponents by the QR recursion
// ---------------------------------------------------------------------------

struct LyapunovResult {
    std::vector<double> exponents;   // sorted descending
    std::size_t burn_in = 0;         // prefix excluded from the averages
    double det_residual = 0.0;       // |sum of exponents - average log |det||
};

/// Time-averaged log diagonal of the QR recursion. A warm-up prefix (default
/// min(T/10, 100)) lets the frame align before averaging starts; the running
/// frame is still carried through the full trace.
inline LyapunovResult lyapunov_qr(const CocycleTrace& trace,
                                  std::optional<std::size_t> burn_in = std::nullopt) {
    trace.validate();
    const std::size_t T = trace.steps();
    const auto d = trace.matrices[0].rows();
    std::size_t warm = burn_in.value_or(std::min<std::size_t>(T / 10, 100));
    if (warm >= T) warm = 0;

    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(d);
    double logdet_sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t k = 0; k < T; ++k) {
        Eigen::MatrixXd Z = trace.matrices[k] * Q;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
        Eigen::MatrixXd Qn = qr.householderQ();
        Eigen::MatrixXd R = Qn.transpose() * Z;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (R(i, i) == 0.0) throw std::invalid_argument("lyapunov_qr: singular step matrix");
            if (R(i, i) < 0) {
                R.row(i) = -R.row(i);
                Qn.col(i) = -Qn.col(i);
            }
        }
        Q = Qn;
        if (k >= warm) {
            for (Eigen::Index i = 0; i < d; ++i) sums(i) += std::log(R(i, i));
            logdet_sum += std::log(std::abs(trace.matrices[k].determinant()));
            ++counted;
        }
    }
    LyapunovResult out;
    out.burn_in = warm;
    for (Eigen::Index i = 0; i < d; ++i) out.exponents.push_back(sums(i) / static_cast<double>(counted));
    std::sort(out.exponents.begin(), out.exponents.end(), std::greater<double>());
    double acc = 0;
    for (double e : out.exponents) acc += e;
    out.det_residual = std::abs(acc - logdet_sum / static_cast<double>(counted));
    return out;
}

// ---------------------------------------------------------------------------
// Finite-horizon Oseledets flags from singular subspaces
// ---------------------------------------------------------------------------

struct FlagLevel {
    double exponent = 0.0;        // averaged log singular value of the group
    std::size_t multiplicity = 0;
    double gap = 0.0;             // distance to the next (smaller) exponent
    bool resolved = false;        // gap above the threshold
    Eigen::MatrixXd slow_flag;    // columns span E^{<= lambda_i} at the initial point
    Eigen::MatrixXd fast_flag;    // columns span E^{>= lambda_i} at the initial point
};

struct FlagResult {
    std::vector<FlagLevel> levels;  // sorted by exponent, descending
    double gap_threshold = 0.0;
};

/// Forward and backward flags at the initial point from the singular value
/// decomposition of the step product (the backward data is read off the
/// inverse product, whose singular subspaces at the initial point are the
/// orthogonal complements). Gaps below the threshold are reported unresolved
/// rather than split.
inline FlagResult oseledets_flags(const CocycleTrace& trace, std::size_t t,
                                  std::optional<double> gap_threshold = std::nullopt) {
    trace.validate();
    if (t == 0 || t > trace.steps()) throw std::invalid_argument("oseledets_flags: bad horizon");
    const auto d = trace.matrices[0].rows();
    double threshold = gap_threshold.value_or(10.0 / static_cast<double>(t));

    // product with scale extraction to avoid overflow
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(d, d);
    double logscale = 0.0;
    for (std::size_t k = 0; k < t; ++k) {
        P = trace.matrices[k] * P;
        double norm = P.norm();
        if (norm == 0) throw std::invalid_argument("oseledets_flags: singular product");
        P /= norm;
        logscale += std::log(norm);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd sigma = svd.singularValues();
    Eigen::MatrixXd V = svd.matrixV();

    std::vector<double> exps(d);
    for (Eigen::Index i = 0; i < d; ++i)
        exps[i] = (std::log(sigma(i)) + logscale) / static_cast<double>(t);

    FlagResult out;
    out.gap_threshold = threshold;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(d)) {
        std::size_t j = i + 1;
        double acc = exps[i];
        while (j < static_cast<std::size_t>(d) && exps[j - 1] - exps[j] < threshold) {
            acc += exps[j];
            ++j;
        }
        FlagLevel lvl;
        lvl.exponent = acc / static_cast<double>(j - i);
        lvl.multiplicity = j - i;
        lvl.gap = j < static_cast<std::size_t>(d) ? exps[j - 1] - exps[j] : std::numeric_limits<double>::infinity();
        lvl.resolved = lvl.gap >= threshold;
        // E^{<= lambda}: right singular directions from this group downward
        lvl.slow_flag = V.rightCols(d - static_cast<Eigen::Index>(i));
        // E^{>= lambda}: from this group upward
        lvl.fast_flag = V.leftCols(static_cast<Eigen::Index>(j));
        out.levels.push_back(std::move(lvl));
        i = j;
    }
    return out;
}

/// Largest principal angle between the column spans.
inline double subspace_angle(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qa(A), qb(B);
    Eigen::MatrixXd Qa = qa.householderQ() * Eigen::MatrixXd::Identity(A.rows(), A.cols());
    Eigen::MatrixXd Qb = qb.householderQ() * Eigen::MatrixXd::Identity(B.rows(), B.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Qa.transpose() * Qb);
    double c = svd.singularValues().minCoeff();
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

// ---------------------------------------------------------------------------
// Adapted norms
// ---------------------------------------------------------------------------

/// Per-point positive-definite forms, block-orthogonal across the estimated
/// exponent blocks. Expanding blocks carry the horizon-truncated unit-step
/// sum |v|^2_k = sum_{n>=0} |g_{-n} v|^2 e^{2(lambda-eps)n}; other blocks keep
/// the ambient norm. The continuous-time integral is the infinite-horizon
/// limit of this sum.
struct AdaptedNorm {
    double eps = 0.0;
    std::vector<Eigen::MatrixXd> gram;        // one per trace point
    std::vector<Eigen::MatrixXd> block_bases; // per point: columns ordered fast-to-slow
    std::vector<std::size_t> block_sizes;
    std::vector<double> block_exponents;

    double norm(std::size_t point, const Eigen::VectorXd& v) const {
        return std::sqrt(v.dot(gram.at(point) * v));
    }

    /// sup_{v != 0} |v|_adapted / |v| at the given point.
    double comparison_envelope(std::size_t point) const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.at(point));
        return std::sqrt(es.eigenvalues().maxCoeff());
    }
};

inline AdaptedNorm adapted_norm(const CocycleTrace& trace, double eps, const FlagResult& flags) {
    trace.validate();
    if (eps <= 0) throw std::invalid_argument("adapted_norm: eps must be positive");
    for (const auto& lvl : flags.levels)
        if (!lvl.resolved && lvl.gap != std::numeric_limits<double>::infinity())
            throw std::invalid_argument("adapted_norm: unresolved flag level");
    // eps must sit below half the minimal gap
    for (const auto& lvl : flags.levels)
        if (lvl.gap != std::numeric_limits<double>::infinity() && eps > lvl.gap / 2)
            throw std::invalid_argument("adapted_norm: eps above half the minimal exponent gap");

    const std::size_t T = trace.steps();
    const auto d = trace.matrices[0].rows();

    AdaptedNorm out;
    out.eps = eps;
    for (const auto& lvl : flags.levels) {
        out.block_sizes.push_back(lvl.multiplicity);
        out.block_exponents.push_back(lvl.exponent);
    }

    // block bases at every point: push the initial splitting through the
    // cocycle (finite-horizon stand-in for the per-point Oseledets blocks)
    std::vector<Eigen::MatrixXd> bases(T + 1);
    {
        Eigen::MatrixXd B0(d, d);
        Eigen::Index col = 0;
        for (std::size_t li = 0; li < flags.levels.size(); ++li) {
            // block = fast_flag at level li intersected orthogonally with the
            // previous complement: use fast_flag columns beyond the previous ones
            const auto& lvl = flags.levels[li];
            Eigen::Index take = static_cast<Eigen::Index>(lvl.multiplicity);
            B0.middleCols(col, take) = lvl.fast_flag.rightCols(take);
            col += take;
        }
        bases[0] = B0;
        for (std::size_t k = 0; k < T; ++k) bases[k + 1] = trace.matrices[k] * bases[k];
    }
    out.block_bases = bases;

    // backward partial products: g_{-n} at point k maps fiber k to fiber k-n
    for (std::size_t k = 0; k <= T; ++k) {
        Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, d);  // quadratic form on block coordinates
        Eigen::Index col = 0;
        for (std::size_t li = 0; li < flags.levels.size(); ++li) {
            Eigen::Index bs = static_cast<Eigen::Index>(out.block_sizes[li]);
            double lambda = out.block_exponents[li];
            Eigen::MatrixXd block = bases[k].middleCols(col, bs);
            Eigen::MatrixXd G = Eigen::MatrixXd::Zero(bs, bs);
            if (lambda > 0) {
                // sum over the available backward steps
                Eigen::MatrixXd W = block;
                double factor = 1.0;
                G += W.transpose() * W;
                for (std::size_t n = 1; n <= k; ++n) {
                    // pull back one step: solve matrices[k-n] * X = W
                    W = trace.matrices[k - n].partialPivLu().solve(W);
                    factor *= std::exp(2.0 * (lambda - eps));
                    G += factor * (W.transpose() * W);
                }
            } else {
                G = block.transpose() * block;  // ambient norm on non-expanding blocks
            }
            S.block(col, col, bs, bs) = G;
            col += bs;
        }
        // assemble the form on ambient coordinates: v = bases[k] c
        Eigen::MatrixXd Binv = bases[k].partialPivLu().inverse();
        out.gram.push_back(Binv.transpose() * S * Binv);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Temperedness diagnostics
// ---------------------------------------------------------------------------

struct TemperedReport {
    double tail_slope = 0.0;     // max |a_t| / t over the tail half
    double min_epsilon = 0.0;    // smallest eps whose envelope dominates
    double envelope_base = 0.0;  // B_0 for that eps
    bool violated = false;       // tail slope exceeds the requested eps
};

/// Growth diagnostics for log-values sampled along an orbit: the tail slope
/// estimates limsup |a(g_t q)| / |t|, and the envelope base is the smallest
/// B_0 with A(g_t q) <= B_0 e^{eps t}.
inline TemperedReport check_tempered(const std::vector<double>& samples, double eps) {
    if (samples.size() < 10) throw std::invalid_argument("check_tempered: need at least 10 samples");
    TemperedReport out;
    std::size_t start = samples.size() / 2;
    for (std::size_t t = start; t < samples.size(); ++t) {
        if (t == 0) continue;
        out.tail_slope = std::max(out.tail_slope, std::abs(samples[t]) / static_cast<double>(t));
    }
    out.min_epsilon = out.tail_slope;
    double logb = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < samples.size(); ++t)
        logb = std::max(logb, samples[t] - eps * static_cast<double>(t));
    out.envelope_base = std::exp(logb);
    out.violated = out.tail_slope > eps;
    return out;
}

// ---------------------------------------------------------------------------
// Exponent snapping
// ---------------------------------------------------------------------------

/// Match estimated exponent magnitudes against a declared positive rational
/// profile: find the least-squares scale s and accept when every
/// | |exponent| - s*lambda_i | is within tol. Exact resonance arithmetic
/// downstream requires the declared profile; refuse the handoff otherwise.
inline std::optional<double> snap_exponents(const std::vector<double>& exponent_magnitudes,
                                            const std::vector<Rational>& profile, double tol) {
    if (exponent_magnitudes.size() != profile.size()) return std::nullopt;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        double lam = to_double(profile[i]);
        num += lam * exponent_magnitudes[i];
        den += lam * lam;
    }
    if (den == 0) return std::nullopt;
    double s = num / den;
    for (std::size_t i = 0; i < profile.size(); ++i)
        if (std::abs(exponent_magnitudes[i] - s * to_double(profile[i])) > tol) return std::nullopt;
    return s;
}

}  // namespace subres
