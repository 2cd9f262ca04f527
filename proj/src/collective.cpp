#include "wgqed/collective.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eigen_solve.hpp"
#include "wgqed/error.hpp"

namespace wgqed {

EmitterChain EmitterChain::from_positions(std::vector<double> positions, double gamma_prime) {
    if (positions.empty()) throw Error(ErrorKind::Validation, "emitter chain needs at least one atom");
    for (double x : positions) {
        if (!std::isfinite(x)) throw Error(ErrorKind::Validation, "emitter position must be finite");
    }
    if (!(gamma_prime >= 0.0) || !std::isfinite(gamma_prime))
        throw Error(ErrorKind::Validation, "gamma_prime must be >= 0");
    EmitterChain c;
    c.gamma_prime = gamma_prime;
    c.original_index.resize(positions.size());
    std::iota(c.original_index.begin(), c.original_index.end(), std::size_t{0});
    std::stable_sort(c.original_index.begin(), c.original_index.end(),
                     [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
    c.positions.reserve(positions.size());
    for (std::size_t k : c.original_index) c.positions.push_back(positions[k]);
    return c;
}

EmitterChain EmitterChain::regular(std::size_t n, double spacing, double gamma_prime, double offset) {
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = offset + spacing * static_cast<double>(k);
    return from_positions(std::move(x), gamma_prime);
}

CouplingMatrix build_coupling_matrix(const EmitterChain& chain, const ReservoirModel& model,
                                     double probe_detuning) {
    validate(model);
    const std::size_t n = chain.size();
    if (n == 0) throw Error(ErrorKind::Validation, "emitter chain is empty");
    CouplingMatrix out;
    out.model = std::make_shared<const ReservoirModel>(model);
    out.probe_detuning = probe_detuning;
    if (const auto* tab = std::get_if<TabulatedCoupling>(&model)) {
        if (tab->size() != n)
            throw Error(ErrorKind::Validation, "tabulated coupling size " + std::to_string(tab->size()) +
                                                   " does not match chain size " + std::to_string(n));
        out.values = tab->matrix(probe_detuning);
        return out;
    }
    out.positions = chain.positions;
    out.values.resize(n, n);
    if (const auto* lay = std::get_if<LayeredReservoir>(&model)) {
        // One solver for the whole matrix.
        const HelmholtzSolver solver(lay->stack, lay->omega);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                out.values(i, j) = lay->rate_scale * solver.green(chain.positions[i], chain.positions[j]);
                out.values(j, i) = out.values(i, j);
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            out.values(i, j) = coupling(model, chain.positions[i], chain.positions[j]);
            out.values(j, i) = out.values(i, j);
        }
    }
    return out;
}

CouplingMatrix coupling_from_matrix(CMatrix values) {
    if (values.rows() != values.cols() || values.rows() == 0)
        throw Error(ErrorKind::Validation, "coupling matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < values.cols(); ++j) {
            if (values(i, j) != values(j, i))
                throw Error(ErrorKind::Validation, "coupling matrix must be exactly symmetric");
        }
    }
    CouplingMatrix out;
    out.values = std::move(values);
    return out;
}

CMatrix ModeDecomposition::reconstruct() const {
    const auto n = eigenvectors.rows();
    CMatrix g = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
        g += eigenvalues[k] * eigenvectors.col(k) * eigenvectors.col(k).transpose();
    return g;
}

namespace {

Complex tdot(const CVector& a, const CVector& b) { return (a.array() * b.array()).sum(); }

// Deterministic overall sign: the first (near-)largest component gets Re > 0,
// or Im > 0 when its real part vanishes.
void fix_sign(Eigen::Ref<CVector> v) {
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) >= (1.0 - 1e-8) * vmax) {
            const Complex c = v[i];
            const bool flip = std::abs(c.real()) > 1e-12 * vmax ? c.real() < 0.0 : c.imag() < 0.0;
            if (flip) v = -v;
            return;
        }
    }
}

Complex principal_root(Complex z) {
    Complex r = std::sqrt(z);
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
    return r;
}

}  // namespace

EigenResult eigen_solve(const CMatrix& g, bool vectors) {
    Eigen::ComplexEigenSolver<CMatrix> es(g, vectors);
    if (es.info() == Eigen::Success) return {es.eigenvalues(), vectors ? es.eigenvectors() : CMatrix()};
    const double scale = std::max(g.norm(), 1e-300);
    for (const Complex factor : {Complex(0.61, 0.37), Complex(-0.43, 0.29), Complex(1.7, -0.83)}) {
        const Complex shift = factor * scale;
        CMatrix shifted = g;
        shifted.diagonal().array() += shift;
        es.compute(shifted, vectors);
        if (es.info() != Eigen::Success) continue;
        CVector values = es.eigenvalues().array() - shift;
        return {std::move(values), vectors ? es.eigenvectors() : CMatrix()};
    }
    throw Error(ErrorKind::Degenerate, "eigen decomposition did not converge");
}

ModeDecomposition decompose(const CMatrix& g) {
    const Eigen::Index n = g.rows();
    if (n == 0 || g.cols() != n) throw Error(ErrorKind::Validation, "decompose needs a square non-empty matrix");
    if (!g.allFinite()) throw Error(ErrorKind::Validation, "coupling matrix has non-finite entries");

    EigenResult es = eigen_solve(g, true);
    CVector lambda = std::move(es.values);
    CMatrix vecs = std::move(es.vectors);

    // Cluster nearly equal eigenvalues (single linkage).
    const double scale = std::max(g.norm(), std::numeric_limits<double>::min());
    const double tol = 1e-8 * scale;
    std::vector<Eigen::Index> cluster(n);
    std::iota(cluster.begin(), cluster.end(), Eigen::Index{0});
    auto root = [&](Eigen::Index a) {
        while (cluster[a] != a) a = cluster[a] = cluster[cluster[a]];
        return a;
    };
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            if (std::abs(lambda[a] - lambda[b]) < tol) cluster[root(b)] = root(a);
        }
    }

    ModeDecomposition out;
    out.eigenvalues = lambda;
    out.eigenvectors.resize(n, n);
    out.min_transpose_norm = std::numeric_limits<double>::infinity();

    std::vector<bool> done(n, false);
    for (Eigen::Index a = 0; a < n; ++a) {
        if (done[a]) continue;
        std::vector<Eigen::Index> members;
        for (Eigen::Index b = a; b < n; ++b) {
            if (!done[b] && root(b) == root(a)) members.push_back(b);
        }
        // Pivoted modified Gram-Schmidt under the transpose product.
        std::vector<CVector> pool;
        for (auto m : members) pool.push_back(vecs.col(m).normalized());
        // Cluster eigenvalue: mean, so degenerate modes share one value.
        Complex mean(0.0, 0.0);
        for (auto m : members) mean += lambda[m];
        mean /= static_cast<double>(members.size());

        for (auto slot : members) {
            std::size_t best = 0;
            double best_norm = -1.0;
            for (std::size_t p = 0; p < pool.size(); ++p) {
                const double t = std::abs(tdot(pool[p], pool[p])) / pool[p].squaredNorm();
                if (t > best_norm) {
                    best_norm = t;
                    best = p;
                }
            }
            CVector u = pool[best];
            std::size_t drop = best;
            if (best_norm < quasi_defective_threshold && pool.size() > 1) {
                // Isotropic pool: a pair sum can still have v^T v != 0.
                double pair_norm = best_norm;
                for (std::size_t p = 0; p < pool.size(); ++p) {
                    for (std::size_t q = p + 1; q < pool.size(); ++q) {
                        const CVector s = pool[p] + pool[q];
                        const double t = std::abs(tdot(s, s)) / s.squaredNorm();
                        if (t > pair_norm) {
                            pair_norm = t;
                            u = s;
                            drop = p;
                        }
                    }
                }
                best_norm = pair_norm;
            }
            out.min_transpose_norm = std::min(out.min_transpose_norm, best_norm);
            if (best_norm < quasi_defective_threshold) throw QuasiDefectiveError(static_cast<std::size_t>(slot), best_norm);
            u /= principal_root(tdot(u, u));
            fix_sign(u);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(drop));
            for (auto& w : pool) {
                w -= tdot(u, w) * u;
                const double wn = w.norm();
                if (wn > 0.0) w /= wn;
            }
            out.eigenvectors.col(slot) = u;
            if (members.size() > 1) out.eigenvalues[slot] = mean;
            done[slot] = true;
        }
    }

    // Sort: descending Im, then descending Re.
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const Complex la = out.eigenvalues[a], lb = out.eigenvalues[b];
        if (la.imag() != lb.imag()) return la.imag() > lb.imag();
        return la.real() > lb.real();
    });
    CVector sorted_l(n);
    CMatrix sorted_v(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sorted_l[k] = out.eigenvalues[order[k]];
        sorted_v.col(k) = out.eigenvectors.col(order[k]);
    }
    out.eigenvalues = std::move(sorted_l);
    out.eigenvectors = std::move(sorted_v);
    out.completeness_residual =
        (out.eigenvectors * out.eigenvectors.transpose() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    return out;
}

ModeDecomposition tridiagonal_modes(std::size_t n, double j_max, double chi) {
    if (n == 0) throw Error(ErrorKind::Validation, "tridiagonal_modes needs n >= 1");
    if (!(chi >= 0.0 && chi < 1.0)) throw Error(ErrorKind::Validation, "tridiagonal_modes needs 0 <= chi < 1");
    const auto N = static_cast<Eigen::Index>(n);
    const double np1 = static_cast<double>(n + 1);
    std::vector<std::pair<double, CVector>> modes;
    for (Eigen::Index xi = 1; xi <= N; ++xi) {
        const double lam = j_max + 2.0 * j_max * chi * std::cos(static_cast<double>(xi) * pi / np1);
        CVector v(N);
        for (Eigen::Index j = 1; j <= N; ++j)
            v[j - 1] = std::sqrt(2.0 / np1) * std::sin(static_cast<double>(xi * j) * pi / np1);
        fix_sign(v);
        modes.emplace_back(lam, std::move(v));
    }
    std::stable_sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    ModeDecomposition out;
    out.eigenvalues.resize(N);
    out.eigenvectors.resize(N, N);
    for (Eigen::Index k = 0; k < N; ++k) {
        out.eigenvalues[k] = modes[k].first;
        out.eigenvectors.col(k) = modes[k].second;
    }
    out.min_transpose_norm = 1.0;
    out.completeness_residual =
        (out.eigenvectors * out.eigenvectors.transpose() - CMatrix::Identity(N, N)).cwiseAbs().maxCoeff();
    return out;
}

std::vector<ModeLabel> classify_modes(const ModeDecomposition& modes, double relative_threshold) {
    double max_rate = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) max_rate = std::max(max_rate, modes.rate(k));
    std::vector<ModeLabel> out;
    out.reserve(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double rate = modes.rate(k);
        const bool bright = max_rate > 0.0 && rate >= relative_threshold * max_rate;
        out.push_back({k, modes.eigenvalues[static_cast<Eigen::Index>(k)], modes.shift(k), rate, bright});
    }
    return out;
}

}  // namespace wgqed
