// collective.hpp - coupling matrix and its complex-symmetric mode decomposition

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "wgqed/greens.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

/// N identical emitters. Positions are sorted on construction; original_index[k]
/// is the input index of the k-th sorted emitter.
struct EmitterChain {
    std::vector<double> positions;
    std::vector<std::size_t> original_index;
    double gamma_prime = 1.0;

    static EmitterChain from_positions(std::vector<double> positions, double gamma_prime);
    static EmitterChain regular(std::size_t n, double spacing, double gamma_prime, double offset = 0.0);

    std::size_t size() const { return positions.size(); }
};

struct CouplingMatrix {
    CMatrix values;
    std::vector<double> positions;                // sorted, empty for tabulated models
    std::shared_ptr<const ReservoirModel> model;  // provenance
    double probe_detuning = 0.0;
    bool offdiagonal_zeroed = false;

    std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
    Complex trace() const { return values.trace(); }
};

/// g_ij for i <= j, mirrored. For a TabulatedCoupling the entries are taken
/// at `probe_detuning`; position models ignore it.
CouplingMatrix build_coupling_matrix(const EmitterChain& chain, const ReservoirModel& model,
                                     double probe_detuning = 0.0);

/// Wrap an arbitrary complex symmetric matrix (throws if not symmetric).
CouplingMatrix coupling_from_matrix(CMatrix values);

struct ModeDecomposition {
    CVector eigenvalues;   // lambda_xi, sorted by descending Im then descending Re
    CMatrix eigenvectors;  // columns v_xi with v^T v = 1
    double min_transpose_norm = 0.0;    // min |v^T v| before normalization
    double completeness_residual = 0.0; // max |sum v v^T - 1|

    std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
    double shift(std::size_t xi) const { return eigenvalues[xi].real(); }
    double rate(std::size_t xi) const { return 2.0 * eigenvalues[xi].imag(); }

    /// Sum lambda v v^T.
    CMatrix reconstruct() const;
};

/// Eigenvectors with |v^T v| below this are reported as quasi-defective.
inline constexpr double quasi_defective_threshold = 1e-10;

ModeDecomposition decompose(const CMatrix& g);
inline ModeDecomposition decompose(const CouplingMatrix& g) { return decompose(g.values); }

/// Nearest-neighbour Toeplitz approximation of the bandgap matrix.
ModeDecomposition tridiagonal_modes(std::size_t n, double j_max, double chi);

struct ModeLabel {
    std::size_t index;
    Complex eigenvalue;
    double shift;
    double rate;
    bool bright;
};

/// Dark when rate < relative_threshold * max rate (all dark if max rate <= 0).
std::vector<ModeLabel> classify_modes(const ModeDecomposition& modes, double relative_threshold = 1e-6);

}  // namespace wgqed
