#pragma once

#include <Eigen/Core>
#include <vector>

#include "bws/config.hpp"
#include "bws/signed_log.hpp"
#include "bws/space.hpp"

namespace bws {

/// Dense truncation of [B_w^nu] over the bilateral window. Column n carries
/// A_{n,nu} at row n-nu, C_{n,nu} at row n-nu+1, and the alternating
/// C_{n,nu} * prod(b/a) tail below; entries above the nu-th superdiagonal
/// vanish.
struct TruncatedMatrix {
    Window window;
    int power = 1;
    BasisVariant variant = BasisVariant::SplitAffine;
    Eigen::MatrixXd entries;     // (row, col) = (window.to_row(i), window.to_row(n))
    double truncation_bound = 0; // sup of tail entries dropped past the window edge

    double at(int row_index, int col_index) const {
        return entries(window.to_row(row_index), window.to_row(col_index));
    }
};

/// Diagonal element c_n = w_{n+1} b_n / a_n - w_n b_{n-1} / a_{n-1}
/// (b taken as 0 outside the variant's affine range).
double c_coefficient(int n, const SpaceContext& ctx);

/// A_{n,nu} = w_n ... w_{n-nu+1} a_n / a_{n-nu}.
SignedLog a_coefficient(int n, int nu, const SpaceContext& ctx);

/// C_{n,nu} = w_{n+1}...w_{n-nu+2} b_n / a_{n-nu+1}
///          - w_n...w_{n-nu+1} a_n b_{n-nu} / (a_{n-nu} a_{n-nu+1});
/// the zero-extended b reproduces the published case split (0 for n <= -1 in
/// the split variant, single term for 0 <= n <= nu-1).
SignedLog c_power_coefficient(int n, int nu, const SpaceContext& ctx);

/// Assemble the window truncation of [B_w^nu]. SplitAffine uses the closed
/// column formulas for every nu; FullAffine has a closed form only for nu = 1
/// and computes higher powers by iterated multiplication.
/// `threads` > 1 parallelizes across columns (bit-identical results).
TruncatedMatrix assemble_matrix(const SpaceContext& ctx, int nu, int threads = 1);

struct ApplyResult {
    BilateralVector vec;              // Schauder-tagged image
    std::vector<bool> edge_tainted;   // per window row: within nu of an edge
    double tainted_fraction(const SpaceParams& params) const;
};

/// Apply [B_w^nu] to a Schauder vector through the closed coordinate formula
/// (not an entrywise matrix multiply), accumulating in SignedLog. Coordinates
/// within nu of a window edge are flagged edge-tainted.
ApplyResult apply(const SpaceContext& ctx, int nu, const BilateralVector& v);

/// Oracle path: applies the assembled nu = 1 truncation nu times.
BilateralVector apply_iterated(const SpaceContext& ctx, int nu, const BilateralVector& v);

/// [B_w] = T_{-1} + D + T_1 + T_2 + ... restricted to the window:
/// T_{-1} is the weighted backward shift with weights alpha_n = w_{n+1} a_{n+1} / a_n,
/// D the diagonal of c_n, and T_i the i-th subdiagonal piece with
/// ||T_i|| = sup_n |c_n b_n...b_{n+i-1} / (a_{n+1}...a_{n+i})|.
struct Decomposition {
    Window window;
    std::vector<double> alpha;    // indexed by window rows (alpha_n, n in [lo, hi])
    std::vector<double> c;        // c_n over the window
    std::vector<double> t_norms;  // ||T_i||, i = 1..i_max
    double tail_bound = 0.0;      // geometric bound for sum_{i > i_max} ||T_i||
    bool tail_bound_valid = false;
    // Compact-perturbation evidence: c_n and the T_i entries must tend to 0 as
    // |n| grows for the essential-spectrum identification to apply.
    enum class Compactness { Holds, Fails, Inconclusive };
    Compactness compactness = Compactness::Inconclusive;
};

Decomposition decompose(const SpaceContext& ctx, int i_max);

struct EssentialSpectrumEstimate {
    double inner = 0.0;
    double outer = 0.0;
    bool meets_unit_circle = false;
    int nu_used = 0;       // geometric-mean window length
    bool reliable = false; // false when the compactness indicator did not Hold
};

/// Finite-horizon annulus estimate from the weights alpha via sliding
/// geometric means at the largest feasible length for the window.
/// Throws NumericError when some alpha_n = 0.
EssentialSpectrumEstimate essential_spectrum_estimate(const Decomposition& dec);

}  // namespace bws
