#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qflow/rng.hpp"

namespace qflow {

using Complex = std::complex<double>;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered list of factor dimensions. Factor indices are 1-based; factor 1
/// is the most significant (slowest-varying) index of the flattened vector.
class FactorSpace {
  public:
    FactorSpace() = default;
    explicit FactorSpace(std::vector<long> dims);

    const std::vector<long>& dims() const { return dims_; }
    int factor_count() const { return static_cast<int>(dims_.size()); }
    long dim(int factor) const { return dims_.at(factor - 1); } // 1-based
    long total() const { return total_; }

    // Index of a composite state from per-factor digits (1-based factors).
    long flatten(const std::vector<long>& digits) const;
    std::vector<long> unflatten(long index) const;

    bool operator==(const FactorSpace& other) const { return dims_ == other.dims_; }

  private:
    std::vector<long> dims_;
    std::vector<long> strides_;
    long total_ = 1;
};

/// Strictly increasing list of 1-based factor indices.
class SubsetSelector {
  public:
    SubsetSelector(std::initializer_list<int> factors)
        : SubsetSelector(std::vector<int>(factors)) {}
    explicit SubsetSelector(std::vector<int> factors);

    const std::vector<int>& factors() const { return factors_; }
    int count() const { return static_cast<int>(factors_.size()); }
    bool contains(int factor) const;
    std::vector<int> complement(int n) const;
    void check_against(const FactorSpace& space) const;

  private:
    std::vector<int> factors_;
};

/// Pure state on an ordered list of finite-dimensional factors, dense
/// complex amplitudes. A 0-factor state is a scalar (one amplitude).
class MultiState {
  public:
    MultiState() : amp_(1, Complex(0, 0)) {}
    MultiState(FactorSpace space, std::vector<Complex> amp);

    static MultiState zero(FactorSpace space);
    static MultiState basis(FactorSpace space, long index);
    static MultiState scalar(Complex value);
    static MultiState single(std::vector<Complex> amp); // one factor

    const FactorSpace& space() const { return space_; }
    const std::vector<Complex>& amp() const { return amp_; }
    Complex amp(long i) const { return amp_[i]; }
    long dim() const { return space_.total(); }

    double norm() const;
    bool normalized(double tol = 1e-9) const;
    bool is_zero(double tol = 1e-12) const;
    MultiState normalized_copy() const;
    MultiState scaled(Complex c) const;

  private:
    FactorSpace space_;
    std::vector<Complex> amp_;
};

struct MeasurementRecord {
    long outcome = 0;          // basis index
    double probability = 0.0;  // Born probability of the outcome
    MultiState post;           // normalized post-measurement state
    long bits = 0;             // classical broadcast (the outcome index)
};

enum class SplitStatus { Product, Entangled, Zero };

struct SplitResult {
    SplitStatus status = SplitStatus::Entangled;
    MultiState left;  // on the selected factors
    MultiState right; // on the complement; unit norm, nonnegative pivot phase
    bool is_product() const { return status == SplitStatus::Product; }
};

MultiState tensor(const std::vector<MultiState>& parts);
MultiState tensor(const MultiState& a, const MultiState& b);

/// Contraction of omega (on the selected factors) against phi; anti-linear
/// in omega, linear in phi. With all factors selected the result is the
/// 0-factor scalar <omega, phi>.
MultiState partial_inner(const MultiState& omega, const SubsetSelector& sel,
                         const MultiState& phi);

Complex inner(const MultiState& a, const MultiState& b);

/// |lambda><omega| acting on the selected factors of phi. No renormalization.
MultiState apply_rank_one(const MultiState& lambda, const MultiState& omega,
                          const SubsetSelector& sel, const MultiState& phi);

/// |omega><omega| on the selected factors. Sets warned=true when omega is
/// not normalized (the projector identity then fails).
MultiState apply_projector(const MultiState& omega, const SubsetSelector& sel,
                           const MultiState& phi, bool* warned = nullptr);

/// Projective measurement of the selected factors in an orthonormal,
/// complete basis. Throws on a bad basis or unnormalized phi.
MeasurementRecord measure_in_basis(const std::vector<MultiState>& basis,
                                   const SubsetSelector& sel,
                                   const MultiState& phi, Rng& rng);

/// Pivot-based rank-1 split of phi across the cut given by `left`. Gauge:
/// the right factor has unit norm and nonnegative real pivot phase.
SplitResult split_across_cut(const MultiState& phi, const SubsetSelector& left,
                             double rel_tol = 1e-9);

/// Assembles a full state from independent pieces placed at disjoint slot
/// lists that together cover every factor. Slot lists are 1-based and
/// strictly increasing; a piece's k-th factor lands at its k-th slot.
MultiState assemble(const FactorSpace& space,
                    const std::vector<std::pair<std::vector<int>, MultiState>>& pieces);

MultiState random_state(const FactorSpace& space, Rng& rng);
MultiState random_product_state(const FactorSpace& space, Rng& rng);

} // namespace qflow
