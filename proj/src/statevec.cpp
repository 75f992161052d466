#include "qflow/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qflow {

namespace {
constexpr long kMaxTotalDim = 1L << 24;
} // namespace

FactorSpace::FactorSpace(std::vector<long> dims) : dims_(std::move(dims)) {
    total_ = 1;
    for (long d : dims_) {
        if (d < 1) {
            throw DimensionError("factor dimension must be >= 1");
        }
        if (total_ > kMaxTotalDim / d) {
            throw DimensionError("total dimension exceeds 2^24");
        }
        total_ *= d;
    }
    // Factor 1 most significant: stride of the last factor is 1.
    strides_.assign(dims_.size(), 1);
    for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i) {
        strides_[i] = strides_[i + 1] * dims_[i + 1];
    }
}

long FactorSpace::flatten(const std::vector<long>& digits) const {
    long idx = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        idx += digits[i] * strides_[i];
    }
    return idx;
}

std::vector<long> FactorSpace::unflatten(long index) const {
    std::vector<long> digits(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        digits[i] = (index / strides_[i]) % dims_[i];
    }
    return digits;
}

SubsetSelector::SubsetSelector(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw DimensionError("selector must be nonempty");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 1 || (i > 0 && factors_[i] <= factors_[i - 1])) {
            throw DimensionError("selector must be strictly increasing, 1-based");
        }
    }
}

bool SubsetSelector::contains(int factor) const {
    return std::binary_search(factors_.begin(), factors_.end(), factor);
}

std::vector<int> SubsetSelector::complement(int n) const {
    std::vector<int> out;
    for (int f = 1; f <= n; ++f) {
        if (!contains(f)) {
            out.push_back(f);
        }
    }
    return out;
}

void SubsetSelector::check_against(const FactorSpace& space) const {
    if (factors_.back() > space.factor_count()) {
        throw DimensionError("selector index out of range");
    }
}

MultiState::MultiState(FactorSpace space, std::vector<Complex> amp)
    : space_(std::move(space)), amp_(std::move(amp)) {
    if (static_cast<long>(amp_.size()) != space_.total()) {
        throw DimensionError("amplitude length does not match total dimension");
    }
    for (const Complex& c : amp_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DimensionError("non-finite amplitude");
        }
    }
}

MultiState MultiState::zero(FactorSpace space) {
    std::vector<Complex> amp(space.total(), Complex(0, 0));
    return MultiState(std::move(space), std::move(amp));
}

MultiState MultiState::basis(FactorSpace space, long index) {
    std::vector<Complex> amp(space.total(), Complex(0, 0));
    amp.at(index) = Complex(1, 0);
    return MultiState(std::move(space), std::move(amp));
}

MultiState MultiState::scalar(Complex value) {
    return MultiState(FactorSpace(), {value});
}

MultiState MultiState::single(std::vector<Complex> amp) {
    FactorSpace space({static_cast<long>(amp.size())});
    return MultiState(std::move(space), std::move(amp));
}

double MultiState::norm() const {
    double s = 0.0;
    for (const Complex& c : amp_) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

bool MultiState::normalized(double tol) const {
    double n2 = 0.0;
    for (const Complex& c : amp_) {
        n2 += std::norm(c);
    }
    return std::abs(n2 - 1.0) <= tol;
}

bool MultiState::is_zero(double tol) const { return norm() <= tol; }

MultiState MultiState::normalized_copy() const {
    double n = norm();
    if (n == 0.0) {
        throw DimensionError("cannot normalize the zero state");
    }
    return scaled(Complex(1.0 / n, 0));
}

MultiState MultiState::scaled(Complex c) const {
    std::vector<Complex> out(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        out[i] = amp_[i] * c;
    }
    return MultiState(space_, std::move(out));
}

MultiState tensor(const std::vector<MultiState>& parts) {
    if (parts.empty()) {
        throw DimensionError("tensor needs at least one part");
    }
    std::vector<long> dims;
    for (const MultiState& p : parts) {
        dims.insert(dims.end(), p.space().dims().begin(), p.space().dims().end());
    }
    FactorSpace space(std::move(dims)); // checks the overflow bound
    std::vector<Complex> amp(space.total(), Complex(1, 0));
    long block = space.total();
    long repeat = 1;
    for (const MultiState& p : parts) {
        long d = p.dim();
        block /= d;
        for (long r = 0; r < repeat; ++r) {
            for (long i = 0; i < d; ++i) {
                Complex v = p.amp(i);
                long base = (r * d + i) * block;
                for (long b = 0; b < block; ++b) {
                    amp[base + b] *= v;
                }
            }
        }
        repeat *= d;
    }
    return MultiState(std::move(space), std::move(amp));
}

MultiState tensor(const MultiState& a, const MultiState& b) { return tensor({a, b}); }

namespace {

// Strides of the selected / complement factors inside the full index.
struct CutIndexing {
    std::vector<long> sel_dims, sel_strides;
    std::vector<long> comp_dims, comp_strides;
    long sel_total = 1, comp_total = 1;

    CutIndexing(const FactorSpace& space, const SubsetSelector& sel) {
        sel.check_against(space);
        int n = space.factor_count();
        std::vector<long> strides(n, 1);
        for (int i = n - 2; i >= 0; --i) {
            strides[i] = strides[i + 1] * space.dims()[i + 1];
        }
        for (int f = 1; f <= n; ++f) {
            if (sel.contains(f)) {
                sel_dims.push_back(space.dim(f));
                sel_strides.push_back(strides[f - 1]);
                sel_total *= space.dim(f);
            } else {
                comp_dims.push_back(space.dim(f));
                comp_strides.push_back(strides[f - 1]);
                comp_total *= space.dim(f);
            }
        }
    }

    // Maps a flat index over `dims` (big-endian) to its offset in the full
    // index via `strides`.
    static long spread(long flat, const std::vector<long>& dims,
                       const std::vector<long>& strides) {
        long offset = 0;
        for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
            offset += (flat % dims[i]) * strides[i];
            flat /= dims[i];
        }
        return offset;
    }
};

void check_selected_dims(const MultiState& omega, const SubsetSelector& sel,
                         const MultiState& phi) {
    sel.check_against(phi.space());
    if (omega.space().factor_count() != sel.count()) {
        throw DimensionError("omega factor count does not match selector");
    }
    for (int k = 0; k < sel.count(); ++k) {
        if (omega.space().dims()[k] != phi.space().dim(sel.factors()[k])) {
            throw DimensionError("dimension mismatch at selected factor " +
                                 std::to_string(sel.factors()[k]));
        }
    }
}

} // namespace

MultiState partial_inner(const MultiState& omega, const SubsetSelector& sel,
                         const MultiState& phi) {
    check_selected_dims(omega, sel, phi);
    CutIndexing cut(phi.space(), sel);
    FactorSpace out_space(cut.comp_dims);
    std::vector<Complex> out(cut.comp_total, Complex(0, 0));
    for (long s = 0; s < cut.sel_total; ++s) {
        Complex w = std::conj(omega.amp(s));
        if (w == Complex(0, 0)) {
            continue;
        }
        long s_off = CutIndexing::spread(s, cut.sel_dims, cut.sel_strides);
        for (long c = 0; c < cut.comp_total; ++c) {
            long c_off = CutIndexing::spread(c, cut.comp_dims, cut.comp_strides);
            out[c] += w * phi.amp(s_off + c_off);
        }
    }
    return MultiState(std::move(out_space), std::move(out));
}

Complex inner(const MultiState& a, const MultiState& b) {
    if (!(a.space() == b.space())) {
        throw DimensionError("inner product dimension mismatch");
    }
    Complex s(0, 0);
    for (long i = 0; i < a.dim(); ++i) {
        s += std::conj(a.amp(i)) * b.amp(i);
    }
    return s;
}

MultiState apply_rank_one(const MultiState& lambda, const MultiState& omega,
                          const SubsetSelector& sel, const MultiState& phi) {
    check_selected_dims(lambda, sel, phi);
    MultiState contracted = partial_inner(omega, sel, phi);
    CutIndexing cut(phi.space(), sel);
    std::vector<Complex> out(phi.dim(), Complex(0, 0));
    for (long s = 0; s < cut.sel_total; ++s) {
        Complex l = lambda.amp(s);
        long s_off = CutIndexing::spread(s, cut.sel_dims, cut.sel_strides);
        for (long c = 0; c < cut.comp_total; ++c) {
            long c_off = CutIndexing::spread(c, cut.comp_dims, cut.comp_strides);
            out[s_off + c_off] = l * contracted.amp(c);
        }
    }
    return MultiState(phi.space(), std::move(out));
}

MultiState apply_projector(const MultiState& omega, const SubsetSelector& sel,
                           const MultiState& phi, bool* warned) {
    if (warned != nullptr) {
        *warned = !omega.normalized();
    }
    return apply_rank_one(omega, omega, sel, phi);
}

MeasurementRecord measure_in_basis(const std::vector<MultiState>& basis,
                                   const SubsetSelector& sel,
                                   const MultiState& phi, Rng& rng) {
    sel.check_against(phi.space());
    long sub_dim = 1;
    for (int f : sel.factors()) {
        sub_dim *= phi.space().dim(f);
    }
    if (static_cast<long>(basis.size()) != sub_dim) {
        throw DimensionError("basis is incomplete for the selected subproduct");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            Complex g = inner(basis[i], basis[j]);
            Complex expect = (i == j) ? Complex(1, 0) : Complex(0, 0);
            if (std::abs(g - expect) > 1e-9) {
                throw DimensionError("basis is not orthonormal");
            }
        }
    }
    if (!phi.normalized()) {
        throw DimensionError("measured state must be normalized");
    }

    std::vector<MultiState> contractions;
    std::vector<double> probs(basis.size());
    double total = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        contractions.push_back(partial_inner(basis[k], sel, phi));
        double n = contractions.back().norm();
        probs[k] = n * n;
        total += probs[k];
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw DimensionError("branch probabilities do not sum to 1");
    }

    double u = rng.uniform() * total;
    std::size_t outcome = basis.size() - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        acc += probs[k];
        if (u < acc && probs[k] > 0.0) {
            outcome = k;
            break;
        }
    }
    // A zero-probability branch cannot be selected: fall back to the last
    // branch with positive probability.
    while (probs[outcome] == 0.0 && outcome > 0) {
        --outcome;
    }

    MultiState projected =
        apply_rank_one(basis[outcome], basis[outcome], sel, phi);
    MeasurementRecord rec;
    rec.outcome = static_cast<long>(outcome);
    rec.probability = probs[outcome];
    rec.post = projected.normalized_copy();
    rec.bits = rec.outcome;
    return rec;
}

SplitResult split_across_cut(const MultiState& phi, const SubsetSelector& left,
                             double rel_tol) {
    left.check_against(phi.space());
    CutIndexing cut(phi.space(), left);
    SplitResult res;

    double max_abs = 0.0;
    long pivot_l = 0, pivot_r = 0;
    auto entry = [&](long l, long r) {
        return phi.amp(CutIndexing::spread(l, cut.sel_dims, cut.sel_strides) +
                       CutIndexing::spread(r, cut.comp_dims, cut.comp_strides));
    };
    for (long l = 0; l < cut.sel_total; ++l) {
        for (long r = 0; r < cut.comp_total; ++r) {
            double a = std::abs(entry(l, r));
            if (a > max_abs) {
                max_abs = a;
                pivot_l = l;
                pivot_r = r;
            }
        }
    }
    if (max_abs == 0.0) {
        res.status = SplitStatus::Zero;
        return res;
    }

    Complex pivot = entry(pivot_l, pivot_r);
    double tol = rel_tol * max_abs;
    for (long l = 0; l < cut.sel_total; ++l) {
        for (long r = 0; r < cut.comp_total; ++r) {
            Complex predicted = entry(l, pivot_r) * entry(pivot_l, r) / pivot;
            if (std::abs(entry(l, r) - predicted) > tol) {
                res.status = SplitStatus::Entangled;
                return res;
            }
        }
    }

    // Gauge: right factor unit norm with nonnegative real pivot phase.
    std::vector<Complex> right_raw(cut.comp_total);
    double right_norm2 = 0.0;
    for (long r = 0; r < cut.comp_total; ++r) {
        right_raw[r] = entry(pivot_l, r);
        right_norm2 += std::norm(right_raw[r]);
    }
    double right_norm = std::sqrt(right_norm2);
    Complex phase = right_raw[pivot_r] / std::abs(right_raw[pivot_r]);
    Complex gauge = right_norm * phase;
    std::vector<Complex> right(cut.comp_total);
    for (long r = 0; r < cut.comp_total; ++r) {
        right[r] = right_raw[r] / gauge;
    }
    std::vector<Complex> left_amp(cut.sel_total);
    for (long l = 0; l < cut.sel_total; ++l) {
        left_amp[l] = entry(l, pivot_r) * gauge / pivot;
    }

    res.status = SplitStatus::Product;
    res.left = MultiState(FactorSpace(cut.sel_dims), std::move(left_amp));
    res.right = MultiState(FactorSpace(cut.comp_dims), std::move(right));
    return res;
}

MultiState assemble(const FactorSpace& space,
                    const std::vector<std::pair<std::vector<int>, MultiState>>& pieces) {
    int n = space.factor_count();
    std::vector<int> owner(n + 1, -1);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto& slots = pieces[p].first;
        if (static_cast<int>(slots.size()) != pieces[p].second.space().factor_count()) {
            throw DimensionError("assemble: slot count does not match piece factors");
        }
        for (std::size_t k = 0; k < slots.size(); ++k) {
            int f = slots[k];
            if (f < 1 || f > n || owner[f] != -1) {
                throw DimensionError("assemble: slots must partition the factors");
            }
            if (pieces[p].second.space().dims()[k] != space.dim(f)) {
                throw DimensionError("assemble: dimension mismatch at slot " +
                                     std::to_string(f));
            }
            owner[f] = static_cast<int>(p);
        }
    }
    for (int f = 1; f <= n; ++f) {
        if (owner[f] == -1) {
            throw DimensionError("assemble: factor " + std::to_string(f) + " uncovered");
        }
    }
    std::vector<Complex> amp(space.total());
    for (long idx = 0; idx < space.total(); ++idx) {
        std::vector<long> digits = space.unflatten(idx);
        Complex v(1, 0);
        for (const auto& [slots, st] : pieces) {
            long sub = 0;
            for (std::size_t k = 0; k < slots.size(); ++k) {
                sub = sub * space.dim(slots[k]) + digits[slots[k] - 1];
            }
            v *= st.amp(sub);
        }
        amp[idx] = v;
    }
    return MultiState(space, std::move(amp));
}

MultiState random_state(const FactorSpace& space, Rng& rng) {
    std::vector<Complex> amp(space.total());
    for (long i = 0; i < space.total(); ++i) {
        amp[i] = Complex(rng.normal(), rng.normal());
    }
    return MultiState(space, std::move(amp)).normalized_copy();
}

MultiState random_product_state(const FactorSpace& space, Rng& rng) {
    std::vector<MultiState> parts;
    for (long d : space.dims()) {
        std::vector<Complex> amp(d);
        for (long i = 0; i < d; ++i) {
            amp[i] = Complex(rng.normal(), rng.normal());
        }
        parts.push_back(MultiState::single(std::move(amp)).normalized_copy());
    }
    return tensor(parts);
}

} // namespace qflow
