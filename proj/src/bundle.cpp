#include "mcmcert/bundle.hpp"

#include "mcmcert/error.hpp"
#include "mcmcert/random.hpp"

namespace mcmcert {

namespace {

constexpr int kInjectivityTrials = 16;
constexpr long kPointBound = 1000;
constexpr std::uint64_t kInjectivitySeed = 0x1a7ec71eULL;

}  // namespace

PresentedBundle::PresentedBundle(int n, std::vector<int> source_twists,
                                 std::vector<int> target_twists, FormGrid phi,
                                 std::string provenance)
    : n_(n),
      source_(std::move(source_twists)),
      target_(std::move(target_twists)),
      phi_(std::move(phi)),
      provenance_(std::move(provenance)) {
    if (n_ < 1) throw UnsupportedDimension("presented bundles need n >= 1");
    if (target_.size() <= source_.size()) {
        throw Error("presentation of " + provenance_ + " has rank " +
                    std::to_string(static_cast<long>(target_.size()) -
                                   static_cast<long>(source_.size())) +
                    " < 1");
    }
    if (phi_.size() != target_.size()) throw Error("phi needs one row per target summand");
    for (std::size_t i = 0; i < target_.size(); ++i) {
        if (phi_[i].size() != source_.size()) throw Error("phi needs one column per source summand");
        for (std::size_t j = 0; j < source_.size(); ++j) {
            const auto& f = phi_[i][j];
            if (f.ambient_dim() != n_) throw Error("phi entry over the wrong ambient space");
            int want = target_[i] - source_[j];
            if (f.is_zero()) {
                phi_[i][j] = HomogeneousForm(n_, want);
            } else if (f.degree() != want) {
                throw DegreeMismatch("phi[" + std::to_string(i) + "][" + std::to_string(j) +
                                     "] has degree " + std::to_string(f.degree()) + ", needs " +
                                     std::to_string(want));
            }
        }
    }
    if (source_.empty()) return;
    for (int t = 0; t < kInjectivityTrials; ++t) {
        SeededRng rng(derive_seed(kInjectivitySeed, static_cast<std::uint64_t>(t)));
        auto point = rng.integer_point(n_, kPointBound);
        if (mcmcert::rank(evaluate_at(point, Field::rationals())) == source_.size()) return;
    }
    throw GenericityFailure("phi of " + provenance_ +
                            " is not generically injective (rank drop at every sampled point)");
}

PresentedBundle PresentedBundle::line_bundle(int n, int d) {
    FormGrid phi(1);
    return PresentedBundle(n, {}, {d}, phi, "line-bundle(n=" + std::to_string(n) + ",d=" +
                                                std::to_string(d) + ")");
}

PresentedBundle PresentedBundle::twisted(int k, std::string provenance) const {
    std::vector<int> a = source_;
    std::vector<int> b = target_;
    for (int& x : a) x += k;
    for (int& x : b) x += k;
    if (provenance.empty()) provenance = provenance_ + "(" + std::to_string(k) + ")";
    return PresentedBundle(n_, std::move(a), std::move(b), phi_, std::move(provenance));
}

PresentedBundle PresentedBundle::direct_sum(const PresentedBundle& other,
                                            std::string provenance) const {
    if (other.n_ != n_) throw Error("direct sum of bundles on different spaces");
    std::vector<int> a = source_;
    a.insert(a.end(), other.source_.begin(), other.source_.end());
    std::vector<int> b = target_;
    b.insert(b.end(), other.target_.begin(), other.target_.end());
    FormGrid phi(b.size(), std::vector<HomogeneousForm>(a.size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            bool top = i < target_.size();
            bool left = j < source_.size();
            if (top && left) phi[i][j] = phi_[i][j];
            else if (!top && !left) phi[i][j] = other.phi_[i - target_.size()][j - source_.size()];
            else phi[i][j] = HomogeneousForm(n_, b[i] - a[j]);
        }
    }
    if (provenance.empty()) provenance = "sum(" + provenance_ + "," + other.provenance_ + ")";
    return PresentedBundle(n_, std::move(a), std::move(b), std::move(phi), std::move(provenance));
}

DenseMatrix PresentedBundle::evaluate_at(std::span<const mpq_class> point,
                                         const Field& field) const {
    DenseMatrix m(field, target_.size(), source_.size());
    for (std::size_t i = 0; i < target_.size(); ++i) {
        for (std::size_t j = 0; j < source_.size(); ++j) m.set(i, j, phi_[i][j].evaluate(point));
    }
    return m;
}

}  // namespace mcmcert
