#pragma once

#include <span>
#include <string>
#include <vector>

#include "mcmcert/form.hpp"
#include "mcmcert/matrix.hpp"

namespace mcmcert {

using FormGrid = std::vector<std::vector<HomogeneousForm>>;

/// (+)_k O(twists[k]) on P^n. May be empty (the zero sheaf).
struct LineBundleSum {
    int n = 0;
    std::vector<int> twists;
};

/// E = coker( phi : (+)_j O(a_j) -> (+)_i O(b_i) ) on P^n.
///
/// phi is a q x s grid (q = #target, s = #source) with
/// deg phi[i][j] = b_i - a_j. Construction checks the degrees, that the
/// rank q - s is at least 1, and that phi(P) has full column rank s at some
/// sampled point, i.e. phi is injective as a map of sheaves. Local freeness
/// of E is a separate question (see local_freeness_probe).
class PresentedBundle {
public:
    PresentedBundle(int n, std::vector<int> source_twists, std::vector<int> target_twists,
                    FormGrid phi, std::string provenance);

    /// O(d) presented as coker(0 -> O(d)).
    static PresentedBundle line_bundle(int n, int d);

    int ambient_dim() const { return n_; }
    const std::vector<int>& source_twists() const { return source_; }
    const std::vector<int>& target_twists() const { return target_; }
    LineBundleSum source() const { return {n_, source_}; }
    LineBundleSum target() const { return {n_, target_}; }
    const FormGrid& phi() const { return phi_; }
    const std::string& provenance() const { return provenance_; }
    int rank() const { return static_cast<int>(target_.size() - source_.size()); }

    /// E(k). The provenance gains a "(k)" suffix unless overridden.
    PresentedBundle twisted(int k, std::string provenance = {}) const;
    /// E (+) F, block-diagonal presentation.
    PresentedBundle direct_sum(const PresentedBundle& other, std::string provenance = {}) const;

    /// The scalar matrix phi(P), q x s.
    DenseMatrix evaluate_at(std::span<const mpq_class> point, const Field& field) const;

private:
    int n_;
    std::vector<int> source_;
    std::vector<int> target_;
    FormGrid phi_;
    std::string provenance_;
};

}  // namespace mcmcert
