#pragma once

#include "k3forms/number_field.hpp"

#include <variant>

namespace k3 {

using TRGram = std::vector<std::vector<FieldElement>>;
using CMGram = std::vector<std::vector<CMElement>>;

// Nondegenerate hermitian space (V, Phi) over a totally real field (identity
// involution) or a CM field. Linear in the first slot, conjugate-linear in
// the second; Gram(j,i) = conj(Gram(i,j)).
class HermitianSpace {
public:
    static HermitianSpace make(FieldPtr totally_real_field, TRGram gram);
    static HermitianSpace make(CMFieldPtr cm_field, CMGram gram);

    bool is_cm() const { return std::holds_alternative<CMFieldPtr>(field_); }
    int dim() const { return m_; }

    const FieldPtr& tr_field() const;
    const CMFieldPtr& cm_field() const;

    // E for totally real spaces, E0 for CM spaces. The diagonal entries and
    // all localization data live here.
    const FieldPtr& real_field() const;
    // r for totally real (embeddings of E), s for CM (conjugate pairs).
    int embedding_count() const;

    // Diagonalization d_1..d_m, involution-fixed, as elements of real_field().
    const std::vector<FieldElement>& diagonal() const { return diag_; }

    // Per-embedding signature of Phi_sigma, ordered like
    // real_field()->real_embeddings().
    const std::vector<Signature>& localization_signatures() const { return locsig_; }

    QuadraticSpace trace_form() const;
    std::vector<QuadraticSpace> trace_form_decomposition() const;

    // Corollary form (x,y) -> Phi(x,y) + Phi(y,x) over E0, as an m x m
    // symmetric space; CM spaces only. Throws InputError when degenerate.
    HermitianSpace phi_zero() const;

    const TRGram& tr_gram() const;
    const CMGram& cm_gram() const;

private:
    HermitianSpace() = default;
    std::variant<FieldPtr, CMFieldPtr> field_;
    std::variant<TRGram, CMGram> gram_;
    int m_ = 0;
    std::vector<FieldElement> diag_;
    std::vector<Signature> locsig_;
};

} // namespace k3
