#pragma once

#include "k3forms/hermitian.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace k3 {

struct ConditionRecord {
    std::string name;
    bool passed = false;
    std::string details;
};

struct K3Verdict {
    bool is_k3_type = false;
    std::string route; // "theorem1" | "corollary4" | "corollary4cm"
    std::vector<ConditionRecord> conditions;
    std::vector<std::string> warnings;
};

struct SignatureCheck {
    bool passed = false;
    std::optional<int> sigma0; // index into real_field()->real_embeddings()
    std::string details;
};

// Totally real: m >= 3, exactly one sigma with (2, m-2), all others (0, m).
// CM: m >= 1, exactly one conjugate pair with (1, m-1), all others (0, m).
SignatureCheck signature_condition(const HermitianSpace& space);

// Decision via the lattice-embedding route: trace form into Lambda (x) Q
// plus the signature condition.
K3Verdict is_k3_type(const HermitianSpace& space);

// Independent decision via the direct dimension/edge conditions.
K3Verdict corollary_route(const HermitianSpace& space);

enum class AdmissibleKind { TotallyReal, CM };

struct AdmissiblePairs {
    // (m, r) for totally real, (m, s) for CM; fields of degree >= 2 only.
    std::set<std::pair<int, int>> necessary;
    std::set<std::pair<int, int>> sufficient;
};

AdmissiblePairs enumerate_admissible(AdmissibleKind kind);

struct PeriodWitness {
    int sigma0 = 0;
    std::vector<double> f_real, f_imag; // coordinates over the rational basis
    double bff_residual = 0;            // |B(f,f)|
    double bfbar = 0;                   // B(f, conj(f))
    double tolerance = 0;
    std::string case_label;             // "totally_real_m3" | "totally_real" | "cm"
    std::optional<double> x3;           // m = 3 totally real parameter
};

// Numeric period vector with B(f,f) ~ 0 and B(f,conj f) > 0, built from the
// sorted diagonalization at the distinguished embedding. Requires the
// signature condition; m = 2 totally real is rejected (see case3_obstruction).
PeriodWitness construct_period_witness(const HermitianSpace& space, std::uint64_t seed,
                                       double tolerance);

struct Case3Obstruction {
    TRGram alpha;       // [[0, -d1], [d2, 0]] over E
    double eigenvalue;  // sqrt(-sigma0(d1) * sigma0(d2))
    double residual;    // |alpha(f) - mu f| for the isotropic witness f
};

// The extra Hodge endomorphism killing the m = 2 totally real case.
Case3Obstruction case3_obstruction(const HermitianSpace& space);

} // namespace k3
