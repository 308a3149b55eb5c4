#pragma once

#include "k3forms/decision.hpp"

#include "json.hpp"

#include <optional>

namespace k3 {

// A parsed problem file: either a hermitian space over a number field or a
// raw rational Gram matrix (accepted by `invariants` / `trace-form` for
// round-tripping).
struct ParsedProblem {
    std::optional<HermitianSpace> hermitian;
    std::optional<QuadraticSpace> quadratic;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
};

Rational parse_rational_json(const nlohmann::json& j);
ParsedProblem parse_problem_json(const nlohmann::json& j);

nlohmann::json rational_json(const Rational& q);
nlohmann::json gram_json(const QuadraticSpace& s);
nlohmann::json invariants_json(const QuadraticSpace& s);
nlohmann::json verdict_json(const K3Verdict& v);
nlohmann::json witness_json(const PeriodWitness& w);
nlohmann::json admissible_json(const AdmissiblePairs& p);
nlohmann::json obstruction_json(const Case3Obstruction& o);

// 17 significant digits, locale-independent.
std::string format_float(double x);

} // namespace k3
