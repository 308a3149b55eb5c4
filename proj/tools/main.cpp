#include "k3forms/io.hpp"
#include "k3forms/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

k3::ParsedProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw k3::InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw k3::InputError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return k3::parse_problem_json(j);
    } catch (const json::exception& e) {
        throw k3::InputError(std::string("schema violation: ") + e.what());
    }
}

const k3::HermitianSpace& require_hermitian(const k3::ParsedProblem& p) {
    if (!p.hermitian)
        throw k3::InputError("this subcommand needs a hermitian problem (\"field\" + \"form\")");
    return *p.hermitian;
}

k3::QuadraticSpace problem_trace_form(const k3::ParsedProblem& p) {
    if (p.hermitian) return p.hermitian->trace_form();
    if (p.quadratic) return *p.quadratic;
    throw k3::InputError("no form in the problem file");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decide whether a hermitian form over a totally real or CM field is of K3 type"};
    app.require_subcommand(1);

    std::string decide_file, inv_file, tf_file, wit_file;
    std::string enum_case;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    bool seed_set = false, tol_set = false;

    CLI::App* c_decide = app.add_subcommand("decide", "full K3-type verdict (JSON)");
    c_decide->add_option("file", decide_file, "problem JSON file")->required();
    CLI::App* c_inv = app.add_subcommand("invariants", "trace-form rank/signature/disc/Hasse");
    c_inv->add_option("file", inv_file, "problem or raw-gram JSON file")->required();
    CLI::App* c_tf = app.add_subcommand("trace-form", "full rational Gram of the trace form");
    c_tf->add_option("file", tf_file, "problem or raw-gram JSON file")->required();
    CLI::App* c_enum = app.add_subcommand("enumerate", "admissible (m, degree) pair tables");
    c_enum->add_option("--case", enum_case, "tr or cm")->required()
        ->check(CLI::IsMember({"tr", "cm"}));
    CLI::App* c_wit = app.add_subcommand("witness", "numeric period witness (JSON)");
    c_wit->add_option("file", wit_file, "problem JSON file")->required();
    c_wit->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_set = true; });
    c_wit->add_option("--tol", tol, "numeric tolerance")->each([&](const std::string&) { tol_set = true; });
    CLI::App* c_lambda = app.add_subcommand("lambda", "invariants of the K3 lattice over Q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (c_decide->parsed()) {
            emit(k3::verdict_json(k3::is_k3_type(require_hermitian(load_problem(decide_file)))));
        } else if (c_inv->parsed()) {
            emit(k3::invariants_json(problem_trace_form(load_problem(inv_file))));
        } else if (c_tf->parsed()) {
            emit(k3::gram_json(problem_trace_form(load_problem(tf_file))));
        } else if (c_enum->parsed()) {
            auto kind = enum_case == "tr" ? k3::AdmissibleKind::TotallyReal : k3::AdmissibleKind::CM;
            emit(k3::admissible_json(k3::enumerate_admissible(kind)));
        } else if (c_wit->parsed()) {
            k3::ParsedProblem p = load_problem(wit_file);
            const k3::HermitianSpace& space = require_hermitian(p);
            if (!seed_set && p.seed) seed = *p.seed;
            if (!tol_set && p.tolerance) tol = *p.tolerance;
            if (!space.is_cm() && space.dim() == 2) {
                // no period vector exists here; report the obstructing endomorphism
                json j = k3::obstruction_json(k3::case3_obstruction(space));
                j["case"] = "totally_real_m2_obstruction";
                emit(j);
            } else {
                emit(k3::witness_json(k3::construct_period_witness(space, seed, tol)));
            }
        } else if (c_lambda->parsed()) {
            emit(k3::invariants_json(k3::lambda_space()));
        }
    } catch (const k3::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const k3::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
