// kvpoly: Kauffman-Vogel polynomials of 4-valent rigid-vertex graph diagrams.

#include "kv/embedded_eval.hpp"
#include "kv/oracle.hpp"
#include "kv/planar_eval.hpp"
#include "kv/selftest.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;
constexpr int kExitDepth = 3;

kv::Diagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kv::ParseError(kv::ParseError::Kind::Syntax, 0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return kv::parse(buf.str());
}

int run(int argc, char** argv) {
    CLI::App app{"Kauffman-Vogel polynomial tool for .kvg diagram files"};
    app.require_subcommand(1);
    app.fallthrough();  // let subcommands accept the global --threads
    int threads = 1;
    app.add_option("--threads", threads, "reserved; evaluation is serial and deterministic");

    std::string eval_file, spec_name = "generic";
    std::uint64_t seed = 0;
    auto* eval_cmd = app.add_subcommand("eval", "print the polynomial of a diagram");
    eval_cmd->add_option("file", eval_file, "diagram in .kvg format")->required();
    eval_cmd->add_option("--spec", spec_name, "generic|planar-test|bracket|yamada");
    eval_cmd->add_option("--seed", seed, "tie-breaking seed (the value is seed-independent)");

    std::string twist_file;
    auto* twist_cmd = app.add_subcommand("twist", "print the twisting number t(G)");
    twist_cmd->add_option("file", twist_file, "diagram in .kvg format")->required();

    std::string check_file;
    auto* check_cmd =
        app.add_subcommand("check-planar", "planarity obstruction at B=A^-1, a=A");
    check_cmd->add_option("file", check_file, "diagram in .kvg format")->required();

    std::string oracle_file;
    int marker_runs = 1;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "compare eval against the marker state sum");
    oracle_cmd->add_option("file", oracle_file, "diagram in .kvg format")->required();
    oracle_cmd->add_option("--markers", marker_runs, "number of randomized marker choices");

    std::uint64_t st_seed = 1;
    int st_size = 6;
    auto* selftest_cmd = app.add_subcommand("selftest", "run the randomized property corpus");
    selftest_cmd->add_option("--seed", st_seed, "corpus seed");
    selftest_cmd->add_option("--size", st_size, "corpus size multiplier");

    CLI11_PARSE(app, argc, argv);

    if (eval_cmd->parsed()) {
        kv::Diagram d = load_diagram(eval_file);
        if (spec_name == "generic") {
            std::cout << kv::to_string(kv::eval(d, seed)) << "\n";
        } else {
            kv::Spec spec = kv::spec_from_string(spec_name);
            std::cout << kv::to_string(kv::specialized_eval(d, spec, seed)) << "\n";
        }
        return 0;
    }
    if (twist_cmd->parsed()) {
        std::cout << kv::twist_number(load_diagram(twist_file)) << "\n";
        return 0;
    }
    if (check_cmd->parsed()) {
        kv::Verdict v = kv::planarity_obstruction(load_diagram(check_file));
        if (v.status == kv::Verdict::Status::NotPlanar) {
            std::cout << "NOT_PLANAR\n";
            std::cout << "computed: " << kv::to_string(v.computed) << "\n";
            std::cout << "expected: " << kv::to_string(v.expected) << "\n";
            return kExitVerdict;
        }
        std::cout << "POSSIBLY_PLANAR\n";
        return 0;
    }
    if (oracle_cmd->parsed()) {
        kv::Diagram d = load_diagram(oracle_file);
        kv::RingElem lhs = kv::eval(d);
        for (int i = 0; i < std::max(1, marker_runs); ++i) {
            kv::RingElem rhs = kv::kv_statesum(d, kv::OracleLimits{}, i);
            if (lhs != rhs) {
                std::cout << "DISAGREE\n";
                std::cout << "eval:      " << kv::to_string(lhs) << "\n";
                std::cout << "state sum: " << kv::to_string(rhs) << "\n";
                return kExitVerdict;
            }
        }
        std::cout << "AGREE\n";
        std::cout << kv::to_string(lhs) << "\n";
        return 0;
    }
    if (selftest_cmd->parsed()) {
        kv::SelfTestReport report = kv::run_selftest(st_seed, st_size);
        int failed = 0;
        for (const auto& c : report.checks) {
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
            if (!c.pass && !c.detail.empty()) std::cout << " -- " << c.detail;
            std::cout << "\n";
            failed += c.pass ? 0 : 1;
        }
        std::cout << (failed == 0 ? "selftest: all checks passed"
                                  : "selftest: " + std::to_string(failed) + " check(s) failed")
                  << "\n";
        return failed == 0 ? 0 : kExitVerdict;
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const kv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const kv::DepthExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDepth;
    } catch (const kv::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
}
