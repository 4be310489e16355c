#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hroot/hroot.hpp"

using namespace hroot;

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::parse_error, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

// a sequence document is either a rational function or an exponential
// polynomial; rational functions are expanded into the latter
ExpPoly load_sequence(const Json& j, const Budgets& budgets) {
    if (j.is_object() && j.contains("num")) {
        RatFunc R = ratfunc_from_json(j);
        return ratfunc_to_exppoly(R, budgets);
    }
    return exppoly_from_json(j);
}

// single full write to standard output, optionally mirrored to a file via
// rename so partial documents never appear at the target path
void emit(const Json& j, const std::string& out_path) {
    std::string s = j.dump() + "\n";
    std::fputs(s.c_str(), stdout);
    if (out_path.empty()) return;
    std::string tmp = out_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) raise(errc::invalid_argument, "cannot write " + tmp);
        out << s;
    }
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
        raise(errc::invalid_argument, "cannot move output into place at " + out_path);
}

std::pair<long, long> parse_range(const std::string& spec) {
    auto bad = [&] { raise(errc::parse_error, "range must be N or A..B, got '" + spec + "'"); };
    size_t dots = spec.find("..");
    try {
        if (dots == std::string::npos) {
            long n = std::stol(spec);
            return {n, n};
        }
        long a = std::stol(spec.substr(0, dots));
        long b = std::stol(spec.substr(dots + 2));
        if (a > b) bad();
        return {a, b};
    } catch (const std::exception&) {
        bad();
    }
    return {0, 0};
}

int run(int argc, char** argv) {
    CLI::App app{"exact d-th roots and residue certificates for rational power series"};
    app.require_subcommand(1);

    std::string in_path, out_path, n_spec;
    long d = 0, seed = 0;
    Budgets budgets;

    auto add_common = [&](CLI::App* cmd, bool needs_d) {
        cmd->add_option("--in", in_path, "input JSON document")->required();
        cmd->add_option("--out", out_path, "also write the result to this path");
        if (needs_d) cmd->add_option("--d", d, "power to test")->required();
        cmd->add_option("--max-split-degree", budgets.max_split_degree,
                        "field degree cap for the splitting tower");
        cmd->add_option("--relation-bound", budgets.relation_bound,
                        "exponent box for relation saturation");
        cmd->add_option("--cert-primes", budgets.cert_primes,
                        "number of primes scanned for a certificate");
        cmd->add_option("--cert-period-cap", budgets.cert_period_cap,
                        "largest reduced-sequence period examined");
        cmd->add_option("--seed", seed, "reserved");
    };

    CLI::App* c_root = app.add_subcommand("root", "find an identical d-th root over the algebraic closure");
    add_common(c_root, true);
    CLI::App* c_cert = app.add_subcommand("certify", "search for a non-d-th-power progression certificate");
    add_common(c_cert, true);
    CLI::App* c_check = app.add_subcommand("check-cert", "re-verify a certificate against its sequence");
    add_common(c_check, false);
    CLI::App* c_eval = app.add_subcommand("eval", "print exact sequence values");
    add_common(c_eval, false);
    c_eval->add_option("--n", n_spec, "index or range A..B")->required();
    CLI::App* c_conv = app.add_subcommand("convert", "convert between rational function and sequence documents");
    add_common(c_conv, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    if ((c_root->parsed() || c_cert->parsed()) && d < 2) {
        std::cerr << "--d must be at least 2\n";
        return 2;
    }

    Json doc = read_json_file(in_path);

    if (c_root->parsed()) {
        ExpPoly b = load_sequence(doc, budgets);
        RootResult res = hadamard_dth_root(b, d, budgets);
        if (res.found) {
            emit(Json{{"a", exppoly_to_json(res.a)},
                      {"field", field_to_json(res.a.F)},
                      {"status", "root"}},
                 out_path);
            return 0;
        }
        emit(Json{{"field", field_to_json(b.F)},
                  {"slice", res.fail_slice},
                  {"status", "no_root"},
                  {"witness", laurent_to_json(res.witness)}},
             out_path);
        return 3;
    }
    if (c_cert->parsed()) {
        ExpPoly b = load_sequence(doc, budgets);
        CertificateReport rep;
        auto c = find_certificate(b, d, budgets, &rep);
        if (c) {
            emit(certificate_to_json(*c), out_path);
            return 0;
        }
        Json skipped = Json::array();
        for (long p : rep.skipped_period_cap) skipped.push_back(p);
        emit(Json{{"scanned", rep.primes_considered},
                  {"skipped_period_cap", skipped},
                  {"status", "not_found"}},
             out_path);
        return 4;
    }
    if (c_check->parsed()) {
        if (!doc.is_object() || !doc.contains("sequence") || !doc.contains("certificate"))
            raise(errc::parse_error, "check-cert input needs sequence and certificate");
        ExpPoly b = load_sequence(doc["sequence"], budgets);
        Certificate cert = certificate_from_json(doc["certificate"]);
        bool ok = verify_certificate(b, cert, budgets);
        emit(Json{{"status", ok ? "valid" : "invalid"}}, out_path);
        return ok ? 0 : 3;
    }
    if (c_eval->parsed()) {
        ExpPoly b = load_sequence(doc, budgets);
        auto [from, to] = parse_range(n_spec);
        if (from < 0) raise(errc::parse_error, "indices must be nonnegative");
        Json values = Json::array();
        for (long n = from; n <= to; ++n) values.push_back(element_to_json(exppoly_eval(b, n)));
        emit(Json{{"values", values}}, out_path);
        return 0;
    }
    // convert
    if (doc.is_object() && doc.contains("num")) {
        emit(exppoly_to_json(ratfunc_to_exppoly(ratfunc_from_json(doc), budgets)), out_path);
    } else {
        emit(ratfunc_to_json(exppoly_to_ratfunc(exppoly_from_json(doc))), out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        switch (e.code()) {
            case errc::bound_exceeded:
            case errc::degree_budget_exceeded:
                return 4;
            case errc::verification_failed:
                return 1;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
