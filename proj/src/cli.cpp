#include "sizedtypes/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sizedtypes/rewrite.hpp"
#include "sizedtypes/typecheck.hpp"

namespace st {

namespace {

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join_words(const std::vector<std::string>& ws) {
    std::string r;
    for (auto& w : ws) r += (r.empty() ? "" : " ") + w;
    return r;
}

Program load(const std::string& path) {
    Program p;
    try {
        p = parse_program(read_file(path));
    } catch (const SyntaxError& e) {
        throw std::runtime_error(path + ":" + e.what());
    }
    auto diags = validate_registry(p.reg);
    if (!diags.empty()) {
        std::string m = path + ": invalid definitions";
        for (auto& d : diags) m += "\n  " + d.where + ": " + d.message;
        throw std::runtime_error(m);
    }
    return p;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"sized types checker, constraint solver and evaluation harness", "slam"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--machine", machine, "line-oriented key: value output");

    std::string file, type_text;
    std::vector<std::string> words;
    std::size_t depth = 5, fuel = 10000;

    auto* c_check = app.add_subcommand("check", "check TERM : TYPE against a program");
    c_check->add_option("file", file, ".slam program")->required();
    c_check->add_option("judgement", words, "TERM : TYPE")->required();

    auto* c_infer = app.add_subcommand("infer", "print the minimal type of TERM");
    c_infer->add_option("file", file, ".slam program")->required();
    c_infer->add_option("term", words, "term")->required();

    auto* c_eval = app.add_subcommand("eval", "print a depth-bounded approximant of TERM");
    c_eval->add_option("file", file, ".slam program")->required();
    c_eval->add_option("term", words, "term")->required();
    c_eval->add_option("--depth", depth, "observation depth")->capture_default_str();
    c_eval->add_option("--fuel", fuel, "reduction steps per head normalization")->capture_default_str();

    auto* c_prod = app.add_subcommand("productivity", "check productivity of TERM at a coinductive type");
    c_prod->add_option("file", file, ".slam program")->required();
    c_prod->add_option("term", words, "term")->required();
    c_prod->add_option("--type", type_text, "observable coinductive type")->required();
    c_prod->add_option("--depth", depth, "maximal depth")->capture_default_str();
    c_prod->add_option("--fuel", fuel, "reduction steps per head normalization")->capture_default_str();

    auto* c_solve = app.add_subcommand("solve", "decide validity of a size constraint file");
    c_solve->add_option("constraints", file, ".sc file or - for stdin")->required();

    auto* c_hard = app.add_subcommand("gen-hard", "encode a DIMACS 3-CNF formula as a size constraint");
    c_hard->add_option("cnf", file, "DIMACS file or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_check->parsed()) {
            Program p = load(file);
            std::string j = join_words(words);
            auto colon = j.rfind(':');
            if (colon == std::string::npos) throw std::runtime_error("expected TERM : TYPE");
            TermP t = parse_term(j.substr(0, colon), p);
            TypeP ty = parse_type(j.substr(colon + 1), p.reg);
            bool ok = check(p.reg, p.assumptions, t, ty);
            out << (machine ? "verdict: " : "") << (ok ? "ok" : "fail") << "\n";
            return ok ? 0 : 1;
        }
        if (c_infer->parsed()) {
            Program p = load(file);
            TermP t = parse_term(join_words(words), p);
            auto r = minimal_type_ex(p.reg, p.assumptions, t);
            if (!r.type) {
                out << (machine ? "verdict: " : "") << "untypable\n";
                err << r.reason << "\n";
                return 1;
            }
            out << (machine ? "type: " : "") << print(r.type) << "\n";
            return 0;
        }
        if (c_eval->parsed()) {
            Program p = load(file);
            TermP t = parse_term(join_words(words), p);
            auto ty = minimal_type(p.reg, p.assumptions, t);
            ApproxP a;
            if (ty && observable(p.reg, *ty)) a = approximant_typed(p.reg, erase(t), *ty, {fuel, depth}).approx;
            else a = approximant(erase(t), {fuel, depth});
            if (machine && ty) out << "type: " << print(*ty) << "\n";
            out << (machine ? "approx: " : "") << print(a) << "\n";
            return 0;
        }
        if (c_prod->parsed()) {
            Program p = load(file);
            TermP t = parse_term(join_words(words), p);
            TypeP ty = parse_type(type_text, p.reg);
            auto rep = productivity_check(p.reg, erase(t), ty, depth, fuel);
            for (std::size_t n = 0; n + 1 < rep.lines.size(); ++n) {
                if (machine) {
                    const std::string& l = rep.lines[n];
                    out << "report." << n << ": " << l.substr(l.find(": ") + 2) << "\n";
                } else {
                    out << rep.lines[n] << "\n";
                }
            }
            out << (machine ? "verdict: " : "") << rep.lines.back() << "\n";
            return rep.pass ? 0 : 1;
        }
        if (c_solve->parsed()) {
            SizeConstraint c = parse_constraints(read_file(file));
            Verdict v = is_valid(c);
            out << (machine ? "verdict: " : "") << (v.valid ? "valid" : "invalid") << "\n";
            if (!v.valid)
                for (auto& [x, val] : v.witness.vals)
                    out << (machine ? "witness." + x + ": " : x + " = ") << ext_str(val) << "\n";
            return v.valid ? 0 : 1;
        }
        if (c_hard->parsed()) {
            Cnf phi = parse_dimacs(read_file(file));
            if (phi.empty()) throw std::runtime_error("empty formula");
            auto [s1, s2] = encode_3cnf(phi);
            out << "-- valid iff the formula is unsatisfiable\n";
            out << "assert " << print(s_succ(s2)) << " <= " << print(s1) << ";\n";
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace st
