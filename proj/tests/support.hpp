#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sizedtypes/constraints.hpp"
#include "sizedtypes/rewrite.hpp"
#include "sizedtypes/syntax.hpp"
#include "sizedtypes/typecheck.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::string example_path(const std::string& name) { return std::string(EXAMPLES_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const st::Program& example(const std::string& name) {
    static std::map<std::string, st::Program> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, st::parse_program(read_text(example_path(name)))).first;
    return it->second;
}

inline std::size_t pick(Rng& r, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(r); }
inline bool coin(Rng& r, double p = 0.5) { return std::bernoulli_distribution(p)(r); }

// random size over vars with constants up to cmax
inline st::SizeP gen_size(Rng& r, const std::vector<std::string>& vars, int depth, unsigned cmax = 3,
                          bool with_inf = true) {
    if (depth <= 0 || coin(r, 0.3)) {
        std::size_t k = pick(r, vars.size() + 3);
        st::SizeP base;
        if (k < vars.size())
            base = st::s_var(vars[k]);
        else if (k == vars.size() && with_inf)
            base = st::s_inf();
        else
            base = st::s_zero();
        return st::s_plus(base, static_cast<unsigned>(pick(r, cmax + 1)));
    }
    switch (pick(r, 3)) {
        case 0: return st::s_succ(gen_size(r, vars, depth - 1, cmax, with_inf));
        case 1: return st::s_min(gen_size(r, vars, depth - 1, cmax, with_inf), gen_size(r, vars, depth - 1, cmax, with_inf));
        default: return st::s_max(gen_size(r, vars, depth - 1, cmax, with_inf), gen_size(r, vars, depth - 1, cmax, with_inf));
    }
}

// exhaustive check of s1 <= s2 over vars ranging in {0..B, oo}
inline bool leq_by_enumeration(const st::SizeP& a, const st::SizeP& b, const std::vector<std::string>& vars,
                               unsigned B = 5) {
    std::vector<st::Ext> range;
    for (unsigned k = 0; k <= B; ++k) range.push_back(k);
    range.push_back(st::INF);
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
        st::Valuation v;
        for (std::size_t n = 0; n < vars.size(); ++n) v.set(vars[n], range[idx[n]]);
        if (st::eval_size(v, a) > st::eval_size(v, b)) return false;
        std::size_t n = 0;
        while (n < idx.size() && ++idx[n] == range.size()) idx[n++] = 0;
        if (n == idx.size()) return true;
    }
}

inline st::Cnf gen_cnf(Rng& r, unsigned nvars, unsigned nclauses) {
    st::Cnf phi;
    for (unsigned c = 0; c < nclauses; ++c) {
        st::Clause cl;
        for (int l = 0; l < 3; ++l) cl.push_back({"x" + std::to_string(1 + pick(r, nvars)), coin(r)});
        phi.push_back(cl);
    }
    return phi;
}

inline bool truth_table_sat(const st::Cnf& phi) {
    std::vector<std::string> vars;
    for (auto& c : phi)
        for (auto& l : c)
            if (std::find(vars.begin(), vars.end(), l.var) == vars.end()) vars.push_back(l.var);
    for (unsigned long m = 0; m < (1ul << vars.size()); ++m) {
        auto val = [&](const std::string& x) {
            auto p = std::find(vars.begin(), vars.end(), x) - vars.begin();
            return ((m >> p) & 1) != 0;
        };
        bool all = true;
        for (auto& c : phi) {
            bool any = false;
            for (auto& l : c) any = any || (val(l.var) != l.neg);
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

// the hardness judgement x : Strm^s1, f : Strm^(s2+1) -> Nat^0 |- f x : Nat^0
inline bool hardness_judgement(const st::Cnf& phi) {
    const st::Program& p = example("hard.slam");
    auto [s1, s2] = st::encode_3cnf(phi);
    st::Context G{{"x", st::t_data("Strm", s1)},
                  {"f", st::t_arrow(st::t_data("Strm", st::s_succ(s2)), st::t_data("Nat", st::s_zero()))}};
    st::TermP t = st::m_app(st::m_var("f"), st::m_var("x"));
    return st::check(p.reg, G, t, st::t_data("Nat", st::s_zero()));
}

// at most 4 variables, constants at most 3, at most 4 inequalities, sometimes an acyclic U
inline st::SizeConstraint gen_constraint(Rng& r) {
    std::vector<std::string> all{"i", "j", "k", "l"};
    std::size_t nv = 1 + pick(r, 4);
    std::vector<std::string> vars(all.begin(), all.begin() + nv);
    st::SizeConstraint c;
    for (std::size_t n = 1; n < nv; ++n) {
        if (!coin(r, 0.3)) continue;
        std::vector<std::string> below(vars.begin(), vars.begin() + n);
        c.U[vars[n]] = gen_size(r, below, 2, 3);
    }
    std::size_t np = 1 + pick(r, 4);
    for (std::size_t n = 0; n < np; ++n) {
        st::SizeP a = gen_size(r, vars, 2, 3), b = gen_size(r, vars, 2, 3);
        // bias toward pairs that are often valid
        switch (pick(r, 4)) {
            case 0: b = st::s_max(coin(r) ? a : st::s_succ(a), b); break;
            case 1: a = st::s_min(b, a); break;
            default: break;
        }
        c.S.push_back({a, b});
    }
    return c;
}

// B = V * (C + 1) for V variables and constants up to C = 3
inline unsigned completeness_bound(const st::SizeConstraint& c) {
    std::size_t v = st::free_size_vars(c).size();
    return static_cast<unsigned>(std::max<std::size_t>(v, 1) * 4);
}

// the witness respects U and breaks some inequality
inline bool witness_violates(const st::SizeConstraint& c, const st::Valuation& w) {
    for (auto& [i, s] : c.U)
        if (w.get(i) != st::eval_size(w, s)) return false;
    for (auto& [a, b] : c.S)
        if (st::eval_size(w, a) > st::eval_size(w, b)) return true;
    return false;
}

// same shape as t with some sizes moved up, down or to constants
inline st::TypeP perturb(Rng& r, const st::TypeP& t, std::vector<std::string> bound = {}) {
    using st::Type;
    switch (t->k) {
        case Type::K::Data: {
            std::vector<st::TypeP> args;
            for (auto& a : t->args) args.push_back(perturb(r, a, bound));
            st::SizeP s = t->size;
            switch (pick(r, 8)) {
                case 0: s = st::s_succ(s); break;
                case 1: s = st::s_zero(); break;
                case 2: s = st::s_const(1); break;
                case 3: s = st::s_inf(); break;
                case 4:
                    if (!bound.empty()) s = st::s_var(bound[pick(r, bound.size())]);
                    break;
                case 5:
                    if (!bound.empty()) s = st::s_min(s, st::s_succ(st::s_var(bound[pick(r, bound.size())])));
                    break;
                default: break;
            }
            return st::t_data(t->name, s, args);
        }
        case Type::K::Arrow: return st::t_arrow(perturb(r, t->args[0], bound), perturb(r, t->args[1], bound));
        case Type::K::Forall: {
            bound.push_back(t->name);
            return st::t_forall(t->name, perturb(r, t->args[0], bound));
        }
        default: return t;
    }
}

// Lambda i. t [max(i,i)] nested n times around f : forall i. Nat^i -> Nat^i
inline std::pair<st::Context, st::TermP> sharing_family(const st::Registry& reg, unsigned n) {
    st::Context G{{"f", st::parse_type("forall i. Nat^i -> Nat^i", reg)}};
    st::TermP t = st::m_var("f");
    for (unsigned k = 0; k < n; ++k)
        t = st::m_slam("i", st::m_sapp(t, st::s_max(st::s_var("i"), st::s_var("i"))));
    return {G, t};
}

// n nested two-branch cases over x : D^n
inline std::pair<st::Context, st::TermP> case_family(const st::Registry&, unsigned n) {
    st::Context G{{"x", st::t_data("D", st::s_const(n))}};
    st::TermP t = st::m_var("x");
    for (unsigned k = 0; k < n; ++k)
        t = st::m_case(t, {{"c1", {"y"}, st::m_var("y")}, {"c2", {"y"}, st::m_var("y")}});
    return {G, t};
}

inline const char* kFamilyDefs =
    "inductive Nat { zero; succ : Nat -> Nat }\n"
    "inductive D { c1 : D -> D; c2 : D -> D }\n";

// shapes over Nat, BTree, List, arrows and one forall, resized independently
inline st::TypeP gen_shape(Rng& r, int depth, bool under_forall = false) {
    if (depth <= 0 || coin(r, 0.3)) return st::t_data(coin(r) ? "Nat" : "BTree", st::s_inf());
    switch (pick(r, 4)) {
        case 0:
        case 1: return st::t_arrow(gen_shape(r, depth - 1, under_forall), gen_shape(r, depth - 1, under_forall));
        case 2: return st::t_data("List", st::s_inf(), {gen_shape(r, depth - 1, under_forall)});
        default: return under_forall ? gen_shape(r, depth - 1, true) : st::t_forall("k", gen_shape(r, depth - 1, true));
    }
}

inline st::TypeP resize(Rng& r, const st::TypeP& t, bool under_forall = false) {
    std::vector<std::string> vs{"i", "j"};
    if (under_forall) vs.push_back("k");
    switch (t->k) {
        case st::Type::K::Data: {
            std::vector<st::TypeP> args;
            for (auto& a : t->args) args.push_back(resize(r, a, under_forall));
            return st::t_data(t->name, coin(r, 0.15) ? st::s_inf() : gen_size(r, vs, 1, 2), args);
        }
        case st::Type::K::Arrow: return st::t_arrow(resize(r, t->args[0], under_forall), resize(r, t->args[1], under_forall));
        case st::Type::K::Forall: return st::t_forall(t->name, resize(r, t->args[0], true));
        default: return t;
    }
}

template <std::size_t N>
std::array<st::TypeP, N> same_shape(Rng& r) {
    st::TypeP s = gen_shape(r, 3);
    std::array<st::TypeP, N> out;
    for (auto& x : out) x = resize(r, s);
    return out;
}

// approximants of numerals, streams and binary trees
inline st::ApproxP num(unsigned n) {
    st::ApproxP a = st::a_constr("zero");
    for (unsigned k = 0; k < n; ++k) a = st::a_constr("succ", {a});
    return a;
}

inline st::ApproxP gen_nat(Rng& r) { return coin(r, 0.1) ? st::a_bottom() : num(static_cast<unsigned>(pick(r, 3))); }

inline st::ApproxP gen_stream(Rng& r, int depth) {
    if (depth <= 0 || coin(r, 0.15)) return st::a_bottom();
    return st::a_constr("cons", {gen_nat(r), gen_stream(r, depth - 1)});
}

inline st::ApproxP gen_btree(Rng& r, int depth) {
    if (depth <= 0 || coin(r, 0.15)) return st::a_bottom();
    return st::a_constr("bnode", {gen_nat(r), gen_btree(r, depth - 1), gen_btree(r, depth - 1)});
}

struct CorpusTerm {
    std::string file;
    std::string name;
    st::TermP term;
};

// every binding of the bundled examples plus a few applications
inline const std::vector<CorpusTerm>& corpus() {
    static std::vector<CorpusTerm> all = [] {
        std::vector<CorpusTerm> v;
        for (const char* f : {"streams.slam", "sp.slam", "trees.slam"}) {
            const st::Program& p = example(f);
            for (auto& [n, t] : p.bindings) v.push_back({f, n, t});
        }
        auto add = [&](const char* f, const char* text) {
            v.push_back({f, text, st::parse_term(text, example(f))});
        };
        add("streams.slam", "zero");
        add("streams.slam", "succ (succ zero)");
        add("streams.slam", "cons zero zeros");
        add("streams.slam", "tl [oo] nats");
        add("streams.slam", "smap pred nats");
        add("streams.slam", "from (plus (succ zero) (succ zero))");
        add("streams.slam", "pred (succ zero)");
        add("streams.slam", "\\n : Nat. succ n");
        add("streams.slam", "/\\i. \\n : Nat^i. succ n");
        add("streams.slam", "/\\i. \\s : Strm^i. cons zero s");
        add("streams.slam", "hd [oo] (tl [oo] nats)");
        add("streams.slam", "tl [oo]");
        add("streams.slam", "case zero of { succ p => p }");
        add("streams.slam", "\\s : Strm. case s of { cons x t => cons x (cons x t) }");
        add("sp.slam", "run odd nats");
        add("sp.slam", "run ident nats");
        add("sp.slam", "run odd (run odd nats)");
        add("trees.slam", "btree zero");
        add("trees.slam", "tree (succ zero)");
        add("trees.slam", "len nums");
        add("trees.slam", "lcons ftree lnil");
        add("trees.slam", "lnil");
        add("trees.slam", "so ez");
        return v;
    }();
    return all;
}

}  // namespace testing
