#include "sizedtypes/constraints.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sizedtypes/syntax.hpp"

namespace st {

namespace {

void vars_of(const SizeP& s, std::set<std::string>& out) {
    if (!s) return;
    if (s->k == Size::K::Var) out.insert(s->name);
    vars_of(s->a, out);
    vars_of(s->b, out);
}

// dom(U) in dependency order; empty optional on a cycle
std::optional<std::vector<std::string>> topo(const DefMap& U) {
    std::map<std::string, int> color;
    std::vector<std::string> order;
    bool cyclic = false;
    std::function<void(const std::string&)> dfs = [&](const std::string& v) {
        color[v] = 1;
        std::set<std::string> deps;
        vars_of(U.at(v), deps);
        for (auto& d : deps) {
            if (!U.count(d)) continue;
            if (color[d] == 1) cyclic = true;
            else if (color[d] == 0) dfs(d);
            if (cyclic) return;
        }
        color[v] = 2;
        order.push_back(v);
    };
    for (auto& [v, s] : U) {
        if (color[v] == 0) dfs(v);
        if (cyclic) return std::nullopt;
    }
    return order;
}

SizeP subst_inf(const SizeP& s, const std::set<std::string>& infs) {
    if (infs.empty()) return s;
    std::map<std::string, SizeP> m;
    std::set<std::string> vs;
    vars_of(s, vs);
    for (auto& v : vs)
        if (infs.count(v)) m[v] = s_inf();
    return subst_size(s, m);
}

constexpr long long kBig = (long long)1 << 50;

struct Atom {
    int u, w;
    long long k;  // u - w <= k
};

class Dl {
public:
    std::map<std::string, int> ids;
    std::vector<std::string> names;
    std::vector<std::vector<Atom>> clauses;
    bool trivially_unsat = false;
    int tseitin = 0;

    Dl() { node(kZeroNode); }

    int node(const std::string& n) {
        auto it = ids.find(n);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(names.size());
        ids[n] = id;
        names.push_back(n);
        return id;
    }

    int fresh() { return node("#t" + std::to_string(tseitin++)); }

    std::pair<int, long long> term(const SizeP& s) {
        long long c = 0;
        SizeP b = s;
        while (b->k == Size::K::Succ) {
            ++c;
            b = b->a;
        }
        if (b->k == Size::K::Zero) return {0, c};
        return {node(b->name), c};
    }

    static void flat(const SizeP& s, Size::K k, std::vector<SizeP>& out) {
        if (s->k == k) {
            flat(s->a, k, out);
            flat(s->b, k, out);
        } else {
            out.push_back(s);
        }
    }

    // A <= B for normalized, infinity-free expressions
    void le(const SizeP& A, const SizeP& B) {
        if (A->k == Size::K::Max) {
            le(A->a, B);
            le(A->b, B);
            return;
        }
        if (B->k == Size::K::Min) {
            le(A, B->a);
            le(A, B->b);
            return;
        }
        std::vector<SizeP> L, R;
        flat(A, Size::K::Min, L);
        flat(B, Size::K::Max, R);
        std::vector<std::pair<int, long long>> lt, rt;
        for (auto& l : L) {
            if (l->k == Size::K::Max) {
                int n = fresh();
                le(l, s_var(names[n]));
                lt.push_back({n, 0});
            } else {
                lt.push_back(term(l));
            }
        }
        for (auto& r : R) {
            if (r->k == Size::K::Min) {
                int n = fresh();
                le(s_var(names[n]), r);
                rt.push_back({n, 0});
            } else {
                rt.push_back(term(r));
            }
        }
        std::vector<Atom> cl;
        for (auto& [xl, cl0] : lt) {
            for (auto& [xr, cr] : rt) {
                if (xl == xr) {
                    if (cl0 <= cr) return;
                    continue;
                }
                if (xl == 0 && cl0 == 0) return;
                cl.push_back({xl, xr, cr - cl0});
            }
        }
        if (cl.empty()) trivially_unsat = true;
        clauses.push_back(std::move(cl));
    }

    std::optional<std::vector<long long>> solve() {
        if (trivially_unsat) return std::nullopt;
        std::size_t n = names.size();
        std::vector<long long> D(n * n, kBig);
        for (std::size_t i = 0; i < n; ++i) D[i * n + i] = 0;
        for (std::size_t x = 1; x < n; ++x)
            if (!add(D, {0, static_cast<int>(x), 0})) return std::nullopt;
        std::vector<std::size_t> live(clauses.size());
        for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
        std::vector<long long> model;
        if (!search(D, live, model)) return std::nullopt;
        return model;
    }

private:
    bool add(std::vector<long long>& D, const Atom& a) const {
        std::size_t n = names.size();
        auto at = [&](int i, int j) -> long long& { return D[static_cast<std::size_t>(i) * n + j]; };
        if (at(a.w, a.u) <= a.k) return true;
        if (at(a.u, a.w) < kBig && a.k + at(a.u, a.w) < 0) return false;
        for (std::size_t x = 0; x < n; ++x) {
            long long dxw = D[x * n + a.w];
            if (dxw >= kBig) continue;
            for (std::size_t y = 0; y < n; ++y) {
                long long duy = D[a.u * n + y];
                if (duy >= kBig) continue;
                long long c = dxw + a.k + duy;
                if (c < D[x * n + y]) D[x * n + y] = c;
            }
        }
        return true;
    }
    bool entailed(const std::vector<long long>& D, const Atom& a) const {
        return D[static_cast<std::size_t>(a.w) * names.size() + a.u] <= a.k;
    }
    bool conflicting(const std::vector<long long>& D, const Atom& a) const {
        long long d = D[static_cast<std::size_t>(a.u) * names.size() + a.w];
        return d < kBig && a.k + d < 0;
    }

    bool search(std::vector<long long> D, std::vector<std::size_t> live, std::vector<long long>& model) const {
        for (bool changed = true; changed;) {
            changed = false;
            std::vector<std::size_t> next;
            for (auto ci : live) {
                bool sat = false;
                std::vector<const Atom*> open;
                for (auto& a : clauses[ci]) {
                    if (entailed(D, a)) {
                        sat = true;
                        break;
                    }
                    if (!conflicting(D, a)) open.push_back(&a);
                }
                if (sat) continue;
                if (open.empty()) return false;
                if (open.size() == 1) {
                    if (!add(D, *open[0])) return false;
                    changed = true;
                    continue;
                }
                next.push_back(ci);
            }
            live = std::move(next);
        }
        if (live.empty()) {
            std::size_t n = names.size();
            std::vector<long long> p(n, 0);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t u = 0; u < n; ++u) p[x] = std::min(p[x], D[u * n + x]);
            model.assign(n, 0);
            for (std::size_t x = 0; x < n; ++x) model[x] = p[x] - p[0];
            return true;
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < live.size(); ++i)
            if (clauses[live[i]].size() < clauses[live[best]].size()) best = i;
        const Atom* pick = nullptr;
        for (auto& a : clauses[live[best]])
            if (!conflicting(D, a)) {
                pick = &a;
                break;
            }
        std::vector<long long> D2 = D;
        if (add(D2, *pick)) {
            std::vector<std::size_t> rest = live;
            rest.erase(rest.begin() + static_cast<long>(best));
            if (search(D2, rest, model)) return true;
        }
        if (!add(D, {pick->w, pick->u, -pick->k - 1})) return false;
        return search(std::move(D), std::move(live), model);
    }
};

Valuation complete(const DefMap& U, const std::vector<std::string>& order, Valuation v) {
    for (auto& x : order) v.set(x, eval_size(v, U.at(x)));
    return v;
}

}  // namespace

bool check_acyclic(const DefMap& U) { return topo(U).has_value(); }

SizeP expand(const DefMap& U, const SizeP& s) {
    std::map<std::string, SizeP> memo;
    std::function<SizeP(const SizeP&)> go = [&](const SizeP& e) -> SizeP {
        switch (e->k) {
            case Size::K::Var: {
                auto u = U.find(e->name);
                if (u == U.end()) return e;
                auto m = memo.find(e->name);
                if (m != memo.end()) return m->second;
                SizeP r = go(u->second);
                memo[e->name] = r;
                return r;
            }
            case Size::K::Succ: {
                SizeP a = go(e->a);
                return a == e->a ? e : s_succ(a);
            }
            case Size::K::Min:
            case Size::K::Max: {
                SizeP a = go(e->a), b = go(e->b);
                if (a == e->a && b == e->b) return e;
                return e->k == Size::K::Min ? s_min(a, b) : s_max(a, b);
            }
            default: return e;
        }
    };
    return go(s);
}

std::set<std::string> free_size_vars(const SizeConstraint& c) {
    std::set<std::string> vs;
    for (auto& [l, r] : c.S) {
        vars_of(l, vs);
        vars_of(r, vs);
    }
    for (auto& [i, s] : c.U) {
        vs.insert(i);
        vars_of(s, vs);
    }
    for (auto& [i, s] : c.U) vs.erase(i);
    return vs;
}

Verdict is_valid(const SizeConstraint& c) {
    auto order = topo(c.U);
    if (!order) throw ConstraintError("size constraint definitions are cyclic");
    std::set<std::string> infs;
    DefMap Us;
    for (auto& v : *order) {
        SizeP e = simplify_infty(subst_inf(c.U.at(v), infs));
        if (e->k == Size::K::Inf) infs.insert(v);
        else Us[v] = e;
    }
    auto witness = [&](const std::map<std::string, long long>& free) {
        Valuation v;
        for (auto& x : free_size_vars(c)) {
            auto it = free.find(x);
            v.set(x, it == free.end() ? 0 : static_cast<Ext>(it->second));
        }
        return complete(c.U, *order, v);
    };
    for (auto& [l0, r0] : c.S) {
        SizeP l = simplify_infty(subst_inf(l0, infs));
        SizeP r = simplify_infty(subst_inf(r0, infs));
        if (r->k == Size::K::Inf) continue;
        if (l->k == Size::K::Inf) return {false, witness({})};
        std::set<std::string> reach, todo;
        vars_of(l, todo);
        vars_of(r, todo);
        while (!todo.empty()) {
            std::string x = *todo.begin();
            todo.erase(todo.begin());
            if (!Us.count(x) || reach.count(x)) continue;
            reach.insert(x);
            vars_of(Us[x], todo);
        }
        Dl dl;
        dl.le(normalize_succ(s_succ(r)), normalize_succ(l));
        for (auto& x : reach) {
            SizeP d = normalize_succ(Us[x]);
            dl.le(s_var(x), d);
            dl.le(d, s_var(x));
        }
        auto model = dl.solve();
        if (!model) continue;
        std::map<std::string, long long> free;
        for (std::size_t i = 1; i < dl.names.size(); ++i)
            if (dl.names[i][0] != '#' && !c.U.count(dl.names[i])) free[dl.names[i]] = (*model)[i];
        Valuation w = witness(free);
        if (eval_size(w, l0) <= eval_size(w, r0))
            throw std::logic_error("solver produced a witness that does not violate " + print(l0) + " <= " + print(r0));
        return {false, w};
    }
    return {true, {}};
}

bool size_leq(const SizeP& s1, const SizeP& s2) { return is_valid({{}, {{s1, s2}}}).valid; }

DiffAtom atom_le_const(const std::string& x, long long k) { return {x, -k, kZeroNode}; }
DiffAtom atom_ge_const(const std::string& x, long long k) { return {kZeroNode, k, x}; }

std::optional<std::map<std::string, long long>> sat_atoms(const std::vector<DiffAtom>& atoms) {
    std::map<std::string, int> ids{{kZeroNode, 0}};
    std::vector<std::string> names{kZeroNode};
    auto id = [&](const std::string& n) {
        auto it = ids.find(n);
        if (it != ids.end()) return it->second;
        int i = static_cast<int>(names.size());
        ids[n] = i;
        names.push_back(n);
        return i;
    };
    struct E {
        int from, to;
        long long w;
    };
    std::vector<E> edges;
    for (auto& a : atoms) edges.push_back({id(a.y), id(a.x), -a.c});  // x - y <= -c
    std::size_t n = names.size();
    for (std::size_t x = 1; x < n; ++x) edges.push_back({static_cast<int>(x), 0, 0});
    std::vector<long long> d(n, 0);
    for (std::size_t it = 0; it <= n; ++it) {
        bool changed = false;
        for (auto& e : edges)
            if (d[e.from] + e.w < d[e.to]) {
                d[e.to] = d[e.from] + e.w;
                changed = true;
            }
        if (!changed) {
            std::map<std::string, long long> m;
            for (std::size_t x = 1; x < n; ++x) m[names[x]] = d[x] - d[0];
            return m;
        }
    }
    return std::nullopt;
}

bool brute_force_valid(const SizeConstraint& c, unsigned bound) {
    auto order = topo(c.U);
    if (!order) throw ConstraintError("size constraint definitions are cyclic");
    std::map<std::string, int> idx;
    std::set<std::string> fv = free_size_vars(c);
    std::vector<std::string> free(fv.begin(), fv.end());
    for (auto& f : free) idx[f] = static_cast<int>(idx.size());
    for (auto& u : *order) idx[u] = static_cast<int>(idx.size());

    struct N {
        Size::K k;
        int var, a, b;
    };
    std::vector<N> prog;
    std::function<int(const SizeP&)> compile = [&](const SizeP& s) -> int {
        N n{s->k, -1, -1, -1};
        if (s->k == Size::K::Var) n.var = idx.at(s->name);
        if (s->a) n.a = compile(s->a);
        if (s->b) n.b = compile(s->b);
        prog.push_back(n);
        return static_cast<int>(prog.size()) - 1;
    };
    std::vector<int> udefs, lhs, rhs;
    for (auto& u : *order) udefs.push_back(compile(c.U.at(u)));
    for (auto& [l, r] : c.S) {
        lhs.push_back(compile(l));
        rhs.push_back(compile(r));
    }
    std::vector<Ext> val(idx.size(), 0);
    std::function<Ext(int)> ev = [&](int i) -> Ext {
        const N& n = prog[i];
        switch (n.k) {
            case Size::K::Zero: return 0;
            case Size::K::Inf: return INF;
            case Size::K::Var: return val[n.var];
            case Size::K::Succ: {
                Ext a = ev(n.a);
                return a == INF ? INF : a + 1;
            }
            case Size::K::Min: return std::min(ev(n.a), ev(n.b));
            case Size::K::Max: return std::max(ev(n.a), ev(n.b));
        }
        return 0;
    };
    std::vector<Ext> range;
    for (unsigned v = 0; v <= bound; ++v) range.push_back(v);
    range.push_back(INF);
    std::vector<std::size_t> pos(free.size(), 0);
    for (;;) {
        for (std::size_t f = 0; f < free.size(); ++f) val[f] = range[pos[f]];
        for (std::size_t u = 0; u < udefs.size(); ++u) val[free.size() + u] = ev(udefs[u]);
        for (std::size_t p = 0; p < lhs.size(); ++p)
            if (ev(lhs[p]) > ev(rhs[p])) return false;
        std::size_t f = 0;
        while (f < pos.size() && ++pos[f] == range.size()) pos[f++] = 0;
        if (f == pos.size()) return true;
    }
}

SizePair encode_3cnf(const Cnf& phi) {
    std::vector<std::string> vars;
    for (auto& cl : phi)
        for (auto& l : cl)
            if (std::find(vars.begin(), vars.end(), l.var) == vars.end()) vars.push_back(l.var);
    auto lit = [](const Lit& l) { return s_var(l.neg ? l.var + "'" : l.var); };
    std::vector<SizeP> hi;
    for (auto& cl : phi) {
        SizeP m = lit(cl[0]);
        for (std::size_t k = 1; k < cl.size(); ++k) m = s_min(m, lit(cl[k]));
        hi.push_back(s_succ(m));
    }
    hi.push_back(s_const(1));
    for (auto& x : vars) hi.push_back(s_succ(s_min(s_var(x), s_var(x + "'"))));
    SizeP s1 = hi[0];
    for (std::size_t k = 1; k < hi.size(); ++k) s1 = s_max(s1, hi[k]);
    SizeP s2 = s_const(1);
    for (auto& x : vars) s2 = s_min(s2, s_max(s_var(x), s_var(x + "'")));
    return {s1, s2};
}

Cnf parse_dimacs(const std::string& text) {
    Cnf phi;
    Clause cur;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string w;
        if (!(ls >> w) || w == "c" || w == "p" || w[0] == '%') continue;
        do {
            long v;
            try {
                std::size_t used;
                v = std::stol(w, &used);
                if (used != w.size()) throw std::invalid_argument(w);
            } catch (const std::exception&) {
                throw SyntaxError("bad literal '" + w + "'", {lineno, 1});
            }
            if (v == 0) {
                if (!cur.empty()) phi.push_back(cur);
                cur.clear();
            } else {
                cur.push_back({"x" + std::to_string(v < 0 ? -v : v), v < 0});
            }
        } while (ls >> w);
    }
    if (!cur.empty()) phi.push_back(cur);
    return phi;
}

SizeConstraint parse_constraints(const std::string& text) {
    SizeConstraint c;
    std::string stmt;
    int line = 1, start = 1;
    auto flush = [&]() {
        std::size_t b = stmt.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return;
        std::string s = stmt.substr(b);
        auto fail = [&](const std::string& m) { throw SyntaxError(m, {start, 1}); };
        try {
            if (s.rfind("let", 0) == 0 && s.size() > 3 && std::isspace(static_cast<unsigned char>(s[3]))) {
                auto eq = s.find('=');
                if (eq == std::string::npos) fail("expected '=' in let");
                std::string name = s.substr(3, eq - 3);
                SizeP v = parse_size(name);
                if (v->k != Size::K::Var) fail("let must define a size variable");
                if (c.U.count(v->name)) fail("duplicate definition of " + v->name);
                c.U[v->name] = parse_size(s.substr(eq + 1));
            } else if (s.rfind("assert", 0) == 0 && s.size() > 6 && std::isspace(static_cast<unsigned char>(s[6]))) {
                auto le = s.find("<=");
                if (le == std::string::npos) fail("expected '<=' in assert");
                c.S.push_back({parse_size(s.substr(6, le - 6)), parse_size(s.substr(le + 2))});
            } else {
                fail("expected 'let' or 'assert'");
            }
        } catch (const SyntaxError& e) {
            if (e.at.line == start && e.at.col == 1) throw;
            throw SyntaxError(e.what(), {start, 1});
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if ((ch == '-' && i + 1 < text.size() && text[i + 1] == '-') || (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') ||
            ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            if (i < text.size()) {
                ++line;
                stmt += '\n';
            }
            continue;
        }
        if (ch == ';') {
            flush();
            stmt.clear();
            start = line;
            continue;
        }
        if (stmt.find_first_not_of(" \t\r\n") == std::string::npos && !std::isspace(static_cast<unsigned char>(ch))) start = line;
        if (ch == '\n') ++line;
        stmt += ch;
    }
    if (stmt.find_first_not_of(" \t\r\n") != std::string::npos) throw SyntaxError("missing ';'", {start, 1});
    if (!check_acyclic(c.U)) throw SyntaxError("let definitions are cyclic", {1, 1});
    return c;
}

std::string print_constraints(const SizeConstraint& c) {
    std::string r;
    for (auto& [i, s] : c.U) r += "let " + i + " = " + print(s) + ";\n";
    for (auto& [l, s] : c.S) r += "assert " + print(l) + " <= " + print(s) + ";\n";
    return r;
}

}  // namespace st
