#include "sizedtypes/rewrite.hpp"

#include <functional>

namespace st {

TermP turing_y() {
    static const TermP y = [] {
        TermP half = m_lam("x", nullptr, m_lam("f", nullptr, m_app(m_var("f"), m_apps(m_var("x"), {m_var("x"), m_var("f")}))));
        return m_app(half, half);
    }();
    return y;
}

TermP omega() {
    static const TermP o = [] {
        TermP w = m_lam("x", nullptr, m_app(m_var("x"), m_var("x")));
        return m_app(w, w);
    }();
    return o;
}

TermP erase(const TermP& t) {
    switch (t->k) {
        case Term::K::Var:
        case Term::K::Con: return t;
        case Term::K::Lam: return m_lam(t->name, nullptr, erase(t->kids[0]));
        case Term::K::App: return m_app(erase(t->kids[0]), erase(t->kids[1]));
        case Term::K::SApp:
        case Term::K::SLam: return erase(t->kids[0]);
        case Term::K::Case: {
            std::vector<Branch> alts = t->alts;
            for (auto& b : alts) b.body = erase(b.body);
            return m_case(erase(t->kids[0]), std::move(alts));
        }
        case Term::K::Fix:
        case Term::K::Cofix: return m_app(turing_y(), m_lam(t->name, nullptr, erase(t->kids[0])));
    }
    return t;
}

namespace {

TermP spine(const TermP& t, std::vector<TermP>& args) {
    TermP h = t;
    while (h->k == Term::K::App) {
        args.push_back(h->kids[1]);
        h = h->kids[0];
    }
    std::reverse(args.begin(), args.end());
    return h;
}

// the branch of a case that fires on constructor c with n arguments, if any
const Branch* iota_branch(const TermP& cs, const std::string& c, std::size_t n) {
    const Branch* hit = nullptr;
    std::set<std::string> cons;
    for (auto& b : cs->alts) {
        if (!cons.insert(b.con).second) return nullptr;
        if (b.con == c) hit = &b;
    }
    if (!hit || hit->vars.size() != n) return nullptr;
    std::set<std::string> vs(hit->vars.begin(), hit->vars.end());
    if (vs.size() != hit->vars.size()) return nullptr;
    return hit;
}

TermP fire(const Branch& b, const std::vector<TermP>& args) {
    std::map<std::string, TermP> m;
    for (std::size_t i = 0; i < b.vars.size(); ++i) m[b.vars[i]] = args[i];
    return subst_terms(b.body, m);
}

TermP step_at(const TermP& t, bool& stuck) {
    if (t->k == Term::K::App && t->kids[0]->k == Term::K::Lam)
        return subst_term(t->kids[0]->kids[0], t->kids[1], t->kids[0]->name);
    if (t->k == Term::K::Case) {
        std::vector<TermP> args;
        TermP h = spine(t->kids[0], args);
        if (h->k == Term::K::Con) {
            if (const Branch* b = iota_branch(t, h->name, args.size())) return fire(*b, args);
            stuck = true;
        }
    }
    switch (t->k) {
        case Term::K::App: {
            if (TermP f = step_at(t->kids[0], stuck)) return m_app(f, t->kids[1]);
            if (TermP a = step_at(t->kids[1], stuck)) return m_app(t->kids[0], a);
            return nullptr;
        }
        case Term::K::Lam: {
            if (TermP b = step_at(t->kids[0], stuck)) return m_lam(t->name, t->ty, b);
            return nullptr;
        }
        case Term::K::Case: {
            if (TermP s = step_at(t->kids[0], stuck)) return m_case(s, t->alts);
            for (std::size_t i = 0; i < t->alts.size(); ++i) {
                if (TermP b = step_at(t->alts[i].body, stuck)) {
                    auto alts = t->alts;
                    alts[i].body = b;
                    return m_case(t->kids[0], std::move(alts));
                }
            }
            return nullptr;
        }
        default: return nullptr;
    }
}

Whnf go_whnf(TermP t, std::size_t fuel, std::size_t& steps) {
    for (;;) {
        std::vector<TermP> args;
        TermP h = spine(t, args);
        switch (h->k) {
            case Term::K::Con: return {Whnf::K::Head, h->name, args, t, steps};
            case Term::K::Lam:
                if (args.empty()) return {Whnf::K::Value, {}, {}, t, steps};
                if (steps >= fuel) return {Whnf::K::OutOfFuel, {}, {}, t, steps};
                ++steps;
                t = m_apps(subst_term(h->kids[0], args[0], h->name), {args.begin() + 1, args.end()});
                continue;
            case Term::K::Case: {
                Whnf s = go_whnf(h->kids[0], fuel, steps);
                if (s.k == Whnf::K::OutOfFuel) return {Whnf::K::OutOfFuel, {}, {}, t, steps};
                if (s.k == Whnf::K::Value) return {Whnf::K::Value, {}, {}, t, steps};
                const Branch* b = iota_branch(h, s.con, s.args.size());
                if (!b) return {Whnf::K::Value, {}, {}, t, steps};
                if (steps >= fuel) return {Whnf::K::OutOfFuel, {}, {}, t, steps};
                ++steps;
                t = m_apps(fire(*b, s.args), args);
                continue;
            }
            default: return {Whnf::K::Value, {}, {}, t, steps};
        }
    }
}

}  // namespace

StepResult step(const TermP& t) {
    bool stuck = false;
    TermP n = step_at(t, stuck);
    if (n) return {n, false};
    return {nullptr, stuck};
}

Whnf whnf(const TermP& t, std::size_t fuel) {
    std::size_t steps = 0;
    return go_whnf(t, fuel, steps);
}

ApproxP a_bottom() {
    static const ApproxP b = std::make_shared<const Approx>(Approx{Approx::K::Bottom, {}, {}, nullptr});
    return b;
}
ApproxP a_constr(const std::string& c, std::vector<ApproxP> kids) {
    return std::make_shared<const Approx>(Approx{Approx::K::Constr, c, std::move(kids), nullptr});
}
ApproxP a_opaque(const TermP& t) { return std::make_shared<const Approx>(Approx{Approx::K::Opaque, {}, {}, t}); }

std::size_t approx_nodes(const ApproxP& a) {
    std::size_t n = 1;
    for (auto& k : a->kids) n += approx_nodes(k);
    return n;
}

ApproxP approximant(const TermP& t, const EvalBudget& b) {
    if (b.depth == 0) return a_bottom();
    Whnf w = whnf(t, b.fuel);
    switch (w.k) {
        case Whnf::K::OutOfFuel: return a_bottom();
        case Whnf::K::Value: return a_opaque(w.term);
        case Whnf::K::Head: {
            std::vector<ApproxP> kids;
            for (auto& a : w.args) kids.push_back(approximant(a, {b.fuel, b.depth - 1}));
            return a_constr(w.con, std::move(kids));
        }
    }
    return a_bottom();
}

namespace {

std::map<std::string, TypeP> instance_map(const Def& d, const TypeP& self, const std::vector<TypeP>& params) {
    std::map<std::string, TypeP> m{{kRecVar, self}};
    for (std::size_t j = 0; j < d.params.size() && j < params.size(); ++j) m[d.params[j]] = params[j];
    return m;
}

}  // namespace

TypedApprox approximant_typed(const Registry& reg, const TermP& t, const TypeP& tau, const EvalBudget& b,
                              std::size_t node_cap) {
    TypedApprox r;
    std::function<ApproxP(const TermP&, const TypeP&, std::size_t)> go = [&](const TermP& u, const TypeP& ty,
                                                                               std::size_t depth) -> ApproxP {
        if (ty->k != Type::K::Data) return a_opaque(u);
        const Def* d = reg.find(ty->name);
        if (!d) return a_opaque(u);
        if (d->coind && depth == 0) return a_bottom();
        if (r.nodes >= node_cap) {
            r.fuel_limited = true;
            return a_bottom();
        }
        Whnf w = whnf(u, b.fuel);
        r.fuel_used += w.steps;
        if (w.k == Whnf::K::OutOfFuel) {
            r.fuel_limited = true;
            return a_bottom();
        }
        if (w.k == Whnf::K::Value) return a_opaque(w.term);
        const Ctor* c = reg.ctor(w.con);
        if (reg.def_of_ctor(w.con) != d || w.args.size() != c->args.size()) return a_opaque(w.term);
        ++r.nodes;
        auto m = instance_map(*d, ty, ty->args);
        std::size_t next = d->coind ? depth - 1 : depth;
        std::vector<ApproxP> kids;
        for (std::size_t l = 0; l < w.args.size(); ++l) kids.push_back(go(w.args[l], subst_type(c->args[l], m), next));
        return a_constr(w.con, std::move(kids));
    };
    r.approx = go(t, tau, b.depth);
    return r;
}

bool refines(const ApproxP& a1, const ApproxP& a2) {
    if (a2->k == Approx::K::Bottom) return true;
    if (a1->k != a2->k) return false;
    switch (a1->k) {
        case Approx::K::Opaque: return alpha_eq(a1->term, a2->term);
        case Approx::K::Constr:
            if (a1->con != a2->con || a1->kids.size() != a2->kids.size()) return false;
            for (std::size_t i = 0; i < a1->kids.size(); ++i)
                if (!refines(a1->kids[i], a2->kids[i])) return false;
            return true;
        default: return true;
    }
}

bool observable(const Registry& reg, const TypeP& tau) {
    std::set<std::string> seen;
    std::function<bool(const TypeP&)> go = [&](const TypeP& t) -> bool {
        switch (t->k) {
            case Type::K::Var: return true;
            case Type::K::Data: {
                for (auto& a : t->args)
                    if (!go(a)) return false;
                if (!seen.insert(t->name).second) return true;
                const Def* d = reg.find(t->name);
                if (!d) return false;
                for (auto& c : d->ctors)
                    for (auto& a : c.args)
                        if (!go(a)) return false;
                return true;
            }
            default: return false;
        }
    };
    return tau->k == Type::K::Data && go(tau);
}

bool member(const ApproxP& a, const TypeP& tau, const Registry& reg, const Valuation& v, bool strict) {
    if (!observable(reg, tau)) throw NotObservable("type " + print(tau) + " is not observable");
    std::function<bool(const ApproxP&, const TypeP&)> go = [&](const ApproxP& x, const TypeP& ty) -> bool {
        const Def* d = reg.find(ty->name);
        Ext n = eval_size(v, ty->size);
        if (d->coind && n == 0) return !strict || x->k == Approx::K::Bottom;
        if (!d->coind && n == 0) return false;
        if (x->k != Approx::K::Constr || reg.def_of_ctor(x->con) != d) return false;
        const Ctor* c = reg.ctor(x->con);
        if (c->args.size() != x->kids.size()) return false;
        TypeP self = t_data(d->name, n == INF ? s_inf() : s_const(static_cast<unsigned>(n - 1)), ty->args);
        auto m = instance_map(*d, self, ty->args);
        for (std::size_t l = 0; l < x->kids.size(); ++l)
            if (!go(x->kids[l], subst_type(c->args[l], m))) return false;
        return true;
    };
    return go(a, tau);
}

ProductivityReport productivity_check(const Registry& reg, const TermP& t, const TypeP& tau, std::size_t max_depth,
                                      std::size_t fuel) {
    if (!observable(reg, tau) || !reg.is_coind(tau->name))
        throw NotObservable("type " + print(tau) + " is not an observable coinductive type");
    ProductivityReport rep;
    ApproxP prev;
    for (std::size_t n = 0; n <= max_depth; ++n) {
        TypedApprox ta = approximant_typed(reg, t, tau, {fuel, n});
        TypeP tn = t_data(tau->name, s_const(static_cast<unsigned>(n)), tau->args);
        bool ok = member(ta.approx, tn, reg, Valuation{}, false);
        if (ok && prev && !refines(ta.approx, prev)) ok = false;
        std::string line = std::to_string(n) + ": " + (ok ? "ok" : "fail") + " (nodes=" + std::to_string(ta.nodes) +
                           ", fuelUsed=" + std::to_string(ta.fuel_used) + ")";
        if (ta.fuel_limited) line += " fuel-limited";
        rep.lines.push_back(line);
        if (!ok) {
            rep.fail_at = static_cast<int>(n);
            rep.lines.push_back("FAIL at n=" + std::to_string(n));
            return rep;
        }
        prev = ta.approx;
    }
    rep.pass = true;
    rep.lines.push_back("PASS");
    return rep;
}

namespace {

std::string pr(const ApproxP& a, int prec) {
    switch (a->k) {
        case Approx::K::Bottom: return "_|_";
        case Approx::K::Opaque: {
            std::string s = print(a->term);
            if (s.size() > 40) s = s.substr(0, 37) + "...";
            return "<" + s + ">";
        }
        case Approx::K::Constr: break;
    }
    unsigned n = 0;
    const Approx* p = a.get();
    while (p->k == Approx::K::Constr && p->con == "succ" && p->kids.size() == 1) {
        ++n;
        p = p->kids[0].get();
    }
    if (p->k == Approx::K::Constr && p->con == "zero" && p->kids.empty()) return std::to_string(n);
    if (a->con == "cons" && a->kids.size() == 2) {
        std::string s = pr(a->kids[0], 1) + " :: " + pr(a->kids[1], 0);
        return prec > 0 ? "(" + s + ")" : s;
    }
    if (a->kids.empty()) return a->con;
    std::string s = a->con;
    for (auto& k : a->kids) s += " " + pr(k, 2);
    return prec > 1 ? "(" + s + ")" : s;
}

}  // namespace

std::string print(const ApproxP& a) { return pr(a, 0); }

}  // namespace st
