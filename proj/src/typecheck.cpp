#include "sizedtypes/typecheck.hpp"

#include <functional>

namespace st {

namespace {

void size_names(const SizeP& s, std::set<std::string>& out) {
    if (!s) return;
    if (s->k == Size::K::Var) out.insert(s->name);
    size_names(s->a, out);
    size_names(s->b, out);
}

void type_names(const TypeP& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->k == Type::K::Forall) out.insert(t->name);
    size_names(t->size, out);
    for (auto& a : t->args) type_names(a, out);
}

void term_names(const TermP& t, std::set<std::string>& out) {
    if (!t->svar.empty()) out.insert(t->svar);
    type_names(t->ty, out);
    size_names(t->size, out);
    for (auto& k : t->kids) term_names(k, out);
    for (auto& b : t->alts) term_names(b.body, out);
}

std::string snippet(const TermP& t) {
    std::string s = print(t);
    if (s.size() > 60) s = s.substr(0, 57) + "...";
    return s;
}

bool is_atomic(const SizeP& s) { return s->k == Size::K::Var || s->k == Size::K::Zero || s->k == Size::K::Inf; }

struct Failure {
    std::string msg;
};

std::optional<Decomposition> decompose_with(const Registry& reg, const TypeP& theta, const TypeP& sigma, const Def& d,
                                            const BinderOps& ops) {
    Decomposition r;
    r.alpha.assign(d.params.size(), t_bot());
    r.beta.assign(d.params.size(), t_bot());
    std::vector<std::string> opened;
    std::function<TypeP(const TypeP&, const TypeP&)> go = [&](const TypeP& th, const TypeP& sg) -> TypeP {
        if (th->k == Type::K::Bot) return th;
        if (sg->k == Type::K::Var) {
            if (sg->name == kRecVar) {
                if (th->k != Type::K::Data || th->name != d.name || th->args.size() != d.params.size())
                    throw Failure{"expected " + d.name + " at a recursive position, found " + print(th)};
                if (!r.has_a) {
                    r.has_a = true;
                    r.size = th->size;
                    r.alpha = th->args;
                } else {
                    r.size = d.coind ? mk_min(r.size, th->size) : mk_max(r.size, th->size);
                    for (std::size_t j = 0; j < r.alpha.size(); ++j) {
                        auto jn = join(reg, r.alpha[j], th->args[j], ops);
                        if (!jn) throw Failure{"incompatible instances of " + d.name};
                        r.alpha[j] = *jn;
                    }
                }
                return sg;
            }
            for (std::size_t j = 0; j < d.params.size(); ++j) {
                if (d.params[j] != sg->name) continue;
                auto jn = join(reg, r.beta[j], th, ops);
                if (!jn) throw Failure{"incompatible instances of parameter " + sg->name};
                r.beta[j] = *jn;
                return sg;
            }
            throw Failure{"unknown type variable " + sg->name};
        }
        if (closed_type(sg)) return th;
        if (th->k != sg->k) throw Failure{"argument of type " + print(th) + " does not fit the constructor signature"};
        switch (sg->k) {
            case Type::K::Arrow: return t_arrow(th->args[0], go(th->args[1], sg->args[1]));
            case Type::K::Forall: {
                auto [k, bth, bsg] = ops.align(th, sg);
                opened.push_back(k);
                return t_forall(k, go(bth, bsg));
            }
            case Type::K::Data: {
                if (th->name != sg->name || th->args.size() != sg->args.size())
                    throw Failure{"argument of type " + print(th) + " does not fit the constructor signature"};
                std::vector<TypeP> args;
                for (std::size_t j = 0; j < sg->args.size(); ++j) args.push_back(go(th->args[j], sg->args[j]));
                return t_data(th->name, th->size, std::move(args));
            }
            default: throw Failure{"unexpected type in constructor signature"};
        }
    };
    try {
        r.sigma_prime = go(theta, sigma);
    } catch (const Failure&) {
        return std::nullopt;
    }
    if (!opened.empty()) {
        std::set<std::string> ns;
        if (r.has_a) size_names(r.size, ns);
        for (auto& a : r.alpha) type_names(a, ns);
        for (auto& b : r.beta) type_names(b, ns);
        for (auto& k : opened)
            if (ns.count(k)) return std::nullopt;
    }
    return r;
}

class Engine : public BinderOps {
public:
    explicit Engine(const Registry& reg) : reg_(reg) {}

    const Registry& reg_;
    DefMap U;
    Pairs S;
    std::set<std::string> Skeys, Svars;
    std::set<std::string> used;
    std::set<std::string> gen_binders;
    std::map<std::string, std::string> orig;
    std::vector<std::string> trail;

    std::string fresh(const std::string& base) {
        std::string b = base;
        while (b.size() > 1 && std::isdigit(static_cast<unsigned char>(b.back()))) b.pop_back();
        return fresh_name(b + "1", used);
    }

    [[noreturn]] void fail(const std::string& rule, const std::string& msg, const TermP& t) {
        throw Failure{"(" + rule + ") " + msg + " in `" + snippet(t) + "`"};
    }

    // renaming apart of every binder
    TypeP rn_type(const TypeP& t, const std::map<std::string, SizeP>& sub) {
        switch (t->k) {
            case Type::K::Data: {
                std::vector<TypeP> args;
                for (auto& a : t->args) args.push_back(rn_type(a, sub));
                return t_data(t->name, subst_size(t->size, sub), std::move(args));
            }
            case Type::K::Arrow: return t_arrow(rn_type(t->args[0], sub), rn_type(t->args[1], sub));
            case Type::K::Forall: {
                std::string k = fresh(t->name);
                orig[k] = orig.count(t->name) ? orig[t->name] : t->name;
                auto sub2 = sub;
                sub2[t->name] = s_var(k);
                return t_forall(k, rn_type(t->args[0], sub2));
            }
            default: return t;
        }
    }

    TermP rn_term(const TermP& t, const std::map<std::string, SizeP>& sub) {
        Term c = *t;
        switch (t->k) {
            case Term::K::Var:
            case Term::K::Con: return t;
            case Term::K::SApp: c.size = subst_size(t->size, sub); break;
            case Term::K::SLam:
            case Term::K::Fix:
            case Term::K::Cofix: {
                std::string base = t->svar.empty() ? "i" : t->svar;
                std::string k = fresh(base);
                orig[k] = base;
                auto sub2 = sub;
                if (!t->svar.empty()) sub2[t->svar] = s_var(k);
                c.svar = k;
                if (t->ty) c.ty = rn_type(t->ty, sub2);
                c.kids = {rn_term(t->kids[0], sub2)};
                return std::make_shared<const Term>(std::move(c));
            }
            default: break;
        }
        if (c.ty) c.ty = rn_type(c.ty, sub);
        for (auto& k : c.kids) k = rn_term(k, sub);
        for (auto& b : c.alts) b.body = rn_term(b.body, sub);
        return std::make_shared<const Term>(std::move(c));
    }

    void collect(const Context& G, const TermP& t, const TypeP& extra) {
        for (auto& [x, ty] : G) type_names(ty, used);
        term_names(t, used);
        type_names(extra, used);
        for (auto& [i, s] : U) {
            used.insert(i);
            size_names(s, used);
        }
    }

    // U-variables reachable from roots that depend on the binder i
    std::set<std::string> dependents(const std::set<std::string>& roots, const std::string& i) {
        std::map<std::string, bool> memo;
        std::set<std::string> reached;
        std::function<bool(const std::string&)> dep = [&](const std::string& v) -> bool {
            if (v == i) return true;
            auto it = U.find(v);
            if (it == U.end()) return false;
            auto m = memo.find(v);
            if (m != memo.end()) return m->second;
            memo[v] = false;
            reached.insert(v);
            std::set<std::string> vs;
            size_names(it->second, vs);
            bool r = false;
            for (auto& w : vs) r = dep(w) || r;
            memo[v] = r;
            return r;
        };
        for (auto& r : roots) dep(r);
        std::set<std::string> out;
        for (auto& v : reached)
            if (memo[v]) out.insert(v);
        return out;
    }

    TypeP rename_binder(const std::string& i, const TypeP& body, const std::string& k) {
        auto D = dependents(fsv(body), i);
        std::map<std::string, SizeP> m{{i, s_var(k)}};
        for (auto& v : D) m[v] = s_var(fresh(v));
        for (auto& v : D) U[m[v]->name] = subst_size(U.at(v), m);
        return subst_type_size(body, m);
    }

    std::tuple<std::string, TypeP, TypeP> align(const TypeP& a, const TypeP& b) const override {
        auto* self = const_cast<Engine*>(this);
        std::string k = self->fresh(a->name);
        self->orig[k] = orig.count(a->name) ? orig.at(a->name) : a->name;
        TypeP ba = self->rename_binder(a->name, a->args[0], k);
        TypeP bb = self->rename_binder(b->name, b->args[0], k);
        return {k, ba, bb};
    }

    void add_pairs(const Pairs& ps) {
        for (auto& [l, r] : ps) {
            std::string key = print(l) + "<=" + print(r);
            if (!Skeys.insert(key).second) continue;
            S.push_back({l, r});
            size_names(l, Svars);
            size_names(r, Svars);
        }
    }

    bool sub(const TypeP& a, const TypeP& b) {
        auto ps = gen_sub_constraints(reg_, a, b, *this);
        if (!ps) return false;
        add_pairs(*ps);
        return true;
    }

    std::optional<TypeP> lub(const TypeP& a, const TypeP& b) { return join(reg_, a, b, *this); }

    TypeP inst(const TypeP& fa, const SizeP& s) {
        const std::string& i = fa->name;
        if (gen_binders.count(i) && !U.count(i)) {
            std::set<std::string> svs;
            size_names(s, svs);
            bool ok = dependents(svs, i).empty() && !svs.count(i);
            if (ok && (Svars.count(i) || !dependents(Svars, i).empty())) ok = false;
            if (ok) {
                U[i] = s;
                return fa->args[0];
            }
        }
        std::string k = fresh(i);
        TypeP body = rename_binder(i, fa->args[0], k);
        U[k] = s;
        return body;
    }

    // successor chains are bound layer by layer so that peeling stays constant size
    SizeP share(const SizeP& e) {
        if (is_atomic(e)) return e;
        std::string k = fresh("k");
        U[k] = e->k == Size::K::Succ ? s_succ(share(e->a)) : e;
        return s_var(k);
    }

    std::map<std::string, SizeP> und_memo;
    std::map<std::string, std::optional<SizeP>> ov_memo;

    SizeP und(const SizeP& s) {
        switch (s->k) {
            case Size::K::Var: {
                auto it = U.find(s->name);
                if (it == U.end()) return s;
                auto m = und_memo.find(s->name);
                if (m != und_memo.end()) return m->second;
                SizeP r = und(it->second);
                if (!is_atomic(r)) {
                    std::string k = fresh("k");
                    U[k] = r;
                    r = s_var(k);
                }
                und_memo[s->name] = r;
                return r;
            }
            case Size::K::Succ: return share(s->a);
            case Size::K::Min: return mk_min(und(s->a), und(s->b));
            case Size::K::Max: return mk_max(und(s->a), und(s->b));
            default: return s;
        }
    }

    std::optional<SizeP> ov(const SizeP& s) {
        switch (s->k) {
            case Size::K::Zero: return std::nullopt;
            case Size::K::Inf: return s;
            case Size::K::Var: {
                auto it = U.find(s->name);
                if (it == U.end()) return std::nullopt;
                auto m = ov_memo.find(s->name);
                if (m != ov_memo.end()) return m->second;
                auto r = ov(it->second);
                if (r && !is_atomic(*r)) {
                    std::string k = fresh("k");
                    U[k] = *r;
                    r = s_var(k);
                }
                ov_memo[s->name] = r;
                return r;
            }
            case Size::K::Succ: return share(s->a);
            case Size::K::Max: {
                auto a = ov(s->a), b = ov(s->b);
                if (!a) return b;
                if (!b) return a;
                return mk_max(*a, *b);
            }
            case Size::K::Min: {
                auto a = ov(s->a), b = ov(s->b);
                if (!a || !b) return std::nullopt;
                return mk_min(*a, *b);
            }
        }
        return std::nullopt;
    }

    TypeP infer(Context& G, const TermP& t) {
        try {
            return infer_(G, t);
        } catch (const Failure& f) {
            if (trail.empty() || trail.back() != f.msg) trail.push_back(f.msg);
            throw Failure{f.msg};
        }
    }

    TypeP infer_(Context& G, const TermP& t) {
        switch (t->k) {
            case Term::K::Var: {
                const TypeP* ty = ctx_lookup(G, t->name);
                if (!ty) fail("ax", "unbound variable " + t->name, t);
                return *ty;
            }
            case Term::K::Con:
            case Term::K::App: {
                std::vector<TermP> args;
                TermP h = t;
                while (h->k == Term::K::App) {
                    args.insert(args.begin(), h->kids[1]);
                    h = h->kids[0];
                }
                std::size_t used_args = 0;
                TypeP f;
                if (h->k == Term::K::Con) {
                    used_args = reg_.ctor(h->name) ? reg_.ctor(h->name)->args.size() : 0;
                    f = con(G, h, args, t);
                } else {
                    f = infer(G, h);
                }
                for (std::size_t a = used_args; a < args.size(); ++a) {
                    if (f->k != Type::K::Arrow) fail("app", "applying a term of type " + print(f), t);
                    TypeP at = infer(G, args[a]);
                    if (!sub(at, f->args[0]))
                        fail("app", "argument type " + print(at) + " is incompatible with " + print(f->args[0]), t);
                    f = f->args[1];
                }
                return f;
            }
            case Term::K::Lam: {
                if (!t->ty) fail("lam", "missing type annotation on " + t->name, t);
                G.push_back({t->name, t->ty});
                TypeP b = infer(G, t->kids[0]);
                G.pop_back();
                return t_arrow(t->ty, b);
            }
            case Term::K::SApp: {
                TypeP f = infer(G, t->kids[0]);
                if (f->k != Type::K::Forall) fail("inst", "size application to a term of type " + print(f), t);
                return inst(f, t->size);
            }
            case Term::K::SLam: {
                TypeP b = infer(G, t->kids[0]);
                if (fsv(G).count(t->svar)) fail("gen", "size variable " + t->svar + " is free in the context", t);
                gen_binders.insert(t->svar);
                return t_forall(t->svar, b);
            }
            case Term::K::Case: return case_(G, t);
            case Term::K::Fix: return fix(G, t);
            case Term::K::Cofix: return cofix(G, t);
        }
        fail("?", "unknown term", t);
    }

    TypeP con(Context& G, const TermP& h, const std::vector<TermP>& args, const TermP& t) {
        const Def* d = reg_.def_of_ctor(h->name);
        const Ctor* c = reg_.ctor(h->name);
        if (!d) fail("con", "unknown constructor " + h->name, t);
        if (args.size() < c->args.size())
            fail("con", "constructor " + c->name + " expects " + std::to_string(c->args.size()) + " argument(s)", t);
        SizeP acc = d->coind ? s_inf() : s_zero();
        std::vector<TypeP> params(d->params.size(), t_bot());
        for (std::size_t i = 0; i < c->args.size(); ++i) {
            TypeP th = infer(G, args[i]);
            auto dec = decompose_with(reg_, th, c->args[i], *d, *this);
            if (!dec) fail("con", "argument " + std::to_string(i + 1) + " of type " + print(th) + " does not fit " + c->name, t);
            if (dec->has_a) acc = d->coind ? mk_min(acc, dec->size) : mk_max(acc, dec->size);
            for (std::size_t j = 0; j < params.size(); ++j) {
                auto a = lub(params[j], dec->alpha[j]);
                if (a) a = lub(*a, dec->beta[j]);
                if (!a) fail("con", "parameter " + d->params[j] + " has no common instance", t);
                params[j] = *a;
            }
            if (!sub(dec->sigma_prime, c->args[i]))
                fail("con", "argument " + std::to_string(i + 1) + " does not fit " + c->name, t);
        }
        SizeP s = acc->k == Size::K::Inf ? acc : s_succ(acc);
        return t_data(d->name, s, std::move(params));
    }

    TypeP case_(Context& G, const TermP& t) {
        TypeP th = infer(G, t->kids[0]);
        if (th->k != Type::K::Data) fail("case", "scrutinee has type " + print(th), t);
        const Def* d = reg_.find(th->name);
        if (!d) fail("case", "unknown type " + th->name, t);
        std::set<std::string> seen;
        for (auto& b : t->alts) {
            const Ctor* c = reg_.ctor(b.con);
            if (!c || reg_.def_of_ctor(b.con) != d) fail("case", b.con + " is not a constructor of " + d->name, t);
            if (!seen.insert(b.con).second) fail("case", "duplicate branch " + b.con, t);
            if (b.vars.size() != c->args.size()) fail("case", "branch " + b.con + " binds the wrong number of variables", t);
        }
        if (seen.size() != d->ctors.size()) fail("case", "branches do not cover every constructor of " + d->name, t);
        SizeP r;
        if (d->coind) {
            if (!size_ge_const(U, th->size, 1)) fail("case", "size " + print(th->size) + " of the scrutinee may be 0", t);
            auto o = ov(th->size);
            if (!o) fail("case", "size " + print(th->size) + " of the scrutinee may be 0", t);
            r = *o;
        } else {
            r = und(th->size);
        }
        std::string k = fresh("i");
        U[k] = r;
        std::map<std::string, TypeP> m{{kRecVar, t_data(d->name, s_var(k), th->args)}};
        for (std::size_t j = 0; j < d->params.size(); ++j) m[d->params[j]] = th->args[j];
        TypeP res = t_bot();
        for (auto& b : t->alts) {
            const Ctor* c = reg_.ctor(b.con);
            for (std::size_t v = 0; v < b.vars.size(); ++v) G.push_back({b.vars[v], subst_type(c->args[v], m)});
            TypeP bt = infer(G, b.body);
            G.resize(G.size() - b.vars.size());
            auto j = lub(res, bt);
            if (!j) fail("case", "branch types " + print(res) + " and " + print(bt) + " have no join", t);
            res = *j;
        }
        return res;
    }

    TypeP fix(Context& G, const TermP& t) {
        const TypeP& T = t->ty;
        std::vector<std::string> js;
        TypeP core = T;
        while (core->k == Type::K::Forall) {
            js.push_back(core->name);
            core = core->args[0];
        }
        if (core->k != Type::K::Arrow || core->args[0]->k != Type::K::Data || reg_.is_coind(core->args[0]->name) ||
            !reg_.find(core->args[0]->name))
            fail("fix", "annotation must have the shape forall j.. . mu -> tau with mu inductive", t);
        const std::string& i = t->svar;
        if (free_vars(T).sv.count(i)) fail("fix", "size variable " + i + " occurs in the annotation", t);
        auto wrap = [&](const SizeP& s) {
            const TypeP& mu = core->args[0];
            TypeP r = t_arrow(t_data(mu->name, s, mu->args), core->args[1]);
            for (auto it = js.rbegin(); it != js.rend(); ++it) r = t_forall(*it, r);
            return r;
        };
        G.push_back({t->name, wrap(s_var(i))});
        TypeP th = infer(G, t->kids[0]);
        G.pop_back();
        if (!sub(th, wrap(s_succ(s_var(i))))) fail("fix", "body type " + print(th) + " does not match the annotation", t);
        return T;
    }

    TypeP cofix(Context& G, const TermP& t) {
        const TypeP& T = t->ty;
        TypeP nu = tgt(T);
        if (nu->k != Type::K::Data || !reg_.is_coind(nu->name)) fail("cofix", "target of the annotation must be coinductive", t);
        const std::string& j = t->svar;
        if (free_vars(T).sv.count(j)) fail("cofix", "size variable " + j + " occurs in the annotation", t);
        if (fsv(G).count(j)) fail("cofix", "size variable " + j + " is free in the context", t);
        G.push_back({t->name, chgtgt(T, t_data(nu->name, s_min(nu->size, s_var(j)), nu->args))});
        TypeP th = infer(G, t->kids[0]);
        G.pop_back();
        if (!sub(th, chgtgt(T, t_data(nu->name, s_min(nu->size, s_succ(s_var(j))), nu->args))))
            fail("cofix", "body type " + print(th) + " does not match the annotation", t);
        return T;
    }

    // prepares context, term and an optional target type
    Context prepare(const Context& G, TermP& t, TypeP* extra) {
        collect(G, t, extra ? *extra : nullptr);
        Context G2;
        for (auto& [x, ty] : G) G2.push_back({x, rn_type(ty, {})});
        t = rn_term(t, {});
        if (extra && *extra) *extra = rn_type(*extra, {});
        return G2;
    }

    TypeP prettify(const TypeP& t) {
        std::set<std::string> free = fsv(t);
        std::function<TypeP(const TypeP&, std::set<std::string>&)> go = [&](const TypeP& x,
                                                                              std::set<std::string>& outer) -> TypeP {
            switch (x->k) {
                case Type::K::Forall: {
                    std::string want = orig.count(x->name) ? orig[x->name] : x->name;
                    TypeP body = x->args[0];
                    std::string name = x->name;
                    if (want != name && !free.count(want) && !outer.count(want) && !free_vars(body).sv.count(want)) {
                        body = subst_type_size(body, s_var(want), name);
                        name = want;
                    }
                    outer.insert(name);
                    TypeP b = go(body, outer);
                    outer.erase(name);
                    return t_forall(name, b);
                }
                case Type::K::Arrow: return t_arrow(go(x->args[0], outer), go(x->args[1], outer));
                case Type::K::Data: {
                    std::vector<TypeP> args;
                    for (auto& a : x->args) args.push_back(go(a, outer));
                    return t_data(x->name, x->size, std::move(args));
                }
                default: return x;
            }
        };
        std::set<std::string> outer;
        return go(t, outer);
    }
};

}  // namespace

std::size_t InferenceTriple::nodes() const {
    std::size_t n = type_nodes(type);
    for (auto& [i, s] : U) n += 1 + size_nodes(s);
    for (auto& [l, r] : S) n += size_nodes(l) + size_nodes(r);
    return n;
}

InferenceTriple infer(const Registry& reg, const DefMap& U0, const Context& G, const TermP& t) {
    Engine e(reg);
    e.U = U0;
    TermP t2 = t;
    Context G2 = e.prepare(G, t2, nullptr);
    InferenceTriple r;
    try {
        r.type = e.infer(G2, t2);
        r.U = std::move(e.U);
        r.S = std::move(e.S);
    } catch (const Failure&) {
        r.failed = true;
        r.U = U0;
        r.S = {{s_const(1), s_zero()}};
        r.type = t_bot();
    }
    r.trail = std::move(e.trail);
    return r;
}

std::optional<Decomposition> decompose_constructor_arg(const Registry& reg, const TypeP& theta, const TypeP& sigma,
                                                       const std::string& d, const BinderOps& ops) {
    const Def* def = reg.find(d);
    if (!def) return std::nullopt;
    return decompose_with(reg, theta, sigma, *def, ops);
}

TypeP expand_type(const DefMap& U, const TypeP& t) {
    std::map<std::string, SizeP> memo;
    std::function<SizeP(const SizeP&, const std::set<std::string>&)> es = [&](const SizeP& s,
                                                                                const std::set<std::string>& bound) -> SizeP {
        switch (s->k) {
            case Size::K::Var: {
                if (bound.count(s->name)) return s;
                auto u = U.find(s->name);
                if (u == U.end()) return s;
                auto m = memo.find(s->name);
                if (m != memo.end()) return m->second;
                SizeP r = es(u->second, bound);
                memo[s->name] = r;
                return r;
            }
            case Size::K::Succ: {
                SizeP a = es(s->a, bound);
                return a->k == Size::K::Inf ? a : s_succ(a);
            }
            case Size::K::Min: return mk_min(es(s->a, bound), es(s->b, bound));
            case Size::K::Max: return mk_max(es(s->a, bound), es(s->b, bound));
            default: return s;
        }
    };
    std::function<TypeP(const TypeP&, std::set<std::string>&)> go = [&](const TypeP& x, std::set<std::string>& bound) -> TypeP {
        switch (x->k) {
            case Type::K::Data: {
                std::vector<TypeP> args;
                for (auto& a : x->args) args.push_back(go(a, bound));
                return t_data(x->name, es(x->size, bound), std::move(args));
            }
            case Type::K::Arrow: return t_arrow(go(x->args[0], bound), go(x->args[1], bound));
            case Type::K::Forall: {
                bool had = bound.count(x->name);
                bound.insert(x->name);
                TypeP b = go(x->args[0], bound);
                if (!had) bound.erase(x->name);
                return t_forall(x->name, b);
            }
            default: return x;
        }
    };
    std::set<std::string> bound;
    return go(t, bound);
}

MinimalResult minimal_type_ex(const Registry& reg, const Context& G, const TermP& t) {
    Engine e(reg);
    TermP t2 = t;
    Context G2 = e.prepare(G, t2, nullptr);
    TypeP ty;
    try {
        ty = e.infer(G2, t2);
    } catch (const Failure&) {
        return {nullptr, e.trail.empty() ? "inference failed" : e.trail.front()};
    }
    if (contains_bot(ty)) return {nullptr, "a type parameter of the result is undetermined"};
    Verdict v;
    try {
        v = is_valid({e.U, e.S});
    } catch (const ConstraintError& ex) {
        return {nullptr, ex.what()};
    }
    if (!v.valid) return {nullptr, "size constraints are unsatisfiable"};
    return {e.prettify(expand_type(e.U, ty)), {}};
}

std::optional<TypeP> minimal_type(const Registry& reg, const Context& G, const TermP& t) {
    auto r = minimal_type_ex(reg, G, t);
    if (!r.type) return std::nullopt;
    return r.type;
}

bool check(const Registry& reg, const Context& G, const TermP& t, const TypeP& tau) {
    Engine e(reg);
    TermP t2 = t;
    TypeP tau2 = tau;
    Context G2 = e.prepare(G, t2, &tau2);
    try {
        TypeP ty = e.infer(G2, t2);
        if (contains_bot(ty)) return false;
        if (!e.sub(ty, tau2)) return false;
        return is_valid({e.U, e.S}).valid;
    } catch (const Failure&) {
        return false;
    } catch (const ConstraintError&) {
        return false;
    }
}

}  // namespace st
