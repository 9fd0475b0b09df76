#include "sizedtypes/ast.hpp"

namespace st {

namespace {
SizeP mk(Size::K k, std::string n = {}, SizeP a = nullptr, SizeP b = nullptr) {
    return std::make_shared<const Size>(Size{k, std::move(n), std::move(a), std::move(b)});
}
}  // namespace

SizeP s_zero() {
    static const SizeP z = mk(Size::K::Zero);
    return z;
}
SizeP s_inf() {
    static const SizeP z = mk(Size::K::Inf);
    return z;
}
SizeP s_var(const std::string& n) { return mk(Size::K::Var, n); }
SizeP s_succ(SizeP a) { return mk(Size::K::Succ, {}, std::move(a)); }
SizeP s_plus(SizeP a, unsigned n) {
    while (n--) a = s_succ(a);
    return a;
}
SizeP s_const(unsigned n) { return s_plus(s_zero(), n); }
SizeP s_min(SizeP a, SizeP b) { return mk(Size::K::Min, {}, std::move(a), std::move(b)); }
SizeP s_max(SizeP a, SizeP b) { return mk(Size::K::Max, {}, std::move(a), std::move(b)); }

bool size_eq(const SizeP& a, const SizeP& b) {
    if (a == b) return true;
    if (!a || !b || a->k != b->k) return false;
    switch (a->k) {
        case Size::K::Zero:
        case Size::K::Inf: return true;
        case Size::K::Var: return a->name == b->name;
        case Size::K::Succ: return size_eq(a->a, b->a);
        default: return size_eq(a->a, b->a) && size_eq(a->b, b->b);
    }
}

std::size_t size_nodes(const SizeP& s) {
    if (!s) return 0;
    return 1 + size_nodes(s->a) + size_nodes(s->b);
}

namespace {
TypeP mkt(Type::K k, std::string n, SizeP s, std::vector<TypeP> args) {
    return std::make_shared<const Type>(Type{k, std::move(n), std::move(s), std::move(args)});
}
}  // namespace

TypeP t_var(const std::string& n) { return mkt(Type::K::Var, n, nullptr, {}); }
TypeP t_data(const std::string& d, SizeP s, std::vector<TypeP> params) {
    return mkt(Type::K::Data, d, std::move(s), std::move(params));
}
TypeP t_arrow(TypeP a, TypeP b) { return mkt(Type::K::Arrow, {}, nullptr, {std::move(a), std::move(b)}); }
TypeP t_forall(const std::string& i, TypeP body) { return mkt(Type::K::Forall, i, nullptr, {std::move(body)}); }
TypeP t_bot() {
    static const TypeP b = mkt(Type::K::Bot, {}, nullptr, {});
    return b;
}

bool type_eq(const TypeP& a, const TypeP& b) {
    if (a == b) return true;
    if (!a || !b || a->k != b->k || a->name != b->name || a->args.size() != b->args.size()) return false;
    if (a->k == Type::K::Data && !size_eq(a->size, b->size)) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!type_eq(a->args[i], b->args[i])) return false;
    return true;
}

std::size_t type_nodes(const TypeP& t) {
    if (!t) return 0;
    std::size_t n = 1 + size_nodes(t->size);
    for (auto& a : t->args) n += type_nodes(a);
    return n;
}

namespace {
TermP mkm(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

TermP m_var(const std::string& x) { return mkm(Term{Term::K::Var, x, {}, nullptr, nullptr, {}, {}}); }
TermP m_con(const std::string& c) { return mkm(Term{Term::K::Con, c, {}, nullptr, nullptr, {}, {}}); }
TermP m_lam(const std::string& x, TypeP ty, TermP body) {
    return mkm(Term{Term::K::Lam, x, {}, std::move(ty), nullptr, {std::move(body)}, {}});
}
TermP m_app(TermP f, TermP a) { return mkm(Term{Term::K::App, {}, {}, nullptr, nullptr, {std::move(f), std::move(a)}, {}}); }
TermP m_apps(TermP f, const std::vector<TermP>& as) {
    for (auto& a : as) f = m_app(f, a);
    return f;
}
TermP m_sapp(TermP t, SizeP s) { return mkm(Term{Term::K::SApp, {}, {}, nullptr, std::move(s), {std::move(t)}, {}}); }
TermP m_slam(const std::string& i, TermP t) { return mkm(Term{Term::K::SLam, {}, i, nullptr, nullptr, {std::move(t)}, {}}); }
TermP m_case(TermP scrut, std::vector<Branch> alts) {
    return mkm(Term{Term::K::Case, {}, {}, nullptr, nullptr, {std::move(scrut)}, std::move(alts)});
}
TermP m_fix(const std::string& f, const std::string& i, TypeP ty, TermP body) {
    return mkm(Term{Term::K::Fix, f, i, std::move(ty), nullptr, {std::move(body)}, {}});
}
TermP m_cofix(const std::string& j, const std::string& f, TypeP ty, TermP body) {
    return mkm(Term{Term::K::Cofix, f, j, std::move(ty), nullptr, {std::move(body)}, {}});
}

std::size_t term_nodes(const TermP& t) {
    if (!t) return 0;
    std::size_t n = 1;
    for (auto& k : t->kids) n += term_nodes(k);
    for (auto& b : t->alts) n += term_nodes(b.body);
    return n;
}

const Def* Registry::find(const std::string& d) const {
    auto it = by_name.find(d);
    return it == by_name.end() ? nullptr : &defs[it->second];
}

const Def* Registry::def_of_ctor(const std::string& c) const {
    auto it = ctor_of.find(c);
    return it == ctor_of.end() ? nullptr : &defs[it->second.first];
}

const Ctor* Registry::ctor(const std::string& c) const {
    auto it = ctor_of.find(c);
    return it == ctor_of.end() ? nullptr : &defs[it->second.first].ctors[it->second.second];
}

bool Registry::is_coind(const std::string& d) const {
    auto* p = find(d);
    return p && p->coind;
}

void Registry::add(Def d) {
    if (by_name.count(d.name)) throw SyntaxError("duplicate definition " + d.name, d.span);
    if (d.ctors.empty()) throw SyntaxError("definition " + d.name + " has no constructors", d.span);
    std::size_t idx = defs.size();
    for (std::size_t k = 0; k < d.ctors.size(); ++k) {
        auto& c = d.ctors[k];
        if (ctor_of.count(c.name)) throw SyntaxError("duplicate constructor " + c.name, c.span);
        ctor_of[c.name] = {idx, k};
    }
    by_name[d.name] = idx;
    defs.push_back(std::move(d));
}

const TypeP* ctx_lookup(const Context& g, const std::string& x) {
    for (auto it = g.rbegin(); it != g.rend(); ++it)
        if (it->first == x) return &it->second;
    return nullptr;
}

}  // namespace st
