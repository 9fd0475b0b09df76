#include "sizedtypes/subtyping.hpp"

namespace st {

std::tuple<std::string, TypeP, TypeP> BinderOps::align(const TypeP& a, const TypeP& b) const {
    const std::string& i = a->name;
    if (i == b->name) return {i, a->args[0], b->args[0]};
    if (!fsv(b).count(i)) return {i, a->args[0], subst_type_size(b->args[0], s_var(i), b->name)};
    std::set<std::string> used = free_vars(a).sv;
    auto vb = free_vars(b).sv;
    used.insert(vb.begin(), vb.end());
    std::string k = fresh_name(i, used);
    return {k, subst_type_size(a->args[0], s_var(k), i), subst_type_size(b->args[0], s_var(k), b->name)};
}

namespace {

struct Gen {
    const Registry& reg;
    const BinderOps& ops;
    Pairs out;
    std::set<std::string> seen;

    void push(const SizeP& l, const SizeP& r) {
        if (size_eq(l, r) || r->k == Size::K::Inf) return;
        std::string key = print(l) + "<=" + print(r);
        if (seen.insert(key).second) out.push_back({l, r});
    }

    bool go(const TypeP& a, const TypeP& b) {
        if (a->k == Type::K::Bot) return true;
        if (b->k == Type::K::Bot || a->k != b->k) return false;
        switch (a->k) {
            case Type::K::Var: return a->name == b->name;
            case Type::K::Data:
                if (a->name != b->name || a->args.size() != b->args.size()) return false;
                if (reg.is_coind(a->name)) push(b->size, a->size);
                else push(a->size, b->size);
                for (std::size_t j = 0; j < a->args.size(); ++j)
                    if (!go(a->args[j], b->args[j])) return false;
                return true;
            case Type::K::Arrow: return go(b->args[0], a->args[0]) && go(a->args[1], b->args[1]);
            case Type::K::Forall: {
                auto [k, ba, bb] = ops.align(a, b);
                return go(ba, bb);
            }
            default: return false;
        }
    }
};

std::optional<TypeP> lattice(const Registry& reg, const TypeP& a, const TypeP& b, bool up, const BinderOps& ops) {
    if (a->k == Type::K::Bot) return up ? b : a;
    if (b->k == Type::K::Bot) return up ? a : b;
    if (a->k != b->k) return std::nullopt;
    switch (a->k) {
        case Type::K::Var:
            if (a->name != b->name) return std::nullopt;
            return a;
        case Type::K::Data: {
            if (a->name != b->name || a->args.size() != b->args.size()) return std::nullopt;
            bool bigger = up != reg.is_coind(a->name);
            SizeP s = bigger ? mk_max(a->size, b->size) : mk_min(a->size, b->size);
            std::vector<TypeP> args;
            for (std::size_t j = 0; j < a->args.size(); ++j) {
                auto r = lattice(reg, a->args[j], b->args[j], up, ops);
                if (!r) return std::nullopt;
                args.push_back(*r);
            }
            return t_data(a->name, s, std::move(args));
        }
        case Type::K::Arrow: {
            auto d = lattice(reg, a->args[0], b->args[0], !up, ops);
            auto c = lattice(reg, a->args[1], b->args[1], up, ops);
            if (!d || !c) return std::nullopt;
            return t_arrow(*d, *c);
        }
        case Type::K::Forall: {
            auto [k, ba, bb] = ops.align(a, b);
            auto r = lattice(reg, ba, bb, up, ops);
            if (!r) return std::nullopt;
            return t_forall(k, *r);
        }
        default: return std::nullopt;
    }
}

}  // namespace

std::optional<Pairs> gen_sub_constraints(const Registry& reg, const TypeP& t1, const TypeP& t2, const BinderOps& ops) {
    Gen g{reg, ops, {}, {}};
    if (!g.go(t1, t2)) return std::nullopt;
    return std::move(g.out);
}

bool subtype(const Registry& reg, const TypeP& t1, const TypeP& t2, const DefMap& U) {
    auto S = gen_sub_constraints(reg, t1, t2);
    if (!S) return false;
    return is_valid({U, *S}).valid;
}

std::optional<TypeP> join(const Registry& reg, const TypeP& a, const TypeP& b, const BinderOps& ops) {
    return lattice(reg, a, b, true, ops);
}

std::optional<TypeP> meet(const Registry& reg, const TypeP& a, const TypeP& b, const BinderOps& ops) {
    return lattice(reg, a, b, false, ops);
}

TypeP tgt(const TypeP& t) {
    if (t->k == Type::K::Arrow) return tgt(t->args[1]);
    if (t->k == Type::K::Forall) return tgt(t->args[0]);
    return t;
}

TypeP chgtgt(const TypeP& t, const TypeP& alpha) {
    if (t->k == Type::K::Arrow) return t_arrow(t->args[0], chgtgt(t->args[1], alpha));
    if (t->k == Type::K::Forall) return t_forall(t->name, chgtgt(t->args[0], alpha));
    return alpha;
}

bool contains_bot(const TypeP& t) {
    if (t->k == Type::K::Bot) return true;
    for (auto& a : t->args)
        if (contains_bot(a)) return true;
    return false;
}

}  // namespace st
