#include "sizedtypes/sizes.hpp"

#include <functional>
#include <optional>

namespace st {

Ext Valuation::get(const std::string& i) const {
    auto it = vals.find(i);
    return it == vals.end() ? dflt : it->second;
}

std::string ext_str(Ext v) { return v == INF ? "oo" : std::to_string(v); }

Ext eval_size(const Valuation& v, const SizeP& s) {
    switch (s->k) {
        case Size::K::Zero: return 0;
        case Size::K::Inf: return INF;
        case Size::K::Var: return v.get(s->name);
        case Size::K::Succ: {
            Ext a = eval_size(v, s->a);
            return a == INF ? INF : a + 1;
        }
        case Size::K::Min: return std::min(eval_size(v, s->a), eval_size(v, s->b));
        case Size::K::Max: return std::max(eval_size(v, s->a), eval_size(v, s->b));
    }
    return 0;
}

namespace {
std::optional<Ext> numeral(const SizeP& s) {
    Ext n = 0;
    const Size* p = s.get();
    while (p->k == Size::K::Succ) { ++n; p = p->a.get(); }
    if (p->k != Size::K::Zero) return std::nullopt;
    return n;
}
}

SizeP mk_min(const SizeP& a, const SizeP& b) {
    auto na = numeral(a), nb = numeral(b);
    if (na && nb) return *na <= *nb ? a : b;
    if (a->k == Size::K::Inf) return b;
    if (b->k == Size::K::Inf) return a;
    if (a->k == Size::K::Zero) return a;
    if (b->k == Size::K::Zero) return b;
    if (size_eq(a, b)) return a;
    return s_min(a, b);
}

SizeP mk_max(const SizeP& a, const SizeP& b) {
    auto na = numeral(a), nb = numeral(b);
    if (na && nb) return *na >= *nb ? a : b;
    if (a->k == Size::K::Inf) return a;
    if (b->k == Size::K::Inf) return b;
    if (a->k == Size::K::Zero) return b;
    if (b->k == Size::K::Zero) return a;
    if (size_eq(a, b)) return a;
    return s_max(a, b);
}

SizeP simplify_infty(const SizeP& s) {
    switch (s->k) {
        case Size::K::Succ: {
            SizeP a = simplify_infty(s->a);
            if (a->k == Size::K::Inf) return a;
            return a == s->a ? s : s_succ(a);
        }
        case Size::K::Min:
        case Size::K::Max: {
            SizeP a = simplify_infty(s->a), b = simplify_infty(s->b);
            if (s->k == Size::K::Min) {
                if (a->k == Size::K::Inf) return b;
                if (b->k == Size::K::Inf) return a;
                return (a == s->a && b == s->b) ? s : s_min(a, b);
            }
            if (a->k == Size::K::Inf) return a;
            if (b->k == Size::K::Inf) return b;
            return (a == s->a && b == s->b) ? s : s_max(a, b);
        }
        default: return s;
    }
}

namespace {
SizeP push_succ(const SizeP& s, unsigned k) {
    switch (s->k) {
        case Size::K::Succ: return push_succ(s->a, k + 1);
        case Size::K::Min: return s_min(push_succ(s->a, k), push_succ(s->b, k));
        case Size::K::Max: return s_max(push_succ(s->a, k), push_succ(s->b, k));
        default: return s_plus(s, k);
    }
}
}  // namespace

SizeP normalize_succ(const SizeP& s) { return push_succ(s, 0); }

namespace {
// nullopt: the expression is 0 once superfluous variables are zeroed
std::optional<SizeP> over(const SizeP& s) {
    switch (s->k) {
        case Size::K::Zero:
        case Size::K::Var: return std::nullopt;
        case Size::K::Inf: return s;
        case Size::K::Succ: return s->a;
        case Size::K::Max: {
            auto a = over(s->a), b = over(s->b);
            if (!a) return b;
            if (!b) return a;
            return mk_max(*a, *b);
        }
        case Size::K::Min: {
            auto a = over(s->a), b = over(s->b);
            if (!a || !b) return std::nullopt;
            return mk_min(*a, *b);
        }
    }
    return std::nullopt;
}
}  // namespace

SizeP overline(const SizeP& s) {
    auto r = over(s);
    if (!r) throw SizeError("overline: size expression is not >= 1");
    return *r;
}

SizeP underline(const SizeP& s) {
    switch (s->k) {
        case Size::K::Zero:
        case Size::K::Inf:
        case Size::K::Var: return s;
        case Size::K::Succ: return s->a;
        case Size::K::Min: return mk_min(underline(s->a), underline(s->b));
        case Size::K::Max: return mk_max(underline(s->a), underline(s->b));
    }
    return s;
}

bool size_ge_const(const DefMap& U, const SizeP& s, unsigned k) {
    std::map<std::string, Ext> memo;
    std::function<Ext(const SizeP&)> ev = [&](const SizeP& e) -> Ext {
        switch (e->k) {
            case Size::K::Zero: return 0;
            case Size::K::Inf: return INF;
            case Size::K::Var: {
                auto u = U.find(e->name);
                if (u == U.end()) return 0;
                auto m = memo.find(e->name);
                if (m != memo.end()) return m->second;
                Ext r = ev(u->second);
                memo[e->name] = r;
                return r;
            }
            case Size::K::Succ: {
                Ext a = ev(e->a);
                return a == INF ? INF : a + 1;
            }
            case Size::K::Min: return std::min(ev(e->a), ev(e->b));
            case Size::K::Max: return std::max(ev(e->a), ev(e->b));
        }
        return 0;
    };
    return ev(s) >= k;
}

}  // namespace st
