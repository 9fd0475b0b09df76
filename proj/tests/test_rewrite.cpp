#include "doctest.h"
#include "support.hpp"

using namespace st;
using namespace testing;

namespace {

TermP V(const char* x) { return m_var(x); }
TermP C(const char* c) { return m_con(c); }
TermP L(const char* x, TermP b) { return m_lam(x, nullptr, std::move(b)); }
TermP A(TermP f, TermP a) { return m_app(std::move(f), std::move(a)); }

const Registry& sreg() { return example("streams.slam").reg; }
TypeP strm(SizeP s) { return t_data("Strm", std::move(s)); }


}  // namespace

TEST_CASE("erase examples") {
    const Program& p = example("streams.slam");
    TermP tl = erase(p.binding("tl"));
    CHECK(tl->k == Term::K::Lam);
    CHECK(tl->ty == nullptr);
    CHECK(tl->kids[0]->k == Term::K::Case);
    CHECK(alpha_eq(erase(m_sapp(p.binding("tl"), s_inf())), tl));
    TermP z = erase(p.binding("zeros"));
    CHECK(alpha_eq(z, A(turing_y(), L("z", A(A(C("cons"), C("zero")), V("z"))))));
}

TEST_CASE("step examples") {
    TermP t1 = V("t1"), t2 = V("t2");
    std::vector<Branch> alts{{"c", {"x", "y"}, V("x")}, {"d", {"x", "y"}, V("y")}};
    auto s = step(m_case(m_apps(C("c"), {t1, t2}), alts));
    REQUIRE(s.next);
    CHECK(alpha_eq(s.next, t1));
    auto b = step(A(L("x", V("x")), C("c")));
    REQUIRE(b.next);
    CHECK(alpha_eq(b.next, C("c")));
}

TEST_CASE("the three non-redex case shapes are stuck") {
    TermP t1 = V("t1"), t2 = V("t2");
    std::vector<Branch> alts{{"c", {"x", "y"}, V("x")}, {"d", {"x", "y"}, V("y")}};
    std::vector<Branch> dup{{"c", {"x", "y"}, V("x")}, {"c", {"x", "y"}, V("y")}};
    for (TermP t : {m_case(A(C("c"), t1), alts), m_case(m_apps(C("c'"), {t1, t2}), alts),
                    m_case(m_apps(C("c"), {t1, t2}), dup)}) {
        auto s = step(t);
        CHECK_FALSE(s.next);
        CHECK(s.stuck);
    }
    std::vector<Branch> same_vars{{"c", {"x", "x"}, V("x")}};
    CHECK_FALSE(step(m_case(m_apps(C("c"), {t1, t2}), same_vars)).next);
}

TEST_CASE("the fixpoint combinator unfolds") {
    TermP u = L("z", A(A(C("cons"), C("zero")), V("z")));
    TermP t = A(turing_y(), u);
    TermP target = A(u, t);
    int n = 0;
    for (; n < 10 && !alpha_eq(t, target); ++n) t = step(t).next;
    CHECK(alpha_eq(t, target));
    CHECK(n <= 5);
}

TEST_CASE("whnf examples") {
    TermP zeros = A(turing_y(), L("z", A(A(C("cons"), C("zero")), V("z"))));
    Whnf w = whnf(zeros, 100);
    REQUIRE(w.k == Whnf::K::Head);
    CHECK(w.con == "cons");
    REQUIRE(w.args.size() == 2);
    CHECK(alpha_eq(w.args[0], C("zero")));
    CHECK(w.steps >= 3);
    CHECK(w.steps <= 5);
    CHECK(whnf(omega(), 1000).k == Whnf::K::OutOfFuel);
    CHECK(whnf(L("x", V("x")), 1).k == Whnf::K::Value);
}

TEST_CASE("approximant examples") {
    TermP zeros = A(turing_y(), L("z", A(A(C("cons"), C("zero")), V("z"))));
    ApproxP u = approximant(zeros, {10000, 2});
    CHECK(print(u) == "0 :: _|_ :: _|_");
    ApproxP a = approximant_typed(sreg(), zeros, strm(s_inf()), {10000, 2}).approx;
    CHECK(print(a) == "0 :: 0 :: _|_");
    CHECK(refines(a, u));
    CHECK(member(a, strm(s_const(2)), sreg(), {}, true));
    CHECK(approximant(omega(), {10000, 5})->k == Approx::K::Bottom);
    ApproxP b = approximant(A(A(C("cons"), C("zero")), omega()), {1000, 2});
    CHECK(refines(b, a_constr("cons", {a_constr("zero"), a_bottom()})));
    CHECK(refines(a_constr("cons", {a_constr("zero"), a_bottom()}), b));
}

TEST_CASE("refines examples") {
    ApproxP a = a_constr("cons", {a_constr("zero"), a_opaque(V("x"))});
    CHECK(refines(a, a_bottom()));
    CHECK_FALSE(refines(a_bottom(), a_constr("zero")));
    CHECK(refines(a, a));
    CHECK_FALSE(refines(a, a_constr("cons", {a_constr("zero"), a_opaque(V("y"))})));
}

TEST_CASE("member examples") {
    const Registry& r = sreg();
    ApproxP two = num(2);
    CHECK(member(two, t_data("Nat", s_const(3)), r, {}, false));
    CHECK_FALSE(member(two, t_data("Nat", s_const(2)), r, {}, false));
    CHECK(member(a_bottom(), strm(s_zero()), r, {}, true));
    ApproxP c = a_constr("cons", {a_constr("zero"), a_bottom()});
    CHECK(member(c, strm(s_const(1)), r, {}, false));
    CHECK(member(c, strm(s_const(1)), r, {}, true));
    CHECK_FALSE(member(c, strm(s_const(2)), r, {}, false));
    CHECK_FALSE(member(c, strm(s_inf()), r, {}, false));
    Valuation v;
    v.set("i", 1);
    CHECK(member(c, strm(s_var("i")), r, v, false));
    CHECK_THROWS_AS(member(c, t_arrow(strm(s_inf()), strm(s_inf())), r, {}, false), NotObservable);
    CHECK_FALSE(observable(example("sp.slam").reg, t_data("SP", s_inf())));
    CHECK(observable(example("trees.slam").reg, t_data("FTree", s_inf())));
}

TEST_CASE("productivity examples") {
    const Program& p = example("streams.slam");
    auto z = productivity_check(p.reg, erase(p.binding("zeros")), strm(s_inf()), 5);
    CHECK(z.pass);
    REQUIRE(z.lines.size() == 7);
    CHECK(z.lines[0].rfind("0: ok (nodes=", 0) == 0);
    CHECK(z.lines.back() == "PASS");
    auto o = productivity_check(p.reg, omega(), strm(s_inf()), 1);
    CHECK_FALSE(o.pass);
    CHECK(o.fail_at == 1);
    CHECK(o.lines.back() == "FAIL at n=1");
    CHECK(o.lines[1].find("fuel-limited") != std::string::npos);
    const Program& q = example("sp.slam");
    TermP run = erase(parse_term("run odd nats", q));
    CHECK(print(approximant_typed(q.reg, run, strm(s_inf()), {10000, 3}).approx) == "1 :: 3 :: 5 :: _|_");
    CHECK(productivity_check(q.reg, run, strm(s_inf()), 3).pass);
}

TEST_CASE("strict membership implies non-strict membership below") {
    Rng r(61);
    const Registry& tr = example("trees.slam").reg;
    int strict_hits = 0;
    for (int n = 0; n < 200; ++n) {
        bool tree = coin(r);
        ApproxP a = tree ? gen_btree(r, 4) : gen_stream(r, 6);
        const Registry& reg = tree ? tr : sreg();
        auto ty = [&](unsigned k) { return t_data(tree ? "BTree" : "Strm", s_const(k)); };
        for (unsigned k = 0; k <= 6; ++k) {
            if (!member(a, ty(k), reg, {}, true)) continue;
            ++strict_hits;
            for (unsigned k2 = 0; k2 <= k; ++k2) CHECK(member(a, ty(k2), reg, {}, false));
        }
        for (unsigned k = 0; k <= 6; ++k) {
            if (!member(a, ty(k), reg, {}, false)) continue;
            for (unsigned k2 = 0; k2 <= k; ++k2) CHECK(member(a, ty(k2), reg, {}, false));
        }
    }
    CHECK(strict_hits > 50);
}

TEST_CASE("approximants refine across depths") {
    int checked = 0;
    for (auto& c : corpus()) {
        TermP t = erase(c.term);
        ApproxP prev = approximant(t, {10000, 0});
        for (std::size_t d = 1; d <= 5; ++d) {
            ApproxP next = approximant(t, {10000, d});
            CHECK_MESSAGE(refines(next, prev), c.name << " at depth " << d);
            prev = next;
            ++checked;
        }
    }
    CHECK(checked >= 150);
}

TEST_CASE("well-typed observable terms are productive") {
    int seen = 0;
    for (auto& c : corpus()) {
        const Program& p = example(c.file);
        auto m = minimal_type(p.reg, p.assumptions, c.term);
        if (!m || (*m)->k != Type::K::Data || !p.reg.is_coind((*m)->name) || (*m)->size->k != Size::K::Inf ||
            !observable(p.reg, *m))
            continue;
        ++seen;
        auto rep = productivity_check(p.reg, erase(c.term), *m, 5);
        CHECK_MESSAGE(rep.pass, c.name << ": " << rep.lines.back());
    }
    CHECK(seen >= 8);
}
