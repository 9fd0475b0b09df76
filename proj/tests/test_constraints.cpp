#include "doctest.h"
#include "support.hpp"

using namespace st;
using namespace testing;

namespace {

SizeP P(const char* s) { return parse_size(s); }

// enumeration over the free variables, with U computed by evaluation
bool naive_valid(const SizeConstraint& c, unsigned B) {
    std::vector<std::string> vars;
    for (auto& x : free_size_vars(c)) vars.push_back(x);
    std::vector<std::string> defined;
    DefMap left = c.U;
    while (!left.empty()) {
        for (auto it = left.begin(); it != left.end();) {
            bool ready = true;
            for (auto& x : free_vars(it->second).sv)
                if (left.count(x)) ready = false;
            if (ready) {
                defined.push_back(it->first);
                it = left.erase(it);
            } else {
                ++it;
            }
        }
    }
    std::vector<Ext> range;
    for (unsigned k = 0; k <= B; ++k) range.push_back(k);
    range.push_back(INF);
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
        Valuation v;
        for (std::size_t n = 0; n < vars.size(); ++n) v.set(vars[n], range[idx[n]]);
        for (auto& d : defined) v.set(d, eval_size(v, c.U.at(d)));
        for (auto& [a, b] : c.S)
            if (eval_size(v, a) > eval_size(v, b)) return false;
        std::size_t n = 0;
        while (n < idx.size() && ++idx[n] == range.size()) idx[n++] = 0;
        if (n == idx.size()) return true;
    }
}

}  // namespace

TEST_CASE("check_acyclic examples") {
    CHECK(check_acyclic({{"i", P("j+1")}, {"j", s_zero()}}));
    CHECK_FALSE(check_acyclic({{"i", P("min(i,0)")}}));
    CHECK(check_acyclic({{"i", P("max(j,k)")}, {"j", P("k+1")}}));
    CHECK_THROWS_AS(is_valid({{{"i", P("i+1")}}, {}}), ConstraintError);
}

TEST_CASE("expand examples") {
    DefMap U{{"i1", P("min(i2, i2+1)")}, {"i2", P("s")}};
    CHECK(size_eq(expand(U, P("max(i1,i1)")), P("max(min(s,s+1), min(s,s+1))")));
    CHECK(size_eq(expand({}, P("max(i,j)")), P("max(i,j)")));
    CHECK(size_eq(expand({{"i", s_zero()}}, P("i+1")), P("1")));
}

TEST_CASE("is_valid examples") {
    CHECK(is_valid({{}, {{P("i"), P("i+1")}}}).valid);
    Verdict v = is_valid({{}, {{P("i+1"), P("i")}}});
    CHECK_FALSE(v.valid);
    CHECK(v.witness.get("i") == 0);
    CHECK(is_valid({{{"i", P("min(j,1)")}}, {{P("i"), P("1")}}}).valid);
    CHECK(is_valid({{}, {{P("oo"), P("oo+1")}}}).valid);
    CHECK_FALSE(is_valid({{}, {{P("oo"), P("i")}}}).valid);
}

TEST_CASE("sat_atoms examples") {
    CHECK_FALSE(sat_atoms({{"x", 1, "y"}, {"y", 1, "x"}}));
    auto m = sat_atoms({{"x", 1, "y"}});
    REQUIRE(m);
    CHECK(m->at("x") + 1 <= m->at("y"));
    CHECK_FALSE(sat_atoms({atom_ge_const("x", 2), {"x", 0, "y"}, atom_le_const("y", 1)}));
}

TEST_CASE("brute_force_valid examples") {
    CHECK(brute_force_valid({{}, {{P("min(i,j)"), P("i")}}}, 3));
    CHECK_FALSE(brute_force_valid({{}, {{P("max(i,j)"), P("i")}}}, 3));
}

TEST_CASE("brute_force_valid agrees with a naive enumeration") {
    Rng r(31);
    for (int n = 0; n < 200; ++n) {
        SizeConstraint c = gen_constraint(r);
        CHECK(brute_force_valid(c, 4) == naive_valid(c, 4));
    }
}

TEST_CASE("solver agrees with brute force and witnesses are real") {
    Rng r(32);
    int invalid = 0;
    for (int n = 0; n < 300; ++n) {
        SizeConstraint c = gen_constraint(r);
        Verdict v = is_valid(c);
        CHECK_MESSAGE(v.valid == brute_force_valid(c, completeness_bound(c)), print_constraints(c));
        if (!v.valid) {
            ++invalid;
            CHECK_MESSAGE(witness_violates(c, v.witness), print_constraints(c));
        }
    }
    CHECK(invalid > 30);
    CHECK(invalid < 270);
}

TEST_CASE("expand preserves values under U") {
    Rng r(33);
    for (int n = 0; n < 200; ++n) {
        SizeConstraint c = gen_constraint(r);
        SizeP s = gen_size(r, {"i", "j", "k", "l"}, 2);
        Valuation v;
        for (auto& x : free_size_vars(c)) v.set(x, pick(r, 5));
        for (auto& x : free_vars(s).sv)
            if (!c.U.count(x) && !v.vals.count(x)) v.set(x, pick(r, 5));
        for (auto& [i, d] : c.U) v.set(i, eval_size(v, expand(c.U, d)));
        CHECK(eval_size(v, expand(c.U, s)) == eval_size(v, s));
    }
}

TEST_CASE("encode_3cnf on the example formula") {
    Cnf phi = parse_dimacs(read_text(example_path("phi.cnf")));
    REQUIRE(phi.size() == 2);
    auto [s1, s2] = encode_3cnf(phi);
    SizeP want1 = P("max(max(max(max(max(min(min(x1,x2'),x3)+1, min(min(x1,x3'),x2)+1), 1), min(x1,x1')+1), "
                    "min(x2,x2')+1), min(x3,x3')+1)");
    SizeP want2 = P("min(min(min(1, max(x1,x1')), max(x2,x2')), max(x3,x3'))");
    CHECK(size_eq(s1, want1));
    CHECK(size_eq(s2, want2));
    CHECK_FALSE(is_valid({{}, {{s_succ(s2), s1}}}).valid);
}

TEST_CASE("encode_3cnf is equisatisfiable on random formulas") {
    Rng r(34);
    Cnf unsat = parse_dimacs(read_text(example_path("unsat.cnf")));
    Cnf single{{{"x1", false}, {"x2", false}, {"x3", false}}};
    std::vector<Cnf> cases{unsat, single};
    for (int n = 0; n < 50; ++n) cases.push_back(gen_cnf(r, 1 + pick(r, 6), 1 + pick(r, 8)));
    for (auto& phi : cases) {
        auto [s1, s2] = encode_3cnf(phi);
        CHECK(is_valid({{}, {{s_succ(s2), s1}}}).valid == !truth_table_sat(phi));
    }
    auto [u1, u2] = encode_3cnf(unsat);
    CHECK(brute_force_valid({{}, {{s_succ(u2), u1}}}, 2));
}

TEST_CASE("constraint files round-trip") {
    SizeConstraint c = parse_constraints(read_text(example_path("good.sc")));
    CHECK(c.U.size() == 2);
    CHECK(c.S.size() == 2);
    SizeConstraint again = parse_constraints(print_constraints(c));
    CHECK(print_constraints(again) == print_constraints(c));
    CHECK(is_valid(c).valid);
    CHECK_THROWS(parse_constraints("assert i <= ;"));
}
